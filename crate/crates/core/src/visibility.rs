//! Visibility matrices: which vertices a searcher standing at `x` can see.
//!
//! Three models are supported:
//!
//! * `range:L` sees every vertex within `L` hops.
//! * `line[:eps]` sees `y` when an edge path from `x` to `y` runs along the
//!   straight segment `x..y`, every vertex within `eps` of the supporting line
//!   and strictly advancing towards `y`. Requires vertex coordinates.
//! * `matrix:PATH` takes an explicit 0/1 matrix. It must be reflexive but
//!   need not be symmetric.

use std::collections::VecDeque;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph_core::{BoolMatrix, Graph};

pub const DEFAULT_LINE_EPSILON: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub enum VisibilitySpec {
    Explicit(BoolMatrix),
    Range(u32),
    Line { epsilon: f64 },
}

impl VisibilitySpec {
    pub fn default_line() -> Self {
        VisibilitySpec::Line {
            epsilon: DEFAULT_LINE_EPSILON,
        }
    }

    /// Parses the CLI grammar `range:<L>` | `matrix:<path>` | `line[:<eps>]`,
    /// reading the matrix file for the explicit model.
    pub fn from_arg(arg: &str) -> Result<Self> {
        let (kind, rest) = match arg.split_once(':') {
            Some((k, r)) => (k, Some(r)),
            None => (arg, None),
        };
        match (kind, rest) {
            ("range", Some(l)) => l
                .parse()
                .map(VisibilitySpec::Range)
                .map_err(|_| Error::Visibility(format!("bad range {l:?}"))),
            ("line", None) => Ok(VisibilitySpec::default_line()),
            ("line", Some(eps)) => match eps.parse::<f64>() {
                Ok(e) if e.is_finite() && e >= 0.0 => Ok(VisibilitySpec::Line { epsilon: e }),
                _ => Err(Error::Visibility(format!("bad line epsilon {eps:?}"))),
            },
            ("matrix", Some(path)) => Self::from_matrix_file(path),
            _ => Err(Error::Visibility(format!(
                "expected range:<L>, matrix:<path> or line[:<eps>], got {arg:?}"
            ))),
        }
    }

    pub fn from_matrix_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        let m = parse_matrix_file(&text).map_err(|e| match e {
            Error::Parse { line, msg } => Error::Parse {
                line,
                msg: format!("{}: {msg}", path.display()),
            },
            other => other,
        })?;
        Ok(VisibilitySpec::Explicit(m))
    }
}

impl FromStr for VisibilitySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_arg(s)
    }
}

pub fn parse_matrix_file(text: &str) -> Result<BoolMatrix> {
    BoolMatrix::parse(text)
}

pub fn build_visibility(g: &Graph, spec: &VisibilitySpec) -> Result<BoolMatrix> {
    match spec {
        VisibilitySpec::Range(l) => Ok(range_visibility(g, *l as usize)),
        VisibilitySpec::Line { epsilon } => line_visibility(g, *epsilon),
        VisibilitySpec::Explicit(m) => {
            validate_explicit(g, m)?;
            Ok(m.clone())
        }
    }
}

fn validate_explicit(g: &Graph, m: &BoolMatrix) -> Result<()> {
    if m.rows() != g.n() || m.cols() != g.n() {
        return Err(Error::Visibility(format!(
            "matrix is {}x{}, graph has {} vertices",
            m.rows(),
            m.cols(),
            g.n()
        )));
    }
    if let Some(x) = (0..g.n()).find(|&x| !m.get(x, x)) {
        return Err(Error::Visibility(format!(
            "vertex {} cannot see itself (zero diagonal)",
            x + 1
        )));
    }
    Ok(())
}

fn range_visibility(g: &Graph, range: usize) -> BoolMatrix {
    let n = g.n();
    let mut b = BoolMatrix::zeros(n, n);
    for x in 0..n {
        for (y, d) in g.distances_from(x).into_iter().enumerate() {
            if d.is_some_and(|d| d <= range) {
                b.set(x, y, true);
            }
        }
    }
    b
}

fn line_visibility(g: &Graph, epsilon: f64) -> Result<BoolMatrix> {
    let coords = g
        .coords()
        .ok_or_else(|| Error::Visibility("line visibility needs vertex coordinates".into()))?;
    let n = g.n();
    let mut b = BoolMatrix::identity(n);
    for x in 0..n {
        for y in x + 1..n {
            if straight_path_exists(g, coords, x, y, epsilon) {
                b.set(x, y, true);
                b.set(y, x, true);
            }
        }
    }
    Ok(b)
}

/// BFS from `x` to `y` restricted to vertices on the segment `x..y`, moving
/// only to vertices strictly further along it.
fn straight_path_exists(g: &Graph, coords: &[[f64; 2]], x: usize, y: usize, epsilon: f64) -> bool {
    let [ox, oy] = coords[x];
    let (dx, dy) = (coords[y][0] - ox, coords[y][1] - oy);
    let len = dx.hypot(dy);
    if len == 0.0 {
        // coincident points: only a direct edge counts
        return g.neighbors(x).contains(&y);
    }
    let (ux, uy) = (dx / len, dy / len);
    // (along-line parameter in [0, len], or None if off the segment)
    let place = |v: usize| -> Option<f64> {
        let (vx, vy) = (coords[v][0] - ox, coords[v][1] - oy);
        let off = (ux * vy - uy * vx).abs();
        let t = ux * vx + uy * vy;
        (off <= epsilon && t >= -epsilon && t <= len + epsilon).then_some(t)
    };
    let mut seen = vec![false; g.n()];
    seen[x] = true;
    let mut queue = VecDeque::from([(x, 0.0)]);
    while let Some((u, tu)) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if seen[w] {
                continue;
            }
            if let Some(tw) = place(w) {
                if tw > tu {
                    if w == y {
                        return true;
                    }
                    seen[w] = true;
                    queue.push_back((w, tw));
                }
            }
        }
    }
    false
}
