use std::fmt;

use crate::graph_core::Vertex;

/// Fixed-length bit vector over invisible components. Bits are packed
/// most-significant first, so the derived ordering is lexicographic in
/// component order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CompBits {
    len: u32,
    words: Box<[u64]>,
}

impl CompBits {
    pub fn zeros(len: usize) -> Self {
        CompBits {
            len: len as u32,
            words: vec![0; len.div_ceil(64)].into_boxed_slice(),
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut out = Self::zeros(len);
        for i in 0..len {
            out.set(i, true);
        }
        out
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut out = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            out.set(i, b);
        }
        out
    }

    /// Bit `k` is taken from bit `len - 1 - k` of `code`, so counting `code`
    /// upwards enumerates bit vectors in lexicographic order.
    pub(crate) fn from_code(len: usize, code: u64) -> Self {
        let mut out = Self::zeros(len);
        for k in 0..len {
            out.set(k, code >> (len - 1 - k) & 1 == 1);
        }
        out
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len());
        self.words[i / 64] >> (63 - i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len());
        let mask = 1u64 << (63 - i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    /// True when no component is dirty.
    #[inline]
    pub fn is_clear(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn intersects(&self, other: &CompBits) -> bool {
        self.words.iter().zip(other.words.iter()).any(|(a, b)| a & b != 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len()).map(|i| self.get(i))
    }

    pub fn to_u8s(&self) -> Vec<u8> {
        self.iter().map(u8::from).collect()
    }
}

impl fmt::Debug for CompBits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CompBits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, b) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(if b { "1" } else { "0" })?;
        }
        f.write_str("]")
    }
}

/// Searcher position (`None` before placement) and the dirty flag of each
/// invisible component at that position, in canonical component order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InfoState {
    pub position: Option<Vertex>,
    pub dirty: CompBits,
}

impl InfoState {
    /// `(λ, (1))`: nobody placed yet, one dirty component holding everything.
    pub fn initial() -> Self {
        InfoState {
            position: None,
            dirty: CompBits::ones(1),
        }
    }

    pub fn new(position: Vertex, dirty: &[bool]) -> Self {
        InfoState {
            position: Some(position),
            dirty: CompBits::from_bools(dirty),
        }
    }

    pub fn is_initial(&self) -> bool {
        self.position.is_none()
    }

    /// All-clear states are the goals; the initial state never is one.
    pub fn is_clear(&self) -> bool {
        self.position.is_some() && self.dirty.is_clear()
    }
}

impl fmt::Display for InfoState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.position {
            Some(v) => write!(f, "({v},{})", self.dirty),
            None => write!(f, "(λ,{})", self.dirty),
        }
    }
}

impl fmt::Debug for InfoState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
