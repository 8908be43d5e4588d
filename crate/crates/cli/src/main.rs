fn main() {
    std::process::exit(pursuit_cli::main_with_args(std::env::args_os()));
}
