fn main() {
    std::process::exit(gzk::cli::main_with_args(std::env::args_os()));
}
