fn main() {
    std::process::exit(eddsolve::cli::run(std::env::args_os()));
}
