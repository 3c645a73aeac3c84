fn main() {
    std::process::exit(coslambda::cli::run_from(std::env::args_os()));
}
