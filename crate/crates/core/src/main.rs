fn main() {
    std::process::exit(sigmaform::cli::run(std::env::args_os()));
}
