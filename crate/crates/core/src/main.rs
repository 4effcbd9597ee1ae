fn main() {
    std::process::exit(abundancy::cli::run(std::env::args_os()));
}
