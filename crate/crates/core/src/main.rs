fn main() {
    std::process::exit(castleag::cli::run(std::env::args_os()));
}
