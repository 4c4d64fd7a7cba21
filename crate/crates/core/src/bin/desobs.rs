fn main() {
    std::process::exit(desobs::cli::run(std::env::args_os()));
}
