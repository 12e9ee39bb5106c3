fn main() {
    std::process::exit(mclab::cli::run(std::env::args_os()));
}
