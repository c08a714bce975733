fn main() {
    std::process::exit(lommel_core::cli::run(std::env::args_os()));
}
