fn main() {
    std::process::exit(ssforge::cli::run(std::env::args_os()));
}
