fn main() {
    std::process::exit(tfweyl::cli::run(std::env::args_os()));
}
