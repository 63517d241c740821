fn main() {
    std::process::exit(epinet::cli::run(std::env::args_os()));
}
