fn main() {
    std::process::exit(convfib::cli::run(std::env::args_os()));
}
