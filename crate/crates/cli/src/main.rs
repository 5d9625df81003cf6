fn main() {
    std::process::exit(zonomon_cli::run(std::env::args_os()));
}
