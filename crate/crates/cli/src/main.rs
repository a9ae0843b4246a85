fn main() {
    std::process::exit(telescope_cli::run(std::env::args_os()));
}
