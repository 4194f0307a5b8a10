fn main() {
    std::process::exit(framedcb_cli::run(std::env::args_os()));
}
