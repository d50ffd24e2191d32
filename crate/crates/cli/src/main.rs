fn main() {
    std::process::exit(sgmpcs_cli::run(std::env::args_os()));
}
