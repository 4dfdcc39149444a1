fn main() {
    std::process::exit(conormal::cli::run_command(std::env::args_os()));
}
