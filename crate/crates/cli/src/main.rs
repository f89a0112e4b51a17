fn main() {
    std::process::exit(robin_gap_cli::main_with(std::env::args_os()));
}
