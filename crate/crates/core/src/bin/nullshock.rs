fn main() {
    std::process::exit(nullshock::cli::main_with_args(std::env::args_os()));
}
