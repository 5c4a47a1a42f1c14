fn main() {
    std::process::exit(tfsr::cli::main_with_args(std::env::args_os()));
}
