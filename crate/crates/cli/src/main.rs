fn main() {
    std::process::exit(wentropy_cli::main_with_args(std::env::args_os()));
}
