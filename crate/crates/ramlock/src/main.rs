fn main() {
    let code = ramlock::cli::main_with_args(std::env::args_os());
    std::process::exit(code);
}
