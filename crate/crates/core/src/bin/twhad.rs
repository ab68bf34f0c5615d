fn main() {
    std::process::exit(twhad::cli::main_with_args(std::env::args_os()));
}
