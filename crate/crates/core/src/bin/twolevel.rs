fn main() {
    std::process::exit(twolevel::cli::main_with_args(std::env::args_os()));
}
