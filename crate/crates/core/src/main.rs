fn main() {
    std::process::exit(sbundle::cli::main_with_args(std::env::args_os()));
}
