fn main() {
    std::process::exit(fpcoh_cli::cli::main_with_args(std::env::args_os()));
}
