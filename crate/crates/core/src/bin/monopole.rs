fn main() {
    std::process::exit(monopole_adhm::cli::main_with_args(std::env::args_os()));
}
