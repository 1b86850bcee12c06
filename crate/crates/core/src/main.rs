fn main() {
    std::process::exit(bosonic_channels::cli::main_with_args(std::env::args_os()));
}
