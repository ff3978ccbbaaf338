fn main() {
    std::process::exit(ncmirror::cli::main_with_args(std::env::args().collect()));
}
