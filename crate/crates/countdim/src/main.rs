fn main() {
    std::process::exit(countdim::cli::main_with(std::env::args_os()));
}
