fn main() {
    std::process::exit(ualg::cli::run(std::env::args_os()));
}
