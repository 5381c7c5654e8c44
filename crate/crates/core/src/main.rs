fn main() {
    std::process::exit(induced_matching::cli::run(std::env::args_os()));
}
