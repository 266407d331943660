fn main() {
    std::process::exit(stirlah::cli::run(std::env::args().collect()));
}
