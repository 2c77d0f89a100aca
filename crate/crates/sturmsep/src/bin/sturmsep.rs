fn main() {
    std::process::exit(sturmsep::cli::run());
}
