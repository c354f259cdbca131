fn main() {
    std::process::exit(cizero_cli::cli::run());
}
