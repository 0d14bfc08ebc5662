fn main() {
    std::process::exit(cover::cli::run());
}
