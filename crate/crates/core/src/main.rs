fn main() {
    std::process::exit(kissing::cli::run());
}
