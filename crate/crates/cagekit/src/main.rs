fn main() {
    std::process::exit(cagekit::cli::run());
}
