fn main() {
    std::process::exit(modrep::cli::run());
}
