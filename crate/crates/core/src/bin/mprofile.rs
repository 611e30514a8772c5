fn main() {
    std::process::exit(mprofile::cli::main());
}
