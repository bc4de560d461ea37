fn main() {
    std::process::exit(daghilb::cli::main());
}
