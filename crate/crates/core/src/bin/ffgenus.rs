fn main() {
    std::process::exit(ffgenus::cli::main());
}
