fn main() {
    std::process::exit(minannuli::cli::main());
}
