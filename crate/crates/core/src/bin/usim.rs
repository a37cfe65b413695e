fn main() {
    std::process::exit(unitary_similarity::cli::main_with_stdio());
}
