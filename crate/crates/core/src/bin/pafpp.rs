fn main() {
    std::process::exit(pafpp::cli::main());
}
