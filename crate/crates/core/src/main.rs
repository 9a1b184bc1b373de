fn main() {
    std::process::exit(h10_core::cli::main());
}
