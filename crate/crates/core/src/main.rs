fn main() {
    std::process::exit(glorder::cli::main());
}
