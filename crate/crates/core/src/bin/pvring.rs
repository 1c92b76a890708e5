fn main() {
    std::process::exit(pvring::cli::main());
}
