fn main() {
    std::process::exit(dimer_mm::cli::main());
}
