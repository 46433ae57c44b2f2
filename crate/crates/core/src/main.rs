fn main() {
    std::process::exit(acyclic::cli::run(std::env::args_os()));
}
