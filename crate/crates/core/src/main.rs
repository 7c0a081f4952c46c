fn main() {
    std::process::exit(partinv::harness::cli::run(std::env::args_os()));
}
