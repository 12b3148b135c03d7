fn main() {
    std::process::exit(qconfluent::cli::run_from(std::env::args_os()));
}
