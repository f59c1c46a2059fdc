fn main() {
    std::process::exit(ucp_core::cli::run(std::env::args_os()));
}
