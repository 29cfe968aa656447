fn main() {
    std::process::exit(zeta_gb::cli::run(std::env::args_os()));
}
