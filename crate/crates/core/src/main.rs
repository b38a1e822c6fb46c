fn main() {
    std::process::exit(isq_spectral::cli::run(std::env::args_os()));
}
