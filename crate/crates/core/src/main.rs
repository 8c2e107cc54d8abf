fn main() {
    std::process::exit(qschubert::cli::run(std::env::args_os()));
}
