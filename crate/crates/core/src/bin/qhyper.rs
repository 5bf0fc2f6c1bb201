fn main() {
    std::process::exit(qhyper::cli::run(std::env::args_os()));
}
