fn main() {
    std::process::exit(normalfan::cli::run(std::env::args_os()));
}
