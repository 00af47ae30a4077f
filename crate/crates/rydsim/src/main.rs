fn main() {
    std::process::exit(rydsim::cli::run(std::env::args_os()));
}
