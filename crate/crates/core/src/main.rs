fn main() {
    std::process::exit(flowring::cli::run(std::env::args_os()));
}
