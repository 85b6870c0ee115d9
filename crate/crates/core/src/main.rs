fn main() {
    std::process::exit(tfpl::cli::run(std::env::args_os()));
}
