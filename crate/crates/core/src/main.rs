fn main() {
    std::process::exit(ktrail::cli::run(std::env::args_os()));
}
