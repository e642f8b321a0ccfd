fn main() {
    std::process::exit(tbsd::cli::run(std::env::args_os()));
}
