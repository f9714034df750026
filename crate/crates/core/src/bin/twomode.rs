fn main() {
    std::process::exit(twomode::cli::run(std::env::args_os()));
}
