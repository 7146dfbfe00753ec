fn main() {
    std::process::exit(lucky_bounds::cli::run(std::env::args_os()));
}
