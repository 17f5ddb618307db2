fn main() {
    std::process::exit(rank3_cli::run(std::env::args_os()));
}
