fn main() {
    std::process::exit(pgmax_lab::cli::run(std::env::args_os()));
}
