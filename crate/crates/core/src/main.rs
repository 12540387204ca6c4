fn main() {
    std::process::exit(collinear4p3v::cli::run(std::env::args_os()));
}
