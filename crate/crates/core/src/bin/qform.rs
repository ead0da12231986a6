fn main() {
    std::process::exit(qform::cli::run(std::env::args_os()));
}
