fn main() {
    std::process::exit(minsurf4::cli::run(std::env::args_os()));
}
