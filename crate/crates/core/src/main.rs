fn main() {
    std::process::exit(spiral_core::cli::run(std::env::args_os()));
}
