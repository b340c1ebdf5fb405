fn main() {
    std::process::exit(collinear::run(std::env::args_os()));
}
