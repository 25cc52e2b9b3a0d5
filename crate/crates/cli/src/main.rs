fn main() {
    std::process::exit(orlicz::run(std::env::args_os()));
}
