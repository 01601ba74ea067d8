fn main() {
    std::process::exit(bohrlab::cli::run(std::env::args_os()));
}
