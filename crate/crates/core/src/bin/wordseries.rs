fn main() {
    std::process::exit(wordseries::cli::run(std::env::args_os()));
}
