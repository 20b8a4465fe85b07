fn main() {
    std::process::exit(loopfield::cli::run_from_env());
}
