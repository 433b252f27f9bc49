fn main() {
    std::process::exit(hitchin_pants::cli::main_exit());
}
