fn main() {
    std::process::exit(multifan_cli::run_from_env());
}
