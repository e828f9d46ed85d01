fn main() {
    std::process::exit(knc_core::cli::run_from_env());
}
