fn main() {
    std::process::exit(dmc_kit::cli::run(std::env::args_os()));
}
