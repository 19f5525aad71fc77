fn main() {
    std::process::exit(hypergroup::cli::cli_main(std::env::args_os()));
}
