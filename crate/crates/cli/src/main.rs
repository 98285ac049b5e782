fn main() {
    std::process::exit(ldl_cli::run(std::env::args_os()));
}
