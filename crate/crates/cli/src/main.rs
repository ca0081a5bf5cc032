fn main() {
    std::process::exit(rpl_cli::run(std::env::args_os()));
}
