fn main() {
    std::process::exit(momentlab_cli::run(std::env::args_os()));
}
