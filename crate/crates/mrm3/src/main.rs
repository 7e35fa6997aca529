fn main() {
    std::process::exit(mrm3::app::cli_main(std::env::args_os()));
}
