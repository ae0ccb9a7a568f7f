fn main() {
    std::process::exit(ffchar_harness::cli::main_from(std::env::args_os()));
}
