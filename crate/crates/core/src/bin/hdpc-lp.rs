fn main() {
    std::process::exit(hdpc_lp::cli::run(std::env::args_os()));
}
