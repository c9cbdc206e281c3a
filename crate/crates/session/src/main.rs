fn main() {
    std::process::exit(magmakey::cli::dispatch(std::env::args_os()));
}
