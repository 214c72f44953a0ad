fn main() {
    std::process::exit(algebroid_leaves::cli::main_with_args(std::env::args_os()));
}
