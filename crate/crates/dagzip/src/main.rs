fn main() {
    std::process::exit(dagzip::cli::main_with(std::env::args_os()));
}
