fn main() {
    std::process::exit(lt_kummer::cli::main_with(std::env::args_os()));
}
