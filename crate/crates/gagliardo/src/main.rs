fn main() {
    std::process::exit(gagliardo::cli::main_entry());
}
