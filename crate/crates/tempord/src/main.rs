fn main() {
    std::process::exit(tempord::cli::main_entry());
}
