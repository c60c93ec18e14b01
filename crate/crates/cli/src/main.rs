fn main() {
    std::process::exit(ktree_thickness_cli::run(std::env::args_os()));
}
