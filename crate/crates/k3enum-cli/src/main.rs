fn main() {
    let args: Vec<String> = std::env::args().collect();
    std::process::exit(k3enum_cli::run(&args));
}
