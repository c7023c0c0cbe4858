fn main() {
    let (code, out) = tlpc::cli::run(std::env::args_os());
    if code == tlpc::cli::EXIT_INPUT {
        eprintln!("{out}");
    } else {
        println!("{out}");
    }
    std::process::exit(code);
}
