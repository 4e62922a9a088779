fn main() {
    let code = fcquant::cli::run(std::env::args().skip(1));
    std::process::exit(code);
}
