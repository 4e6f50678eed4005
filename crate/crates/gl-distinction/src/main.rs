fn main() {
    let (code, out) = gl_distinction::cli::run(std::env::args().skip(1));
    if code == 0 {
        println!("{out}");
    } else {
        eprintln!("{out}");
    }
    std::process::exit(code);
}
