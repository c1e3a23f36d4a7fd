use std::io::Write;

fn main() {
    let (code, out) = subshift::cli::run(std::env::args_os());
    // a closed pipe is not worth a panic
    let _ = writeln!(std::io::stdout().lock(), "{out}");
    std::process::exit(code);
}
