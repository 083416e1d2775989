use std::io::Write;

fn main() {
    let outcome = eigenmatrix_cli::run_args(std::env::args_os());
    if !outcome.stdout.is_empty() {
        println!("{}", outcome.stdout.trim_end());
    }
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    std::process::exit(outcome.code);
}
