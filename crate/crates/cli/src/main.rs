use std::io;
use std::process;

fn main() {
    let mut out = io::stdout().lock();
    let mut err = io::stderr().lock();
    let code = primespan_cli::run_to(std::env::args_os(), &mut out, &mut err);
    drop(out);
    drop(err);
    process::exit(code);
}
