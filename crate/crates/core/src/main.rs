use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdin = io::stdin();
    let mut input = stdin.lock();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut err = io::stderr();
    let code = crossfree::cli::run(std::env::args_os(), &mut input, &mut out, &mut err);
    if out.flush().is_err() {
        return ExitCode::from(crossfree::cli::EXIT_USAGE as u8);
    }
    ExitCode::from(code as u8)
}
