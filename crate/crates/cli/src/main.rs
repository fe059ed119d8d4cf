use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = mtoh_cli::run(std::env::args_os(), &mut out, &mut io::stderr().lock());
    if out.flush().is_err() {
        return ExitCode::from(mtoh_cli::EXIT_USAGE as u8);
    }
    ExitCode::from(code as u8)
}
