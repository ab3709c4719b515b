use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = polya_cli::run(std::env::args_os(), &mut out, &mut io::stderr());
    let flushed = out.flush();
    if flushed.is_err() && code == polya_cli::EXIT_OK {
        return ExitCode::from(polya_cli::EXIT_INPUT as u8);
    }
    ExitCode::from(code as u8)
}
