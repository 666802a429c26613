use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let r = kitelab_cli::run(std::env::args());
    let _ = if r.to_stderr {
        std::io::stderr().write_all(r.text.as_bytes())
    } else {
        std::io::stdout().write_all(r.text.as_bytes())
    };
    ExitCode::from(r.code as u8)
}
