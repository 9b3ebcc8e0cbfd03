use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use kronrad_cli::{run, Cli, Status};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let status = match run(&cli, &mut out) {
        Ok(s) => s,
        Err(e) => {
            let _ = out.flush();
            eprintln!("kronrad: {e}");
            e.status()
        }
    };
    if out.flush().is_err() {
        return ExitCode::from(Status::Usage as u8);
    }
    ExitCode::from(status as u8)
}
