use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use ycube::clisvc::cli::{run, Cli, Command};
use ycube::clisvc::http::serve;

fn fail(code: &str, message: String, exit: u8) -> ExitCode {
    eprintln!("{}", serde_json::json!({"error": {"code": code, "message": message}}));
    ExitCode::from(exit)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => return fail("usage", e.to_string().trim().to_string(), 2),
    };
    if let Command::Serve { port, state_dir } = cli.command {
        let rt = match tokio::runtime::Runtime::new() {
            Ok(rt) => rt,
            Err(e) => return fail("io", e.to_string(), 1),
        };
        return match rt.block_on(serve(port, state_dir)) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail("io", e.to_string(), 1),
        };
    }
    match run(&cli.command) {
        Ok(text) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(1)
        }
    }
}
