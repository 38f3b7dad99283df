use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use mldistill::cli::{error_json, exit_code_for, run, write_atomic, Emit, RunConfig};

fn main() -> ExitCode {
    let cfg = RunConfig::parse();
    let code = match run(&cfg) {
        Ok(report) => match &cfg.output {
            Some(path) => match write_atomic(path, report.body.as_bytes()) {
                Ok(()) => report.exit_code(),
                Err(e) => fail(&cfg, &e),
            },
            None => {
                let _ = std::io::stdout().write_all(report.body.as_bytes());
                report.exit_code()
            }
        },
        Err(e) => fail(&cfg, &e),
    };
    ExitCode::from(code as u8)
}

fn fail(cfg: &RunConfig, e: &mldistill::Error) -> i32 {
    if cfg.emit == Emit::Json {
        print!("{}", error_json(e));
    } else {
        eprintln!("mldistill: {e}");
    }
    exit_code_for(e)
}
