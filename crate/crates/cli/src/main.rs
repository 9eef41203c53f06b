use clap::error::ErrorKind;
use clap::Parser;
use manin_cli::report::{ErrorBody, ErrorRecord, Envelope, SCHEMA_VERSION};
use manin_cli::{error_kind, exit_code, run, RunConfig};

fn emit_error(kind: &str, message: String) {
    let record = Envelope {
        schema_version: SCHEMA_VERSION,
        kind: "error",
        body: ErrorRecord { error: ErrorBody { kind: kind.to_string(), message } },
    };
    match serde_json::to_string(&record) {
        Ok(s) => eprintln!("{s}"),
        Err(_) => eprintln!("{{\"kind\":\"error\"}}"),
    }
}

fn main() {
    let config = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => {
            emit_error("usage", e.to_string().trim_end().to_string());
            std::process::exit(2);
        }
    };
    if let Err(err) = run(&config) {
        emit_error(error_kind(&err), format!("{err:#}"));
        std::process::exit(exit_code(&err));
    }
}
