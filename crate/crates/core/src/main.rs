use std::io::Write;

use clap::Parser;

use concordia::cli::{error_json, execute, Cli};
use serde_json::json;

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let (doc, code) = match Cli::try_parse() {
        Ok(cli) => match execute(&cli) {
            Ok(v) => (v, 0),
            Err(e) => (error_json(&e), 2),
        },
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => (json!({"error": e.to_string(), "position": null}), 2),
    };
    let text = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
    // A closed pipe is not an error worth reporting.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    std::process::exit(code);
}
