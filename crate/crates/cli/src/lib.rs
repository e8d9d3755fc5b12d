//! `charp` command-line front end. `run` is the whole program minus process
//! exit, so tests can drive it in-process.

pub mod args;
mod commands;
pub mod errors;

use std::time::Instant;

use clap::Parser;
use serde_json::{json, Map, Value};

use args::{Cli, Cmd};
use errors::{CliError, EXIT_INPUT};

/// Reproducibility fields recorded for every run.
#[derive(Default, Debug, Clone)]
pub struct Meta {
    pub p: Option<u64>,
    pub q: Option<u64>,
    pub n: Option<Value>,
    pub d: Option<Value>,
    pub seed: Option<u64>,
}

pub struct Outcome {
    pub result: Value,
    pub certificates: Value,
}

/// Flags that change presentation only; they are not recorded in `inputs`.
fn strip_globals(argv: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut it = argv.iter();
    while let Some(a) = it.next() {
        match a.as_str() {
            "--pretty" | "--no-timing" => {}
            "--jobs" => {
                it.next();
            }
            s if s.starts_with("--jobs=") => {}
            _ => out.push(a.clone()),
        }
    }
    out
}

fn opt<T: Into<Value>>(v: Option<T>) -> Value {
    v.map(Into::into).unwrap_or(Value::Null)
}

/// Run with arguments excluding the program name. Returns the exit code and
/// the text for standard output.
pub fn run(argv: &[String]) -> (i32, String) {
    let full: Vec<String> = std::iter::once("charp".to_string()).chain(argv.iter().cloned()).collect();
    let cli = match Cli::try_parse_from(&full) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return (0, e.to_string());
            }
            let err = CliError::input("Usage", e.to_string().trim_end().to_string());
            return (EXIT_INPUT, render_error(&json!({ "argv": argv }), &err, false));
        }
    };
    if let Cmd::Replay { file } = &cli.cmd {
        return match commands::replay_argv(file.as_deref()) {
            Ok(mut replayed) => {
                // presentation flags of this invocation carry over
                if cli.pretty {
                    replayed.push("--pretty".into());
                }
                if cli.no_timing {
                    replayed.push("--no-timing".into());
                }
                run(&replayed)
            }
            Err(e) => (e.exit, render_error(&json!({ "argv": argv }), &e, cli.pretty)),
        };
    }
    let recorded = strip_globals(argv);
    let mut meta = Meta::default();
    let start = Instant::now();
    let res = commands::dispatch(&cli, &mut meta);
    let elapsed = start.elapsed().as_secs_f64() * 1000.0;
    let timing = if cli.no_timing { Value::Null } else { json!((elapsed * 1000.0).round() / 1000.0) };
    let mut inputs = Map::new();
    inputs.insert("argv".into(), json!(recorded));
    inputs.insert("command".into(), json!(recorded.iter().take_while(|a| !a.starts_with("--")).cloned().collect::<Vec<_>>().join(" ")));
    inputs.insert("p".into(), opt(meta.p));
    inputs.insert("q".into(), opt(meta.q));
    inputs.insert("n".into(), meta.n.clone().unwrap_or(Value::Null));
    inputs.insert("d".into(), meta.d.clone().unwrap_or(Value::Null));
    inputs.insert("seed".into(), opt(meta.seed));
    let inputs = Value::Object(inputs);
    match res {
        Ok(out) => {
            let doc = json!({
                "inputs": inputs,
                "result": out.result,
                "certificates": out.certificates,
                "timing_ms": timing,
            });
            (0, render(&doc, cli.pretty))
        }
        Err(e) => {
            let mut doc = error_doc(&inputs, &e);
            doc["timing_ms"] = timing;
            (e.exit, render(&doc, cli.pretty))
        }
    }
}

fn error_doc(inputs: &Value, e: &CliError) -> Value {
    json!({
        "inputs": inputs,
        "error": { "kind": e.kind, "message": e.message },
    })
}

fn render_error(inputs: &Value, e: &CliError, pretty: bool) -> String {
    let mut doc = error_doc(inputs, e);
    doc["timing_ms"] = Value::Null;
    render(&doc, pretty)
}

fn render(doc: &Value, pretty: bool) -> String {
    if !pretty {
        // serde_json's default map keeps keys sorted
        return format!("{doc}\n");
    }
    let mut lines = Vec::new();
    flatten("", doc, &mut lines);
    let width = lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut s = String::new();
    for (k, v) in lines {
        s.push_str(&format!("{k:<width$}  {v}\n"));
    }
    s
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object()) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        _ => out.push((prefix.to_string(), v.to_string())),
    }
}
