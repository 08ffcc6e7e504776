use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use tate_tori::cli::{order_cap_from_env, run_text, Command, Flags};

/// Tate cohomology and arithmetic invariants of algebraic tori.
#[derive(Parser)]
#[command(name = "tate-tori", version)]
struct Args {
    command: Command,
    /// Problem file (TOML).
    file: PathBuf,
    /// Emit deterministic JSON.
    #[arg(long)]
    json: bool,
    /// Restrict `cohomology` to one degree in -1..=2.
    #[arg(long, allow_hyphen_values = true)]
    degree: Option<i32>,
    /// Use the bar resolution even for cyclic groups.
    #[arg(long)]
    no_fast_path: bool,
    /// Ignore the degree-2 size guardrail.
    #[arg(long)]
    force: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match std::fs::read_to_string(&args.file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.file.display());
            return ExitCode::from(2);
        }
    };
    let order_cap_override = match order_cap_from_env() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let flags = Flags {
        json: args.json,
        degree: args.degree,
        no_fast_path: args.no_fast_path,
        force: args.force,
        order_cap_override,
    };
    let out = run_text(&text, args.command, &flags);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.exit_code as u8)
}
