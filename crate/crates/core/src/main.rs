use std::process::ExitCode;

use furstenberg::cli::{self, EXIT_OK, EXIT_REFUTED};

fn main() -> ExitCode {
    let argv: Vec<_> = std::env::args_os().collect();
    let json = argv.iter().any(|a| a == "--json");
    let result = cli::run(argv);
    let out = if json {
        serde_json::to_string_pretty(&result.payload).expect("payload is JSON")
    } else {
        result.text
    };
    if result.exit_code == EXIT_OK || result.exit_code == EXIT_REFUTED {
        println!("{out}");
    } else {
        eprintln!("{out}");
    }
    ExitCode::from(result.exit_code as u8)
}
