//! Parse a bundled presentation file and run the full verdict pipeline on
//! it programmatically, like the `koszul` binary does.

use clap::Parser;
use koszul::cli::{run, Cli};
use std::path::PathBuf;

fn main() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("corpus")
        .join("sympl_refl_z2_q.alg");
    let input = std::fs::read(&path).unwrap();
    for sub in ["check-algebra", "check-braiding", "check-pbw-a"] {
        let cli = Cli::try_parse_from(["koszul", sub, "--n-sat", "5", "x.alg"]).unwrap();
        let report = run(&cli.command, &input).unwrap();
        println!("== {sub} (exit {})", report.exit_code());
        print!("{}", report.render_text());
    }
}
