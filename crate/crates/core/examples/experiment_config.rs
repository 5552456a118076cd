//! Runs an experiment described in TOML through the same entry point as
//! `gzk run`, then extracts plot columns from its output directory.
//!
//! ```text
//! cargo run --release --example experiment_config
//! ```

use gzk::cli::{self, emit_plotdata, ExperimentConfig};

fn main() {
    let out = std::env::temp_dir().join("gzk-example-gn");
    let text = format!(
        r#"
version = "1"

[gn-verify]
k = 2
trials = 20
seed = 4
gs-points = 256
concentration-lambdas = [4.0, 8.0, 16.0]
out = {:?}
"#,
        out.display().to_string()
    );
    let command = ExperimentConfig::parse(&text)
        .and_then(ExperimentConfig::into_command)
        .expect("valid config");
    println!("{}", cli::execute(command).expect("experiment"));
    for path in emit_plotdata(&out, &out).expect("plot data") {
        println!("--- {}", path.display());
        print!("{}", std::fs::read_to_string(path).expect("read"));
    }

    let bad = ExperimentConfig::parse("version = \"1\"\n[simulate]\nstep = 0.1\n").unwrap_err();
    println!("rejected: E:{}: {bad}", bad.class());
}
