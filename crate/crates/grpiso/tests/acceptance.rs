//! One line per acceptance criterion. Runs without the libtest harness so
//! the lines show up in plain `cargo test` output; exits 1 on any failure.

use grpiso::selftest::{run, Options};

fn main() {
    let opts = Options {
        seed: 2024,
        inject_fault: false,
    };
    let mut failed = Vec::new();
    for id in 1..=9 {
        let report = run(id, opts);
        println!("{report}");
        if !report.passed {
            failed.push(id);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("acceptance: all 9 criteria passed");
}
