//! Write the CSV/SVG bundle of one benchmark (default 3b) to `out/`.
//! Pass a test id as the first argument: 1a 1b 2a 2a-short 2a-long 2b 3a 3b.

use imex_relax::harness::run_paper_test;
use std::path::Path;

fn main() {
    let id = std::env::args().nth(1).unwrap_or_else(|| "3b".into());
    let report = run_paper_test(&id, Path::new("out"), true).unwrap();
    for line in &report.summary {
        println!("{line}");
    }
    for f in &report.files {
        println!("wrote {}", f.display());
    }
}
