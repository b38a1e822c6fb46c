//! One line per acceptance criterion; exits nonzero unless all ten pass.

use isq_spectral::verify;

fn main() {
    let results = verify::run_all();
    for r in &results {
        println!("{}", r.line());
    }
    let failed: Vec<u8> = results.iter().filter(|r| !r.passed()).map(|r| r.id).collect();
    println!("acceptance: {}/{} passed", results.len() - failed.len(), results.len());
    if results.len() != 10 || !failed.is_empty() {
        eprintln!("criteria not passing: {failed:?}");
        std::process::exit(1);
    }
}
