//! Runs every acceptance criterion and prints one line each.

fn main() {
    let results = isq_spectral::verify::run_all();
    for r in &results {
        println!("{}", r.line());
    }
    let passed = results.iter().filter(|r| r.passed()).count();
    println!("{passed}/{} passed", results.len());
}
