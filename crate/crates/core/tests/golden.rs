use std::path::Path;

use isq_spectral::cli;

#[test]
fn tables_match_committed_goldens() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/goldens");
    let mismatches = cli::table(&dir, false).unwrap();
    assert!(mismatches.is_empty(), "{mismatches:#?}");
}

#[test]
fn seeding_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    cli::table(a.path(), true).unwrap();
    cli::table(b.path(), true).unwrap();
    for (name, _) in cli::golden_cases() {
        let file = format!("{name}.json");
        let x = std::fs::read(a.path().join(&file)).unwrap();
        let y = std::fs::read(b.path().join(&file)).unwrap();
        assert_eq!(x, y, "{name}");
    }
}
