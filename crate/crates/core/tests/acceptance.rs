//! Replays every acceptance criterion at full size, printing one PASS/FAIL line each.

use tubelat::verify::{criterion, Scope, CRITERIA};

#[test]
fn acceptance_criteria() {
    let mut failed = Vec::new();
    for k in 1..=CRITERIA {
        let o = criterion(k, Scope::full());
        let limit = o.limit_ms.map_or(String::new(), |l| format!(" (limit {} s)", l / 1000));
        println!("{} criterion {k}: {} [{} ms{limit}] {}", o.status(), o.title, o.elapsed_ms, o.detail);
        if o.status() != "PASS" {
            failed.push(k);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
