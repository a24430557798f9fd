//! Values computed independently (plain big-integer iteration) and frozen.

use hosoya_core::{entry_at, fib, lucas, triangle, FibTable};

#[test]
fn fibonacci_values() {
    assert_eq!(fib(100).to_string(), "354224848179261915075");
    let f1000 = fib(1000).to_string();
    assert_eq!(f1000.len(), 209);
    assert!(f1000.starts_with("434665576869374564356885276750406258025646605173717804024817"));
    assert!(f1000.ends_with("166849228875"));
    assert_eq!(fib(-1000), -fib(1000));
    assert_eq!(lucas(50).to_string(), "28143753123");
    assert_eq!(lucas(99).to_string(), "489526700523968661124");
    assert_eq!(lucas(-99), -lucas(99));
}

#[test]
fn table_matches_free_function_past_the_memo() {
    let mut table = FibTable::new();
    for n in [0, 1, 2, 4095, 4096, 4097, 6000, -6000] {
        assert_eq!(table.get(n), fib(n), "n = {n}");
    }
}

#[test]
fn triangle_values() {
    let row10: Vec<String> = triangle::row(10).iter().map(|v| v.to_string()).collect();
    assert_eq!(
        row10,
        ["0", "34", "21", "26", "24", "25", "24", "26", "21", "34", "0"]
    );
    assert_eq!(entry_at(40, 15).unwrap().to_string(), "45765250");
    assert_eq!(
        entry_at(400, 300).unwrap().to_string(),
        "78720183114393051409550185994102148092075033376780450396092408282671243196257470000"
    );
    assert!(entry_at(3, 4).is_err());
    assert!(entry_at(-1, 0).is_err());
}
