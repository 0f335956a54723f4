use std::process::ExitCode;
use std::time::Instant;

use segalkit::acceptance::criteria;

fn main() -> ExitCode {
    let only: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for c in criteria().into_iter().filter(|c| only.is_none_or(|i| i == c.id)) {
        let start = Instant::now();
        let v = (c.run)();
        let secs = start.elapsed().as_secs_f64();
        let in_time = c.limit_secs.is_none_or(|l| secs <= l as f64);
        let pass = v.is_yes() && in_time;
        if !pass {
            failed += 1;
        }
        let limit = c.limit_secs.map(|l| format!(" (limit {l}s)")).unwrap_or_default();
        println!("{} C{:<2} {} [{:?}, {secs:.2}s{limit}]", if pass { "PASS" } else { "FAIL" }, c.id, c.title, v.status);
        if !pass {
            println!("     {}", serde_json::to_string(&v).expect("verdicts serialize"));
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
