//! One line per acceptance criterion; exits nonzero if any fails.

use countdim::suite::{criteria, run_check, Options, Status};

fn main() {
    // `cargo test` passes harness flags such as `--nocapture`; a filter
    // argument selects criteria by number.
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let opts = Options::default();
    let mut failed = 0;
    for check in criteria() {
        let n = check.id.trim_start_matches("criterion-");
        if !filter.is_empty() && !filter.iter().any(|f| f == n) {
            continue;
        }
        let o = run_check(&check, &opts);
        println!(
            "criterion {n}: {} {} ({}; {:.2} s of {} s)",
            o.status.as_str(),
            o.title,
            o.detail,
            o.elapsed.as_secs_f64(),
            o.limit.as_secs()
        );
        failed += usize::from(o.status == Status::Fail);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
