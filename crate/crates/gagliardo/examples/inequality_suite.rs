//! Run the full inequality-verification suite and print a compact summary:
//! the worst ratio per inequality against its frozen constant budget.
//!
//!     cargo run --release --example inequality_suite

use std::collections::BTreeMap;

use gagliardo::{full_suite, SuiteConfig};

fn main() {
    let cfg = SuiteConfig { seed: 7, ..SuiteConfig::default() };
    let reports = full_suite(&cfg).expect("the shipped catalog is applicable everywhere");

    let mut worst: BTreeMap<&str, (f64, f64, String, usize)> = BTreeMap::new();
    for r in &reports {
        let entry = worst.entry(r.name).or_insert((0.0, r.budget, String::new(), 0));
        entry.3 += 1;
        if r.ratio > entry.0 {
            entry.0 = r.ratio;
            entry.2 = format!("{} ({})", r.field_label, r.params);
        }
    }

    println!("{} reports, {} inequalities\n", reports.len(), worst.len());
    println!("{:<24} {:>6} {:>10} {:>8}   worst case", "inequality", "runs", "worst", "budget");
    for (name, (ratio, budget, which, count)) in &worst {
        println!("{name:<24} {count:>6} {ratio:>10.4} {budget:>8}   {which}");
    }

    let violations: Vec<_> = reports.iter().filter(|r| !r.pass).collect();
    if violations.is_empty() {
        println!("\nall checks passed");
    } else {
        for v in &violations {
            println!("\nVIOLATION: {} on {} ({})", v.name, v.field_label, v.params);
        }
        std::process::exit(2);
    }
}
