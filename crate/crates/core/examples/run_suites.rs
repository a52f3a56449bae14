//! Drive the verification suites from code and summarise per check id.

use std::collections::BTreeMap;

use elliptic_selberg::verify::{run_suites, summary_line, Suite, SuiteConfig};
use elliptic_selberg::Result;

fn main() -> Result<()> {
    let config = SuiteConfig {
        suites: vec![Suite::Core, Suite::Det, Suite::Discrete],
        seed: 42,
        counts: [(Suite::Core, 200), (Suite::Det, 50), (Suite::Discrete, 5)].into_iter().collect(),
        ..SuiteConfig::default()
    };
    let reports = run_suites(&config)?;

    let mut worst: BTreeMap<&str, (usize, f64)> = BTreeMap::new();
    for r in &reports {
        let e = worst.entry(&r.check_id).or_default();
        e.0 += 1;
        e.1 = e.1.max(r.rel_residual);
    }
    for (id, (count, residual)) in worst {
        println!("{id:<34} {count:>5} instances  worst residual {residual:.2e}");
    }
    println!("{}", summary_line(&reports));
    Ok(())
}
