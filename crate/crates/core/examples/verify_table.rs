//! Run the combinatorial checks on the bundled table (or `VIRTLINK_DATA`).

use virtlink::tables::{self, CheckStatus};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let table = tables::load_table(None)?;
    let report = tables::verify_combinatorial(&table);
    println!("{}", report.summary());
    for c in &report.checks {
        if c.status != CheckStatus::Pass && c.status != CheckStatus::Skipped {
            println!("{:?}\t{}\t{}\t{}", c.status, c.entry, c.check, c.detail);
        }
    }
    for (g, n) in tables::genus_histogram(&table) {
        println!("genus {g}: {n}");
    }
    Ok(())
}
