//! Write every table entry's export and the manifest into a directory.
//!
//!     cargo run --example export_batch -- out/

use virtlink::tables;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "export".into());
    let rows = tables::emit_export_batch(&tables::bundled_table(), dir.as_ref())?;
    let failed = rows.iter().filter(|r| r.error.is_some()).count();
    println!("{} rows, {failed} failed, manifest at {dir}/manifest.tsv", rows.len());
    Ok(())
}
