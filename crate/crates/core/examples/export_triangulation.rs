//! Triangulate the complement of a code and print it in the text format.
//!
//!     cargo run --example export_triangulation -- 'O1-O2-U1-U2-'

use virtlink::complement;
use virtlink::GaussCode;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "O1-O2-U1-U2-".into());
    let code: GaussCode = text.parse()?;
    let tri = complement::triangulate_code(&code, &text)?;
    let report = tri.validate()?;
    eprintln!(
        "genus {} doubled {}: {} tetrahedra, {} cusps",
        tri.genus, tri.doubled, report.tetrahedra, report.cusps
    );
    print!("{}", tri.to_text());
    Ok(())
}
