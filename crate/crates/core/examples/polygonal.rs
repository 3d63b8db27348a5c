//! Print the n-polygonal links with their ribbon genus.
//!
//!     cargo run --example polygonal -- 9

use virtlink::{families, surface};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let max: usize = std::env::args().nth(1).map_or(Ok(8), |s| s.parse())?;
    for n in 3..=max {
        let code = families::polygonal(n)?;
        let g = surface::ribbon_genus(&code)?;
        println!("{n}\t{g}\t{}\t{code}", code.component_count());
    }
    Ok(())
}
