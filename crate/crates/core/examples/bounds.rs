//! Volume windows and the crossing/genus inequality.
//!
//!     cargo run --example bounds -- 'O1-O2-U1-U2-'

use virtlink::{bounds, GaussCode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "O1-O2-U1-U2-".into());
    let code: GaussCode = text.parse()?;
    let w = bounds::volume_window_for(&code)?;
    let e = bounds::euler_crossing_check(&code)?;
    println!("g={} c={} window ({:.6}, {:.6}]", w.genus, w.crossings, w.lower, w.upper);
    println!("c >= 2g - 1: {} (f={})", e.holds, e.f);
    for g in 2..=6 {
        println!("genus {g}: volume > {:.6}", bounds::miyamoto_bound(g)?);
    }
    Ok(())
}
