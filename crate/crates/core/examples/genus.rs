//! Ribbon genus, face count and alternation for codes given on the command line.
//!
//!     cargo run --example genus -- 'O1-O2-U1-U2-' 'O1+U2+O3+U1+O2+U3+'

use virtlink::{surface, GaussCode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args: Vec<String> = std::env::args().skip(1).collect();
    if args.is_empty() {
        args = vec![surface::TREFOIL.into(), "O1-O2-U1-U2-".into(), surface::FIGURE_EIGHT.into()];
    }
    for a in args {
        let code: GaussCode = a.parse()?;
        let cx = surface::build_cell_complex(&code)?;
        println!(
            "{code}\tc={} f={} g={} alternating={}",
            cx.n,
            cx.f,
            cx.genus,
            code.is_alternating()
        );
    }
    Ok(())
}
