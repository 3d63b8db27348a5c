//! Octahedral decomposition counts, plain and doubled.

use virtlink::complement;
use virtlink::families;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let codes = [
        "O1-O2-U1-U2-".to_string(),
        families::generalized_kishino(2, &families::default_choices(2))?.to_string(),
        families::polygonal(5)?.to_string(),
    ];
    for text in codes {
        let mut d = complement::octahedral_decomposition(&text.parse()?)?;
        if d.genus >= 2 {
            d = complement::double_decomposition(&d)?;
        }
        let t = complement::to_triangulation(&d)?;
        let r = t.validate()?;
        println!(
            "{text}\tg={} octahedra={} doubled={} tets={} ({} truncated) cusps={}",
            d.genus,
            d.octahedra.len(),
            d.doubled,
            r.tetrahedra,
            d.tetrahedron_count(),
            r.cusps
        );
    }
    Ok(())
}
