//! Generalized Kishino knots, half-Kishino appends and the minimal-crossing family.

use virtlink::{families, surface};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in 2..=5 {
        let k = families::generalized_kishino(n, &families::default_choices(n))?;
        println!("kishino {n}\tg={}\t{k}", surface::ribbon_genus(&k)?);
    }
    for g in 2..=5 {
        let k = families::minimal_crossing_family(g)?;
        println!("minimal {g}\tc={}\t{k}", k.crossing_count());
    }
    let trefoil = surface::TREFOIL.parse()?;
    for id in 1..=3 {
        println!("one-virtual {id}\t{}", families::one_virtual(&trefoil, id)?);
    }
    Ok(())
}
