//! Look for classical alternating subcodes, on a connected sum and on a prime knot.

use virtlink::prime::{self, Primeness};
use virtlink::{surface, Gap, GaussCode};

fn show(label: &str, code: &GaussCode) {
    match prime::primeness(code) {
        Primeness::Composite(w) => println!(
            "{label}: composite, witness {} at component {} offset {} length {}",
            w.witness_code, w.host_component, w.start, w.len
        ),
        p => println!("{label}: {p:?}"),
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let trefoil: GaussCode = surface::TREFOIL.parse()?;
    let eight: GaussCode = surface::FIGURE_EIGHT.parse()?;
    show("trefoil", &trefoil);
    show("virtual trefoil", &"O1-O2-U1-U2-".parse()?);
    let sum = trefoil.connected_sum(Gap::new(0, 2), &eight, 1)?;
    show(&format!("trefoil # figure-eight {sum}"), &sum);
    Ok(())
}
