//! DT codes of classical table entries.

use virtlink::complement::{format_dt, gauss_to_dt};
use virtlink::tables;

fn main() {
    let table = tables::bundled_table();
    for e in table.entries.iter().filter(|e| e.min_genus == 0) {
        match gauss_to_dt(&e.code) {
            Ok(dt) => println!("{}\t{}", e.name, format_dt(&dt)),
            Err(err) => println!("{}\t{err}", e.name),
        }
    }
}
