//! One PASS/FAIL line per acceptance criterion. Exits non-zero when a
//! criterion fails that is not listed in `KNOWN_FAILURES`.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use virtlink::complement::{self, Triangulation};
use virtlink::families::{self, KishinoUnit, Reflection, KISHINO_SECOND_GAP, KISHINO_UNITS};
use virtlink::prime::{self, Primeness};
use virtlink::tables::{self, Table};
use virtlink::{bounds, surface, Gap, GaussCode, Passage, Sign, Symbol};

/// Criteria expected to fail, with the reason recorded alongside.
const KNOWN_FAILURES: &[(&str, &str)] = &[(
    "export-doubled-tet-count",
    "an ideal triangulation of a doubled complement needs more than 8c tetrahedra: \
     doubled 4.55 has volume 42.84 > 32 v_tet",
)];

type Outcome = Result<String, String>;

struct Runner {
    unexpected: usize,
}

impl Runner {
    fn run(&mut self, id: &str, budget: Option<Duration>, f: impl FnOnce() -> Outcome) {
        let t = Instant::now();
        let mut r = f();
        let dt = t.elapsed();
        if let (Ok(msg), Some(b)) = (&r, budget) {
            if dt > b {
                r = Err(format!("{msg}; took {dt:.2?}, budget {b:?}"));
            }
        }
        let known = KNOWN_FAILURES.iter().find(|(k, _)| *k == id);
        match (&r, known) {
            (Ok(msg), _) => println!("PASS {id} [{dt:.2?}] {msg}"),
            (Err(msg), Some((_, why))) => println!("FAIL {id} [{dt:.2?}] {msg} (known: {why})"),
            (Err(msg), None) => {
                self.unexpected += 1;
                println!("FAIL {id} [{dt:.2?}] {msg}");
            }
        }
        if let (Ok(_), Some(_)) = (&r, known) {
            println!("  note: {id} is listed as a known failure but passed");
        }
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn genus(c: &GaussCode) -> Result<usize, String> {
    surface::ribbon_genus(c).map_err(|e| e.to_string())
}

fn genus_regression(t: &Table) -> Outcome {
    let mut alternating = 0;
    for e in &t.entries {
        let g = genus(&e.code)?;
        ensure(g >= e.min_genus, || format!("{}: ribbon {g} < {}", e.name, e.min_genus))?;
        if e.code.reduce().is_alternating() {
            alternating += 1;
            ensure(g == e.min_genus, || format!("{}: alternating, ribbon {g}", e.name))?;
        }
    }
    for (name, g) in [("2.1", 1), ("3.6", 0), ("4.55", 2), ("4.108", 0)] {
        let got = genus(&t.get(name).ok_or(format!("{name} missing"))?.code)?;
        ensure(got == g, || format!("{name}: genus {got}, expected {g}"))?;
    }
    Ok(format!("{} codes, {alternating} alternating", t.entries.len()))
}

fn polygonal_family() -> Outcome {
    for n in 3..=12 {
        let c = families::polygonal(n).map_err(|e| e.to_string())?;
        let g = genus(&c)?;
        ensure(g == n.div_ceil(2) - 1, || format!("n={n}: genus {g}"))?;
        let f = surface::boundary_count(&c).map_err(|e| e.to_string())?;
        ensure(f == if n % 2 == 1 { 3 } else { 4 }, || format!("n={n}: {f} boundary curves"))?;
        let k = c.component_count();
        ensure((k == 3) == (n % 3 == 0), || format!("n={n}: {k} components"))?;
        ensure(prime::enumerate_subcodes(&c).is_empty(), || format!("n={n}: has a subcode"))?;
        let p = prime::primeness(&c);
        ensure(p == Primeness::Prime, || format!("n={n}: {p:?}"))?;
    }
    Ok("n = 3..12".into())
}

fn all_units() -> Vec<KishinoUnit> {
    let mut v = Vec::new();
    for cut in 0..4 {
        for m in 0..4 {
            for r in [Reflection::None, Reflection::Surface, Reflection::Planar] {
                let mut u = KishinoUnit::new(cut, m & 1 == 1, m & 2 == 2);
                u.reflect = r;
                v.push(u);
            }
        }
    }
    v
}

fn with_switches(mut u: KishinoUnit, bits: u32) -> KishinoUnit {
    u.switch_a = bits & 1 == 1;
    u.switch_b = bits & 2 == 2;
    u
}

fn kishino_family(t: &Table) -> Outcome {
    let target = t.get("4.55").ok_or("4.55 missing")?.code.canonical_form();
    // Parameter search over units, cut points, reflections and the second gap.
    let mut hits = Vec::new();
    for a in all_units() {
        for b in all_units() {
            for gap in 0..=4 {
                if let Ok(c) = families::kishino_base([a, b], gap) {
                    if c.canonical_form() == target {
                        hits.push((a, b, gap));
                    }
                }
            }
        }
    }
    let frozen = (KISHINO_UNITS[0], KISHINO_UNITS[1], KISHINO_SECOND_GAP);
    ensure(hits.contains(&frozen), || "frozen parameters not among search hits".into())?;
    let k2 = families::generalized_kishino(2, &families::default_choices(2)).map_err(|e| e.to_string())?;
    ensure(k2.canonical_form() == target, || format!("{k2} is not 4.55"))?;
    for bits in 0..16u32 {
        let choice = [
            with_switches(KISHINO_UNITS[0], bits & 3),
            with_switches(KISHINO_UNITS[1], bits >> 2),
        ];
        let c = families::generalized_kishino(2, &choice).map_err(|e| format!("vector {bits}: {e}"))?;
        let g = genus(&c)?;
        ensure(g == 2, || format!("vector {bits}: genus {g}"))?;
    }
    for n in 3..=6 {
        let c = families::generalized_kishino(n, &families::default_choices(n)).map_err(|e| e.to_string())?;
        let g = genus(&c)?;
        ensure(g == n && c.crossing_count() == 2 * n, || {
            format!("n={n}: genus {g}, {} crossings", c.crossing_count())
        })?;
    }
    Ok(format!("{} parameter sets reproduce 4.55; 16 vectors; n = 3..6", hits.len()))
}

fn append_law(t: &Table) -> Outcome {
    let mut bases = vec![("2.1".to_string(), t.get("2.1").ok_or("2.1 missing")?.code.clone())];
    for n in 2..=6 {
        let c = families::generalized_kishino(n, &families::default_choices(n)).map_err(|e| e.to_string())?;
        bases.push((format!("K{n}"), c));
    }
    let mut checked = 0;
    for (name, base) in &bases {
        let g = genus(base)?;
        let mut valid = 0;
        for gap in base.gaps(0) {
            for unit in KISHINO_UNITS {
                match families::half_kishino_append(base, gap, unit) {
                    Ok(c) => {
                        let ga = genus(&c)?;
                        ensure(ga == g + 1 && c.crossing_count() == base.crossing_count() + 2, || {
                            format!("{name} gap {}: genus {g} -> {ga}", gap.index)
                        })?;
                        valid += 1;
                    }
                    Err(families::FamilyError::GenusIncrement { .. }) => {}
                    Err(e) => return Err(format!("{name}: {e}")),
                }
            }
        }
        ensure(valid > 0, || format!("{name}: no valid gap"))?;
        checked += valid;
    }
    Ok(format!("{checked} appends on {} bases", bases.len()))
}

fn minimal_crossing() -> Outcome {
    for g in 2..=6 {
        let c = families::minimal_crossing_family(g).map_err(|e| e.to_string())?;
        let cx = surface::build_cell_complex(&c).map_err(|e| e.to_string())?;
        ensure(cx.n == 2 * g - 1 && cx.genus == g && cx.f == 1, || {
            format!("g={g}: c={} genus {} f={}", cx.n, cx.genus, cx.f)
        })?;
    }
    Ok("g = 2..6".into())
}

fn crossing_genus(t: &Table) -> Outcome {
    let mut codes: Vec<GaussCode> = t.entries.iter().map(|e| e.code.clone()).collect();
    for n in 3..=12 {
        codes.push(families::polygonal(n).map_err(|e| e.to_string())?);
    }
    for n in 2..=6 {
        codes.push(families::generalized_kishino(n, &families::default_choices(n)).map_err(|e| e.to_string())?);
    }
    for g in 2..=6 {
        codes.push(families::minimal_crossing_family(g).map_err(|e| e.to_string())?);
    }
    let trefoil: GaussCode = surface::TREFOIL.parse().map_err(|e| format!("{e}"))?;
    for id in 1..=3 {
        codes.push(families::one_virtual(&trefoil, id).map_err(|e| e.to_string())?);
    }
    for c in &codes {
        let r = bounds::euler_crossing_check(c).map_err(|e| e.to_string())?;
        ensure(r.holds, || format!("{c}: c={} g={}", r.c, r.g))?;
    }
    Ok(format!("{} codes", codes.len()))
}

/// Closure of a random alternating braid on `s` strands with `len`
/// letters: odd generators positive, even ones negative.
fn random_alternating_knot(rng: &mut ChaCha8Rng) -> GaussCode {
    loop {
        let s = rng.gen_range(2..=4usize);
        let len = rng.gen_range(3..=8usize);
        let word: Vec<usize> = (0..len).map(|_| rng.gen_range(1..s)).collect();
        if (1..s).any(|i| word.iter().filter(|&&x| x == i).count() < 2) {
            continue;
        }
        let mut perm: Vec<usize> = (0..s).collect();
        for &i in &word {
            perm.swap(i - 1, i);
        }
        // A knot needs one cycle: follow position 0 through one pass per strand.
        let mut pos = 0;
        let mut seen = 0;
        loop {
            pos = perm.iter().position(|&p| p == pos).unwrap();
            seen += 1;
            if pos == 0 {
                break;
            }
        }
        if seen != s {
            continue;
        }
        // Trace the closed strand through the crossings.
        let mut syms = Vec::new();
        let mut p = 0;
        for _ in 0..s {
            for (k, &i) in word.iter().enumerate() {
                if p == i - 1 || p == i {
                    // Odd generators: strand from the left goes over.
                    let left = p == i - 1;
                    let over = left == (i % 2 == 1);
                    let passage = if over { Passage::Over } else { Passage::Under };
                    let sign = if i % 2 == 1 { Sign::Pos } else { Sign::Neg };
                    syms.push(Symbol::new(k as u32 + 1, passage, sign));
                    p = if left { i } else { i - 1 };
                }
            }
        }
        let mut code = GaussCode::from_components(vec![syms]).unwrap();
        if surface::ribbon_genus(&code) != Ok(0) {
            code = GaussCode::from_components(vec![code.components()[0]
                .iter()
                .map(|s| Symbol::new(s.id, s.passage, s.sign.flip()))
                .collect()])
            .unwrap();
        }
        let code = code.reduce();
        if code.crossing_count() >= 3 && code.is_alternating() && surface::ribbon_genus(&code) == Ok(0) {
            return code;
        }
    }
}

fn primeness_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut prime_checked = 0;
    for i in 0..100 {
        let a = random_alternating_knot(&mut rng);
        let b = random_alternating_knot(&mut rng);
        let gap = Gap::new(0, rng.gen_range(0..=a.components()[0].len()));
        let cut = rng.gen_range(0..=b.components()[0].len());
        let sum = a.connected_sum(gap, &b, cut).map_err(|e| e.to_string())?;
        let p = prime::primeness(&sum);
        ensure(matches!(p, Primeness::Composite(_)), || format!("pair {i}: {a} # {b} gave {p:?}"))?;
        if prime::enumerate_subcodes(&a).is_empty() {
            let p = prime::primeness(&a);
            ensure(p == Primeness::Prime, || format!("{a}: {p:?}"))?;
            prime_checked += 1;
        }
    }
    let vt: GaussCode = "O1-O2-U1-U2-".parse().map_err(|e| format!("{e}"))?;
    ensure(prime::find_composite_witness(&vt).map_err(|e| e.to_string())?.is_none(), || {
        "virtual trefoil has a witness".into()
    })?;
    for n in 3..=12 {
        let c = families::polygonal(n).map_err(|e| e.to_string())?;
        ensure(prime::find_composite_witness(&c).map_err(|e| e.to_string())?.is_none(), || {
            format!("polygonal {n} has a witness")
        })?;
    }
    Ok(format!("100 sums composite, {prime_checked} summands prime"))
}

fn bounds_containment(t: &Table) -> Outcome {
    let mut n = 0;
    for e in &t.entries {
        if let Some(v) = e.volume.value() {
            let w = bounds::volume_window(e.min_genus, e.crossings);
            ensure(w.contains(v), || format!("{}: {v} outside ({}, {}]", e.name, w.lower, w.upper))?;
            n += 1;
        }
    }
    let printed = |name: &str| -> Result<String, String> {
        Ok(t.get(name).ok_or(format!("{name} missing"))?.volume.as_str().to_string())
    };
    for group in [&["3.3", "3.4"][..], &["4.2", "4.69", "4.76", "4.98"]] {
        for pair in group.windows(2) {
            let (a, b) = (printed(pair[0])?, printed(pair[1])?);
            ensure(tables::equal_to_printed_digits(&a, &b), || {
                format!("{} {a} != {} {b}", pair[0], pair[1])
            })?;
        }
    }
    let base: f64 = printed("2.1")?.parse().map_err(|_| "2.1 volume")?;
    for name in ["4.12", "4.53", "4.73", "4.75"] {
        let p = printed(name)?;
        ensure(tables::equal_to_printed_digits(&p, &format!("{:.15}", 2.0 * base)), || {
            format!("{name} {p} != 2 x 2.1")
        })?;
    }
    Ok(format!("{n} volumes in window, groups equal"))
}

fn exports(t: &Table) -> (Outcome, Outcome) {
    let mut doubled_counts = Vec::new();
    let mut checked = 0;
    let mut well_formed = || -> Result<(), String> {
        for e in &t.entries {
            if e.min_genus == 0 {
                continue;
            }
            let tri = complement::triangulate_code(&e.code, &e.name).map_err(|err| format!("{}: {err}", e.name))?;
            let r = tri.validate().map_err(|err| format!("{}: {err}", e.name))?;
            let text = tri.to_text();
            let back = Triangulation::parse(&text).map_err(|err| format!("{}: {err}", e.name))?;
            ensure(back == tri && back.to_text() == text, || format!("{}: round trip differs", e.name))?;
            let t_comp = e.code.component_count();
            let c = e.crossings;
            if tri.doubled {
                ensure(r.cusps == 2 * t_comp, || format!("{}: {} cusps", e.name, r.cusps))?;
                doubled_counts.push((e.name.clone(), c, r.tetrahedra));
            } else {
                ensure(r.tetrahedra == 4 * c && r.cusps == t_comp + 2, || {
                    format!("{}: {} tets, {} cusps", e.name, r.tetrahedra, r.cusps)
                })?;
            }
            checked += 1;
        }
        Ok(())
    };
    let main = well_formed().map(|_| format!("{checked} triangulations valid and round-trip"));
    let tet = if doubled_counts.is_empty() {
        Err("no doubled exports".to_string())
    } else {
        let off: Vec<_> = doubled_counts.iter().filter(|(_, c, n)| *n != 8 * c).collect();
        if off.is_empty() {
            Ok(format!("{} doubled exports with 8c tetrahedra", doubled_counts.len()))
        } else {
            let (name, c, n) = off[0];
            Err(format!(
                "{} of {} doubled exports differ from 8c, e.g. {name}: {n} vs {}",
                off.len(),
                doubled_counts.len(),
                8 * c
            ))
        }
    };
    (main, tet)
}

fn main() {
    let t = tables::bundled_table();
    let mut r = Runner { unexpected: 0 };
    let s = Duration::from_secs;
    r.run("genus-regression", Some(s(5)), || genus_regression(&t));
    r.run("polygonal-family", Some(s(5)), polygonal_family);
    r.run("kishino-family", Some(s(30)), || kishino_family(&t));
    r.run("append-law", None, || append_law(&t));
    r.run("minimal-crossing", None, minimal_crossing);
    r.run("crossing-genus", None, || crossing_genus(&t));
    r.run("primeness-soundness", Some(s(60)), primeness_soundness);
    r.run("bounds-containment", None, || bounds_containment(&t));
    let mut tet = None;
    r.run("export-well-formed", None, || {
        let (main, t8) = exports(&t);
        tet = Some(t8);
        main
    });
    r.run("export-doubled-tet-count", None, || tet.unwrap());
    if r.unexpected > 0 {
        println!("{} unexpected failures", r.unexpected);
        std::process::exit(1);
    }
}
