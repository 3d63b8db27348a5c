//! Generators for polygonal links, Kishino appends, 1-virtual alternating
//! links and the minimal-crossing genus-g knots.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gauss::{Gap, GaussCode, GaussError, Passage, Sign, Symbol};
use crate::prime;
use crate::surface::{self, SurfaceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("polygonal links need n >= 3, got {0}")]
    PolygonTooSmall(usize),
    #[error("generalized Kishino knots need n >= 2, got {0}")]
    KishinoTooSmall(usize),
    #[error("minimal-crossing family needs g >= 2, got {0}")]
    GenusTooSmall(usize),
    #[error("expected {expected} append choices, got {got}")]
    ChoiceCount { expected: usize, got: usize },
    #[error("no uniform sign gives genus {expected} for the {n}-polygonal link")]
    PolygonalSigns { n: usize, expected: usize },
    #[error("append at gap {gap:?} with {unit:?} gives genus {got}, expected {expected}")]
    GenusIncrement {
        gap: Gap,
        unit: KishinoUnit,
        expected: usize,
        got: usize,
    },
    #[error("one-virtual input must be {0}")]
    Precondition(&'static str),
    #[error("one-virtual result has genus {0}, expected 1")]
    OneVirtualGenus(usize),
    #[error(transparent)]
    Gauss(#[from] GaussError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// How the half-Kishino word is mirrored before insertion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum Reflection {
    #[default]
    None,
    /// Every crossing switched: the mirror through the supporting surface.
    Surface,
    /// Signs negated with passages kept: the mirror in a plane transverse to it.
    Planar,
}

/// Parameters of one half-Kishino append.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub struct KishinoUnit {
    /// Gap of the base word `O a+ O b+ U a+ U b+` where it is opened, `0..4`.
    pub cut: usize,
    pub switch_a: bool,
    pub switch_b: bool,
    pub reflect: Reflection,
}

impl KishinoUnit {
    pub fn new(cut: usize, switch_a: bool, switch_b: bool) -> KishinoUnit {
        KishinoUnit {
            cut,
            switch_a,
            switch_b,
            reflect: Reflection::None,
        }
    }

    /// The decorated 2-crossing word with ids 1 and 2, not yet opened.
    pub fn word(&self) -> GaussCode {
        let mut w = GaussCode::parse("O1+O2+U1+U2+").expect("base word");
        if self.switch_a {
            w = w.switch_crossing(1).expect("id 1");
        }
        if self.switch_b {
            w = w.switch_crossing(2).expect("id 2");
        }
        match self.reflect {
            Reflection::None => w,
            Reflection::Surface => w.reflect(),
            Reflection::Planar => negate_signs(&w),
        }
    }

    /// All 16 switch choices for cut point 0 and no reflection, in binary order.
    pub fn switch_choices() -> impl Iterator<Item = KishinoUnit> {
        (0..4).map(|m| KishinoUnit::new(0, m & 1 == 1, m & 2 == 2))
    }
}

pub(crate) fn negate_signs(code: &GaussCode) -> GaussCode {
    GaussCode::from_components(
        code.components()
            .iter()
            .map(|c| {
                c.iter()
                    .map(|s| Symbol::new(s.id, s.passage, s.sign.flip()))
                    .collect()
            })
            .collect(),
    )
    .expect("sign negation keeps validity")
}

/// Placement of the two units forming the generalized 2-Kishino knot:
/// the first goes into the empty code, the second into gap
/// [`KISHINO_SECOND_GAP`] of the result.
pub const KISHINO_UNITS: [KishinoUnit; 2] = [
    KishinoUnit {
        cut: 0,
        switch_a: true,
        switch_b: false,
        reflect: Reflection::None,
    },
    KishinoUnit {
        cut: 0,
        switch_a: false,
        switch_b: true,
        reflect: Reflection::None,
    },
];
pub const KISHINO_SECOND_GAP: usize = 4;

/// Gap used for appends after the second: the end of the first component.
pub fn append_gap(code: &GaussCode) -> Gap {
    Gap::new(0, code.components()[0].len())
}

/// Cross-off construction of the n-polygonal link.
pub fn polygonal_words(n: usize) -> Vec<Vec<u32>> {
    let n32 = n as u32;
    if n % 3 != 0 {
        let seq: Vec<u32> = (0..3).flat_map(|_| 1..=n32).collect();
        vec![seq
            .iter()
            .enumerate()
            .filter(|(i, _)| (i + 1) % 3 != 0)
            .map(|(_, &v)| v)
            .collect()]
    } else {
        (1..=3)
            .map(|off| (1..=n32).filter(|k| (k + off) % 3 != 0).collect())
            .collect()
    }
}

pub fn polygonal(n: usize) -> Result<GaussCode, FamilyError> {
    if n < 3 {
        return Err(FamilyError::PolygonTooSmall(n));
    }
    let words = polygonal_words(n);
    let expected = n.div_ceil(2) - 1;
    let k = words.len();
    for starts in 0..(1u32 << k) {
        let letters: Vec<Vec<Passage>> = words
            .iter()
            .enumerate()
            .map(|(c, w)| {
                (0..w.len())
                    .map(|i| {
                        if (i + (starts >> c & 1) as usize) % 2 == 0 {
                            Passage::Over
                        } else {
                            Passage::Under
                        }
                    })
                    .collect()
            })
            .collect();
        for sign in [Sign::Pos, Sign::Neg] {
            let comps: Vec<Vec<Symbol>> = words
                .iter()
                .zip(&letters)
                .map(|(w, l)| w.iter().zip(l).map(|(&id, &p)| Symbol::new(id, p, sign)).collect())
                .collect();
            let Ok(code) = GaussCode::from_components(comps) else {
                break;
            };
            if surface::ribbon_genus(&code)? == expected {
                return Ok(code);
            }
        }
    }
    Err(FamilyError::PolygonalSigns { n, expected })
}

pub fn half_kishino_append(
    code: &GaussCode,
    gap: Gap,
    unit: KishinoUnit,
) -> Result<GaussCode, FamilyError> {
    let before = surface::ribbon_genus(code)?;
    let out = code.connected_sum(gap, &unit.word(), unit.cut)?;
    let after = surface::ribbon_genus(&out)?;
    if after != before + 1 {
        return Err(FamilyError::GenusIncrement {
            gap,
            unit,
            expected: before + 1,
            got: after,
        });
    }
    Ok(out)
}

/// The generalized 2-Kishino knot built from two units, the second
/// inserted at `second_gap` of the first.
pub fn kishino_base(
    units: [KishinoUnit; 2],
    second_gap: usize,
) -> Result<GaussCode, FamilyError> {
    let one = half_kishino_append(&GaussCode::unknot(), Gap::new(0, 0), units[0])?;
    // The first append leaves genus 1; the second must reach 2.
    half_kishino_append(&one, Gap::new(0, second_gap), units[1])
}

/// Generalized n-Kishino knot: `choices[0..2]` build the base at the frozen
/// placement, each further choice is appended at [`append_gap`].
pub fn generalized_kishino(n: usize, choices: &[KishinoUnit]) -> Result<GaussCode, FamilyError> {
    if n < 2 {
        return Err(FamilyError::KishinoTooSmall(n));
    }
    if choices.len() != n {
        return Err(FamilyError::ChoiceCount {
            expected: n,
            got: choices.len(),
        });
    }
    let mut code = kishino_base([choices[0], choices[1]], KISHINO_SECOND_GAP)?;
    for &unit in &choices[2..] {
        code = half_kishino_append(&code, append_gap(&code), unit)?;
    }
    Ok(code)
}

/// The frozen choice vector for `n`: the table Kishino units, then copies
/// of the second unit.
pub fn default_choices(n: usize) -> Vec<KishinoUnit> {
    (0..n).map(|i| KISHINO_UNITS[i.min(1)]).collect()
}

/// Convert crossing `id` of a classical, reduced, alternating, obviously
/// prime code into a virtual crossing.
pub fn one_virtual(code: &GaussCode, id: u32) -> Result<GaussCode, FamilyError> {
    if !surface::is_classical(code)? {
        return Err(FamilyError::Precondition("classical"));
    }
    if !code.is_reduced() {
        return Err(FamilyError::Precondition("reduced"));
    }
    if !code.is_alternating() {
        return Err(FamilyError::Precondition("alternating"));
    }
    if !prime::enumerate_subcodes(code).is_empty() {
        return Err(FamilyError::Precondition("obviously prime"));
    }
    if !code.contains(id) {
        return Err(GaussError::UnknownId(id).into());
    }
    let out = code.without(id);
    let g = surface::ribbon_genus(&out)?;
    if g != 1 {
        return Err(FamilyError::OneVirtualGenus(g));
    }
    Ok(out)
}

/// Code of knot 3.1, the seed of the minimal-crossing family.
pub const KNOT_3_1: &str = "O1+O2+U1+O3-U2+U3-";

/// Knot of genus `g` with `2g - 1` crossings: 3.1 followed by `g - 2`
/// appends of the first table unit at the end of the word.
pub fn minimal_crossing_family(g: usize) -> Result<GaussCode, FamilyError> {
    if g < 2 {
        return Err(FamilyError::GenusTooSmall(g));
    }
    let mut code = GaussCode::parse(KNOT_3_1)?;
    for _ in 2..g {
        code = half_kishino_append(&code, append_gap(&code), KISHINO_UNITS[0])?;
    }
    let cx = surface::build_cell_complex(&code)?;
    debug_assert_eq!((cx.n, cx.genus), (2 * g - 1, g));
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polygonal_four_word() {
        assert_eq!(polygonal_words(4), vec![vec![1, 2, 4, 1, 3, 4, 2, 3]]);
        assert_eq!(polygonal_words(9).len(), 3);
    }

    #[test]
    fn polygonal_genus() {
        for n in 3..=12 {
            let c = polygonal(n).unwrap();
            assert_eq!(surface::ribbon_genus(&c), Ok(n.div_ceil(2) - 1), "n={n}");
            assert!(c.is_alternating() && c.is_reduced());
        }
        assert_eq!(polygonal(2), Err(FamilyError::PolygonTooSmall(2)));
    }

    #[test]
    fn append_raises_genus() {
        let v = GaussCode::parse("O1-O2-U1-U2-").unwrap();
        let a = half_kishino_append(&v, Gap::new(0, 0), KISHINO_UNITS[0]).unwrap();
        assert_eq!(surface::ribbon_genus(&a), Ok(2));
        assert_eq!(a.crossing_count(), 4);
    }

    #[test]
    fn one_virtual_trefoil() {
        let t = GaussCode::parse(surface::TREFOIL).unwrap();
        let v = one_virtual(&t, 1).unwrap();
        assert_eq!(v.crossing_count(), 2);
        assert_eq!(surface::ribbon_genus(&v), Ok(1));
        let tt = t.connected_sum(Gap::new(0, 0), &t, 0).unwrap();
        assert_eq!(
            one_virtual(&tt, 1),
            Err(FamilyError::Precondition("obviously prime"))
        );
    }
}
