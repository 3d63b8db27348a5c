//! Volume windows and the crossing/genus inequality.

use serde::Serialize;
use thiserror::Error;

use crate::gauss::GaussCode;
use crate::surface::{self, SurfaceError};

/// Volume of the regular ideal octahedron, `8 Л(π/4)` with Л the
/// Lobachevsky function `Л(x) = -∫₀ˣ log|2 sin t| dt`.
pub const V_OCT: f64 = 3.663_862_376_708_876_060_218_414_059_73;

/// Volume of the regular ideal tetrahedron, `3 Л(π/3)`.
pub const V_TET: f64 = 1.014_941_606_409_653_625_021_202_554_27;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("Miyamoto bound needs g >= 2, got {0}")]
    GenusTooSmall(usize),
    #[error("separation needs g >= 1 and q >= 2g, got g={g}, q={q}")]
    Separation { g: usize, q: usize },
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VolumeWindow {
    pub genus: usize,
    pub crossings: usize,
    pub lower: f64,
    pub lower_is_strict: bool,
    pub upper: f64,
}

impl VolumeWindow {
    pub fn contains(&self, volume: f64) -> bool {
        let above = if self.lower_is_strict {
            volume > self.lower
        } else {
            volume >= self.lower
        };
        above && volume <= self.upper
    }
}

/// Window for genus `g` and crossing number `c`.
pub fn volume_window(g: usize, c: usize) -> VolumeWindow {
    let (lower, lower_is_strict) = match g {
        0 => (2.0 * V_TET, false),
        1 => (V_OCT, true),
        _ => (2.0 * V_OCT * (g as f64 - 1.0), true),
    };
    VolumeWindow {
        genus: g,
        crossings: c,
        lower,
        lower_is_strict,
        upper: 2.0 * V_OCT * c as f64,
    }
}

/// Window for a code, from its crossing count and ribbon genus.
pub fn volume_window_for(code: &GaussCode) -> Result<VolumeWindow, BoundsError> {
    Ok(volume_window(
        surface::ribbon_genus(code)?,
        code.crossing_count(),
    ))
}

/// `(v_oct / 2) |χ(∂M)|` for two genus-g boundary surfaces.
pub fn miyamoto_bound(g: usize) -> Result<f64, BoundsError> {
    if g < 2 {
        return Err(BoundsError::GenusTooSmall(g));
    }
    let chi = 2.0 * (2.0 * g as f64 - 2.0);
    Ok(V_OCT / 2.0 * chi)
}

/// `(4g - 2) v_oct <= (2q - 2) v_oct`: the upper bound for genus `g`
/// against the lower bound for genus `q`. At `q = 2g` the two sides are
/// equal and the separation comes from the strictness of the lower bound.
pub fn vmin_separation(g: usize, q: usize) -> Result<bool, BoundsError> {
    if g < 1 || q < 2 * g {
        return Err(BoundsError::Separation { g, q });
    }
    let upper = (4.0 * g as f64 - 2.0) * V_OCT;
    let lower = (2.0 * q as f64 - 2.0) * V_OCT;
    Ok(upper <= lower)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EulerReport {
    pub c: usize,
    pub g: usize,
    pub f: usize,
    pub holds: bool,
}

/// `f >= 1`, equivalently `c >= 2g - 1`, from the cell complex.
pub fn euler_crossing_check(code: &GaussCode) -> Result<EulerReport, BoundsError> {
    let cx = surface::build_cell_complex(code)?;
    let (c, g, f) = (cx.n, cx.genus, cx.f);
    let by_faces = f >= 1;
    let by_count = c + 1 >= 2 * g;
    Ok(EulerReport {
        c,
        g,
        f,
        holds: by_faces && by_count && f + 2 * g == c + 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_match_printed_values() {
        assert!((V_OCT - 3.6638).abs() < 1e-4);
        assert!((V_TET - 1.01494).abs() < 1e-5);
    }

    // Л(x) = -x(log 2x - 1) - ∫₀ˣ log(sin t / t) dt, Simpson on the smooth part.
    fn lobachevsky(x: f64) -> f64 {
        let m = 2000;
        let h = x / m as f64;
        let g = |t: f64| if t == 0.0 { 0.0 } else { (t.sin() / t).ln() };
        let mut s = g(0.0) + g(x);
        for i in 1..m {
            s += g(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        -x * ((2.0 * x).ln() - 1.0) - s * h / 3.0
    }

    #[test]
    fn constants_match_lobachevsky() {
        use std::f64::consts::PI;
        assert!((V_OCT - 8.0 * lobachevsky(PI / 4.0)).abs() < 1e-11);
        assert!((V_TET - 3.0 * lobachevsky(PI / 3.0)).abs() < 1e-11);
    }

    #[test]
    fn windows() {
        let w = volume_window(2, 4);
        assert!((w.lower - 7.327724753417752).abs() < 1e-12);
        assert!((w.upper - 29.31089901367101).abs() < 1e-12);
        assert!(w.contains(21.418632337));
        let w = volume_window(1, 2);
        assert!(w.lower_is_strict && w.contains(5.33348956690));
        let w = volume_window(0, 4);
        assert!(!w.lower_is_strict);
        assert!(w.contains(2.0 * V_TET));
    }

    #[test]
    fn miyamoto() {
        assert!((miyamoto_bound(2).unwrap() - 7.327724753417752).abs() < 1e-12);
        assert!((miyamoto_bound(3).unwrap() - 14.655449506835504).abs() < 1e-12);
        assert!((miyamoto_bound(10).unwrap() - 65.94952278075976).abs() < 1e-11);
        assert!(miyamoto_bound(1).is_err());
    }

    #[test]
    fn separation() {
        assert_eq!(vmin_separation(1, 2), Ok(true));
        assert_eq!(vmin_separation(2, 4), Ok(true));
        assert_eq!(vmin_separation(3, 6), Ok(true));
        assert!(vmin_separation(2, 3).is_err());
        assert!(vmin_separation(0, 3).is_err());
    }

    #[test]
    fn euler_check_virtual_trefoil() {
        let r = euler_crossing_check(&"O1+O2+U1+U2+".parse().unwrap()).unwrap();
        assert_eq!((r.c, r.g, r.f, r.holds), (2, 1, 2, true));
    }
}
