//! Complements of links in thickened surfaces.
//!
//! The complement of a diagram on its ribbon surface `S` is cut into one
//! octahedron per crossing. Each octahedron is four tetrahedra
//! `(T, B, U, D)` around the crossing arc from the under-strand point `D`
//! to the over-strand point `U`, one per corner of the crossing, where `T`
//! and `B` are the top and bottom of `S × I`.
//!
//! For genus 1 the two boundary tori are cusps and the tetrahedra are ideal.
//! For genus 0 `T` and `B` are material points, so complements in the
//! sphere are handed over as DT codes instead. For genus at least 2 the
//! boundary surfaces are totally geodesic; the manifold is doubled across
//! them and the double `S × S¹ ∖ (L ∪ L̄)` is triangulated through its slab
//! decomposition (see [`slab`]).

mod dt;
pub mod slab;
pub mod triangulation;

use serde::Serialize;
use thiserror::Error;

use crate::gauss::{GaussCode, Passage};
use crate::surface::{self, CellComplex, SurfaceError};

pub use dt::{format_dt, gauss_to_dt, DtError};
pub use triangulation::{CuspKind, Perm, Tet, TriError, TriReport, Triangulation};

use triangulation::{Builder, IDENTITY};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplementError {
    #[error("the 0-crossing unknot has no octahedral decomposition (its complement is not hyperbolic)")]
    Empty,
    #[error("doubling needs genus >= 2, got {0}")]
    DoubleGenus(usize),
    #[error("genus {0} decomposition must be doubled before triangulating")]
    NotDoubled(usize),
    #[error("genus 0 complements live in the 3-sphere; export a DT code instead")]
    Spherical,
    #[error("component {0} passes only over or only under; it is parallel into a boundary surface")]
    OneSided(usize),
    #[error("slab cell {cell} has a degenerate cone")]
    DegenerateCell { cell: usize },
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Triangulation(#[from] TriError),
}

/// Vertex roles in a corner tetrahedron.
pub const TOP: usize = 0;
pub const BOTTOM: usize = 1;
pub const OVER: usize = 2;
pub const UNDER: usize = 3;

/// One octahedron per crossing; `mirror` marks the copy added by doubling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Octahedron {
    pub crossing: u32,
    pub mirror: bool,
}

/// Face pairing of a decomposition, expressed on the corner tetrahedra:
/// tetrahedron `4x + j` is the corner after half-edge `rotation[x][j]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OctahedralDecomposition {
    pub name: String,
    pub code: GaussCode,
    #[serde(skip)]
    pub complex: CellComplex,
    pub genus: usize,
    pub components: usize,
    pub octahedra: Vec<Octahedron>,
    /// Gluings of the corner tetrahedra of one copy. Faces meeting `T` or `B`
    /// only are all glued; the vertices `T`, `B` are truncated when the
    /// genus is at least 2.
    pub tets: Vec<Tet>,
    pub doubled: bool,
}

impl OctahedralDecomposition {
    /// Corner tetrahedra across all copies: four per octahedron.
    pub fn tetrahedron_count(&self) -> usize {
        4 * self.octahedra.len()
    }

    /// Number of cusps of the complement (after doubling when doubled).
    pub fn cusp_count(&self) -> usize {
        match (self.genus, self.doubled) {
            (0, _) => self.components,
            (1, _) => self.components + 2,
            (_, true) => 2 * self.components,
            (_, false) => self.components,
        }
    }
}

/// Index of the corner tetrahedron following half-edge `h` in the rotation.
fn corner(cx: &CellComplex, h: usize) -> usize {
    let v = CellComplex::vertex(h);
    4 * v + cx.rotation[v].iter().position(|&k| k == h).expect("in rotation")
}

pub fn octahedral_decomposition(code: &GaussCode) -> Result<OctahedralDecomposition, ComplementError> {
    octahedral_decomposition_named(code, &code.to_string())
}

pub fn octahedral_decomposition_named(
    code: &GaussCode,
    name: &str,
) -> Result<OctahedralDecomposition, ComplementError> {
    if code.is_empty() {
        return Err(ComplementError::Empty);
    }
    if let Some(i) = code.components().iter().position(|c| {
        c.iter().all(|s| s.passage == Passage::Over) || c.iter().all(|s| s.passage == Passage::Under)
    }) {
        return Err(ComplementError::OneSided(i));
    }
    let cx = surface::build_cell_complex(code)?;
    let n = cx.n;
    let mut b = Builder::new(4 * n);
    for x in 0..n {
        let rot = cx.rotation[x];
        for j in 0..4 {
            let nk = rot[(j + 1) % 4];
            let t = 4 * x + j;
            // Around the crossing: share (T, U, D) across an under half-edge,
            // (B, U, D) across an over half-edge. The half-edge nk separates
            // this corner from the next one.
            let face = if CellComplex::is_over(nk) { TOP } else { BOTTOM };
            b.glue(t, face, 4 * x + (j + 1) % 4, IDENTITY)?;
            // Along the face: the side leaving through nk, shared with the
            // corner at its far end. The arriving side is glued from there.
            let o = cx.opposite(nk);
            let ahead = corner(&cx, o);
            let v = if CellComplex::is_over(nk) { OVER } else { UNDER };
            let w = if CellComplex::is_over(o) { OVER } else { UNDER };
            b.glue(t, 5 - v, ahead, side_perm(v, w))?;
        }
    }
    let tets = b.finish()?;
    Ok(OctahedralDecomposition {
        name: name.to_string(),
        code: code.clone(),
        genus: cx.genus,
        components: code.component_count(),
        octahedra: cx
            .crossings
            .iter()
            .map(|&c| Octahedron {
                crossing: c,
                mirror: false,
            })
            .collect(),
        complex: cx,
        tets,
        doubled: false,
    })
}

/// Map fixing `T` and `B` and sending the strand vertex `v` to `w`.
fn side_perm(v: usize, w: usize) -> Perm {
    let mut p = IDENTITY;
    p[v] = w as u8;
    p[5 - v] = (5 - w) as u8;
    p
}

/// Mirror copy across the two boundary surfaces; requires genus >= 2.
pub fn double_decomposition(
    d: &OctahedralDecomposition,
) -> Result<OctahedralDecomposition, ComplementError> {
    if d.genus < 2 {
        return Err(ComplementError::DoubleGenus(d.genus));
    }
    let mut out = d.clone();
    if d.doubled {
        return Ok(out);
    }
    out.octahedra.extend(d.octahedra.iter().map(|o| Octahedron {
        crossing: o.crossing,
        mirror: true,
    }));
    out.doubled = true;
    Ok(out)
}

/// Ideal triangulation of the complement (genus 1) or of its double
/// (genus >= 2).
pub fn to_triangulation(d: &OctahedralDecomposition) -> Result<Triangulation, ComplementError> {
    match (d.genus, d.doubled) {
        (0, _) => Err(ComplementError::Spherical),
        (1, _) => {
            let mut tets = d.tets.clone();
            triangulation::orient(&mut tets)?;
            let mut t = Triangulation {
                name: d.name.clone(),
                doubled: false,
                genus: 1,
                components: d.components,
                tets,
                cusps: Vec::new(),
            };
            let (class, k) = t.vertex_classes();
            let mut kinds = vec![CuspKind::Link; k];
            for cl in &class {
                kinds[cl[TOP]] = CuspKind::Boundary;
                kinds[cl[BOTTOM]] = CuspKind::Boundary;
            }
            t.cusps = kinds;
            t.validate()?;
            Ok(t)
        }
        (g, false) => Err(ComplementError::NotDoubled(g)),
        (_, true) => {
            let t = slab::triangulate(d)?;
            t.validate()?;
            Ok(t)
        }
    }
}

/// Decompose, double when needed, and triangulate.
pub fn triangulate_code(code: &GaussCode, name: &str) -> Result<Triangulation, ComplementError> {
    let d = octahedral_decomposition_named(code, name)?;
    let d = if d.genus >= 2 { double_decomposition(&d)? } else { d };
    to_triangulation(&d)
}
