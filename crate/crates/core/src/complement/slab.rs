//! Triangulation of the doubled complement `S × S¹ ∖ (L ∪ L̄)`.
//!
//! `L` sits at angle 0 and its mirror `L̄` at angle π. Over each crossing
//! the vertical circle is cut by the four strand points `D, U, Ū, D̄` into
//! the arcs `κ` (D to U), `a⁺` (U to Ū), `κ̄` (Ū to D̄) and `a⁻` (D̄ to D).
//! Each face `R` of the diagram gives two ideal 2-cells `R₀`, `R_π` and
//! two 3-cells: the upper slab `R × (0, π)` and the lower slab
//! `R × (π, 2π)`. Each diagram edge gives an upper and a lower wall.
//!
//! Bigon 2-cells are collapsed, the rest are fan triangulated from a fixed
//! corner, and every slab is coned from one of its ideal vertices.

use std::collections::{BTreeSet, HashMap};

use super::triangulation::{self, Builder, Perm, Triangulation};
use super::{ComplementError, CuspKind, OctahedralDecomposition};
use crate::surface::CellComplex;

/// Ideal vertex of a slab: the strand of side `i` on the bottom or top level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Key {
    Bot(usize),
    Top(usize),
}

/// Arc kinds at a corner: on the bottom level, vertical, on the top level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Kind {
    Low,
    Vert,
    High,
}

/// Arc at corner `.0` of the slab's face. Natural directions: `Low` from
/// `Bot(i)` to `Bot(i + 1)`, `High` from `Top(i)` to `Top(i + 1)`, `Vert`
/// from bottom to top.
type Tag = (usize, Kind);

/// A 2-cell seen from one slab, corners in the 2-cell's canonical order.
#[derive(Debug, Clone)]
struct Occurrence {
    cell: usize,
    keys: Vec<Key>,
    /// Side `j` runs from corner `j` to `j + 1`; `true` if along the tag.
    sides: Vec<(Tag, bool)>,
}

fn slab(cx: &CellComplex, face: usize, upper: bool, edge_of: &[usize]) -> Vec<Occurrence> {
    let hs = &cx.faces[face];
    let p = hs.len();
    let nf = cx.f;
    let ne = cx.edges.len();
    // The strand point keyed by the adjacent side sits between the levels
    // when the half-edge is under (upper slab) or over (lower slab).
    let special = |h: usize| CellComplex::is_over(h) != upper;
    let (low_cell, high_cell) = if upper { (face, nf + face) } else { (nf + face, face) };
    let wall_base = 2 * nf + if upper { 0 } else { ne };

    let mut out = vec![
        Occurrence {
            cell: low_cell,
            keys: (0..p).map(Key::Bot).collect(),
            sides: (0..p).map(|i| ((i, Kind::Low), true)).collect(),
        },
        Occurrence {
            cell: high_cell,
            keys: (0..p).map(Key::Top).collect(),
            sides: (0..p).map(|i| ((i, Kind::High), true)).collect(),
        },
    ];
    for (i, &h) in hs.iter().enumerate() {
        let prev = (i + p - 1) % p;
        let next = (i + 1) % p;
        let mut keys = vec![Key::Bot(i)];
        let mut sides = Vec::new();
        if special(cx.opposite(h)) {
            keys.extend([Key::Bot(next), Key::Top(next)]);
            sides.extend([((i, Kind::Low), true), ((i, Kind::Vert), true), ((i, Kind::High), false)]);
        } else {
            sides.push(((i, Kind::Vert), true));
        }
        keys.push(Key::Top(i));
        if special(h) {
            keys.extend([Key::Top(prev), Key::Bot(prev)]);
            sides.extend([((prev, Kind::High), false), ((prev, Kind::Vert), false), ((prev, Kind::Low), true)]);
        } else {
            sides.push(((prev, Kind::Vert), false));
        }
        let m = keys.len();
        let canonical = cx.edges[edge_of[h]].0 == h;
        if !canonical {
            keys = (0..m).map(|j| keys[(m - j) % m]).collect();
            sides = (0..m)
                .map(|j| {
                    let (t, f) = sides[(2 * m - j - 1) % m];
                    (t, !f)
                })
                .collect();
        }
        out.push(Occurrence {
            cell: wall_base + edge_of[h],
            keys,
            sides,
        });
    }
    out
}

fn find(parent: &mut [(usize, bool)], x: usize) -> (usize, bool) {
    let (p, r) = parent[x];
    if p == x {
        return (x, false);
    }
    let (root, rr) = find(parent, p);
    parent[x] = (root, r ^ rr);
    (root, r ^ rr)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum EdgeId {
    Side(usize),
    Diagonal(usize, usize),
}

/// A boundary edge seen from a triangle: positions of its natural start and
/// end among the triangle's corners.
#[derive(Debug, Clone, Copy)]
struct Slot {
    tri: usize,
    start: usize,
    end: usize,
}

impl Slot {
    fn opposite(&self) -> usize {
        3 - self.start - self.end
    }
}

#[derive(Debug, Clone)]
struct Triangle {
    occ: usize,
    j: usize,
    keys: [Key; 3],
}

/// Where a boundary triangle of a 2-cell ended up: tetrahedron, face, and
/// the tetrahedron vertex at each triangle corner.
#[derive(Debug, Clone, Copy)]
struct Realization {
    tet: usize,
    face: usize,
    verts: [u8; 3],
}

fn cone(
    occs: &[Occurrence],
    slab_index: usize,
    b: &mut Builder,
    real: &mut HashMap<(usize, usize), Vec<Realization>>,
) -> Result<(), ComplementError> {
    let degenerate = || ComplementError::DegenerateCell { cell: slab_index };
    // Side identification, with bigons squeezed out.
    let mut tag_ix: HashMap<Tag, usize> = HashMap::new();
    for o in occs {
        for &(t, _) in &o.sides {
            let k = tag_ix.len();
            tag_ix.entry(t).or_insert(k);
        }
    }
    let mut parent: Vec<(usize, bool)> = (0..tag_ix.len()).map(|i| (i, false)).collect();
    for o in occs.iter().filter(|o| o.keys.len() == 2) {
        let ((t0, f0), (t1, f1)) = (o.sides[0], o.sides[1]);
        let (r0, p0) = find(&mut parent, tag_ix[&t0]);
        let (r1, p1) = find(&mut parent, tag_ix[&t1]);
        let rel = (f0 == f1) ^ p0 ^ p1;
        if r0 == r1 {
            if rel {
                return Err(degenerate());
            }
        } else {
            parent[r1] = (r0, rel);
        }
    }
    let mut side_edge = |t: Tag, along: bool| {
        let (r, par) = find(&mut parent, tag_ix[&t]);
        (EdgeId::Side(r), par == along)
    };

    let mut tris: Vec<Triangle> = Vec::new();
    let mut slots: HashMap<EdgeId, Vec<Slot>> = HashMap::new();
    for (oi, o) in occs.iter().enumerate() {
        let m = o.keys.len();
        if m == 2 {
            continue;
        }
        for j in 1..m - 1 {
            let ti = tris.len();
            tris.push(Triangle {
                occ: oi,
                j,
                keys: [o.keys[0], o.keys[j], o.keys[j + 1]],
            });
            // Edges (0, 1), (1, 2), (2, 0) as (id, reversed against natural).
            let e01 = if j == 1 {
                let (t, f) = o.sides[0];
                side_edge(t, f)
            } else {
                (EdgeId::Diagonal(oi, j), false)
            };
            let e12 = {
                let (t, f) = o.sides[j];
                side_edge(t, f)
            };
            let e20 = if j + 1 == m - 1 {
                let (t, f) = o.sides[m - 1];
                side_edge(t, f)
            } else {
                (EdgeId::Diagonal(oi, j + 1), true)
            };
            for ((id, rev), (a, c)) in [(e01, (0, 1)), (e12, (1, 2)), (e20, (2, 0))] {
                let (start, end) = if rev { (c, a) } else { (a, c) };
                slots.entry(id).or_default().push(Slot { tri: ti, start, end });
            }
        }
    }
    if slots.values().any(|v| v.len() != 2) {
        return Err(degenerate());
    }
    let other = |tri: usize, s: &Slot, id: EdgeId| -> Slot {
        let v = &slots[&id];
        if v[0].tri == tri && v[0].start == s.start && v[0].end == s.end {
            v[1]
        } else {
            v[0]
        }
    };
    let mut tri_slots: Vec<Vec<(EdgeId, Slot)>> = vec![Vec::new(); tris.len()];
    for (&id, v) in &slots {
        for s in v {
            tri_slots[s.tri].push((id, *s));
        }
    }

    // Apex: the ideal vertex on the most triangles, among those that give a
    // proper cone.
    let keys: BTreeSet<Key> = occs.iter().flat_map(|o| o.keys.iter().copied()).collect();
    let mut best: Option<(usize, Key)> = None;
    'apex: for &p in &keys {
        let mut deg = 0;
        for (ti, t) in tris.iter().enumerate() {
            let hits = t.keys.iter().filter(|&&k| k == p).count();
            match hits {
                0 => {}
                1 => {
                    deg += 1;
                    let pos = t.keys.iter().position(|&k| k == p).unwrap();
                    let (id, s) = tri_slots[ti]
                        .iter()
                        .find(|(_, s)| s.opposite() == pos)
                        .copied()
                        .expect("three slots");
                    let o = other(ti, &s, id);
                    if tris[o.tri].keys.contains(&p) {
                        continue 'apex;
                    }
                }
                _ => continue 'apex,
            }
        }
        if best.is_none_or(|(d, _)| deg > d) {
            best = Some((deg, p));
        }
    }
    let (_, p) = best.ok_or_else(degenerate)?;

    let tet_of: Vec<Option<usize>> = tris
        .iter()
        .map(|t| (!t.keys.contains(&p)).then(|| b.add()))
        .collect();
    for (ti, t) in tris.iter().enumerate() {
        let Some(tet) = tet_of[ti] else { continue };
        let o = &occs[t.occ];
        real.entry((o.cell, t.j)).or_default().push(Realization {
            tet,
            face: 0,
            verts: [1, 2, 3],
        });
        for &(id, s) in &tri_slots[ti] {
            let s2 = other(ti, &s, id);
            match tet_of[s2.tri] {
                Some(tet2) => {
                    let mut perm: Perm = [0; 4];
                    perm[s.start + 1] = (s2.start + 1) as u8;
                    perm[s.end + 1] = (s2.end + 1) as u8;
                    perm[s.opposite() + 1] = (s2.opposite() + 1) as u8;
                    b.glue(tet, s.opposite() + 1, tet2, perm)?;
                }
                None => {
                    let mut verts = [0u8; 3];
                    verts[s2.start] = (s.start + 1) as u8;
                    verts[s2.end] = (s.end + 1) as u8;
                    verts[s2.opposite()] = 0;
                    let t2 = &tris[s2.tri];
                    real.entry((occs[t2.occ].cell, t2.j)).or_default().push(Realization {
                        tet,
                        face: s.opposite() + 1,
                        verts,
                    });
                }
            }
        }
    }
    Ok(())
}

pub fn triangulate(d: &OctahedralDecomposition) -> Result<Triangulation, ComplementError> {
    let cx = &d.complex;
    let mut edge_of = vec![usize::MAX; 4 * cx.n];
    for (i, &(o, inn)) in cx.edges.iter().enumerate() {
        edge_of[o] = i;
        edge_of[inn] = i;
    }
    let mut b = Builder::new(0);
    let mut real: HashMap<(usize, usize), Vec<Realization>> = HashMap::new();
    for face in 0..cx.f {
        for upper in [true, false] {
            let occs = slab(cx, face, upper, &edge_of);
            cone(&occs, 2 * face + usize::from(!upper), &mut b, &mut real)?;
        }
    }
    for (&(cell, _), r) in &real {
        let [r1, r2] = r.as_slice() else {
            return Err(ComplementError::DegenerateCell { cell });
        };
        let mut perm: Perm = [0; 4];
        for q in 0..3 {
            perm[r1.verts[q] as usize] = r2.verts[q];
        }
        perm[r1.face] = r2.face as u8;
        b.glue(r1.tet, r1.face, r2.tet, perm)?;
    }
    let mut tets = b.finish()?;
    triangulation::orient(&mut tets)?;
    let mut t = Triangulation {
        name: d.name.clone(),
        doubled: true,
        genus: d.genus,
        components: d.components,
        tets,
        cusps: Vec::new(),
    };
    let (_, k) = t.vertex_classes();
    t.cusps = vec![CuspKind::Link; k];
    Ok(t)
}
