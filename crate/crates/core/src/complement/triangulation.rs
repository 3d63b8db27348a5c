//! Ideal triangulations: gluing data, validation, orientation and text IO.

use std::fmt::Write as _;
use std::io;

use serde::Serialize;
use thiserror::Error;

/// Vertex map of a face gluing: vertex `v` of one tetrahedron goes to
/// vertex `p[v]` of its neighbour. Face `f` (opposite vertex `f`) goes to
/// face `p[f]`.
pub type Perm = [u8; 4];

pub const IDENTITY: Perm = [0, 1, 2, 3];

pub fn inverse(p: Perm) -> Perm {
    let mut q = [0; 4];
    for (i, &v) in p.iter().enumerate() {
        q[v as usize] = i as u8;
    }
    q
}

/// `a ∘ b`: apply `b` first.
pub fn compose(a: Perm, b: Perm) -> Perm {
    [0, 1, 2, 3].map(|i| a[b[i] as usize])
}

pub fn is_even(p: Perm) -> bool {
    let mut inv = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 0
}

pub fn is_perm(p: Perm) -> bool {
    let mut seen = [false; 4];
    p.iter().all(|&v| v < 4 && !std::mem::replace(&mut seen[v as usize], true))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Tet {
    pub neighbors: [usize; 4],
    pub gluings: [Perm; 4],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CuspKind {
    Link,
    Boundary,
}

impl CuspKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CuspKind::Link => "link",
            CuspKind::Boundary => "boundary",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriError {
    #[error("face {face} of tetrahedron {tet} is glued twice")]
    Reglued { tet: usize, face: usize },
    #[error("face {face} of tetrahedron {tet} is not glued")]
    Unglued { tet: usize, face: usize },
    #[error("gluing of tetrahedron {tet} face {face} is not an involution")]
    NotInvolutive { tet: usize, face: usize },
    #[error("tetrahedron {tet} face {face} carries an invalid permutation")]
    BadPerm { tet: usize, face: usize },
    #[error("gluing of tetrahedron {tet} face {face} reverses orientation")]
    NotOriented { tet: usize, face: usize },
    #[error("triangulation is not orientable")]
    NonOrientable,
    #[error("Euler characteristic is {0}, expected 0")]
    Euler(i64),
    #[error("vertex link of cusp {cusp} has Euler characteristic {chi}")]
    VertexLink { cusp: usize, chi: i64 },
    #[error("{found} cusp classes but {labels} cusp labels")]
    CuspCount { found: usize, labels: usize },
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
}

/// Summary of a validated triangulation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriReport {
    pub tetrahedra: usize,
    pub edges: usize,
    pub cusps: usize,
    pub euler: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Triangulation {
    pub name: String,
    pub doubled: bool,
    pub genus: usize,
    pub components: usize,
    pub tets: Vec<Tet>,
    /// Indexed by cusp class, classes numbered by first appearance over
    /// (tetrahedron, vertex) in increasing order.
    pub cusps: Vec<CuspKind>,
}

/// Incrementally glued tetrahedra.
#[derive(Debug, Clone)]
pub(crate) struct Builder {
    neighbors: Vec<[usize; 4]>,
    gluings: Vec<[Perm; 4]>,
}

impl Builder {
    pub fn new(n: usize) -> Builder {
        Builder {
            neighbors: vec![[usize::MAX; 4]; n],
            gluings: vec![[IDENTITY; 4]; n],
        }
    }

    pub fn add(&mut self) -> usize {
        self.neighbors.push([usize::MAX; 4]);
        self.gluings.push([IDENTITY; 4]);
        self.neighbors.len() - 1
    }

    /// Glue face `face` of `a` to `b` by `p`, and the inverse back.
    pub fn glue(&mut self, a: usize, face: usize, b: usize, p: Perm) -> Result<(), TriError> {
        let back = p[face] as usize;
        let free_or_same = |t: usize, f: usize, u: usize, q: Perm| {
            self.neighbors[t][f] == usize::MAX
                || (self.neighbors[t][f] == u && self.gluings[t][f] == q)
        };
        if !free_or_same(a, face, b, p) {
            return Err(TriError::Reglued { tet: a, face });
        }
        if !free_or_same(b, back, a, inverse(p)) {
            return Err(TriError::Reglued { tet: b, face: back });
        }
        self.neighbors[a][face] = b;
        self.gluings[a][face] = p;
        self.neighbors[b][back] = a;
        self.gluings[b][back] = inverse(p);
        Ok(())
    }

    pub fn finish(self) -> Result<Vec<Tet>, TriError> {
        self.neighbors
            .iter()
            .zip(&self.gluings)
            .enumerate()
            .map(|(t, (n, g))| {
                if let Some(f) = n.iter().position(|&x| x == usize::MAX) {
                    return Err(TriError::Unglued { tet: t, face: f });
                }
                Ok(Tet {
                    neighbors: *n,
                    gluings: *g,
                })
            })
            .collect()
    }
}

fn find(p: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while p[r] != r {
        r = p[r];
    }
    let mut y = x;
    while p[y] != r {
        let next = p[y];
        p[y] = r;
        y = next;
    }
    r
}

fn union(p: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(p, a), find(p, b));
    if ra != rb {
        p[ra.max(rb)] = ra.min(rb);
    }
}

/// Relabel so that every gluing is orientation-reversing (odd). Fails when
/// the gluings admit no consistent orientation.
pub fn orient(tets: &mut [Tet]) -> Result<(), TriError> {
    let n = tets.len();
    let mut flip: Vec<Option<bool>> = vec![None; n];
    for root in 0..n {
        if flip[root].is_some() {
            continue;
        }
        flip[root] = Some(false);
        let mut stack = vec![root];
        while let Some(t) = stack.pop() {
            let ft = flip[t].unwrap();
            for f in 0..4 {
                let u = tets[t].neighbors[f];
                let want = ft ^ is_even(tets[t].gluings[f]);
                match flip[u] {
                    None => {
                        flip[u] = Some(want);
                        stack.push(u);
                    }
                    Some(x) if x != want => return Err(TriError::NonOrientable),
                    _ => {}
                }
            }
        }
    }
    const SWAP: Perm = [0, 1, 3, 2];
    let sigma = |t: usize| if flip[t] == Some(true) { SWAP } else { IDENTITY };
    let old = tets.to_vec();
    for (t, tet) in tets.iter_mut().enumerate() {
        let st = sigma(t);
        for f in 0..4 {
            let u = old[t].neighbors[f];
            let p = compose(sigma(u), compose(old[t].gluings[f], inverse(st)));
            tet.neighbors[st[f] as usize] = u;
            tet.gluings[st[f] as usize] = p;
        }
    }
    Ok(())
}

impl Triangulation {
    /// Class of every (tetrahedron, vertex), numbered by first appearance.
    pub fn vertex_classes(&self) -> (Vec<[usize; 4]>, usize) {
        let n = self.tets.len();
        let mut p: Vec<usize> = (0..4 * n).collect();
        for (t, tet) in self.tets.iter().enumerate() {
            for f in 0..4 {
                let u = tet.neighbors[f];
                let g = tet.gluings[f];
                for v in 0..4 {
                    if v != f {
                        union(&mut p, 4 * t + v, 4 * u + g[v] as usize);
                    }
                }
            }
        }
        renumber(&mut p, n)
    }

    /// Class of every (tetrahedron, edge), edges indexed as in [`EDGES`].
    pub fn edge_classes(&self) -> (Vec<[usize; 6]>, usize) {
        let n = self.tets.len();
        let mut p: Vec<usize> = (0..6 * n).collect();
        for (t, tet) in self.tets.iter().enumerate() {
            for f in 0..4 {
                let u = tet.neighbors[f];
                let g = tet.gluings[f];
                for (e, &(a, b)) in EDGES.iter().enumerate() {
                    if a != f && b != f {
                        let (x, y) = (g[a] as usize, g[b] as usize);
                        union(&mut p, 6 * t + e, 6 * u + edge_index(x, y));
                    }
                }
            }
        }
        let mut out = vec![[0; 6]; n];
        let mut ids = std::collections::HashMap::new();
        for t in 0..n {
            for e in 0..6 {
                let r = find(&mut p, 6 * t + e);
                let k = ids.len();
                out[t][e] = *ids.entry(r).or_insert(k);
            }
        }
        (out, ids.len())
    }

    /// Check gluing consistency, orientation, Euler characteristic, torus
    /// vertex links and the number of cusp labels.
    pub fn validate(&self) -> Result<TriReport, TriError> {
        let n = self.tets.len();
        for (t, tet) in self.tets.iter().enumerate() {
            for f in 0..4 {
                let (u, g) = (tet.neighbors[f], tet.gluings[f]);
                if !is_perm(g) || u >= n {
                    return Err(TriError::BadPerm { tet: t, face: f });
                }
                let back = g[f] as usize;
                if self.tets[u].neighbors[back] != t || self.tets[u].gluings[back] != inverse(g) {
                    return Err(TriError::NotInvolutive { tet: t, face: f });
                }
                if is_even(g) {
                    return Err(TriError::NotOriented { tet: t, face: f });
                }
            }
        }
        let (edge_of, edges) = self.edge_classes();
        let euler = n as i64 - edges as i64;
        if euler != 0 {
            return Err(TriError::Euler(euler));
        }
        let (vert_of, cusps) = self.vertex_classes();
        if cusps != self.cusps.len() {
            return Err(TriError::CuspCount {
                found: cusps,
                labels: self.cusps.len(),
            });
        }
        // Vertex link of each cusp: one triangle per corner, edge ends counted
        // once per (edge class, end).
        let mut tri = vec![0i64; cusps];
        for t in 0..n {
            for v in 0..4 {
                tri[vert_of[t][v]] += 1;
            }
        }
        let mut ends = vec![0i64; cusps];
        let mut seen = std::collections::HashSet::new();
        for t in 0..n {
            for (e, &(a, b)) in EDGES.iter().enumerate() {
                let class = edge_of[t][e];
                if seen.insert(class) {
                    ends[vert_of[t][a]] += 1;
                    ends[vert_of[t][b]] += 1;
                }
            }
        }
        for c in 0..cusps {
            let chi = ends[c] - 3 * tri[c] / 2 + tri[c];
            if chi != 0 {
                return Err(TriError::VertexLink { cusp: c, chi });
            }
        }
        Ok(TriReport {
            tetrahedra: n,
            edges,
            cusps,
            euler,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let name: String = self
            .name
            .chars()
            .map(|c| if c.is_whitespace() { '_' } else { c })
            .collect();
        writeln!(s, "tri {name}").unwrap();
        writeln!(
            s,
            "doubled {} genus {} components {}",
            self.doubled, self.genus, self.components
        )
        .unwrap();
        writeln!(s, "ntet {}", self.tets.len()).unwrap();
        for (i, t) in self.tets.iter().enumerate() {
            let p: Vec<String> = t
                .gluings
                .iter()
                .map(|g| g.iter().map(|d| char::from(b'0' + d)).collect())
                .collect();
            writeln!(
                s,
                "tet {i} {} {} {} {} {} {} {} {}",
                t.neighbors[0], t.neighbors[1], t.neighbors[2], t.neighbors[3], p[0], p[1], p[2], p[3]
            )
            .unwrap();
        }
        writeln!(s, "cusps {}", self.cusps.len()).unwrap();
        for (j, c) in self.cusps.iter().enumerate() {
            writeln!(s, "cusp {j} {}", c.as_str()).unwrap();
        }
        s
    }

    pub fn write_to(&self, mut sink: impl io::Write) -> io::Result<()> {
        sink.write_all(self.to_text().as_bytes())
    }

    pub fn parse(text: &str) -> Result<Triangulation, TriError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let mut next = |what: &str| {
            lines.next().ok_or_else(|| TriError::Format {
                line: 0,
                msg: format!("missing {what}"),
            })
        };
        let bad = |line: usize, msg: &str| TriError::Format {
            line,
            msg: msg.to_string(),
        };
        let (ln, l) = next("tri line")?;
        let name = l
            .strip_prefix("tri ")
            .ok_or_else(|| bad(ln, "expected 'tri <name>'"))?
            .to_string();
        let (ln, l) = next("doubled line")?;
        let w: Vec<&str> = l.split(' ').collect();
        let (doubled, genus, components) = match w.as_slice() {
            ["doubled", d, "genus", g, "components", t] => (
                match *d {
                    "true" => true,
                    "false" => false,
                    _ => return Err(bad(ln, "doubled must be true or false")),
                },
                g.parse().map_err(|_| bad(ln, "bad genus"))?,
                t.parse().map_err(|_| bad(ln, "bad component count"))?,
            ),
            _ => return Err(bad(ln, "expected 'doubled <b> genus <g> components <t>'")),
        };
        let (ln, l) = next("ntet line")?;
        let ntet: usize = l
            .strip_prefix("ntet ")
            .and_then(|x| x.parse().ok())
            .ok_or_else(|| bad(ln, "expected 'ntet <N>'"))?;
        let mut tets = Vec::with_capacity(ntet);
        for i in 0..ntet {
            let (ln, l) = next("tet line")?;
            let w: Vec<&str> = l.split(' ').collect();
            if w.len() != 10 || w[0] != "tet" || w[1] != i.to_string() {
                return Err(bad(ln, &format!("expected 'tet {i} ...'")));
            }
            let mut neighbors = [0; 4];
            let mut gluings = [IDENTITY; 4];
            for k in 0..4 {
                neighbors[k] = w[2 + k].parse().map_err(|_| bad(ln, "bad neighbour"))?;
                let s = w[6 + k].as_bytes();
                if s.len() != 4 || s.iter().any(|c| !(b'0'..=b'3').contains(c)) {
                    return Err(bad(ln, "bad permutation"));
                }
                gluings[k] = [s[0] - b'0', s[1] - b'0', s[2] - b'0', s[3] - b'0'];
            }
            tets.push(Tet { neighbors, gluings });
        }
        let (ln, l) = next("cusps line")?;
        let k: usize = l
            .strip_prefix("cusps ")
            .and_then(|x| x.parse().ok())
            .ok_or_else(|| bad(ln, "expected 'cusps <k>'"))?;
        let mut cusps = Vec::with_capacity(k);
        for j in 0..k {
            let (ln, l) = next("cusp line")?;
            let kind = match l.strip_prefix(&format!("cusp {j} ")) {
                Some("link") => CuspKind::Link,
                Some("boundary") => CuspKind::Boundary,
                _ => return Err(bad(ln, &format!("expected 'cusp {j} <link|boundary>'"))),
            };
            cusps.push(kind);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(bad(ln, "trailing content"));
        }
        Ok(Triangulation {
            name,
            doubled,
            genus,
            components,
            tets,
            cusps,
        })
    }
}

/// Edges of a tetrahedron as vertex pairs.
pub const EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub fn edge_index(a: usize, b: usize) -> usize {
    let (a, b) = (a.min(b), a.max(b));
    EDGES.iter().position(|&e| e == (a, b)).expect("distinct vertices")
}

fn renumber(p: &mut [usize], n: usize) -> (Vec<[usize; 4]>, usize) {
    let mut out = vec![[0; 4]; n];
    let mut ids = std::collections::HashMap::new();
    for t in 0..n {
        for v in 0..4 {
            let r = find(p, 4 * t + v);
            let k = ids.len();
            out[t][v] = *ids.entry(r).or_insert(k);
        }
    }
    (out, ids.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn virtual_trefoil() -> Triangulation {
        let code = "O1-O2-U1-U2-".parse().unwrap();
        crate::complement::triangulate_code(&code, "2.1").unwrap()
    }

    #[test]
    fn perm_algebra() {
        let p = [1, 2, 0, 3];
        assert_eq!(compose(p, inverse(p)), IDENTITY);
        assert!(is_even(p));
        assert!(!is_even([1, 0, 2, 3]));
        assert!(!is_perm([0, 0, 1, 2]));
    }

    #[test]
    fn virtual_trefoil_validates() {
        let t = virtual_trefoil();
        let r = t.validate().unwrap();
        assert_eq!((r.tetrahedra, r.edges, r.cusps), (8, 8, 3));
    }

    #[test]
    fn broken_gluing_is_caught() {
        let mut t = virtual_trefoil();
        t.tets[0].gluings[0] = [0, 0, 1, 2];
        assert!(matches!(t.validate(), Err(TriError::BadPerm { tet: 0, face: 0 })));
        let mut t = virtual_trefoil();
        t.cusps.pop();
        assert!(matches!(t.validate(), Err(TriError::CuspCount { .. })));
    }

    #[test]
    fn text_round_trip() {
        let t = virtual_trefoil();
        let s = t.to_text();
        assert!(s.starts_with("tri 2.1\ndoubled false genus 1 components 1\nntet 8\n"));
        assert_eq!(Triangulation::parse(&s).unwrap(), t);
        assert!(Triangulation::parse(&s.replace("ntet 8", "ntet x")).is_err());
        assert!(Triangulation::parse(&format!("{s}extra\n")).is_err());
    }

    #[test]
    fn orient_repairs_relabelled_tet() {
        let mut t = virtual_trefoil();
        // Relabel tetrahedron 1 by swapping vertices 0 and 1.
        let s: Perm = [1, 0, 2, 3];
        let old = t.tets.clone();
        for (i, tet) in t.tets.iter_mut().enumerate() {
            for f in 0..4 {
                let (u, g) = (old[i].neighbors[f], old[i].gluings[f]);
                let si = if i == 1 { s } else { IDENTITY };
                let su = if u == 1 { s } else { IDENTITY };
                tet.neighbors[si[f] as usize] = u;
                tet.gluings[si[f] as usize] = compose(su, compose(g, inverse(si)));
            }
        }
        assert!(matches!(t.validate(), Err(TriError::NotOriented { .. })));
        orient(&mut t.tets).unwrap();
        assert!(t.validate().is_ok());
    }
}
