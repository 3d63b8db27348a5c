//! Signed Gauss codes.
//!
//! A code is a list of cyclic words, one per link component. Every crossing
//! id appears exactly twice, once as an over-passage and once as an
//! under-passage, and both appearances carry the crossing sign.
//!
//! Text form: `O1+U2-O2-U1+`, components joined by `|`. Whitespace is
//! ignored on input and never emitted.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Passage {
    Over,
    Under,
}

impl Passage {
    pub fn flip(self) -> Passage {
        match self {
            Passage::Over => Passage::Under,
            Passage::Under => Passage::Over,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Passage::Over => 'O',
            Passage::Under => 'U',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn value(self) -> i32 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Symbol {
    pub id: u32,
    pub passage: Passage,
    pub sign: Sign,
}

impl Symbol {
    pub fn new(id: u32, passage: Passage, sign: Sign) -> Symbol {
        Symbol { id, passage, sign }
    }

    pub fn over(id: u32, sign: Sign) -> Symbol {
        Symbol::new(id, Passage::Over, sign)
    }

    pub fn under(id: u32, sign: Sign) -> Symbol {
        Symbol::new(id, Passage::Under, sign)
    }

    /// Over/under swapped and sign negated.
    pub fn switched(self) -> Symbol {
        Symbol::new(self.id, self.passage.flip(), self.sign.flip())
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.passage.letter(), self.id, self.sign.symbol())
    }
}

/// A gap between symbols: `index` is the number of symbols before it, so
/// `0..=len` are all valid and `len` is the same gap as `0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gap {
    pub component: usize,
    pub index: usize,
}

impl Gap {
    pub fn new(component: usize, index: usize) -> Gap {
        Gap { component, index }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaussError {
    #[error("syntax error at column {column}: expected {expected}, found {found}")]
    Syntax {
        column: usize,
        expected: &'static str,
        found: String,
    },
    #[error("crossing {id} appears {count} time(s), expected 2")]
    Occurrences { id: u32, count: usize },
    #[error("crossing {id} has two {passage:?} passages")]
    SamePassage { id: u32, passage: Passage },
    #[error("crossing {id} carries different signs on its two passages")]
    SignMismatch { id: u32 },
    #[error("unknown crossing id {0}")]
    UnknownId(u32),
    #[error("no gap {index} in component {component}")]
    InvalidGap { component: usize, index: usize },
    #[error("expected a one-component code, got {0} components")]
    NotAKnot(usize),
}

/// A validated signed Gauss code.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct GaussCode {
    components: Vec<Vec<Symbol>>,
}

impl GaussCode {
    /// The 0-crossing unknot.
    pub fn unknot() -> GaussCode {
        GaussCode {
            components: vec![Vec::new()],
        }
    }

    pub fn from_components(components: Vec<Vec<Symbol>>) -> Result<GaussCode, GaussError> {
        let code = GaussCode { components };
        code.validate()?;
        Ok(code)
    }

    fn validate(&self) -> Result<(), GaussError> {
        let mut seen: BTreeMap<u32, Vec<Symbol>> = BTreeMap::new();
        for s in self.components.iter().flatten() {
            seen.entry(s.id).or_default().push(*s);
        }
        for (&id, occ) in &seen {
            if occ.len() != 2 {
                return Err(GaussError::Occurrences {
                    id,
                    count: occ.len(),
                });
            }
            if occ[0].passage == occ[1].passage {
                return Err(GaussError::SamePassage {
                    id,
                    passage: occ[0].passage,
                });
            }
            if occ[0].sign != occ[1].sign {
                return Err(GaussError::SignMismatch { id });
            }
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<GaussCode, GaussError> {
        let chars: Vec<(usize, char)> = text
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| (i + 1, c))
            .collect();
        let end_col = text.chars().count() + 1;
        let found = |k: usize| -> (usize, String) {
            match chars.get(k) {
                Some(&(col, c)) => (col, format!("'{c}'")),
                None => (end_col, "end of input".to_string()),
            }
        };
        let mut components = vec![Vec::new()];
        let mut k = 0;
        while k < chars.len() {
            let passage = match chars[k].1 {
                'O' => Passage::Over,
                'U' => Passage::Under,
                '|' => {
                    components.push(Vec::new());
                    k += 1;
                    continue;
                }
                _ => {
                    let (column, found) = found(k);
                    return Err(GaussError::Syntax {
                        column,
                        expected: "'O', 'U' or '|'",
                        found,
                    });
                }
            };
            k += 1;
            let start = k;
            while k < chars.len() && chars[k].1.is_ascii_digit() {
                k += 1;
            }
            let digits: String = chars[start..k].iter().map(|&(_, c)| c).collect();
            let id = match digits.parse::<u32>() {
                Ok(v) if v > 0 && !digits.starts_with('0') => v,
                _ => {
                    let (column, found) = found(start);
                    return Err(GaussError::Syntax {
                        column,
                        expected: "a nonzero crossing number",
                        found,
                    });
                }
            };
            let sign = match chars.get(k).map(|&(_, c)| c) {
                Some('+') => Sign::Pos,
                Some('-') => Sign::Neg,
                _ => {
                    let (column, found) = found(k);
                    return Err(GaussError::Syntax {
                        column,
                        expected: "'+' or '-'",
                        found,
                    });
                }
            };
            k += 1;
            components.last_mut().unwrap().push(Symbol::new(id, passage, sign));
        }
        GaussCode::from_components(components)
    }

    pub fn components(&self) -> &[Vec<Symbol>] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.components.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.crossing_count() == 0
    }

    /// Crossing ids in increasing order.
    pub fn ids(&self) -> Vec<u32> {
        let mut ids: Vec<u32> = self
            .components
            .iter()
            .flatten()
            .filter(|s| s.passage == Passage::Over)
            .map(|s| s.id)
            .collect();
        ids.sort_unstable();
        ids
    }

    pub fn max_id(&self) -> u32 {
        self.components.iter().flatten().map(|s| s.id).max().unwrap_or(0)
    }

    pub fn contains(&self, id: u32) -> bool {
        self.components.iter().flatten().any(|s| s.id == id)
    }

    pub fn sign_of(&self, id: u32) -> Option<Sign> {
        self.components
            .iter()
            .flatten()
            .find(|s| s.id == id)
            .map(|s| s.sign)
    }

    /// (component, index) of the over and under passage of every crossing.
    pub fn positions(&self) -> HashMap<u32, [(usize, usize); 2]> {
        let mut out: HashMap<u32, [(usize, usize); 2]> = HashMap::new();
        for (ci, comp) in self.components.iter().enumerate() {
            for (i, s) in comp.iter().enumerate() {
                let slot = match s.passage {
                    Passage::Over => 0,
                    Passage::Under => 1,
                };
                out.entry(s.id).or_insert([(0, 0); 2])[slot] = (ci, i);
            }
        }
        out
    }

    pub fn is_reduced(&self) -> bool {
        self.adjacent_id().is_none()
    }

    fn adjacent_id(&self) -> Option<u32> {
        let mut best: Option<u32> = None;
        for comp in &self.components {
            let n = comp.len();
            for i in 0..n {
                if n >= 2 && comp[i].id == comp[(i + 1) % n].id {
                    best = Some(best.map_or(comp[i].id, |b| b.min(comp[i].id)));
                }
            }
        }
        best
    }

    /// Delete kinks until none remain, smallest id first.
    pub fn reduce(&self) -> GaussCode {
        let mut code = self.clone();
        while let Some(id) = code.adjacent_id() {
            code = code.without(id);
        }
        code
    }

    /// Both occurrences of `id` deleted. Unknown ids leave the code unchanged.
    pub fn without(&self, id: u32) -> GaussCode {
        GaussCode {
            components: self
                .components
                .iter()
                .map(|c| c.iter().copied().filter(|s| s.id != id).collect())
                .collect(),
        }
    }

    pub fn is_alternating(&self) -> bool {
        self.components.iter().all(|comp| {
            let n = comp.len();
            (0..n).all(|i| comp[i].passage != comp[(i + 1) % n].passage)
        })
    }

    pub fn switch_crossing(&self, id: u32) -> Result<GaussCode, GaussError> {
        if !self.contains(id) {
            return Err(GaussError::UnknownId(id));
        }
        Ok(self.map_symbols(|s| if s.id == id { s.switched() } else { s }))
    }

    /// Every crossing switched: the mirror image through the surface.
    pub fn reflect(&self) -> GaussCode {
        self.map_symbols(Symbol::switched)
    }

    fn map_symbols(&self, f: impl Fn(Symbol) -> Symbol) -> GaussCode {
        GaussCode {
            components: self
                .components
                .iter()
                .map(|c| c.iter().map(|&s| f(s)).collect())
                .collect(),
        }
    }

    /// Ids renamed through `f`, which must be injective on the ids present.
    pub fn relabel(&self, f: impl Fn(u32) -> u32) -> Result<GaussCode, GaussError> {
        GaussCode::from_components(
            self.components
                .iter()
                .map(|c| c.iter().map(|s| Symbol::new(f(s.id), s.passage, s.sign)).collect())
                .collect(),
        )
    }

    /// Component `component` rotated left by `by` symbols.
    pub fn rotate(&self, component: usize, by: usize) -> GaussCode {
        let mut out = self.clone();
        if let Some(c) = out.components.get_mut(component) {
            if !c.is_empty() {
                let k = by % c.len();
                c.rotate_left(k);
            }
        }
        out
    }

    pub fn check_gap(&self, gap: Gap) -> Result<(), GaussError> {
        match self.components.get(gap.component) {
            Some(c) if gap.index <= c.len() => Ok(()),
            _ => Err(GaussError::InvalidGap {
                component: gap.component,
                index: gap.index,
            }),
        }
    }

    /// All distinct gaps of a component (`len` is identified with `0`).
    pub fn gaps(&self, component: usize) -> Vec<Gap> {
        let n = self.components.get(component).map_or(0, Vec::len);
        (0..n.max(1)).map(|i| Gap::new(component, i)).collect()
    }

    /// Textual insertion of the knot `b`, opened at gap `point_b`, into `self`
    /// at `point_a`. Ids of `b` are shifted above the largest id of `self`.
    pub fn connected_sum(
        &self,
        point_a: Gap,
        b: &GaussCode,
        point_b: usize,
    ) -> Result<GaussCode, GaussError> {
        if b.component_count() != 1 {
            return Err(GaussError::NotAKnot(b.component_count()));
        }
        self.check_gap(point_a)?;
        b.check_gap(Gap::new(0, point_b))?;
        let shift = self.max_id();
        let word = &b.components[0];
        let mut opened: Vec<Symbol> = Vec::with_capacity(word.len());
        for k in 0..word.len() {
            let s = word[(point_b + k) % word.len()];
            opened.push(Symbol::new(s.id + shift, s.passage, s.sign));
        }
        let mut components = self.components.clone();
        let target = &mut components[point_a.component];
        let tail = target.split_off(point_a.index);
        target.extend(opened);
        target.extend(tail);
        Ok(GaussCode { components })
    }

    /// True when the crossings connect every component to every other; a
    /// lone component always counts as connected.
    pub fn is_connected(&self) -> bool {
        let k = self.components.len();
        if k <= 1 {
            return true;
        }
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for [(a, _), (b, _)] in self.positions().into_values() {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        let root = find(&mut parent, 0);
        (0..k).all(|c| find(&mut parent, c) == root)
    }

    /// Deterministic representative up to rotation of each component,
    /// reordering of components and renaming of ids.
    ///
    /// Components are compared as token lists `(label, passage, sign)` with
    /// labels handed out in order of first appearance; the result is the
    /// lexicographically least arrangement.
    pub fn canonical_form(&self) -> GaussCode {
        #[derive(Clone)]
        struct State {
            used: Vec<bool>,
            labels: HashMap<u32, u32>,
            out: Vec<Vec<Symbol>>,
        }
        let k = self.components.len();
        let mut empties = 0;
        let mut used0 = vec![false; k];
        for (i, c) in self.components.iter().enumerate() {
            if c.is_empty() {
                used0[i] = true;
                empties += 1;
            }
        }
        let mut beam = vec![State {
            used: used0,
            labels: HashMap::new(),
            out: vec![Vec::new(); empties],
        }];
        for _ in empties..k {
            let mut best: Option<Vec<(u32, Passage, Sign)>> = None;
            let mut next: Vec<State> = Vec::new();
            let mut seen: std::collections::HashSet<(Vec<bool>, Vec<(u32, u32)>)> =
                std::collections::HashSet::new();
            for st in &beam {
                for (ci, comp) in self.components.iter().enumerate() {
                    if st.used[ci] {
                        continue;
                    }
                    for r in 0..comp.len() {
                        let mut labels = st.labels.clone();
                        let mut tokens = Vec::with_capacity(comp.len());
                        for j in 0..comp.len() {
                            let s = comp[(r + j) % comp.len()];
                            let n = labels.len() as u32 + 1;
                            let l = *labels.entry(s.id).or_insert(n);
                            tokens.push((l, s.passage, s.sign));
                        }
                        let better = match &best {
                            None => true,
                            Some(b) => tokens < *b,
                        };
                        if better {
                            best = Some(tokens.clone());
                            next.clear();
                            seen.clear();
                        }
                        if best.as_ref() == Some(&tokens) {
                            let mut used = st.used.clone();
                            used[ci] = true;
                            let mut key: Vec<(u32, u32)> =
                                labels.iter().map(|(&a, &b)| (a, b)).collect();
                            key.sort_unstable();
                            if seen.insert((used.clone(), key)) {
                                let mut out = st.out.clone();
                                out.push(
                                    tokens
                                        .iter()
                                        .map(|&(l, p, s)| Symbol::new(l, p, s))
                                        .collect(),
                                );
                                next.push(State { used, labels, out });
                            }
                        }
                    }
                }
            }
            beam = next;
        }
        GaussCode {
            components: beam.swap_remove(0).out,
        }
    }
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, comp) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            for s in comp {
                write!(f, "{s}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for GaussCode {
    type Err = GaussError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GaussCode::parse(s)
    }
}

impl TryFrom<String> for GaussCode {
    type Error = GaussError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        GaussCode::parse(&s)
    }
}

impl From<GaussCode> for String {
    fn from(c: GaussCode) -> String {
        c.to_string()
    }
}
