//! Dowker–Thistlethwaite codes for classical knots.

use thiserror::Error;

use crate::gauss::{GaussCode, Passage};
use crate::surface::{self, SurfaceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DtError {
    #[error("DT codes need a knot, got {0} components")]
    Components(usize),
    #[error("DT codes need a classical code, got genus {0}")]
    NotClassical(usize),
    #[error("crossing {0} is met twice at positions of the same parity")]
    Parity(u32),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// For each odd position `1, 3, .., 2n - 1` the even position of the same
/// crossing, negative when the even passage is over.
pub fn gauss_to_dt(code: &GaussCode) -> Result<Vec<i64>, DtError> {
    if code.component_count() != 1 {
        return Err(DtError::Components(code.component_count()));
    }
    let g = surface::ribbon_genus(code)?;
    if g != 0 {
        return Err(DtError::NotClassical(g));
    }
    let word = &code.components()[0];
    let mut out = Vec::with_capacity(word.len() / 2);
    for (i, s) in word.iter().enumerate().step_by(2) {
        let j = word
            .iter()
            .enumerate()
            .position(|(k, t)| k != i && t.id == s.id)
            .expect("two appearances");
        if j % 2 == 0 {
            return Err(DtError::Parity(s.id));
        }
        let even = (j + 1) as i64;
        out.push(if word[j].passage == Passage::Over { -even } else { even });
    }
    Ok(out)
}

/// Space-separated DT line.
pub fn format_dt(dt: &[i64]) -> String {
    dt.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil() {
        let t = GaussCode::parse(surface::TREFOIL).unwrap();
        assert_eq!(format_dt(&gauss_to_dt(&t).unwrap()), "4 6 2");
    }

    #[test]
    fn figure_eight_signs() {
        let f = GaussCode::parse(surface::FIGURE_EIGHT).unwrap();
        let dt = gauss_to_dt(&f).unwrap();
        assert_eq!(dt.len(), 4);
        let mut abs: Vec<i64> = dt.iter().map(|x| x.abs()).collect();
        abs.sort();
        assert_eq!(abs, vec![2, 4, 6, 8]);
    }

    #[test]
    fn rejects() {
        let v = GaussCode::parse("O1+O2+U1+U2+").unwrap();
        assert_eq!(gauss_to_dt(&v), Err(DtError::NotClassical(1)));
        let l = GaussCode::parse("O1+U2+|U1+O2+").unwrap();
        assert_eq!(gauss_to_dt(&l), Err(DtError::Components(2)));
        assert_eq!(gauss_to_dt(&GaussCode::unknot()), Ok(vec![]));
    }
}
