//! Canonical forms of skew-symmetric matrices under simultaneous permutation.
//!
//! Vertices are split by iterated refinement on weighted-neighbor signatures,
//! then remaining ties are broken by individualizing each vertex of the first
//! smallest non-singleton cell in turn. The lexicographically least row-major
//! serialization over all leaves is the canonical form. Vertices whose
//! transposition is an automorphism are explored only once.

use crate::error::{Error, Result};
use crate::matrix::ExchangeMatrix;

/// Largest dimension accepted by [`canonical_form`].
pub const CANONICAL_BOUND: usize = 32;

/// Canonical representative; `labels()` records where each row came from.
pub fn canonical_form(b: &ExchangeMatrix) -> Result<ExchangeMatrix> {
    Ok(b.permuted(&canonical_permutation(b)?))
}

/// Upper triangle of the canonical form, enough to identify the orbit.
pub fn canonical_key(b: &ExchangeMatrix) -> Result<Vec<i64>> {
    let perm = canonical_permutation(b)?;
    let n = perm.len();
    let mut key = Vec::with_capacity(n * n.saturating_sub(1) / 2 + 1);
    key.push(n as i64);
    for i in 0..n {
        for j in i + 1..n {
            key.push(b.get(perm[i], perm[j]));
        }
    }
    Ok(key)
}

/// Row `i` of the canonical form is row `perm[i]` of `b`.
pub fn canonical_permutation(b: &ExchangeMatrix) -> Result<Vec<usize>> {
    let n = b.n();
    if n > CANONICAL_BOUND {
        return Err(Error::DimensionTooLarge { n, bound: CANONICAL_BOUND });
    }
    if n == 0 {
        return Ok(vec![]);
    }
    let mut best: Option<(Vec<i64>, Vec<usize>)> = None;
    search(b, vec![(0..n).collect()], &mut best);
    Ok(best.expect("at least one leaf").1)
}

fn search(b: &ExchangeMatrix, cells: Vec<Vec<usize>>, best: &mut Option<(Vec<i64>, Vec<usize>)>) {
    let cells = refine(b, cells);
    let target = cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() > 1)
        .min_by_key(|(i, c)| (c.len(), *i))
        .map(|(i, _)| i);
    let Some(ci) = target else {
        let perm: Vec<usize> = cells.into_iter().flatten().collect();
        let ser = serialize(b, &perm);
        if best.as_ref().map_or(true, |(s, _)| ser < *s) {
            *best = Some((ser, perm));
        }
        return;
    };
    let cell = &cells[ci];
    let mut reps: Vec<usize> = Vec::new();
    for &v in cell {
        if !reps.iter().any(|&r| twins(b, r, v)) {
            reps.push(v);
        }
    }
    for v in reps {
        let mut next = Vec::with_capacity(cells.len() + 1);
        next.extend(cells[..ci].iter().cloned());
        next.push(vec![v]);
        next.push(cells[ci].iter().copied().filter(|&w| w != v).collect());
        next.extend(cells[ci + 1..].iter().cloned());
        search(b, next, best);
    }
}

/// True if swapping `v` and `w` is an automorphism.
fn twins(b: &ExchangeMatrix, v: usize, w: usize) -> bool {
    b.get(v, w) == 0 && (0..b.n()).all(|x| x == v || x == w || b.get(v, x) == b.get(w, x))
}

/// Splits cells by the multiset of (neighbor cell, weight) until stable.
fn refine(b: &ExchangeMatrix, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let n = b.n();
    let mut cell_of = vec![0usize; n];
    loop {
        for (ci, c) in cells.iter().enumerate() {
            for &v in c {
                cell_of[v] = ci;
            }
        }
        let signature = |v: usize| {
            let mut s: Vec<(usize, i64)> =
                (0..n).filter(|&u| b.get(v, u) != 0).map(|u| (cell_of[u], b.get(v, u))).collect();
            s.sort_unstable();
            s
        };
        let mut out = Vec::with_capacity(cells.len());
        for c in &cells {
            if c.len() == 1 {
                out.push(c.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<(usize, i64)>, usize)> = c.iter().map(|&v| (signature(v), v)).collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    out.push(keyed[start..i].iter().map(|x| x.1).collect());
                    start = i;
                }
            }
        }
        if out.len() == cells.len() {
            return out;
        }
        cells = out;
    }
}

fn serialize(b: &ExchangeMatrix, perm: &[usize]) -> Vec<i64> {
    let n = perm.len();
    let mut s = Vec::with_capacity(n * n);
    for &i in perm {
        for &j in perm {
            s.push(b.get(i, j));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orientations_of_a2_agree() {
        let a = ExchangeMatrix::from_rows(&[[0, 1], [-1, 0]]).unwrap();
        assert_eq!(canonical_key(&a).unwrap(), canonical_key(&a.negated()).unwrap());
    }

    #[test]
    fn permutation_invariance() {
        let b = ExchangeMatrix::from_rows(&[[0, 1, 0, -2], [-1, 0, 1, 0], [0, -1, 0, 1], [2, 0, -1, 0]]).unwrap();
        let c = canonical_form(&b).unwrap();
        for perm in [[1, 2, 3, 0], [3, 1, 0, 2], [0, 2, 1, 3]] {
            let p = b.permuted(&perm);
            assert_eq!(canonical_form(&p).unwrap().rows(), c.rows());
        }
        assert_eq!(canonical_form(&c).unwrap().rows(), c.rows());
    }

    #[test]
    fn bound_is_enforced() {
        let big = ExchangeMatrix::zeros(CANONICAL_BOUND + 1);
        assert!(matches!(canonical_form(&big), Err(Error::DimensionTooLarge { .. })));
    }

    #[test]
    fn zero_matrix_collapses_by_twins() {
        let z = ExchangeMatrix::zeros(20);
        assert_eq!(canonical_form(&z).unwrap().rows(), z.rows());
    }
}
