//! Seeds with trivial coefficients, exchange relations and denominator vectors.

pub mod laurent;

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{bfs, Exploration};
use crate::matrix::ExchangeMatrix;

pub use laurent::LaurentPoly;

/// A cluster of Laurent polynomials in the initial variables plus an exchange matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seed {
    pub cluster: Vec<LaurentPoly>,
    pub matrix: ExchangeMatrix,
}

impl Seed {
    /// The initial seed `(x_1, ..., x_n; B)`.
    pub fn initial(b: &ExchangeMatrix) -> Seed {
        let n = b.n();
        Seed { cluster: (0..n).map(|i| LaurentPoly::var(n, i)).collect(), matrix: b.clone() }
    }

    pub fn n(&self) -> usize {
        self.cluster.len()
    }

    /// Mutation at `k`: `z z' = Π x_i^[b_ik]+ + Π x_i^[−b_ik]+`.
    pub fn mutate(&self, k: usize) -> Result<Seed> {
        let n = self.n();
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k, n });
        }
        let nv = self.cluster[k].nvars();
        let (mut plus, mut minus) = (LaurentPoly::one(nv), LaurentPoly::one(nv));
        for i in 0..n {
            let b = self.matrix.get(i, k);
            let e = u32::try_from(b.unsigned_abs()).map_err(|_| Error::Overflow)?;
            if b > 0 {
                plus = &plus * &self.cluster[i].pow(e);
            } else if b < 0 {
                minus = &minus * &self.cluster[i].pow(e);
            }
        }
        let z = (&plus + &minus).div_exact(&self.cluster[k])?;
        let mut cluster = self.cluster.clone();
        cluster[k] = z;
        Ok(Seed { cluster, matrix: self.matrix.mutate(k)? })
    }

    /// Cluster as a sorted set, for identifying seeds.
    pub fn cluster_key(&self) -> Vec<LaurentPoly> {
        let mut c = self.cluster.clone();
        c.sort();
        c
    }
}

pub fn mutate_seed(s: &Seed, k: usize) -> Result<Seed> {
    s.mutate(k)
}

pub fn denominator_vector(z: &LaurentPoly) -> Result<Vec<i64>> {
    z.denominator_vector()
}

/// Tropical exchange relation at `k` applied to the denominator vectors of a cluster:
/// `d'_k = −d_k + max(Σ [b_ik]+ d_i, Σ [−b_ik]+ d_i)`, componentwise.
pub fn tropical_mutate(d: &[Vec<i64>], b: &ExchangeMatrix, k: usize) -> Result<Vec<Vec<i64>>> {
    let n = b.n();
    if k >= n || d.len() != n {
        return Err(Error::IndexOutOfRange { index: k.max(d.len()), n });
    }
    let m = d[k].len();
    let mut out = d.to_vec();
    for c in 0..m {
        let (mut pos, mut neg) = (0i64, 0i64);
        for i in 0..n {
            let w = b.get(i, k);
            let x = d[i][c];
            let term = w.abs().checked_mul(x).ok_or(Error::Overflow)?;
            if w > 0 {
                pos = pos.checked_add(term).ok_or(Error::Overflow)?;
            } else if w < 0 {
                neg = neg.checked_add(term).ok_or(Error::Overflow)?;
            }
        }
        out[k][c] = pos.max(neg) - d[k][c];
    }
    Ok(out)
}

/// Initial denominator data: `d(x_i | x_j) = −δ_ij`.
pub fn initial_denominators(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| -((i == j) as i64)).collect()).collect()
}

/// Seeds reachable from the initial seed of `b`, identified by their clusters.
pub fn explore_seeds(b: &ExchangeMatrix, limit: usize) -> Result<Exploration<Seed>> {
    let failure = std::sync::Mutex::new(None);
    let ex = bfs(Seed::initial(b), limit, |s| s.cluster_key(), |s| {
        (0..s.n())
            .filter_map(|k| match s.mutate(k) {
                Ok(t) => Some(t),
                Err(e) => {
                    failure.lock().expect("lock").get_or_insert(e);
                    None
                }
            })
            .collect()
    });
    match failure.into_inner().expect("lock") {
        Some(e) => Err(e),
        None => Ok(ex),
    }
}

/// Distinct cluster variables found by seed search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterVariables {
    pub variables: Vec<LaurentPoly>,
    pub seeds: usize,
    pub complete: bool,
}

pub fn all_cluster_variables(b: &ExchangeMatrix, limit: usize) -> Result<ClusterVariables> {
    let ex = explore_seeds(b, limit)?;
    let vars: BTreeSet<LaurentPoly> = ex.states.iter().flat_map(|s| s.cluster.iter().cloned()).collect();
    Ok(ClusterVariables { variables: vars.into_iter().collect(), seeds: ex.states.len(), complete: !ex.truncated })
}

/// Denominator vectors of the cluster reached by mutating along `path`,
/// computed symbolically and by the tropical recurrence.
pub fn denominators_along(b: &ExchangeMatrix, path: &[usize]) -> Result<(Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    let mut seed = Seed::initial(b);
    let mut trop = initial_denominators(b.n());
    for &k in path {
        trop = tropical_mutate(&trop, &seed.matrix, k)?;
        seed = seed.mutate(k)?;
    }
    let symbolic = seed.cluster.iter().map(|z| z.denominator_vector()).collect::<Result<_>>()?;
    Ok((symbolic, trop))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> ExchangeMatrix {
        ExchangeMatrix::from_rows(&[[0, 1], [-1, 0]]).unwrap()
    }

    #[test]
    fn a2_first_mutation() {
        let s = Seed::initial(&a2()).mutate(0).unwrap();
        assert_eq!(s.cluster[0].to_string(), "(x2 + 1)/(x1)");
        assert_eq!(s.cluster[1].to_string(), "x2");
    }

    #[test]
    fn a2_period() {
        let s0 = Seed::initial(&a2());
        let mut s = s0.clone();
        for step in 0..10 {
            s = s.mutate(step % 2).unwrap();
        }
        assert_eq!(s.cluster_key(), s0.cluster_key());
        assert_eq!(s0.mutate(1).unwrap().mutate(1).unwrap(), s0);
    }

    #[test]
    fn a2_counts_and_denominators() {
        let v = all_cluster_variables(&a2(), 100).unwrap();
        assert_eq!(v.variables.len(), 5);
        assert!(v.complete);
        let (sym, trop) = denominators_along(&a2(), &[0, 1]).unwrap();
        assert_eq!(sym, trop);
        assert!(sym.contains(&vec![1, 1]));
    }

    #[test]
    fn kronecker_is_infinite() {
        let b = ExchangeMatrix::from_rows(&[[0, 2], [-2, 0]]).unwrap();
        let v = all_cluster_variables(&b, 20).unwrap();
        assert!(!v.complete);
        assert!(v.variables.len() >= 20);
    }
}
