//! Skew-symmetric integer exchange matrices.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Square integer matrix with rows and columns labeled by arc ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExchangeMatrix {
    n: usize,
    entries: Vec<i64>,
    labels: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    n: usize,
    rows: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<usize>>,
}

impl Serialize for ExchangeMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let identity = self.labels.iter().enumerate().all(|(i, &l)| i == l);
        MatrixJson {
            n: self.n,
            rows: self.rows(),
            labels: if identity { None } else { Some(self.labels.clone()) },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExchangeMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = MatrixJson::deserialize(d)?;
        if m.rows.len() != m.n {
            return Err(serde::de::Error::custom("row count does not match n"));
        }
        let mut b = ExchangeMatrix::from_rows(&m.rows).map_err(serde::de::Error::custom)?;
        if let Some(labels) = m.labels {
            if labels.len() != m.n {
                return Err(serde::de::Error::custom("label count does not match n"));
            }
            b.labels = labels;
        }
        Ok(b)
    }
}

impl ExchangeMatrix {
    pub fn zeros(n: usize) -> Self {
        ExchangeMatrix { n, entries: vec![0; n * n], labels: (0..n).collect() }
    }

    /// Builds a matrix from rows, checking skew-symmetry.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != n {
                return Err(Error::Parse(format!("row {i} has length {} instead of {n}", r.len())));
            }
            m.entries[i * n..(i + 1) * n].copy_from_slice(r);
        }
        if !m.is_skew_symmetric() {
            return Err(Error::NotSkewSymmetric);
        }
        Ok(m)
    }

    /// Builds a matrix from weighted arrows: `(i, j, w)` adds `w` to `b_ij`
    /// and subtracts it from `b_ji`.
    pub fn from_arrows(n: usize, arrows: &[(usize, usize, i64)]) -> Result<Self> {
        let mut m = Self::zeros(n);
        for &(i, j, w) in arrows {
            if i >= n || j >= n {
                return Err(Error::IndexOutOfRange { index: i.max(j), n });
            }
            if i == j {
                return Err(Error::BadSpec(format!("loop at vertex {i}")));
            }
            m.add(i, j, w);
        }
        Ok(m)
    }

    pub fn with_labels(mut self, labels: Vec<usize>) -> Self {
        assert_eq!(labels.len(), self.n);
        self.labels = labels;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize, v: i64) {
        self.entries[i * self.n + j] = v;
    }

    /// Adds `w` at `(i, j)` and `-w` at `(j, i)`.
    pub(crate) fn add(&mut self, i: usize, j: usize, w: i64) {
        self.entries[i * self.n + j] += w;
        self.entries[j * self.n + i] -= w;
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn is_skew_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i..self.n).all(|j| self.get(i, j) == -self.get(j, i)))
    }

    pub fn max_abs_entry(&self) -> i64 {
        self.entries.iter().map(|x| x.abs()).max().unwrap_or(0)
    }

    pub fn negated(&self) -> Self {
        let mut m = self.clone();
        m.entries.iter_mut().for_each(|x| *x = -*x);
        m
    }

    /// Simultaneous permutation: row/column `i` of the result is row/column
    /// `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.n;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, self.get(perm[i], perm[j]));
            }
        }
        m.labels = perm.iter().map(|&p| self.labels[p]).collect();
        m
    }

    /// Reorders rows and columns so that labels appear in increasing order.
    pub fn sorted_by_label(&self) -> Self {
        let mut perm: Vec<usize> = (0..self.n).collect();
        perm.sort_by_key(|&i| self.labels[i]);
        self.permuted(&perm)
    }

    /// Position of the row labeled `label`.
    pub fn index_of_label(&self, label: usize) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    /// Matrix mutation in direction `k`.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        let n = self.n;
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k, n });
        }
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                let b = self.get(i, j);
                let v = if i == k || j == k {
                    b.checked_neg().ok_or(Error::Overflow)?
                } else {
                    let bik = self.get(i, k);
                    let bkj = self.get(k, j);
                    let t1 = bik.checked_abs().and_then(|a| a.checked_mul(bkj)).ok_or(Error::Overflow)?;
                    let t2 = bkj.checked_abs().and_then(|a| bik.checked_mul(a)).ok_or(Error::Overflow)?;
                    let s = t1.checked_add(t2).ok_or(Error::Overflow)?;
                    b.checked_add(s / 2).ok_or(Error::Overflow)?
                };
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    /// Integer rank by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        bareiss_rank(self.n, self.n, |i, j| BigInt::from(self.get(i, j)))
    }

    pub fn corank(&self) -> usize {
        self.n - self.rank()
    }
}

/// Rank of an `rows x cols` integer matrix via Bareiss elimination.
pub fn bareiss_rank(rows: usize, cols: usize, entry: impl Fn(usize, usize) -> BigInt) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..rows).map(|i| (0..cols).map(|j| entry(i, j)).collect()).collect();
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = (&a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c]) / &prev;
                a[r][c] = v;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

impl std::fmt::Display for ExchangeMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, r) in self.rows().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = r.iter().map(|x| format!("{x:>3}")).collect();
            write!(f, "[{}]", cells.join(""))?;
        }
        Ok(())
    }
}
