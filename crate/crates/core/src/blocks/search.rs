//! Backtracking search for a block decomposition.
//!
//! The residual `R = B − Σ placed blocks` drives the search. Any nonzero
//! residual entry `(v, u)` must come from a block still to be placed that
//! contains an arrow between `v` and `u` in the direction of the sign, so the
//! search branches only over such blocks. The remaining roles of that block
//! are drawn from residual neighbors of roles already assigned: an arrow of a
//! block can only be cancelled by another block sharing both endpoints as
//! outlets, and every role of every block has at least one arrow to the
//! assigned roles that no such block can cancel.

use super::{BlockDecomposition, BlockKind, PlacedBlock};
use crate::matrix::ExchangeMatrix;

/// A witness decomposition of `b`, or `None` if none exists.
pub fn decompose(b: &ExchangeMatrix) -> Option<BlockDecomposition> {
    let n = b.n();
    if n == 0 || !b.is_skew_symmetric() || b.max_abs_entry() > 2 {
        return None;
    }
    if n == 1 {
        return Some(BlockDecomposition { n, blocks: vec![] });
    }
    let mut s = Search {
        n,
        resid: b.entries().to_vec(),
        count: vec![0; n],
        closed: vec![false; n],
        placed: Vec::new(),
    };
    if s.run() {
        Some(BlockDecomposition { n, blocks: s.placed })
    } else {
        None
    }
}

struct Search {
    n: usize,
    resid: Vec<i64>,
    count: Vec<u8>,
    closed: Vec<bool>,
    placed: Vec<PlacedBlock>,
}

impl Search {
    fn r(&self, i: usize, j: usize) -> i64 {
        self.resid[i * self.n + j]
    }

    fn focus(&self) -> Option<(usize, usize)> {
        // prefer a vertex that has the fewest open slots left
        let mut best: Option<(u8, usize, usize)> = None;
        for v in 0..self.n {
            if let Some(u) = (0..self.n).find(|&u| self.r(v, u) != 0) {
                let slack = if self.closed[v] { 0 } else { 2 - self.count[v] };
                if best.map_or(true, |(s, _, _)| slack < s) {
                    best = Some((slack, v, u));
                }
            }
        }
        best.map(|(_, v, u)| (v, u))
    }

    fn run(&mut self) -> bool {
        match self.focus() {
            Some((v, u)) => {
                let forward = self.r(v, u) > 0;
                for kind in BlockKind::ALL {
                    for &(a, c) in kind.arrows() {
                        let mut roles = vec![usize::MAX; kind.size()];
                        if forward {
                            roles[a] = v;
                            roles[c] = u;
                        } else {
                            roles[a] = u;
                            roles[c] = v;
                        }
                        if !self.role_ok(kind, a, roles[a]) || !self.role_ok(kind, c, roles[c]) {
                            continue;
                        }
                        if self.extend(kind, &mut roles) {
                            return true;
                        }
                    }
                }
                false
            }
            None => self.finish_zero_residual(),
        }
    }

    fn role_ok(&self, kind: BlockKind, role: usize, v: usize) -> bool {
        if self.closed[v] {
            return false;
        }
        if kind.outlets()[role] {
            self.count[v] < 2
        } else {
            self.count[v] == 0
        }
    }

    /// Assigns the remaining roles of a block, then places it and recurses.
    fn extend(&mut self, kind: BlockKind, roles: &mut Vec<usize>) -> bool {
        let next = (0..kind.size()).find(|&r| roles[r] == usize::MAX && (0..kind.size()).any(|s| roles[s] != usize::MAX && kind.weight(r, s) != 0));
        let Some(r) = next else {
            return self.place(kind, roles);
        };
        let mut cands: Vec<usize> = Vec::new();
        for s in 0..kind.size() {
            if roles[s] == usize::MAX || kind.weight(r, s) == 0 {
                continue;
            }
            for w in 0..self.n {
                if self.r(roles[s], w) != 0 && !cands.contains(&w) {
                    cands.push(w);
                }
            }
        }
        for w in cands {
            if roles.contains(&w) || !self.role_ok(kind, r, w) {
                continue;
            }
            roles[r] = w;
            if self.extend(kind, roles) {
                return true;
            }
        }
        roles[r] = usize::MAX;
        false
    }

    fn apply(&mut self, kind: BlockKind, roles: &[usize], sign: i64) {
        let n = self.n;
        for &(a, c) in kind.arrows() {
            let (i, j) = (roles[a], roles[c]);
            self.resid[i * n + j] -= sign;
            self.resid[j * n + i] += sign;
        }
        for (r, &v) in roles.iter().enumerate() {
            if sign > 0 {
                self.count[v] += 1;
                self.closed[v] |= !kind.outlets()[r];
            } else {
                self.count[v] -= 1;
                if !kind.outlets()[r] {
                    self.closed[v] = false;
                }
            }
        }
    }

    fn place(&mut self, kind: BlockKind, roles: &[usize]) -> bool {
        self.apply(kind, roles, 1);
        // vertices that can take no more blocks must be fully explained
        let saturated_ok = roles
            .iter()
            .all(|&v| !(self.closed[v] || self.count[v] == 2) || (0..self.n).all(|u| self.r(v, u) == 0));
        if saturated_ok {
            self.placed.push(PlacedBlock { kind, vertices: roles.to_vec() });
            if self.run() {
                return true;
            }
            self.placed.pop();
        }
        self.apply(kind, roles, -1);
        false
    }

    fn connected_and_covered(&self) -> bool {
        let d = BlockDecomposition { n: self.n, blocks: self.placed.clone() };
        d.validate().is_ok()
    }

    /// With nothing left to explain, only self-cancelling pairs of blocks on
    /// fresh vertices can still be added.
    fn finish_zero_residual(&mut self) -> bool {
        if self.connected_and_covered() {
            return true;
        }
        let fresh: Vec<usize> = (0..self.n).filter(|&v| self.count[v] == 0).collect();
        let Some(&v) = fresh.first() else {
            return false;
        };
        for &w in &fresh[1..] {
            let pair = [(BlockKind::I, vec![v, w]), (BlockKind::I, vec![w, v])];
            if self.place_all(&pair) {
                return true;
            }
            for &x in fresh.iter().filter(|&&x| x > w) {
                let pair = [(BlockKind::II, vec![v, w, x]), (BlockKind::II, vec![v, x, w])];
                if self.place_all(&pair) {
                    return true;
                }
            }
        }
        false
    }

    fn place_all(&mut self, blocks: &[(BlockKind, Vec<usize>)]) -> bool {
        for (k, r) in blocks {
            self.apply(*k, r, 1);
            self.placed.push(PlacedBlock { kind: *k, vertices: r.clone() });
        }
        if self.run() {
            return true;
        }
        for (k, r) in blocks.iter().rev() {
            self.placed.pop();
            self.apply(*k, r, -1);
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mutation::{make_quiver, QuiverSpec};

    fn check(b: &ExchangeMatrix) -> Option<BlockDecomposition> {
        let d = decompose(b)?;
        assert_eq!(&d.matrix().unwrap(), b);
        Some(d)
    }

    #[test]
    fn small_cases() {
        assert!(check(&ExchangeMatrix::zeros(1)).is_some());
        assert!(check(&ExchangeMatrix::zeros(2)).is_some());
        assert!(check(&make_quiver(&QuiverSpec::A(4)).unwrap()).is_some());
        assert!(check(&make_quiver(&QuiverSpec::D(5)).unwrap()).is_some());
        assert!(check(&make_quiver(&QuiverSpec::AffineA(2, 2)).unwrap()).is_some());
        assert!(check(&make_quiver(&QuiverSpec::Octahedron).unwrap()).is_some());
    }

    #[test]
    fn rejects_e6_and_heavy_entries() {
        assert!(decompose(&make_quiver(&QuiverSpec::E(6)).unwrap()).is_none());
        assert!(decompose(&ExchangeMatrix::from_rows(&[[0, 3], [-3, 0]]).unwrap()).is_none());
        assert!(decompose(&make_quiver(&QuiverSpec::ExtAffE(6)).unwrap()).is_none());
    }

    #[test]
    fn torus_matrix_decomposes() {
        let torus = ExchangeMatrix::from_rows(&[[0, 2, -2], [-2, 0, 2], [2, -2, 0]]).unwrap();
        let d = check(&torus).unwrap();
        assert_eq!(d.count(BlockKind::II), 2);
    }
}
