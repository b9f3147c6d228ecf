//! Block decompositions of quivers.
//!
//! A block is one of six small quivers (types I, II, IIIa, IIIb, IV, V) with
//! designated outlets. Blocks are glued by identifying outlets in pairs, never
//! two outlets of the same block; opposite arrows then cancel.

mod assemble;
mod search;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ExchangeMatrix;

pub use assemble::surface_from_decomposition;
pub use search::decompose;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BlockKind {
    I,
    II,
    IIIa,
    IIIb,
    IV,
    V,
}

impl BlockKind {
    pub const ALL: [BlockKind; 6] = [BlockKind::I, BlockKind::II, BlockKind::IIIa, BlockKind::IIIb, BlockKind::IV, BlockKind::V];

    pub fn size(self) -> usize {
        self.outlets().len()
    }

    /// Outlet flag per role.
    pub fn outlets(self) -> &'static [bool] {
        match self {
            BlockKind::I => &[true, true],
            BlockKind::II => &[true, true, true],
            BlockKind::IIIa | BlockKind::IIIb => &[true, false, false],
            // A, B, T, Bo
            BlockKind::IV => &[true, true, false, false],
            // O, P, Q, R, S
            BlockKind::V => &[true, false, false, false, false],
        }
    }

    /// Arrows between roles, each of weight one.
    pub fn arrows(self) -> &'static [(usize, usize)] {
        match self {
            BlockKind::I => &[(0, 1)],
            BlockKind::II => &[(0, 1), (1, 2), (2, 0)],
            BlockKind::IIIa => &[(1, 0), (2, 0)],
            BlockKind::IIIb => &[(0, 1), (0, 2)],
            BlockKind::IV => &[(0, 2), (2, 1), (0, 3), (3, 1), (1, 0)],
            BlockKind::V => &[(0, 1), (0, 4), (3, 0), (2, 0), (1, 2), (1, 3), (4, 3), (4, 2)],
        }
    }

    /// Weight of the arrow from role `r` to role `s` (negative if reversed).
    pub fn weight(self, r: usize, s: usize) -> i64 {
        self.arrows().iter().map(|&(a, b)| (a == r && b == s) as i64 - (a == s && b == r) as i64).sum()
    }
}

/// A block together with the vertex assigned to each of its roles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlacedBlock {
    pub kind: BlockKind,
    pub vertices: Vec<usize>,
}

/// Blocks on vertices `0..n`; outlets sharing a vertex are matched.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDecomposition {
    pub n: usize,
    pub blocks: Vec<PlacedBlock>,
}

impl BlockDecomposition {
    /// Checks the gluing rules: vertices covered, outlets matched in pairs,
    /// interior vertices used once, connectivity.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidDecomposition(m));
        let n = self.n;
        if n == 0 {
            return bad("no vertices".into());
        }
        if n == 1 && self.blocks.is_empty() {
            return Ok(());
        }
        let mut uses: Vec<Vec<bool>> = vec![Vec::new(); n];
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for (bi, b) in self.blocks.iter().enumerate() {
            if b.vertices.len() != b.kind.size() {
                return bad(format!("block {bi} of type {:?} needs {} vertices", b.kind, b.kind.size()));
            }
            for (r, &v) in b.vertices.iter().enumerate() {
                if v >= n {
                    return bad(format!("block {bi} uses vertex {v} outside 0..{n}"));
                }
                if b.vertices[..r].contains(&v) {
                    return bad(format!("block {bi} glues two of its own roles"));
                }
                uses[v].push(b.kind.outlets()[r]);
                let (x, y) = (find(&mut parent, v), find(&mut parent, b.vertices[0]));
                parent[x] = y;
            }
        }
        for (v, u) in uses.iter().enumerate() {
            match u.as_slice() {
                [] => return bad(format!("vertex {v} is not covered")),
                [_] | [true, true] => {}
                _ => return bad(format!("vertex {v} is shared illegally")),
            }
        }
        let root = find(&mut parent, 0);
        if (0..n).any(|v| find(&mut parent, v) != root) {
            return bad("blocks do not form a connected graph".into());
        }
        Ok(())
    }

    /// The glued quiver `B(Γ)`.
    pub fn matrix(&self) -> Result<ExchangeMatrix> {
        self.validate()?;
        let mut arrows = Vec::new();
        for b in &self.blocks {
            for &(r, s) in b.kind.arrows() {
                arrows.push((b.vertices[r], b.vertices[s], 1));
            }
        }
        ExchangeMatrix::from_arrows(self.n, &arrows)
    }

    pub fn count(&self, kind: BlockKind) -> usize {
        self.blocks.iter().filter(|b| b.kind == kind).count()
    }
}
