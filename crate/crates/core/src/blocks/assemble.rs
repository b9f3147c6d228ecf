//! Surfaces glued from the triangulated pieces that realize each block.
//!
//! Arc ids equal vertex ids. Each block becomes one triangle, listed
//! counterclockwise, possibly with self-folded triangles inside; an unmatched
//! outlet receives an extra triangle with two boundary sides.

use super::{BlockDecomposition, BlockKind};
use crate::error::{Error, Result};
use crate::surface::MarkedSurface;
use crate::trimap::{IdealTriangulation, Side};

/// A triangulated surface whose signed adjacency matrix is the glued quiver.
pub fn surface_from_decomposition(d: &BlockDecomposition) -> Result<(MarkedSurface, IdealTriangulation)> {
    let expected = d.matrix()?;
    let mut faces: Vec<[Side; 3]> = Vec::new();
    let mut n_bd = 0;
    let mut boundary = || {
        n_bd += 1;
        Side::Boundary(n_bd - 1)
    };
    let arc = Side::Arc;
    let mut outlet_uses = vec![0usize; d.n];
    for b in &d.blocks {
        let v = &b.vertices;
        for (r, &x) in v.iter().enumerate() {
            if b.kind.outlets()[r] {
                outlet_uses[x] += 1;
            }
        }
        // (loop, fold) pairs realized by self-folded triangles
        let mut folded: Vec<(usize, usize)> = Vec::new();
        match b.kind {
            BlockKind::I => faces.push([arc(v[1]), arc(v[0]), boundary()]),
            BlockKind::II => faces.push([arc(v[1]), arc(v[0]), arc(v[2])]),
            BlockKind::IIIa => {
                faces.push([arc(v[0]), arc(v[1]), boundary()]);
                folded.push((v[1], v[2]));
            }
            BlockKind::IIIb => {
                faces.push([arc(v[1]), arc(v[0]), boundary()]);
                folded.push((v[1], v[2]));
            }
            BlockKind::IV => {
                faces.push([arc(v[2]), arc(v[0]), arc(v[1])]);
                folded.push((v[2], v[3]));
            }
            BlockKind::V => {
                faces.push([arc(v[1]), arc(v[0]), arc(v[2])]);
                folded.push((v[1], v[4]));
                folded.push((v[2], v[3]));
            }
        }
        for (l, f) in folded {
            faces.push([arc(l), arc(f), arc(f)]);
        }
    }
    if d.n == 1 && d.blocks.is_empty() {
        faces.push([arc(0), boundary(), boundary()]);
        outlet_uses[0] = 1;
    }
    for (x, &uses) in outlet_uses.iter().enumerate() {
        if uses == 1 {
            faces.push([arc(x), boundary(), boundary()]);
        }
    }
    let t = IdealTriangulation::from_faces(&faces, d.n, n_bd)?;
    if t.signed_adjacency() != expected {
        return Err(Error::InvalidDecomposition("assembled surface does not reproduce the quiver".into()));
    }
    Ok((t.surface().clone(), t))
}

#[cfg(test)]
mod tests {
    use super::super::{decompose, PlacedBlock};
    use super::*;
    use crate::matrix::ExchangeMatrix;

    #[test]
    fn single_blocks_realize_their_quivers() {
        for kind in BlockKind::ALL {
            let d = BlockDecomposition { n: kind.size(), blocks: vec![PlacedBlock { kind, vertices: (0..kind.size()).collect() }] };
            let (s, t) = surface_from_decomposition(&d).unwrap_or_else(|e| panic!("{kind:?}: {e}"));
            assert_eq!(t.signed_adjacency(), d.matrix().unwrap());
            assert_eq!(s.rank(), kind.size());
        }
    }

    #[test]
    fn single_type_one_block_is_a_pentagon() {
        let d = BlockDecomposition { n: 2, blocks: vec![PlacedBlock { kind: BlockKind::I, vertices: vec![0, 1] }] };
        let (s, _) = surface_from_decomposition(&d).unwrap();
        assert_eq!(s, MarkedSurface::polygon(5).unwrap());
    }

    #[test]
    fn one_vertex_is_a_quadrilateral() {
        let d = decompose(&ExchangeMatrix::zeros(1)).unwrap();
        let (s, _) = surface_from_decomposition(&d).unwrap();
        assert_eq!(s, MarkedSurface::polygon(4).unwrap());
    }

    #[test]
    fn octahedron_is_a_four_punctured_sphere() {
        let b = crate::mutation::make_quiver(&crate::mutation::QuiverSpec::Octahedron).unwrap();
        let d = decompose(&b).unwrap();
        let (s, _) = surface_from_decomposition(&d).unwrap();
        assert_eq!(s, MarkedSurface::new(0, &[], 4).unwrap());
    }
}
