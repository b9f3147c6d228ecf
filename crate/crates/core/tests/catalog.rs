mod common;

use surface_cluster::mutation::{canonical_form, canonical_key, make_quiver, mutation_class, mutation_equivalent, QuiverSpec};
use surface_cluster::{initial_triangulation, ExchangeMatrix, MarkedSurface};

fn surface_matrix(g: usize, b: &[usize], p: usize) -> ExchangeMatrix {
    initial_triangulation(&MarkedSurface::new(g, b, p).unwrap()).signed_adjacency()
}

fn same_class(spec: QuiverSpec, g: usize, b: &[usize], p: usize) {
    let q = make_quiver(&spec).unwrap();
    let s = surface_matrix(g, b, p);
    assert_eq!(mutation_equivalent(&q, &s, 50_000).unwrap(), Some(true), "{spec} vs surface ({g},{b:?},{p})");
}

#[test]
fn named_families_match_their_surfaces() {
    same_class(QuiverSpec::A(4), 0, &[7], 0);
    same_class(QuiverSpec::D(5), 0, &[5], 1);
    same_class(QuiverSpec::AffineA(3, 1), 0, &[3, 1], 0);
    same_class(QuiverSpec::AffineA(2, 2), 0, &[2, 2], 0);
    same_class(QuiverSpec::AffineD(5), 0, &[3], 2);
    same_class(QuiverSpec::Gamma2(1, 1), 0, &[1, 1], 1);
    same_class(QuiverSpec::Gamma2(2, 1), 0, &[2, 1], 1);
    same_class(QuiverSpec::Gamma2(3, 2), 0, &[3, 2], 1);
    same_class(QuiverSpec::Gamma3(1, 1, 1), 0, &[1, 1, 1], 0);
    same_class(QuiverSpec::Gamma3(2, 1, 1), 0, &[2, 1, 1], 0);
    same_class(QuiverSpec::Gamma3(2, 2, 1), 0, &[2, 2, 1], 0);
    same_class(QuiverSpec::Octahedron, 0, &[], 4);
}

#[test]
fn brute_force_canonical_agrees() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let n = rng.gen_range(1..=6);
        let mut arrows = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let w: i64 = rng.gen_range(-2..=2);
                arrows.push((i, j, w));
            }
        }
        let a = ExchangeMatrix::from_arrows(n, &arrows).unwrap();
        let perm = {
            let mut p: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                p.swap(i, rng.gen_range(0..=i));
            }
            p
        };
        let b = a.permuted(&perm);
        assert_eq!(canonical_form(&a).unwrap().rows(), canonical_form(&b).unwrap().rows());
        // a random small perturbation: equal canonical keys iff equal brute-force keys
        let mut c = b.rows();
        if n >= 2 {
            c[0][1] = -c[0][1];
            c[1][0] = -c[1][0];
        }
        let c = ExchangeMatrix::from_rows(&c).unwrap();
        assert_eq!(
            canonical_key(&a).unwrap() == canonical_key(&c).unwrap(),
            common::brute_key(&a) == common::brute_key(&c)
        );
    }
}

/// Mutation class size by plain BFS over brute-force keys.
fn brute_class_size(b: &ExchangeMatrix) -> usize {
    let mut seen = std::collections::HashSet::from([common::brute_key(b)]);
    let mut todo = vec![b.clone()];
    while let Some(x) = todo.pop() {
        for k in 0..x.n() {
            let y = x.mutate(k).unwrap();
            if seen.insert(common::brute_key(&y)) {
                todo.push(y);
            }
        }
    }
    seen.len()
}

#[test]
fn class_sizes_match_brute_force() {
    for spec in [QuiverSpec::A(3), QuiverSpec::A(5), QuiverSpec::D(4), QuiverSpec::D(6), QuiverSpec::E(6), QuiverSpec::AffineA(2, 2), QuiverSpec::Gamma2(1, 1)] {
        let b = make_quiver(&spec).unwrap();
        let c = mutation_class(&b, 10_000).unwrap();
        assert!(c.is_complete());
        assert_eq!(c.len(), brute_class_size(&b), "{spec}");
    }
}
