mod common;

use rand::{Rng, SeedableRng};
use surface_cluster::{decompose, surface_from_decomposition, ExchangeMatrix};

fn from_key(n: usize, key: &[i64]) -> ExchangeMatrix {
    ExchangeMatrix::from_rows(&key[n..].chunks(n).collect::<Vec<_>>()).unwrap()
}

#[test]
fn decompose_agrees_with_gluing_enumeration() {
    let max_n = 6;
    let realizable = common::block_realizable(max_n);
    let per_size: Vec<usize> = (1..=max_n).map(|n| realizable.iter().filter(|k| k.len() == n + n * n).count()).collect();
    assert_eq!(&per_size[..3], &[1, 3, 8]);
    // every glued matrix decomposes and reassembles
    for key in &realizable {
        let n = (1..=max_n).find(|&m| m + m * m == key.len()).unwrap();
        let b = from_key(n, key);
        let d = decompose(&b).unwrap_or_else(|| panic!("no witness for {:?}", b.rows()));
        assert_eq!(d.matrix().unwrap(), b);
        let assembled = surface_from_decomposition(&d);
        if let Ok((_, t)) = assembled {
            assert_eq!(t.signed_adjacency(), b);
        }
    }
    // random matrices: a witness exists exactly when gluing produces the matrix
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let mut hits = [0usize; 2];
    for _ in 0..3000 {
        let n = rng.gen_range(1..=max_n);
        let mut arrows = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let w: i64 = match rng.gen_range(0..10) {
                    0..=4 => 0,
                    5 | 6 => 1,
                    7 | 8 => -1,
                    _ => 2 * (rng.gen_range(0..2) * 2 - 1),
                };
                arrows.push((i, j, w));
            }
        }
        let b = ExchangeMatrix::from_arrows(n, &arrows).unwrap();
        let expected = realizable.contains(&common::brute_key(&b));
        assert_eq!(decompose(&b).is_some(), expected, "{:?}", b.rows());
        hits[expected as usize] += 1;
    }
    assert!(hits[0] > 100 && hits[1] > 100, "{hits:?}");
}
