//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;

use surface_cluster::blocks::BlockKind;
use surface_cluster::{ExchangeMatrix, MarkedSurface};

/// Surfaces with g ≤ 2, b ≤ 3, p ≤ 3, c_i ≤ 4 and rank ≤ 32.
pub fn battery() -> Vec<MarkedSurface> {
    let raw: &[(usize, &[usize], usize)] = &[
        (0, &[4], 0),
        (0, &[4], 2),
        (0, &[2], 1),
        (0, &[3], 1),
        (0, &[4], 1),
        (0, &[1], 2),
        (0, &[2], 2),
        (0, &[1], 3),
        (0, &[1, 1], 0),
        (0, &[2, 1], 0),
        (0, &[2, 2], 0),
        (0, &[3, 1], 0),
        (0, &[1, 1], 1),
        (0, &[2, 1], 1),
        (0, &[4, 3], 1),
        (0, &[1, 1, 1], 0),
        (0, &[2, 1, 1], 0),
        (0, &[3, 2, 1], 2),
        (1, &[], 3),
        (2, &[], 2),
        (1, &[], 1),
        (1, &[], 2),
        (1, &[1], 0),
        (1, &[2], 0),
        (1, &[1], 1),
        (1, &[1, 2], 0),
        (2, &[], 1),
        (2, &[1], 0),
        (2, &[2, 1], 1),
        (1, &[4, 4, 4], 3),
    ];
    raw.iter().map(|&(g, b, p)| MarkedSurface::new(g, b, p).expect("battery surface")).collect()
}

/// All permutations of `0..n` (Heap's algorithm).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, a, out);
            let j = if k % 2 == 0 { i } else { 0 };
            a.swap(j, k - 1);
        }
    }
    let mut out = Vec::new();
    heap(n, &mut (0..n).collect(), &mut out);
    out
}

/// Lexicographically least row-major form over every relabeling, with an
/// optional per-vertex color compared first.
pub fn brute_canonical(entries: &[i64], n: usize, color: &[i64], perms: &[Vec<usize>]) -> Vec<i64> {
    let mut best: Option<Vec<i64>> = None;
    for p in perms {
        let mut s: Vec<i64> = p.iter().map(|&i| color[i]).collect();
        for &i in p {
            for &j in p {
                s.push(entries[i * n + j]);
            }
        }
        if best.as_ref().map_or(true, |b| s < *b) {
            best = Some(s);
        }
    }
    best.unwrap_or_default()
}

pub fn brute_key(b: &ExchangeMatrix) -> Vec<i64> {
    let n = b.n();
    brute_canonical(b.entries(), n, &vec![0; n], &permutations(n))
}

/// Every matrix on at most `max_n` vertices that can be glued from blocks,
/// up to relabeling, keyed by [`brute_key`].
///
/// Decompositions are grown one block at a time, each new block touching the
/// part already built. A partial gluing is remembered as its matrix together
/// with the state of each vertex (free outlet or closed).
pub fn block_realizable(max_n: usize) -> HashSet<Vec<i64>> {
    let perms: Vec<Vec<Vec<usize>>> = (0..=max_n).map(permutations).collect();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut finals: HashSet<Vec<i64>> = HashSet::new();
    let mut stack: Vec<(usize, Vec<i64>, Vec<i64>)> = Vec::new();
    finals.insert(brute_canonical(&[0], 1, &[0], &perms[1]));
    let mut push = |n: usize, m: Vec<i64>, open: Vec<i64>, stack: &mut Vec<_>| {
        let key = {
            let mut k = vec![n as i64];
            k.extend(brute_canonical(&m, n, &open, &perms[n]));
            k
        };
        if seen.insert(key) {
            finals.insert(brute_canonical(&m, n, &vec![0; n], &perms[n]));
            stack.push((n, m, open));
        }
    };
    for kind in BlockKind::ALL {
        let k = kind.size();
        if k > max_n {
            continue;
        }
        let mut m = vec![0; k * k];
        for &(a, c) in kind.arrows() {
            m[a * k + c] += 1;
            m[c * k + a] -= 1;
        }
        let open = kind.outlets().iter().map(|&o| o as i64).collect();
        push(k, m, open, &mut stack);
    }
    while let Some((n, m, open)) = stack.pop() {
        for kind in BlockKind::ALL {
            let size = kind.size();
            // each role goes to a fresh vertex or, if it is an outlet, to a free outlet
            let mut assign = vec![usize::MAX; size];
            extend_roles(kind, 0, n, max_n, &open, &mut assign, &mut |assign| {
                let fresh = assign.iter().filter(|&&v| v >= n).count();
                if fresh == size {
                    return;
                }
                let nn = n + fresh;
                let mut mm = vec![0; nn * nn];
                for i in 0..n {
                    for j in 0..n {
                        mm[i * nn + j] = m[i * n + j];
                    }
                }
                let mut oo = open.clone();
                oo.resize(nn, 0);
                for &(a, c) in kind.arrows() {
                    mm[assign[a] * nn + assign[c]] += 1;
                    mm[assign[c] * nn + assign[a]] -= 1;
                }
                for (r, &v) in assign.iter().enumerate() {
                    oo[v] = if v >= n { kind.outlets()[r] as i64 } else { 0 };
                }
                push(nn, mm, oo, &mut stack);
            });
        }
    }
    finals
}

fn extend_roles(kind: BlockKind, r: usize, n: usize, max_n: usize, open: &[i64], assign: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if r == kind.size() {
        f(assign);
        return;
    }
    let used_fresh = assign[..r].iter().filter(|&&v| v >= n).count();
    let mut options: Vec<usize> = Vec::new();
    if kind.outlets()[r] {
        options.extend((0..n).filter(|&v| open[v] == 1 && !assign[..r].contains(&v)));
    }
    if n + used_fresh < max_n {
        options.push(n + used_fresh);
    }
    for v in options {
        assign[r] = v;
        extend_roles(kind, r + 1, n, max_n, open, assign, f);
    }
    assign[r] = usize::MAX;
}

/// Oriented-graph helper: edges of the underlying diagram of `b`.
pub fn diagram_edges(b: &ExchangeMatrix) -> Vec<(usize, usize)> {
    let n = b.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if b.get(i, j) != 0 {
                out.push((i, j));
            }
        }
    }
    out
}

/// All `2^e` orientations of a simply-laced diagram.
pub fn orientations(n: usize, edges: &[(usize, usize)]) -> Vec<ExchangeMatrix> {
    (0..1u32 << edges.len())
        .map(|mask| {
            let arrows: Vec<(usize, usize, i64)> = edges
                .iter()
                .enumerate()
                .map(|(e, &(i, j))| if mask >> e & 1 == 1 { (j, i, 1) } else { (i, j, 1) })
                .collect();
            ExchangeMatrix::from_arrows(n, &arrows).expect("orientation")
        })
        .collect()
}
