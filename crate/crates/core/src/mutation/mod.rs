//! Mutation classes, quivers and type recognition.

pub mod canonical;
pub mod catalog;

use std::collections::{HashMap, HashSet};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::bfs;
use crate::matrix::ExchangeMatrix;

pub use canonical::{canonical_form, canonical_key, canonical_permutation, CANONICAL_BOUND};
pub use catalog::{make_quiver, QuiverSpec};

/// Quiver JSON: `{"n": k, "edges": [[i, j, w], ...]}` with `w > 0` arrows `i -> j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub n: usize,
    pub edges: Vec<(usize, usize, i64)>,
}

impl Quiver {
    pub fn to_matrix(&self) -> Result<ExchangeMatrix> {
        if let Some(&(i, j, w)) = self.edges.iter().find(|e| e.2 <= 0) {
            return Err(Error::BadSpec(format!("edge ({i}, {j}) has non-positive weight {w}")));
        }
        ExchangeMatrix::from_arrows(self.n, &self.edges)
    }

    pub fn from_matrix(b: &ExchangeMatrix) -> Self {
        let n = b.n();
        let edges = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| b.get(i, j) > 0)
            .map(|(i, j)| (i, j, b.get(i, j)))
            .collect();
        Quiver { n, edges }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum ClassStatus {
    Complete,
    Truncated { limit: usize, overflow: bool },
}

/// Mutation class as sorted canonical representatives.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MutationClass {
    pub representatives: Vec<ExchangeMatrix>,
    pub status: ClassStatus,
}

impl MutationClass {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.status == ClassStatus::Complete
    }

    pub fn max_abs_entry(&self) -> i64 {
        self.representatives.iter().map(|b| b.max_abs_entry()).max().unwrap_or(0)
    }
}

/// Canonical keys of every matrix in the class of `b`, plus the status.
pub fn mutation_class_keys(b: &ExchangeMatrix, max_size: usize) -> Result<(HashSet<Vec<i64>>, ClassStatus, Vec<ExchangeMatrix>)> {
    let start = canonical_form(b)?.with_labels((0..b.n()).collect());
    let overflow = AtomicBool::new(false);
    let ex = bfs(
        start,
        max_size,
        |m| canonical_key(m).expect("dimension checked"),
        |m| {
            (0..m.n())
                .filter_map(|k| match m.mutate(k) {
                    Ok(x) => Some(canonical_form(&x).expect("dimension checked").with_labels((0..m.n()).collect())),
                    Err(_) => {
                        overflow.store(true, Ordering::Relaxed);
                        None
                    }
                })
                .collect()
        },
    );
    let overflow = overflow.into_inner();
    let status = if ex.truncated || overflow { ClassStatus::Truncated { limit: max_size, overflow } } else { ClassStatus::Complete };
    let keys = ex.states.iter().map(|m| canonical_key(m).expect("checked")).collect();
    Ok((keys, status, ex.states))
}

/// Breadth-first closure under mutation, up to `max_size` classes.
pub fn mutation_class(b: &ExchangeMatrix, max_size: usize) -> Result<MutationClass> {
    let (_, status, mut reps) = mutation_class_keys(b, max_size)?;
    reps.sort();
    Ok(MutationClass { representatives: reps, status })
}

/// True iff the quiver of `b` has no oriented cycle.
pub fn is_acyclic(b: &ExchangeMatrix) -> bool {
    let n = b.n();
    let mut indeg: Vec<usize> = (0..n).map(|j| (0..n).filter(|&i| b.get(i, j) > 0).count()).collect();
    let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = ready.pop() {
        seen += 1;
        for w in 0..n {
            if b.get(v, w) > 0 {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.push(w);
                }
            }
        }
    }
    seen == n
}

/// Outcome of [`recognize_type`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeGuess {
    Known(QuiverSpec),
    Unknown,
}

impl std::fmt::Display for TypeGuess {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TypeGuess::Known(s) => write!(f, "{s}"),
            TypeGuess::Unknown => write!(f, "Unknown"),
        }
    }
}

struct CachedClass {
    keys: HashSet<Vec<i64>>,
    complete: bool,
    budget: usize,
}

type ClassCache = Mutex<HashMap<QuiverSpec, Arc<CachedClass>>>;

fn cache() -> &'static ClassCache {
    static CACHE: OnceLock<ClassCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn catalog_class(spec: &QuiverSpec, budget: usize) -> Result<Arc<CachedClass>> {
    if let Some(c) = cache().lock().expect("cache lock").get(spec) {
        if c.complete || c.budget >= budget {
            return Ok(c.clone());
        }
    }
    let (keys, status, _) = mutation_class_keys(&make_quiver(spec)?, budget)?;
    let entry = Arc::new(CachedClass { keys, complete: status == ClassStatus::Complete, budget });
    cache().lock().expect("cache lock").insert(spec.clone(), entry.clone());
    Ok(entry)
}

/// Catalog entries with `n` vertices, in the order they are tried.
pub fn catalog_candidates(n: usize) -> Vec<QuiverSpec> {
    use QuiverSpec::*;
    let mut out = vec![A(n)];
    if n >= 4 {
        out.push(D(n));
    }
    if (6..=8).contains(&n) {
        out.push(E(n));
    }
    for b in 1..=n / 2 {
        out.push(AffineA(n - b, b));
    }
    if n >= 5 {
        out.push(AffineD(n - 1));
    }
    if (7..=9).contains(&n) {
        out.push(AffineE(n - 1));
    }
    if (8..=10).contains(&n) {
        out.push(ExtAffE(n - 2));
    }
    for a in 1..n.saturating_sub(3) {
        let b = n - 3 - a;
        if a >= b && b >= 1 {
            out.push(Gamma2(a, b));
        }
    }
    for a in 1..n {
        for b in 1..=a {
            for c in 1..=b {
                if a + b + c + 3 == n {
                    out.push(Gamma3(a, b, c));
                }
            }
        }
    }
    if n == 6 {
        out.push(Octahedron);
    }
    out
}

/// Name of a catalog class containing `b`, or `Unknown` when no catalog
/// class with at most `budget` members contains it.
pub fn recognize_type(b: &ExchangeMatrix, budget: usize) -> Result<TypeGuess> {
    let key = canonical_key(b)?;
    if b.n() == 0 {
        return Ok(TypeGuess::Unknown);
    }
    for spec in catalog_candidates(b.n()) {
        let class = catalog_class(&spec, budget)?;
        if class.keys.contains(&key) {
            return Ok(TypeGuess::Known(spec));
        }
    }
    Ok(TypeGuess::Unknown)
}

/// True if `a` and `b` are mutation equivalent, searching from `a` with at most `budget` classes.
pub fn mutation_equivalent(a: &ExchangeMatrix, b: &ExchangeMatrix, budget: usize) -> Result<Option<bool>> {
    if a.n() != b.n() {
        return Ok(Some(false));
    }
    let key = canonical_key(b)?;
    let (keys, status, _) = mutation_class_keys(a, budget)?;
    Ok(if keys.contains(&key) {
        Some(true)
    } else if status == ClassStatus::Complete {
        Some(false)
    } else {
        None
    })
}
