//! Tagged triangulations on top of the ideal-triangulation map.
//!
//! A tagged triangulation is stored as an ideal triangulation `base` plus a
//! signature `δ(a) ∈ {+1, −1, 0}` per puncture. At punctures with `δ = 0` the
//! base has a self-folded triangle: the fold is the plain radius and the loop
//! stands for the radius notched at the puncture. At `δ = −1` punctures every
//! end is notched, at `δ = +1` punctures every end is plain.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bfs, Exploration, FlipGraph};
use crate::matrix::ExchangeMatrix;
use crate::trimap::IdealTriangulation;

/// Tag of an arc end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tag {
    Plain,
    Notched,
}

/// Choice of `ε(a) ∈ {+1, −1}` per puncture.
pub type TaggingChoice = BTreeMap<usize, i8>;

/// One tagged arc of a tagged triangulation, described by its ends.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedArcEnds {
    pub id: usize,
    /// Arc id in the base triangulation carrying the underlying ordinary arc.
    pub underlying: usize,
    pub ends: [(usize, Tag); 2],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedTriangulation {
    base: IdealTriangulation,
    delta: BTreeMap<usize, i8>,
}

impl TaggedTriangulation {
    pub fn base(&self) -> &IdealTriangulation {
        &self.base
    }

    /// The signature `δ`.
    pub fn signature(&self) -> &BTreeMap<usize, i8> {
        &self.delta
    }

    pub fn rank(&self) -> usize {
        self.base.n_arcs()
    }

    /// `B(T)`, defined as the signed adjacency matrix of the base.
    pub fn exchange_matrix(&self) -> ExchangeMatrix {
        self.base.signed_adjacency()
    }

    /// Ends and tags of every tagged arc, indexed by arc id.
    pub fn tagged_arcs(&self) -> Vec<TaggedArcEnds> {
        let mut loop_to_fold = BTreeMap::new();
        for sf in self.base.self_folded_triangles() {
            loop_to_fold.insert(sf.loop_arc, sf);
        }
        let tag_at = |v: usize| {
            if self.delta.get(&v) == Some(&-1) {
                Tag::Notched
            } else {
                Tag::Plain
            }
        };
        (0..self.base.n_arcs())
            .map(|id| match loop_to_fold.get(&id) {
                Some(sf) => TaggedArcEnds {
                    id,
                    underlying: sf.fold,
                    ends: [(sf.base, tag_at(sf.base)), (sf.puncture, Tag::Notched)],
                },
                None => {
                    let (a, b) = self.base.endpoints(id).expect("arc in range");
                    TaggedArcEnds { id, underlying: id, ends: [(a, tag_at(a)), (b, tag_at(b))] }
                }
            })
            .collect()
    }

    /// Flips tagged arc `k`; the new arc reuses the id `k`.
    pub fn flip(&self, k: usize) -> Result<TaggedTriangulation> {
        if k >= self.base.n_arcs() {
            return Err(Error::ArcNotPresent(k));
        }
        let folds = self.base.self_folded_triangles();
        let mut delta = self.delta.clone();
        let base = if let Some(sf) = folds.iter().find(|s| s.fold == k) {
            // plain radius at a δ = 0 puncture: keep the notched companion
            delta.insert(sf.puncture, -1);
            self.base.flip(sf.loop_arc)?.swap_arc_ids(sf.fold, sf.loop_arc)
        } else if let Some(sf) = folds.iter().find(|s| s.loop_arc == k) {
            // notched radius at a δ = 0 puncture: keep the plain companion
            delta.insert(sf.puncture, 1);
            self.base.flip(k)?
        } else {
            self.base.flip(k)?
        };
        Ok(Self::settle(base, delta))
    }

    /// Sets `δ = 0` at newly enclosed punctures, relabeling fold and loop so
    /// that the ids keep denoting the same tagged arcs.
    fn settle(mut base: IdealTriangulation, mut delta: BTreeMap<usize, i8>) -> TaggedTriangulation {
        for sf in base.self_folded_triangles() {
            let d = delta.insert(sf.puncture, 0).expect("puncture");
            if d == -1 {
                base = base.swap_arc_ids(sf.fold, sf.loop_arc);
            }
        }
        TaggedTriangulation { base, delta }
    }

    /// Isomorphism-invariant encoding with arc ids forgotten.
    pub fn canonical_code(&self) -> Vec<i64> {
        let mut code = self.base.canonical_code();
        code.push(i64::MIN);
        code.extend(self.delta.values().map(|&d| d as i64));
        code
    }

    /// Same tagged arcs with ids `i` and `j` exchanged.
    pub fn swap_arc_ids(&self, i: usize, j: usize) -> TaggedTriangulation {
        TaggedTriangulation { base: self.base.swap_arc_ids(i, j), delta: self.delta.clone() }
    }

    /// Encoding that also records which id each tagged arc carries.
    pub fn labeled_code(&self) -> Vec<i64> {
        let mut code = self.base.labeled_code();
        code.push(i64::MIN);
        code.extend(self.delta.values().map(|&d| d as i64));
        code
    }

    /// Base map string, then one sign per puncture (`+`, `-`, or `0` if enclosed).
    pub fn canonical_string(&self) -> String {
        let signs: String = self.delta.values().map(|&d| match d {
            1 => '+',
            -1 => '-',
            _ => '0',
        }).collect();
        format!("{}|{signs}", self.base.canonical_string())
    }

    /// True if any arc end is notched.
    pub fn has_notch(&self) -> bool {
        self.delta.values().any(|&d| d != 1)
    }
}

/// `τ(T0, ε)`: loops cutting out once-punctured monogons become notched
/// radii, then tags at punctures with `ε = −1` are toggled.
pub fn tag_with(t0: &IdealTriangulation, eps: &TaggingChoice) -> Result<TaggedTriangulation> {
    let mut delta = BTreeMap::new();
    for p in t0.punctures() {
        let e = eps.get(&p).copied().unwrap_or(1);
        if e != 1 && e != -1 {
            return Err(Error::Parse(format!("tag choice at puncture {p} must be +1 or -1")));
        }
        delta.insert(p, e);
    }
    for sf in t0.self_folded_triangles() {
        delta.insert(sf.puncture, 0);
    }
    Ok(TaggedTriangulation { base: t0.clone(), delta })
}

/// All-plain tagging of `t0`.
pub fn tag_plain(t0: &IdealTriangulation) -> TaggedTriangulation {
    tag_with(t0, &TaggingChoice::new()).expect("default choice is valid")
}

/// `C°`: the ordinary triangulation underlying `t`.
pub fn untag(t: &TaggedTriangulation) -> IdealTriangulation {
    t.base.clone()
}

pub fn exchange_graph_bfs(start: &TaggedTriangulation, max_nodes: usize) -> Exploration<TaggedTriangulation> {
    bfs(start.clone(), max_nodes, |t| t.canonical_code(), |t| {
        (0..t.rank()).map(|k| t.flip(k).expect("every tagged arc flips")).collect()
    })
}

pub fn exchange_graph(start: &TaggedTriangulation, max_nodes: usize) -> FlipGraph {
    FlipGraph::from_exploration(&exchange_graph_bfs(start, max_nodes), |t| t.canonical_string())
}

/// Number of flips after which alternately flipping `i` and `j` first
/// returns to `t`, or `None` if that takes more than `max_steps`.
///
/// Arc ids other than `i` and `j` must come back unchanged; `i` and `j` may
/// trade places.
pub fn alternating_return(t: &TaggedTriangulation, i: usize, j: usize, max_steps: usize) -> Result<Option<usize>> {
    let n = t.rank();
    if i >= n || j >= n || i == j {
        return Err(Error::ArcNotPresent(if i < n && i != j { j } else { i }));
    }
    let target = t.labeled_code();
    let mut cur = t.clone();
    for step in 1..=max_steps {
        cur = cur.flip(if step % 2 == 1 { i } else { j })?;
        if cur.labeled_code() == target || cur.swap_arc_ids(i, j).labeled_code() == target {
            return Ok(Some(step));
        }
    }
    Ok(None)
}

#[derive(Serialize, Deserialize)]
struct TaggedJson {
    base: IdealTriangulation,
    signature: BTreeMap<usize, i8>,
}

impl Serialize for TaggedTriangulation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TaggedJson { base: self.base.clone(), signature: self.delta.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TaggedTriangulation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = TaggedJson::deserialize(d)?;
        let enclosed: Vec<usize> = j.base.self_folded_triangles().iter().map(|s| s.puncture).collect();
        if j.signature.keys().copied().collect::<Vec<_>>() != j.base.punctures() {
            return Err(serde::de::Error::custom("signature must list exactly the punctures"));
        }
        for (&p, &d) in &j.signature {
            if (d == 0) != enclosed.contains(&p) || !(-1..=1).contains(&d) {
                return Err(serde::de::Error::custom(format!("signature value {d} at puncture {p} does not match the base")));
            }
        }
        Ok(TaggedTriangulation { base: j.base, delta: j.signature })
    }
}
