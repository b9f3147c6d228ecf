//! Explicit tagged-arc models for the polygon and the once-punctured polygon.
//!
//! Boundary marked points are `0..m` in counterclockwise order. In the
//! punctured model a chord `(a, b)` is the arc whose punctured side is bounded
//! by the counterclockwise boundary path `a, a+1, ..., b`; the arc is then
//! isotopic to the opposite path `b, ..., a` pushed into the interior.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::FlipGraph;
use crate::surface::MarkedSurface;
use crate::tagged::{Tag, TaggedTriangulation};
use crate::trimap::Side;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "model", content = "m", rename_all = "lowercase")]
pub enum Model {
    Polygon(usize),
    Punctured(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelArc {
    Chord(usize, usize),
    Radius(usize, Tag),
}

impl Model {
    pub fn m(self) -> usize {
        match self {
            Model::Polygon(m) | Model::Punctured(m) => m,
        }
    }

    pub fn validate(self) -> Result<Self> {
        match self {
            Model::Polygon(m) if m < 4 => Err(Error::ExcludedModel(format!("polygon needs at least 4 vertices, got {m}"))),
            Model::Punctured(m) if m < 2 => Err(Error::ExcludedModel(format!("punctured polygon needs at least 2 vertices, got {m}"))),
            _ => Ok(self),
        }
    }

    pub fn surface(self) -> Result<MarkedSurface> {
        match self.validate()? {
            Model::Polygon(m) => MarkedSurface::polygon(m),
            Model::Punctured(m) => MarkedSurface::punctured_polygon(m),
        }
    }

    pub fn rank(self) -> usize {
        match self {
            Model::Polygon(m) => m - 3,
            Model::Punctured(m) => m,
        }
    }

    /// Canonical form of a chord, checking that it is an arc of the model.
    pub fn chord(self, a: usize, b: usize) -> Result<ModelArc> {
        let m = self.m();
        let bad = || Error::Parse(format!("({a}, {b}) is not an arc of {self:?}"));
        if a >= m || b >= m || a == b {
            return Err(bad());
        }
        match self {
            Model::Polygon(_) => {
                let (i, j) = (a.min(b), a.max(b));
                if j - i == 1 || (i == 0 && j == m - 1) {
                    return Err(bad());
                }
                Ok(ModelArc::Chord(i, j))
            }
            Model::Punctured(_) => {
                if (b + m - a) % m > m - 2 {
                    return Err(bad());
                }
                Ok(ModelArc::Chord(a, b))
            }
        }
    }

    pub fn radius(self, i: usize, tag: Tag) -> Result<ModelArc> {
        match self {
            Model::Punctured(m) if i < m => Ok(ModelArc::Radius(i, tag)),
            _ => Err(Error::Parse(format!("radius at {i} is not an arc of {self:?}"))),
        }
    }

    /// All tagged arcs, in a fixed order.
    pub fn enumerate_tagged_arcs(self) -> Result<Vec<ModelArc>> {
        let m = self.validate()?.m();
        let mut out = Vec::new();
        match self {
            Model::Polygon(_) => {
                for i in 0..m {
                    for j in i + 2..m {
                        if !(i == 0 && j == m - 1) {
                            out.push(ModelArc::Chord(i, j));
                        }
                    }
                }
            }
            Model::Punctured(_) => {
                for a in 0..m {
                    for s in 1..=m - 2 {
                        out.push(ModelArc::Chord(a, (a + s) % m));
                    }
                }
                for i in 0..m {
                    out.push(ModelArc::Radius(i, Tag::Plain));
                    out.push(ModelArc::Radius(i, Tag::Notched));
                }
            }
        }
        Ok(out)
    }

    /// Lift of a chord to the universal cover of the (punctured) disk, as an
    /// interval of boundary positions.
    fn lift(self, arc: ModelArc) -> Option<(i64, i64)> {
        let m = self.m() as i64;
        match (self, arc) {
            (Model::Polygon(_), ModelArc::Chord(i, j)) => Some((i as i64, j as i64)),
            (Model::Punctured(_), ModelArc::Chord(a, b)) => {
                let (a, b) = (a as i64, b as i64);
                Some((b, b + (a - b).rem_euclid(m)))
            }
            _ => None,
        }
    }

    /// Minimal number of interior crossings of the untagged versions.
    pub fn crossings(self, x: ModelArc, y: ModelArc) -> usize {
        let m = self.m() as i64;
        match (self.lift(x), self.lift(y)) {
            (Some(p), Some(q)) => match self {
                Model::Polygon(_) => interleave(p, q) as usize,
                Model::Punctured(_) => (-2..=2).filter(|&k| interleave(p, (q.0 + k * m, q.1 + k * m))).count(),
            },
            (Some((s, e)), None) | (None, Some((s, e))) => {
                let ModelArc::Radius(i, _) = (if self.lift(x).is_none() { x } else { y }) else { unreachable!() };
                (-2..=2).filter(|&k| s < i as i64 + k * m && (i as i64 + k * m) < e).count()
            }
            (None, None) => 0,
        }
    }

    /// The pairing `(α|β) = A + B + C + D`; `B` vanishes since neither model has loops.
    pub fn intersection_number(self, alpha: ModelArc, beta: ModelArc) -> i64 {
        let a = self.crossings(alpha, beta) as i64;
        let c = if untagged(alpha) == untagged(beta) { -1 } else { 0 };
        let d = match (alpha, beta) {
            (ModelArc::Radius(_, s), ModelArc::Radius(_, t)) if s != t => 1,
            _ => 0,
        };
        a + c + d
    }

    pub fn compatible(self, alpha: ModelArc, beta: ModelArc) -> bool {
        if self.crossings(alpha, beta) > 0 {
            return false;
        }
        match (alpha, beta) {
            (ModelArc::Radius(i, s), ModelArc::Radius(j, t)) => i == j || s == t,
            _ => true,
        }
    }

    /// All clusters (maximal compatible sets) and their flip graph.
    pub fn enumerate_clusters(self) -> Result<ClusterComplex> {
        let arcs = self.enumerate_tagged_arcs()?;
        let n = arcs.len();
        let adj: Vec<u64> = (0..n)
            .map(|i| (0..n).filter(|&j| j != i && self.compatible(arcs[i], arcs[j])).fold(0u64, |acc, j| acc | 1 << j))
            .collect();
        let mut clusters = Vec::new();
        bron_kerbosch(&adj, 0, (1u64 << n) - 1, 0, &mut clusters);
        let mut clusters: Vec<Vec<usize>> =
            clusters.into_iter().map(|c| (0..n).filter(|&i| c >> i & 1 == 1).collect()).collect();
        clusters.sort();
        let mut by_face: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        for (ci, c) in clusters.iter().enumerate() {
            for skip in 0..c.len() {
                let mut face = c.clone();
                face.remove(skip);
                by_face.entry(face).or_default().push(ci);
            }
        }
        let mut edges = BTreeSet::new();
        for owners in by_face.values() {
            for (x, &a) in owners.iter().enumerate() {
                for &b in &owners[x + 1..] {
                    edges.insert([a.min(b), a.max(b)]);
                }
            }
        }
        let max_face = by_face.values().map(|o| o.len()).max().unwrap_or(0);
        let min_face = by_face.values().map(|o| o.len()).min().unwrap_or(0);
        let vertices = clusters
            .iter()
            .map(|c| c.iter().map(|&i| arcs[i].to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        Ok(ClusterComplex {
            model: self,
            arcs,
            clusters,
            graph: FlipGraph { vertices, edges: edges.into_iter().collect(), truncated: false },
            completions_per_face: (min_face, max_face),
        })
    }

    /// Model arcs of a tagged triangulation of this model's surface, by arc id.
    ///
    /// The triangulation must come from `initial_triangulation` of
    /// [`Model::surface`] by flips, so that boundary vertex `i` is model vertex `i`.
    pub fn arcs_of(self, t: &TaggedTriangulation) -> Result<Vec<ModelArc>> {
        let base = t.base();
        if *base.surface() != self.surface()? {
            return Err(Error::ExcludedModel(format!("triangulation is of {}, not {self:?}", base.surface())));
        }
        let m = self.m();
        let puncture = base.punctures().first().copied();
        t.tagged_arcs()
            .into_iter()
            .map(|arc| {
                let [(u, tu), (w, tw)] = arc.ends;
                if Some(u) == puncture {
                    return self.radius(w, tu);
                }
                if Some(w) == puncture {
                    return self.radius(u, tw);
                }
                if u >= m || w >= m {
                    return Err(Error::InvalidTriangulation("vertex ids do not match the model".into()));
                }
                match puncture {
                    None => self.chord(u, w),
                    Some(q) => {
                        // the region left of u -> w is bounded by the path w, ..., u
                        let [(t0, s0), _] = base.slots_of(arc.underlying)?;
                        let tri = &base.triangles()[t0];
                        let (from, to) = (tri.v[s0], tri.v[(s0 + 1) % 3]);
                        if region_has_vertex(t, t0, arc.underlying, q) {
                            self.chord(to, from)
                        } else {
                            self.chord(from, to)
                        }
                    }
                }
            })
            .collect()
    }
}

fn region_has_vertex(t: &TaggedTriangulation, start: usize, cut: usize, v: usize) -> bool {
    let base = t.base();
    let tris = base.triangles();
    let mut seen = vec![false; tris.len()];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(i) = stack.pop() {
        if tris[i].v.contains(&v) {
            return true;
        }
        for side in tris[i].e {
            if let Side::Arc(a) = side {
                if a == cut {
                    continue;
                }
                for (j, _) in base.slots_of(a).expect("arc") {
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
    }
    false
}

/// Strict interleaving of two intervals.
fn interleave(p: (i64, i64), q: (i64, i64)) -> bool {
    (p.0 < q.0 && q.0 < p.1 && p.1 < q.1) || (q.0 < p.0 && p.0 < q.1 && q.1 < p.1)
}

fn untagged(a: ModelArc) -> ModelArc {
    match a {
        ModelArc::Radius(i, _) => ModelArc::Radius(i, Tag::Plain),
        c => c,
    }
}

fn bron_kerbosch(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 && x == 0 {
        out.push(r);
        return;
    }
    let pivot = (p | x).trailing_zeros() as usize;
    let mut cand = p & !adj[pivot];
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        bron_kerbosch(adj, r | 1 << v, p & adj[v], x & adj[v], out);
        p &= !(1 << v);
        x |= 1 << v;
    }
}

/// Tagged arc complex of a finite model.
#[derive(Debug, Clone, Serialize)]
pub struct ClusterComplex {
    pub model: Model,
    pub arcs: Vec<ModelArc>,
    /// Clusters as sorted indices into `arcs`.
    pub clusters: Vec<Vec<usize>>,
    pub graph: FlipGraph,
    /// Smallest and largest number of clusters containing a codimension-1 face.
    pub completions_per_face: (usize, usize),
}

impl std::fmt::Display for ModelArc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ModelArc::Chord(a, b) => write!(f, "{a}-{b}"),
            ModelArc::Radius(i, Tag::Plain) => write!(f, "r{i}"),
            ModelArc::Radius(i, Tag::Notched) => write!(f, "r{i}*"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ArcJson {
    Chord { chord: [usize; 2] },
    Radius { radius: usize, #[serde(default = "plain")] tag: Tag },
}

fn plain() -> Tag {
    Tag::Plain
}

impl Serialize for ModelArc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            ModelArc::Chord(a, b) => ArcJson::Chord { chord: [a, b] },
            ModelArc::Radius(i, tag) => ArcJson::Radius { radius: i, tag },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ModelArc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(match ArcJson::deserialize(d)? {
            ArcJson::Chord { chord: [a, b] } => ModelArc::Chord(a, b),
            ArcJson::Radius { radius, tag } => ModelArc::Radius(radius, tag),
        })
    }
}

/// An arc together with its model, as read from JSON
/// (`{"model":"punctured","m":4,"radius":1,"tag":"notched"}`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArcInModel {
    pub model: Model,
    pub arc: ModelArc,
}

#[derive(Serialize, Deserialize)]
struct ArcInModelJson {
    model: String,
    m: usize,
    #[serde(flatten)]
    arc: ArcJson,
}

impl Serialize for ArcInModel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let model = match self.model {
            Model::Polygon(_) => "polygon",
            Model::Punctured(_) => "punctured",
        };
        let arc = match self.arc {
            ModelArc::Chord(a, b) => ArcJson::Chord { chord: [a, b] },
            ModelArc::Radius(i, tag) => ArcJson::Radius { radius: i, tag },
        };
        ArcInModelJson { model: model.into(), m: self.model.m(), arc }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ArcInModel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = ArcInModelJson::deserialize(d)?;
        let model = match j.model.as_str() {
            "polygon" => Model::Polygon(j.m),
            "punctured" => Model::Punctured(j.m),
            other => return Err(D::Error::custom(format!("unknown model {other:?}"))),
        };
        let model = model.validate().map_err(D::Error::custom)?;
        let arc = match j.arc {
            ArcJson::Chord { chord: [a, b] } => model.chord(a, b),
            ArcJson::Radius { radius, tag } => model.radius(radius, tag),
        }
        .map_err(D::Error::custom)?;
        Ok(ArcInModel { model, arc })
    }
}
