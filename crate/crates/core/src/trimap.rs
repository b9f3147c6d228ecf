//! Ideal triangulations as oriented combinatorial maps.
//!
//! A triangulation is a list of triangles. Each triangle lists its three
//! corners `v[0], v[1], v[2]` counterclockwise and its three sides, where side
//! `e[k]` runs from `v[k]` to `v[k + 1]`. Every arc id occupies exactly two
//! side slots, traversed in opposite directions; every boundary segment
//! occupies exactly one. Self-folded triangles are the triangles in which one
//! arc (the fold) occupies two slots; the remaining side is the enclosing loop.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bfs, Exploration, FlipGraph};
use crate::matrix::ExchangeMatrix;
use crate::surface::{validate_surface, MarkedSurface, SurfaceDescriptor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Arc(usize),
    Boundary(usize),
}

impl Side {
    pub fn arc(self) -> Option<usize> {
        match self {
            Side::Arc(a) => Some(a),
            Side::Boundary(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Triangle {
    pub v: [usize; 3],
    pub e: [Side; 3],
}

/// A self-folded triangle: `fold` runs from the loop's base vertex to the
/// enclosed `puncture`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SelfFolded {
    pub triangle: usize,
    pub fold: usize,
    pub loop_arc: usize,
    pub puncture: usize,
    pub base: usize,
}

impl Triangle {
    /// Same triangle listed starting from slot `r`.
    pub fn rotated(&self, r: usize) -> Triangle {
        Triangle {
            v: [self.v[r % 3], self.v[(r + 1) % 3], self.v[(r + 2) % 3]],
            e: [self.e[r % 3], self.e[(r + 1) % 3], self.e[(r + 2) % 3]],
        }
    }

    pub fn is_self_folded(&self) -> bool {
        self.fold_slot().is_some()
    }

    /// Slot `k` such that `e[k] == e[k + 1]` is the fold.
    fn fold_slot(&self) -> Option<usize> {
        (0..3).find(|&k| self.e[k] == self.e[(k + 1) % 3] && matches!(self.e[k], Side::Arc(_)))
    }
}

/// An ideal triangulation of a validated surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealTriangulation {
    surface: MarkedSurface,
    triangles: Vec<Triangle>,
    n_arcs: usize,
    n_boundary: usize,
    is_puncture: Vec<bool>,
}

impl IdealTriangulation {
    pub fn surface(&self) -> &MarkedSurface {
        &self.surface
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn n_arcs(&self) -> usize {
        self.n_arcs
    }

    pub fn n_boundary_segments(&self) -> usize {
        self.n_boundary
    }

    pub fn n_vertices(&self) -> usize {
        self.is_puncture.len()
    }

    pub fn is_puncture(&self, v: usize) -> bool {
        self.is_puncture[v]
    }

    /// Puncture vertex ids in increasing order.
    pub fn punctures(&self) -> Vec<usize> {
        (0..self.is_puncture.len()).filter(|&v| self.is_puncture[v]).collect()
    }

    /// Builds a triangulation from explicit triangles, inferring the surface.
    ///
    /// Vertex ids must agree with the corner identifications forced by the
    /// gluing and must be `0..V`.
    pub fn from_triangles(triangles: Vec<Triangle>, n_arcs: usize, n_boundary: usize) -> Result<Self> {
        let faces: Vec<[Side; 3]> = triangles.iter().map(|t| t.e).collect();
        let (classes, n_classes) = corner_classes(&faces, n_arcs, n_boundary)?;
        let mut class_to_vertex: Vec<Option<usize>> = vec![None; n_classes];
        let mut vertex_to_class: HashMap<usize, usize> = HashMap::new();
        for (t, tri) in triangles.iter().enumerate() {
            for k in 0..3 {
                let c = classes[t][k];
                let v = tri.v[k];
                match class_to_vertex[c] {
                    None => class_to_vertex[c] = Some(v),
                    Some(w) if w != v => {
                        return Err(Error::InvalidTriangulation(format!(
                            "corner {k} of triangle {t} is glued to vertex {w} but labeled {v}"
                        )))
                    }
                    _ => {}
                }
                if let Some(&c2) = vertex_to_class.get(&v) {
                    if c2 != c {
                        return Err(Error::InvalidTriangulation(format!(
                            "vertex {v} labels two distinct corner classes"
                        )));
                    }
                } else {
                    vertex_to_class.insert(v, c);
                }
            }
        }
        if (0..n_classes).any(|v| !vertex_to_class.contains_key(&v)) {
            return Err(Error::InvalidTriangulation("vertex ids must be 0..V".into()));
        }
        Self::finish(triangles, n_arcs, n_boundary, n_classes)
    }

    /// Builds a triangulation from side lists alone; vertex ids are assigned
    /// from the corner identifications in order of first appearance.
    pub fn from_faces(faces: &[[Side; 3]], n_arcs: usize, n_boundary: usize) -> Result<Self> {
        let (classes, n_classes) = corner_classes(faces, n_arcs, n_boundary)?;
        let triangles = faces.iter().zip(&classes).map(|(e, v)| Triangle { v: *v, e: *e }).collect();
        Self::finish(triangles, n_arcs, n_boundary, n_classes)
    }

    fn finish(triangles: Vec<Triangle>, n_arcs: usize, n_boundary: usize, n_vertices: usize) -> Result<Self> {
        let bad = |m: String| Error::InvalidTriangulation(m);
        // boundary structure
        let mut out_seg: Vec<Option<usize>> = vec![None; n_vertices];
        let mut seg_end = vec![usize::MAX; n_boundary];
        for t in &triangles {
            for k in 0..3 {
                if let Side::Boundary(s) = t.e[k] {
                    let from = t.v[k];
                    if out_seg[from].replace(s).is_some() {
                        return Err(bad(format!("vertex {from} starts two boundary segments")));
                    }
                    seg_end[s] = t.v[(k + 1) % 3];
                }
            }
        }
        let mut in_count = vec![0usize; n_vertices];
        for &e in &seg_end {
            in_count[e] += 1;
        }
        for v in 0..n_vertices {
            let has_out = out_seg[v].is_some() as usize;
            if has_out != in_count[v] {
                return Err(bad(format!("vertex {v} has unbalanced boundary segments")));
            }
        }
        let is_puncture: Vec<bool> = out_seg.iter().map(|s| s.is_none()).collect();
        let mut seen = vec![false; n_boundary];
        let mut boundary = Vec::new();
        for s0 in 0..n_boundary {
            if seen[s0] {
                continue;
            }
            let mut len = 0;
            let mut s = s0;
            while !seen[s] {
                seen[s] = true;
                len += 1;
                s = out_seg[seg_end[s]].expect("balanced boundary");
            }
            boundary.push(len);
        }

        // connectivity through arcs
        let slots = arc_slots(&triangles, n_arcs)?;
        let mut reached = vec![false; triangles.len()];
        let mut stack = vec![0];
        if !triangles.is_empty() {
            reached[0] = true;
        }
        while let Some(t) = stack.pop() {
            for side in triangles[t].e {
                if let Side::Arc(a) = side {
                    for &(u, _) in &slots[a] {
                        if !reached[u] {
                            reached[u] = true;
                            stack.push(u);
                        }
                    }
                }
            }
        }
        if reached.iter().any(|r| !r) {
            return Err(bad("triangles do not form a connected surface".into()));
        }

        let chi = n_vertices as i64 - (n_arcs + n_boundary) as i64 + triangles.len() as i64;
        let two_g = 2 - boundary.len() as i64 - chi;
        if two_g < 0 || two_g % 2 != 0 {
            return Err(bad(format!("Euler characteristic {chi} is inconsistent with {} boundary components", boundary.len())));
        }
        let punctures = is_puncture.iter().filter(|&&p| p).count();
        let surface = validate_surface(&SurfaceDescriptor { genus: (two_g / 2) as usize, boundary, punctures })?;
        if surface.rank() != n_arcs {
            return Err(bad(format!("{} arcs but the surface has rank {}", n_arcs, surface.rank())));
        }
        Ok(IdealTriangulation { surface, triangles, n_arcs, n_boundary, is_puncture })
    }

    /// Full invariant check: gluing, Euler characteristic, arc count, vertex labels.
    pub fn validate(&self) -> Result<()> {
        let rebuilt = Self::from_triangles(self.triangles.clone(), self.n_arcs, self.n_boundary)?;
        if rebuilt.surface != self.surface {
            return Err(Error::InvalidTriangulation(format!(
                "map describes {} instead of {}",
                rebuilt.surface, self.surface
            )));
        }
        Ok(())
    }

    /// The two slots `(triangle, side index)` occupied by arc `k`.
    pub fn slots_of(&self, k: usize) -> Result<[(usize, usize); 2]> {
        if k >= self.n_arcs {
            return Err(Error::UnknownArc(k));
        }
        let mut found = Vec::with_capacity(2);
        for (t, tri) in self.triangles.iter().enumerate() {
            for s in 0..3 {
                if tri.e[s] == Side::Arc(k) {
                    found.push((t, s));
                }
            }
        }
        Ok([found[0], found[1]])
    }

    /// Endpoints of arc `k` as vertex ids.
    pub fn endpoints(&self, k: usize) -> Result<(usize, usize)> {
        let [(t, s), _] = self.slots_of(k)?;
        let tri = &self.triangles[t];
        Ok((tri.v[s], tri.v[(s + 1) % 3]))
    }

    pub fn self_folded_triangles(&self) -> Vec<SelfFolded> {
        self.triangles
            .iter()
            .enumerate()
            .filter_map(|(t, tri)| {
                let k = tri.fold_slot()?;
                Some(SelfFolded {
                    triangle: t,
                    fold: tri.e[k].arc()?,
                    loop_arc: tri.e[(k + 2) % 3].arc()?,
                    puncture: tri.v[(k + 1) % 3],
                    base: tri.v[k],
                })
            })
            .collect()
    }

    pub fn is_flippable(&self, k: usize) -> Result<bool> {
        let [(t1, _), (t2, _)] = self.slots_of(k)?;
        Ok(t1 != t2)
    }

    /// Flips arc `k`; the new arc reuses the id `k`.
    pub fn flip(&self, k: usize) -> Result<IdealTriangulation> {
        let [(t1, s1), (t2, s2)] = self.slots_of(k)?;
        if t1 == t2 {
            return Err(Error::NotFlippable(k));
        }
        // t1 = (a, b, c; k, y1, y2), t2 = (b, a, d; k, z1, z2)
        let p = self.triangles[t1].rotated(s1);
        let q = self.triangles[t2].rotated(s2);
        let (a, b, c) = (p.v[0], p.v[1], p.v[2]);
        let d = q.v[2];
        let (y1, y2) = (p.e[1], p.e[2]);
        let (z1, z2) = (q.e[1], q.e[2]);
        let mut out = self.clone();
        out.triangles[t1] = Triangle { v: [d, b, c], e: [z2, y1, Side::Arc(k)] };
        out.triangles[t2] = Triangle { v: [c, a, d], e: [y2, z1, Side::Arc(k)] };
        Ok(out)
    }

    /// Swaps the ids of two arcs.
    pub fn swap_arc_ids(&self, i: usize, j: usize) -> IdealTriangulation {
        let mut out = self.clone();
        for t in &mut out.triangles {
            for s in &mut t.e {
                *s = match *s {
                    Side::Arc(a) if a == i => Side::Arc(j),
                    Side::Arc(a) if a == j => Side::Arc(i),
                    other => other,
                };
            }
        }
        out
    }

    /// Signed adjacency matrix `B(T)`, rows and columns labeled by arc id.
    pub fn signed_adjacency(&self) -> ExchangeMatrix {
        let n = self.n_arcs;
        // arcs represented by a side: the side itself plus a fold it encloses
        let mut represented: Vec<Vec<usize>> = (0..n).map(|a| vec![a]).collect();
        for sf in self.self_folded_triangles() {
            represented[sf.loop_arc].push(sf.fold);
        }
        let mut b = ExchangeMatrix::zeros(n);
        for tri in &self.triangles {
            if tri.is_self_folded() {
                continue;
            }
            for k in 0..3 {
                let (Side::Arc(x), Side::Arc(y)) = (tri.e[k], tri.e[(k + 1) % 3]) else {
                    continue;
                };
                for &i in &represented[y] {
                    for &j in &represented[x] {
                        b.add(i, j, 1);
                    }
                }
            }
        }
        b
    }

    /// 0 at punctures enclosed by a self-folded triangle, 1 elsewhere.
    pub fn signature(&self) -> BTreeMap<usize, u8> {
        let mut sig: BTreeMap<usize, u8> = self.punctures().into_iter().map(|p| (p, 1)).collect();
        for sf in self.self_folded_triangles() {
            sig.insert(sf.puncture, 0);
        }
        sig
    }

    /// Isomorphism-invariant encoding of the map with arc ids forgotten.
    ///
    /// Vertex ids, boundary segment ids and orientation are kept, so two
    /// triangulations share a code iff they differ only by arc relabeling.
    pub fn canonical_code(&self) -> Vec<i64> {
        let slots = arc_slots(&self.triangles, self.n_arcs).expect("valid map");
        let starts: Vec<(usize, usize)> = match self.boundary_start() {
            Some(s) => vec![s],
            None => (0..self.triangles.len()).flat_map(|t| (0..3).map(move |r| (t, r))).collect(),
        };
        starts
            .into_iter()
            .map(|(t, r)| self.encode_from(t, r, &slots, false))
            .min()
            .unwrap_or_default()
    }

    /// Like [`Self::canonical_code`] but arc ids are part of the encoding.
    pub fn labeled_code(&self) -> Vec<i64> {
        let slots = arc_slots(&self.triangles, self.n_arcs).expect("valid map");
        let starts: Vec<(usize, usize)> = match self.boundary_start() {
            Some(s) => vec![s],
            None => (0..self.triangles.len()).flat_map(|t| (0..3).map(move |r| (t, r))).collect(),
        };
        starts.into_iter().map(|(t, r)| self.encode_from(t, r, &slots, true)).min().unwrap_or_default()
    }

    fn boundary_start(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, (usize, usize))> = None;
        for (t, tri) in self.triangles.iter().enumerate() {
            for k in 0..3 {
                if let Side::Boundary(s) = tri.e[k] {
                    if best.map_or(true, |(b, _)| s < b) {
                        best = Some((s, (t, k)));
                    }
                }
            }
        }
        best.map(|(_, pos)| pos)
    }

    fn encode_from(&self, t0: usize, r0: usize, slots: &[Vec<(usize, usize)>], keep_labels: bool) -> Vec<i64> {
        let nt = self.triangles.len();
        let mut order: Vec<Option<(usize, usize)>> = vec![None; nt];
        let mut queue = std::collections::VecDeque::new();
        let mut arc_label: Vec<Option<usize>> = vec![None; self.n_arcs];
        let mut next_label = 0;
        let mut next_tri = 1;
        order[t0] = Some((0, r0));
        queue.push_back(t0);
        let mut code = Vec::with_capacity(nt * 9);
        while let Some(t) = queue.pop_front() {
            let (_, r) = order[t].unwrap();
            let tri = &self.triangles[t];
            for j in 0..3 {
                let s = (r + j) % 3;
                code.push(tri.v[s] as i64);
                match tri.e[s] {
                    Side::Boundary(b) => code.push(-1 - b as i64),
                    Side::Arc(a) => {
                        let (u, us) = slots[a].iter().copied().find(|&x| x != (t, s)).unwrap();
                        if order[u].is_none() {
                            order[u] = Some((next_tri, us));
                            next_tri += 1;
                            queue.push_back(u);
                        }
                        let label = if keep_labels {
                            a
                        } else {
                            *arc_label[a].get_or_insert_with(|| {
                                next_label += 1;
                                next_label - 1
                            })
                        };
                        let (ui, ur) = order[u].unwrap();
                        code.push(label as i64);
                        code.push((ui * 3 + (us + 3 - ur) % 3) as i64);
                    }
                }
            }
        }
        code
    }

    /// Compact string form of [`Self::canonical_code`].
    pub fn canonical_string(&self) -> String {
        code_string(&self.canonical_code())
    }

    /// Arcs that can be flipped (every arc except folds).
    pub fn flippable_arcs(&self) -> Vec<usize> {
        (0..self.n_arcs).filter(|&k| self.is_flippable(k).unwrap_or(false)).collect()
    }
}

pub(crate) fn code_string(code: &[i64]) -> String {
    code.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(".")
}

/// Slots of each arc, checking that each arc occurs exactly twice.
fn arc_slots(triangles: &[Triangle], n_arcs: usize) -> Result<Vec<Vec<(usize, usize)>>> {
    let mut slots = vec![Vec::with_capacity(2); n_arcs];
    for (t, tri) in triangles.iter().enumerate() {
        for s in 0..3 {
            if let Side::Arc(a) = tri.e[s] {
                if a >= n_arcs {
                    return Err(Error::UnknownArc(a));
                }
                slots[a].push((t, s));
            }
        }
    }
    if let Some(a) = slots.iter().position(|s| s.len() != 2) {
        return Err(Error::InvalidTriangulation(format!("arc {a} occurs {} times", slots[a].len())));
    }
    Ok(slots)
}

/// Corner classes forced by the gluing, numbered by first appearance.
fn corner_classes(faces: &[[Side; 3]], n_arcs: usize, n_boundary: usize) -> Result<(Vec<[usize; 3]>, usize)> {
    let tris: Vec<Triangle> = faces.iter().map(|e| Triangle { v: [0; 3], e: *e }).collect();
    let slots = arc_slots(&tris, n_arcs)?;
    let mut bseen = vec![0; n_boundary];
    for e in faces.iter().flatten() {
        if let Side::Boundary(b) = *e {
            if b >= n_boundary {
                return Err(Error::InvalidTriangulation(format!("unknown boundary segment {b}")));
            }
            bseen[b] += 1;
        }
    }
    if let Some(b) = bseen.iter().position(|&c| c != 1) {
        return Err(Error::InvalidTriangulation(format!("boundary segment {b} occurs {} times", bseen[b])));
    }
    let mut parent: Vec<usize> = (0..faces.len() * 3).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut x = x;
        while p[x] != r {
            let nx = p[x];
            p[x] = r;
            x = nx;
        }
        r
    }
    let corner = |t: usize, k: usize| 3 * t + k % 3;
    for s in &slots {
        let ((t1, k1), (t2, k2)) = (s[0], s[1]);
        for (x, y) in [(corner(t1, k1), corner(t2, k2 + 1)), (corner(t1, k1 + 1), corner(t2, k2))] {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            parent[rx] = ry;
        }
    }
    let mut ids: HashMap<usize, usize> = HashMap::new();
    let mut out = Vec::with_capacity(faces.len());
    for t in 0..faces.len() {
        let mut v = [0; 3];
        for (k, slot) in v.iter_mut().enumerate() {
            let r = find(&mut parent, corner(t, k));
            let next = ids.len();
            *slot = *ids.entry(r).or_insert(next);
        }
        out.push(v);
    }
    Ok((out, ids.len()))
}

// --- construction ---------------------------------------------------------

struct Builder {
    tris: Vec<Triangle>,
    next_arc: usize,
    next_bd: usize,
    puncture: Vec<bool>,
    components: Vec<Vec<usize>>,
}

impl Builder {
    fn new_arc(&mut self) -> Side {
        self.next_arc += 1;
        Side::Arc(self.next_arc - 1)
    }

    fn new_vertex(&mut self, puncture: bool) -> usize {
        self.puncture.push(puncture);
        self.puncture.len() - 1
    }

    /// Fan-triangulated polygon with `m >= 3` boundary vertices `0..m`.
    fn polygon(m: usize) -> Builder {
        let mut b = Builder { tris: vec![], next_arc: 0, next_bd: m, puncture: vec![false; m], components: vec![(0..m).collect()] };
        let diag: Vec<Side> = (0..m).map(|i| if (2..m - 1).contains(&i) { b.new_arc() } else { Side::Arc(usize::MAX) }).collect();
        for i in 1..m - 1 {
            let first = if i == 1 { Side::Boundary(0) } else { diag[i] };
            let last = if i + 1 == m - 1 { Side::Boundary(m - 1) } else { diag[i + 1] };
            b.tris.push(Triangle { v: [0, i, i + 1], e: [first, Side::Boundary(i), last] });
        }
        b
    }

    fn punctured_digon() -> Builder {
        let (s1, s2) = (Side::Boundary(0), Side::Boundary(1));
        let (ew, eu) = (Side::Arc(0), Side::Arc(1));
        Builder {
            tris: vec![Triangle { v: [0, 1, 2], e: [s1, ew, eu] }, Triangle { v: [1, 0, 2], e: [s2, eu, ew] }],
            next_arc: 2,
            next_bd: 2,
            puncture: vec![false, false, true],
            components: vec![vec![0, 1]],
        }
    }

    fn twice_punctured_monogon() -> Builder {
        let (a, b, c, d) = (Side::Arc(0), Side::Arc(1), Side::Arc(2), Side::Arc(3));
        Builder {
            tris: vec![
                Triangle { v: [0, 0, 1], e: [Side::Boundary(0), a, b] },
                Triangle { v: [1, 0, 2], e: [a, c, d] },
                Triangle { v: [0, 1, 2], e: [b, d, c] },
            ],
            next_arc: 4,
            next_bd: 1,
            puncture: vec![false, true, true],
            components: vec![vec![0]],
        }
    }

    fn annulus_one_one() -> Builder {
        let (a, b) = (Side::Arc(0), Side::Arc(1));
        Builder {
            tris: vec![
                Triangle { v: [0, 0, 1], e: [Side::Boundary(0), a, b] },
                Triangle { v: [1, 1, 0], e: [Side::Boundary(1), a, b] },
            ],
            next_arc: 2,
            next_bd: 2,
            puncture: vec![false, false],
            components: vec![vec![0], vec![1]],
        }
    }

    fn tetrahedron() -> Builder {
        let e = |i: usize, j: usize| {
            let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
            Side::Arc(pairs.iter().position(|&p| p == (i.min(j), i.max(j))).unwrap())
        };
        let faces = [[0, 2, 1], [0, 1, 3], [0, 3, 2], [1, 2, 3]];
        let tris = faces
            .iter()
            .map(|f| Triangle { v: *f, e: [e(f[0], f[1]), e(f[1], f[2]), e(f[2], f[0])] })
            .collect();
        Builder { tris, next_arc: 6, next_bd: 0, puncture: vec![true; 4], components: vec![] }
    }

    /// Polygon with side word `a1 b1 a1^-1 b1^-1 ...`, optionally followed by
    /// one boundary side, fan-triangulated from its first corner.
    fn handles(g: usize, with_boundary: bool) -> Builder {
        let n_sides = 4 * g + with_boundary as usize;
        let mut next_arc = 0;
        let mut side = vec![Side::Arc(0); n_sides];
        for j in 0..g {
            let (a, b) = (Side::Arc(next_arc), Side::Arc(next_arc + 1));
            next_arc += 2;
            side[4 * j] = a;
            side[4 * j + 2] = a;
            side[4 * j + 1] = b;
            side[4 * j + 3] = b;
        }
        if with_boundary {
            side[4 * g] = Side::Boundary(0);
        }
        let mut diag = vec![Side::Arc(usize::MAX); n_sides];
        for d in diag.iter_mut().take(n_sides - 1).skip(2) {
            *d = Side::Arc(next_arc);
            next_arc += 1;
        }
        let mut faces = Vec::new();
        for i in 1..n_sides - 1 {
            let first = if i == 1 { side[0] } else { diag[i] };
            let last = if i + 1 == n_sides - 1 { side[n_sides - 1] } else { diag[i + 1] };
            faces.push([first, side[i], last]);
        }
        let (classes, nv) = corner_classes(&faces, next_arc, with_boundary as usize).expect("handle polygon");
        debug_assert_eq!(nv, 1);
        Builder {
            tris: faces.iter().zip(classes).map(|(e, v)| Triangle { v, e: *e }).collect(),
            next_arc,
            next_bd: with_boundary as usize,
            puncture: vec![!with_boundary],
            components: if with_boundary { vec![vec![0]] } else { vec![] },
        }
    }

    /// New puncture inside triangle `t`, joined to its three corners.
    fn add_puncture(&mut self, t: usize) {
        let Triangle { v, e } = self.tris[t].clone();
        let q = self.new_vertex(true);
        let r: Vec<Side> = (0..3).map(|_| self.new_arc()).collect();
        self.tris[t] = Triangle { v: [v[0], v[1], q], e: [e[0], r[1], r[0]] };
        self.tris.push(Triangle { v: [v[1], v[2], q], e: [e[1], r[2], r[1]] });
        self.tris.push(Triangle { v: [v[2], v[0], q], e: [e[2], r[0], r[2]] });
    }

    /// New boundary component with one marked point inside triangle `t`.
    fn add_hole(&mut self, t: usize) {
        let Triangle { v, e } = self.tris[t].clone();
        let (x, y, z) = (v[0], v[1], v[2]);
        let h = self.new_vertex(false);
        let hole = Side::Boundary(self.next_bd);
        self.components.push(vec![self.next_bd]);
        self.next_bd += 1;
        let (p, q, r, p2) = (self.new_arc(), self.new_arc(), self.new_arc(), self.new_arc());
        self.tris[t] = Triangle { v: [x, y, h], e: [e[0], q, p] };
        self.tris.push(Triangle { v: [y, z, h], e: [e[1], r, q] });
        self.tris.push(Triangle { v: [z, x, h], e: [e[2], p2, r] });
        self.tris.push(Triangle { v: [h, h, x], e: [hole, p2, p] });
    }

    /// New marked point splitting the last segment of boundary component `c`.
    fn add_mark(&mut self, c: usize) {
        let seg = *self.components[c].last().unwrap();
        let (t, k) = self
            .tris
            .iter()
            .enumerate()
            .find_map(|(t, tri)| tri.e.iter().position(|&s| s == Side::Boundary(seg)).map(|k| (t, k)))
            .unwrap();
        let tri = self.tris[t].rotated(k);
        let (u, w, x) = (tri.v[0], tri.v[1], tri.v[2]);
        let (y, z) = (tri.e[1], tri.e[2]);
        let m = self.new_vertex(false);
        let s2 = self.next_bd;
        self.next_bd += 1;
        self.components[c].push(s2);
        let e = self.new_arc();
        self.tris[t] = Triangle { v: [u, m, x], e: [Side::Boundary(seg), e, z] };
        self.tris.push(Triangle { v: [m, w, x], e: [Side::Boundary(s2), y, e] });
    }

    fn marks(&self, c: usize) -> usize {
        self.components[c].len()
    }
}

/// A triangulation of `s` without self-folded triangles.
pub fn initial_triangulation(s: &MarkedSurface) -> IdealTriangulation {
    let g = s.genus();
    let p = s.punctures();
    let mut wanted: Vec<usize> = s.boundary().to_vec();
    wanted.sort_unstable_by(|a, b| b.cmp(a));
    let b = wanted.len();

    let (mut bld, mut placed_punctures) = if g > 0 {
        let bld = Builder::handles(g, b > 0);
        let pl = (b == 0) as usize;
        (bld, pl)
    } else if b == 0 {
        (Builder::tetrahedron(), 4)
    } else if wanted[0] >= 3 {
        (Builder::polygon(wanted[0]), 0)
    } else if b >= 2 {
        (Builder::annulus_one_one(), 0)
    } else if wanted[0] == 2 {
        (Builder::punctured_digon(), 1)
    } else {
        (Builder::twice_punctured_monogon(), 2)
    };
    while bld.components.len() < b {
        bld.add_hole(0);
    }
    // largest requirement goes to the component that already has the most marks
    for (c, &need) in wanted.iter().enumerate() {
        while bld.marks(c) < need {
            bld.add_mark(c);
        }
    }
    while placed_punctures < p {
        bld.add_puncture(0);
        placed_punctures += 1;
    }
    let n_bd = bld.next_bd;
    let tri = IdealTriangulation::from_triangles(bld.tris, bld.next_arc, n_bd)
        .unwrap_or_else(|e| panic!("construction for {s} failed: {e}"));
    debug_assert_eq!(&tri.surface, s);
    debug_assert_eq!(tri.n_vertices(), bld.puncture.len());
    tri
}

/// Ordinary flip graph explored from `start`, deduplicated by canonical code.
pub fn ideal_flip_bfs(start: &IdealTriangulation, max_nodes: usize) -> Exploration<IdealTriangulation> {
    bfs(start.clone(), max_nodes, |t| t.canonical_code(), |t| {
        t.flippable_arcs().into_iter().map(|k| t.flip(k).expect("flippable")).collect()
    })
}

pub fn ideal_flip_graph(start: &IdealTriangulation, max_nodes: usize) -> FlipGraph {
    FlipGraph::from_exploration(&ideal_flip_bfs(start, max_nodes), |t| t.canonical_string())
}

// --- JSON -----------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct TriangleJson {
    v: [usize; 3],
    e: [usize; 3],
}

#[derive(Serialize, Deserialize)]
struct TriangulationJson {
    surface: SurfaceDescriptor,
    triangles: Vec<TriangleJson>,
    arcs: usize,
    boundary_segments: usize,
}

/// JSON form: side ids below `arcs` are arcs, ids `arcs..arcs + boundary_segments`
/// are boundary segments.
impl Serialize for IdealTriangulation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.n_arcs;
        let id = |side: Side| match side {
            Side::Arc(a) => a,
            Side::Boundary(b) => n + b,
        };
        TriangulationJson {
            surface: self.surface.descriptor(),
            triangles: self
                .triangles
                .iter()
                .map(|t| TriangleJson { v: t.v, e: [id(t.e[0]), id(t.e[1]), id(t.e[2])] })
                .collect(),
            arcs: n,
            boundary_segments: self.n_boundary,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IdealTriangulation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = TriangulationJson::deserialize(d)?;
        let n = j.arcs;
        let side = |x: usize| if x < n { Side::Arc(x) } else { Side::Boundary(x - n) };
        let tris = j
            .triangles
            .iter()
            .map(|t| Triangle { v: t.v, e: [side(t.e[0]), side(t.e[1]), side(t.e[2])] })
            .collect();
        let t = IdealTriangulation::from_triangles(tris, n, j.boundary_segments).map_err(serde::de::Error::custom)?;
        let declared = validate_surface(&j.surface).map_err(serde::de::Error::custom)?;
        if declared != t.surface {
            return Err(serde::de::Error::custom(format!(
                "declared surface {declared} but triangles describe {}",
                t.surface
            )));
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surf(g: usize, b: &[usize], p: usize) -> MarkedSurface {
        MarkedSurface::new(g, b, p).unwrap()
    }

    #[test]
    fn pentagon_fan() {
        let t = initial_triangulation(&surf(0, &[5], 0));
        assert_eq!(t.n_arcs(), 2);
        assert_eq!(t.triangles().len(), 3);
        assert!(t.self_folded_triangles().is_empty());
    }

    #[test]
    fn punctured_triangle_has_three_radii() {
        let t = initial_triangulation(&surf(0, &[3], 1));
        assert_eq!(t.n_arcs(), 3);
        assert_eq!(t.triangles().len(), 3);
        assert_eq!(t.signature().values().copied().collect::<Vec<_>>(), vec![1]);
        let q = t.punctures()[0];
        for k in 0..3 {
            let (a, b) = t.endpoints(k).unwrap();
            assert!(a == q || b == q);
        }
    }

    #[test]
    fn annulus_one_one_matrix() {
        let t = initial_triangulation(&surf(0, &[1, 1], 0));
        assert_eq!(t.n_arcs(), 2);
        assert_eq!(t.triangles().len(), 2);
        let b = t.signed_adjacency();
        assert_eq!(b.get(0, 1).abs(), 2);
        assert!(b.is_skew_symmetric());
    }

    #[test]
    fn construction_covers_many_surfaces() {
        for g in 0..3 {
            for p in 0..4 {
                for bd in [vec![], vec![1], vec![2], vec![4], vec![1, 1], vec![2, 3], vec![1, 2, 4]] {
                    let Ok(s) = MarkedSurface::new(g, &bd, p) else { continue };
                    let t = initial_triangulation(&s);
                    t.validate().unwrap();
                    assert_eq!(t.n_arcs(), s.rank());
                    assert!(t.self_folded_triangles().is_empty(), "{s}");
                    let b = t.signed_adjacency();
                    assert!(b.is_skew_symmetric());
                    assert!(b.max_abs_entry() <= 2);
                }
            }
        }
    }

    #[test]
    fn flip_is_an_involution_with_stable_ids() {
        let t = initial_triangulation(&surf(1, &[2], 1));
        for k in t.flippable_arcs() {
            let f = t.flip(k).unwrap();
            f.validate().unwrap();
            let back = f.flip(k).unwrap();
            assert_eq!(back.canonical_code(), t.canonical_code());
            assert_eq!(back.signed_adjacency(), t.signed_adjacency());
        }
    }

    #[test]
    fn pentagon_alternating_flips_close_after_five() {
        let t0 = initial_triangulation(&surf(0, &[5], 0));
        let mut t = t0.clone();
        for step in 1..=5 {
            t = t.flip((step - 1) % 2).unwrap();
            let closed = t.canonical_code() == t0.canonical_code();
            assert_eq!(closed, step == 5, "step {step}");
        }
    }

    #[test]
    fn fold_is_not_flippable_but_loop_is() {
        // once-punctured digon: flipping a radius creates a self-folded triangle
        let t = initial_triangulation(&surf(0, &[2], 1));
        let f = t.flip(0).unwrap();
        let sf = f.self_folded_triangles();
        assert_eq!(sf.len(), 1);
        assert_eq!(f.is_flippable(sf[0].fold), Ok(false));
        assert_eq!(f.flip(sf[0].fold), Err(Error::NotFlippable(sf[0].fold)));
        assert_eq!(f.is_flippable(sf[0].loop_arc), Ok(true));
        assert_eq!(f.signature().values().copied().collect::<Vec<_>>(), vec![0]);
        assert_eq!(f.is_flippable(7), Err(Error::UnknownArc(7)));
    }

    #[test]
    fn torus_matrix() {
        let t = initial_triangulation(&surf(1, &[], 1));
        let b = t.signed_adjacency();
        let mut entries: Vec<i64> = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| b.get(i, j)).collect();
        entries.sort();
        assert_eq!(entries, vec![-2, -2, -2, 0, 0, 0, 2, 2, 2]);
    }

    #[test]
    fn json_roundtrip() {
        let t = initial_triangulation(&surf(0, &[2, 1], 1));
        let s = serde_json::to_string(&t).unwrap();
        let back: IdealTriangulation = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn rejects_mislabelled_vertices() {
        let t = initial_triangulation(&surf(0, &[4], 0));
        let mut tris = t.triangles().to_vec();
        tris[0].v[0] = 3;
        assert!(IdealTriangulation::from_triangles(tris, t.n_arcs(), t.n_boundary_segments()).is_err());
    }
}
