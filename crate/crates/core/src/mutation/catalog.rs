//! Named quivers.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::ExchangeMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum QuiverSpec {
    A(usize),
    D(usize),
    E(usize),
    AffineA(usize, usize),
    /// Affine `D̃_n`, with `n + 1` vertices.
    AffineD(usize),
    /// Affine `Ẽ_n`, with `n + 1` vertices.
    AffineE(usize),
    /// Extended affine `E_n^(1,1)`, with `n + 2` vertices.
    ExtAffE(usize),
    Gamma2(usize, usize),
    Gamma3(usize, usize, usize),
    /// `A_{k-1} × A_{l-1}`.
    Grid(usize, usize),
    Octahedron,
    /// Product of two tree quivers, each with a bipartite orientation.
    Product(Box<QuiverSpec>, Box<QuiverSpec>),
}

impl fmt::Display for QuiverSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuiverSpec::A(n) => write!(f, "A{n}"),
            QuiverSpec::D(n) => write!(f, "D{n}"),
            QuiverSpec::E(n) => write!(f, "E{n}"),
            QuiverSpec::AffineA(a, b) => write!(f, "AffineA({a},{b})"),
            QuiverSpec::AffineD(n) => write!(f, "AffineD({n})"),
            QuiverSpec::AffineE(n) => write!(f, "AffineE({n})"),
            QuiverSpec::ExtAffE(n) => write!(f, "ExtAffE({n})"),
            QuiverSpec::Gamma2(a, b) => write!(f, "Gamma2({a},{b})"),
            QuiverSpec::Gamma3(a, b, c) => write!(f, "Gamma3({a},{b},{c})"),
            QuiverSpec::Grid(k, l) => write!(f, "Grid({k},{l})"),
            QuiverSpec::Octahedron => write!(f, "Octahedron"),
            QuiverSpec::Product(p, q) => write!(f, "{p}x{q}"),
        }
    }
}

impl FromStr for QuiverSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::BadSpec(format!("cannot parse {s:?}"));
        let product_at = s.char_indices().find(|&(i, c)| {
            (c == 'x' || c == '×') && s[..i].ends_with(|p: char| p.is_ascii_digit() || p == ')' || p == 'n')
        });
        if let Some((i, c)) = product_at {
            let (p, q) = (&s[..i], &s[i + c.len_utf8()..]);
            return Ok(QuiverSpec::Product(Box::new(p.parse()?), Box::new(q.parse()?)));
        }
        if s.eq_ignore_ascii_case("octahedron") {
            return Ok(QuiverSpec::Octahedron);
        }
        let (name, args): (&str, Vec<usize>) = match s.split_once('(') {
            Some((name, rest)) => {
                let inner = rest.strip_suffix(')').ok_or_else(bad)?;
                let args = inner.split(',').map(|a| a.trim().parse::<usize>().map_err(|_| bad())).collect::<Result<_>>()?;
                (name.trim(), args)
            }
            None => {
                let split = s.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?;
                (&s[..split], vec![s[split..].parse().map_err(|_| bad())?])
            }
        };
        let spec = match (name, args.as_slice()) {
            ("A", [n]) => QuiverSpec::A(*n),
            ("D", [n]) => QuiverSpec::D(*n),
            ("E", [n]) => QuiverSpec::E(*n),
            ("AffineA", [a, b]) => QuiverSpec::AffineA(*a, *b),
            ("AffineD", [n]) => QuiverSpec::AffineD(*n),
            ("AffineE", [n]) => QuiverSpec::AffineE(*n),
            ("ExtAffE", [n]) => QuiverSpec::ExtAffE(*n),
            ("Gamma2", [a, b]) => QuiverSpec::Gamma2(*a, *b),
            ("Gamma3", [a, b, c]) => QuiverSpec::Gamma3(*a, *b, *c),
            ("Grid", [k, l]) => QuiverSpec::Grid(*k, *l),
            _ => return Err(bad()),
        };
        Ok(spec)
    }
}

/// Arrows `(i, j, w)` meaning `w` arrows from `i` to `j`.
type Arrows = Vec<(usize, usize, i64)>;

/// Star with arms of the given lengths around vertex 0, arrows pointing outwards.
fn star(arms: &[usize]) -> (usize, Arrows) {
    let mut arrows = Vec::new();
    let mut next = 1;
    for &len in arms {
        let mut prev = 0;
        for _ in 0..len {
            arrows.push((prev, next, 1));
            prev = next;
            next += 1;
        }
    }
    (next, arrows)
}

fn path(n: usize) -> Arrows {
    (1..n).map(|i| (i - 1, i, 1)).collect()
}

impl QuiverSpec {
    pub fn vertex_count(&self) -> usize {
        match *self {
            QuiverSpec::A(n) | QuiverSpec::D(n) | QuiverSpec::E(n) => n,
            QuiverSpec::AffineA(a, b) => a + b,
            QuiverSpec::AffineD(n) | QuiverSpec::AffineE(n) => n + 1,
            QuiverSpec::ExtAffE(n) => n + 2,
            QuiverSpec::Gamma2(a, b) => a + b + 3,
            QuiverSpec::Gamma3(a, b, c) => a + b + c + 3,
            QuiverSpec::Grid(k, l) => k.saturating_sub(1) * l.saturating_sub(1),
            QuiverSpec::Octahedron => 6,
            QuiverSpec::Product(ref p, ref q) => p.vertex_count() * q.vertex_count(),
        }
    }

    fn arrows(&self) -> Result<(usize, Arrows)> {
        let bad = |why: &str| Err(Error::BadSpec(format!("{self}: {why}")));
        Ok(match *self {
            QuiverSpec::A(n) if n >= 1 => (n, path(n)),
            QuiverSpec::D(n) if n >= 3 => star(&[n - 3, 1, 1]),
            QuiverSpec::E(6) => star(&[2, 2, 1]),
            QuiverSpec::E(7) => star(&[3, 2, 1]),
            QuiverSpec::E(8) => star(&[4, 2, 1]),
            QuiverSpec::AffineE(6) => star(&[2, 2, 2]),
            QuiverSpec::AffineE(7) => star(&[3, 3, 1]),
            QuiverSpec::AffineE(8) => star(&[5, 2, 1]),
            QuiverSpec::AffineA(a, b) if a >= 1 && b >= 1 => {
                let n = a + b;
                let arrows = (0..n)
                    .map(|i| if i < a { (i, (i + 1) % n, 1) } else { ((i + 1) % n, i, 1) })
                    .collect();
                (n, arrows)
            }
            QuiverSpec::AffineD(n) if n >= 4 => {
                // chain 0..n-3 with leaves n-2, n-1 at the start and n, n+1... at the end
                let chain = n - 3;
                let mut arrows = path(chain);
                arrows.push((0, chain, 1));
                arrows.push((0, chain + 1, 1));
                arrows.push((chain - 1, chain + 2, 1));
                arrows.push((chain - 1, chain + 3, 1));
                (n + 1, arrows)
            }
            QuiverSpec::ExtAffE(k @ (6 | 7 | 8)) => {
                let (top, bottom, tail) = match k {
                    6 => (3, 3, true),
                    7 => (4, 4, false),
                    _ => (6, 3, false),
                };
                // 0 = hub, 1 = top row start, 2 = bottom row start
                let (hub, t, b) = (0, 1, 2);
                let mut arrows = vec![(t, b, 2), (b, hub, 1), (hub, t, 1)];
                let mut next = 3;
                let row = |start: usize, len: usize, arrows: &mut Arrows, next: &mut usize| -> usize {
                    let mut prev = start;
                    let second = *next;
                    for _ in 1..len {
                        arrows.push((prev, *next, 1));
                        prev = *next;
                        *next += 1;
                    }
                    second
                };
                let t2 = row(t, top, &mut arrows, &mut next);
                let b2 = row(b, bottom, &mut arrows, &mut next);
                // the row arrows t -> t2 and b -> b2 must close oriented triangles
                arrows.retain(|&(i, j, _)| !((i, j) == (t, t2) || (i, j) == (b, b2)));
                arrows.extend([(b, t2, 1), (t2, t, 1), (b, b2, 1), (b2, t, 1)]);
                if tail {
                    arrows.push((hub, next, 1));
                    next += 1;
                }
                (next, arrows)
            }
            QuiverSpec::Gamma2(n1, n2) if n1 >= 1 && n2 >= 1 => {
                // a_1..a_n1 = 0..n1, then b_{n2+1}, b_{n2}..b_1, b_0, b'_0
                let a = |i: usize| i - 1;
                let top = n1;
                let b = |i: usize| n1 + 1 + (n2 - i);
                let (b0, b0p) = (n1 + n2 + 1, n1 + n2 + 2);
                let mut arrows = Vec::new();
                for i in 1..n1.saturating_sub(1) {
                    arrows.push((a(i), a(i + 1), 1));
                }
                let an = a(n1);
                arrows.push((an, top, 2));
                if n1 >= 2 {
                    arrows.extend([(top, a(n1 - 1), 1), (a(n1 - 1), an, 1)]);
                }
                arrows.extend([(top, b(n2), 1), (b(n2), an, 1)]);
                for i in 1..n2 {
                    arrows.push((b(i + 1), b(i), 1));
                }
                arrows.extend([(b(1), b0, 1), (b(1), b0p, 1)]);
                (n1 + n2 + 3, arrows)
            }
            QuiverSpec::Gamma3(n1, n2, n3) if n1 >= 1 && n2 >= 1 && n3 >= 1 => {
                // a_1..a_n1, b_{n2+2}, b_{n2+1}..b_1, b_0, c_n3..c_1
                let a = |i: usize| i - 1;
                let b = |i: usize| n1 + (n2 + 2 - i);
                let b0 = n1 + n2 + 2;
                let c = |i: usize| b0 + 1 + (n3 - i);
                let mut arrows = Vec::new();
                for i in 1..n1.saturating_sub(1) {
                    arrows.push((a(i), a(i + 1), 1));
                }
                let (an, top) = (a(n1), b(n2 + 2));
                arrows.push((an, top, 2));
                if n1 >= 2 {
                    arrows.extend([(top, a(n1 - 1), 1), (a(n1 - 1), an, 1)]);
                }
                arrows.extend([(top, b(n2 + 1), 1), (b(n2 + 1), an, 1)]);
                for i in 1..=n2 {
                    arrows.push((b(i + 1), b(i), 1));
                }
                let cn = c(n3);
                arrows.push((cn, b0, 2));
                arrows.extend([(b0, b(1), 1), (b(1), cn, 1)]);
                if n3 >= 2 {
                    arrows.extend([(b0, c(n3 - 1), 1), (c(n3 - 1), cn, 1)]);
                }
                for i in 1..n3.saturating_sub(1) {
                    arrows.push((c(i + 1), c(i), 1));
                }
                (n1 + n2 + n3 + 3, arrows)
            }
            QuiverSpec::Grid(k, l) if k >= 2 && l >= 2 => {
                return QuiverSpec::Product(Box::new(QuiverSpec::A(k - 1)), Box::new(QuiverSpec::A(l - 1))).arrows()
            }
            QuiverSpec::Octahedron => {
                // x_+ = 0, x_- = 1, y_+ = 2, y_- = 3, z_+ = 4, z_- = 5
                let mut arrows = Vec::new();
                for (sx, sy, sz) in [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)] {
                    let (x, y, z) = (sx, 2 + sy, 4 + sz);
                    arrows.extend([(x, y, 1), (y, z, 1), (z, x, 1)]);
                }
                (6, arrows)
            }
            QuiverSpec::Product(ref p, ref q) => {
                let (bp, bq) = (bipartite(p)?, bipartite(q)?);
                let (np, nq) = (bp.n(), bq.n());
                let id = |i: usize, j: usize| i * nq + j;
                let source = |m: &ExchangeMatrix, i: usize| (0..m.n()).all(|j| m.get(i, j) >= 0);
                let mut arrows = Vec::new();
                for i in 0..np {
                    for j in 0..nq {
                        for j2 in 0..nq {
                            if bq.get(j, j2) > 0 {
                                let w = bq.get(j, j2);
                                arrows.push(if source(&bp, i) { (id(i, j), id(i, j2), w) } else { (id(i, j2), id(i, j), w) });
                            }
                        }
                        for i2 in 0..np {
                            if bp.get(i, i2) > 0 {
                                let w = bp.get(i, i2);
                                arrows.push(if source(&bq, j) { (id(i2, j), id(i, j), w) } else { (id(i, j), id(i2, j), w) });
                            }
                        }
                    }
                }
                (np * nq, arrows)
            }
            QuiverSpec::A(_) | QuiverSpec::D(_) => return bad("too few vertices"),
            QuiverSpec::E(_) | QuiverSpec::AffineE(_) | QuiverSpec::ExtAffE(_) => return bad("index must be 6, 7 or 8"),
            QuiverSpec::AffineD(_) => return bad("index must be at least 4"),
            QuiverSpec::Grid(..) => return bad("both sides must be at least 2"),
            QuiverSpec::AffineA(..) | QuiverSpec::Gamma2(..) | QuiverSpec::Gamma3(..) => return bad("parameters must be positive"),
        })
    }
}

/// The bipartite orientation of a tree-shaped spec: even distance from vertex 0 is a source.
fn bipartite(spec: &QuiverSpec) -> Result<ExchangeMatrix> {
    let (n, arrows) = spec.arrows()?;
    let mut adj = vec![Vec::new(); n];
    for &(i, j, _) in &arrows {
        adj[i].push(j);
        adj[j].push(i);
    }
    if arrows.len() + 1 != n {
        return Err(Error::BadSpec(format!("{spec} is not a tree")));
    }
    let mut color = vec![usize::MAX; n];
    color[0] = 0;
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if color[w] == usize::MAX {
                color[w] = 1 - color[v];
                stack.push(w);
            }
        }
    }
    let oriented: Arrows = arrows
        .iter()
        .map(|&(i, j, w)| if color[i] == 0 { (i, j, w) } else { (j, i, w) })
        .collect();
    ExchangeMatrix::from_arrows(n, &oriented)
}

/// The quiver named by `spec`.
pub fn make_quiver(spec: &QuiverSpec) -> Result<ExchangeMatrix> {
    let (n, arrows) = spec.arrows()?;
    ExchangeMatrix::from_arrows(n, &arrows)
}
