//! Sparse Laurent polynomials with arbitrary-precision integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], BigInt::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, BigInt::one())
    }

    pub fn monomial(exps: Vec<i32>, coeff: BigInt) -> Self {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        LaurentPoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Vec<i32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Lex-leading term.
    fn leading(&self) -> Option<(&Vec<i32>, &BigInt)> {
        self.terms.iter().next_back()
    }

    fn exponent_range(&self, i: usize) -> (i32, i32) {
        let lo = self.terms.keys().map(|e| e[i]).min().unwrap_or(0);
        let hi = self.terms.keys().map(|e| e[i]).max().unwrap_or(0);
        (lo, hi)
    }

    /// Exact quotient `self / d`; fails if it is not a Laurent polynomial.
    pub fn div_exact(&self, d: &LaurentPoly) -> Result<LaurentPoly> {
        let Some((dl, dc)) = d.leading() else {
            return Err(Error::ZeroElement);
        };
        let (dl, dc) = (dl.clone(), dc.clone());
        // the quotient's exponents lie in the difference of the Newton boxes
        let bounds: Vec<(i32, i32)> = (0..self.nvars)
            .map(|i| {
                let (flo, fhi) = self.exponent_range(i);
                let (dlo, dhi) = d.exponent_range(i);
                (flo - dlo, fhi - dhi)
            })
            .collect();
        let mut rem = self.clone();
        let mut q = LaurentPoly::zero(self.nvars);
        while let Some((e, c)) = rem.leading() {
            let qe: Vec<i32> = e.iter().zip(&dl).map(|(a, b)| a - b).collect();
            if qe.iter().zip(&bounds).any(|(x, (lo, hi))| x < lo || x > hi) {
                return Err(Error::NonLaurentResult);
            }
            if !(c % &dc).is_zero() {
                return Err(Error::NonLaurentResult);
            }
            let qc = c / &dc;
            let t = LaurentPoly::monomial(qe, qc);
            rem = &rem - &(&t * d);
            q = &q + &t;
        }
        Ok(q)
    }

    /// `d_i = −(least exponent of x_i)`; the denominator vector.
    pub fn denominator_vector(&self) -> Result<Vec<i64>> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok((0..self.nvars).map(|i| -(self.exponent_range(i).0 as i64)).collect())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        self + &(-o)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.nvars.max(o.nvars));
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    /// Written as `numerator / monomial` in variables `x1, x2, ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let shift: Vec<i32> = (0..self.nvars).map(|i| self.exponent_range(i).0.min(0)).collect();
        let monomial = |e: &[i32]| {
            e.iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{k}", i + 1) })
                .collect::<Vec<_>>()
                .join("*")
        };
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let e: Vec<i32> = e.iter().zip(&shift).map(|(a, s)| a - s).collect();
            let m = monomial(&e);
            let body = match (m.is_empty(), c.abs().is_one()) {
                (true, _) => c.abs().to_string(),
                (false, true) => m,
                (false, false) => format!("{}*{m}", c.abs()),
            };
            let sign = if c.is_negative() { "-" } else { "+" };
            parts.push((sign, body));
        }
        let mut num = String::new();
        for (i, (sign, body)) in parts.iter().enumerate() {
            match (i, *sign) {
                (0, "-") => num.push_str(&format!("-{body}")),
                (0, _) => num.push_str(body),
                (_, s) => num.push_str(&format!(" {s} {body}")),
            }
        }
        let neg: Vec<i32> = shift.iter().map(|s| -s).collect();
        let den = monomial(&neg);
        match (den.is_empty(), parts.len() > 1) {
            (true, _) => write!(f, "{num}"),
            (false, true) => write!(f, "({num})/({den})"),
            (false, false) => write!(f, "{num}/({den})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> LaurentPoly {
        LaurentPoly::var(2, i)
    }

    #[test]
    fn exact_division() {
        let one = LaurentPoly::one(2);
        let f = &(&one + &x(0)) * &(&x(1) + &x(0));
        let q = f.div_exact(&(&x(1) + &x(0))).unwrap();
        assert_eq!(q, &one + &x(0));
        assert_eq!((&one + &x(1)).div_exact(&x(0)).unwrap().denominator_vector().unwrap(), vec![1, 0]);
    }

    #[test]
    fn inexact_division_is_reported() {
        let one = LaurentPoly::one(2);
        assert_eq!((&one + &x(1)).div_exact(&(&one + &x(0))), Err(Error::NonLaurentResult));
        let two = LaurentPoly::monomial(vec![0, 0], BigInt::from(2));
        assert_eq!(one.div_exact(&two), Err(Error::NonLaurentResult));
        assert_eq!(one.div_exact(&LaurentPoly::zero(2)), Err(Error::ZeroElement));
    }

    #[test]
    fn denominators() {
        assert_eq!(x(0).denominator_vector().unwrap(), vec![-1, 0]);
        assert_eq!(LaurentPoly::one(2).denominator_vector().unwrap(), vec![0, 0]);
        assert_eq!(LaurentPoly::zero(2).denominator_vector(), Err(Error::ZeroElement));
    }

    #[test]
    fn display() {
        let one = LaurentPoly::one(2);
        let z = (&(&one + &x(0)) + &x(1)).div_exact(&(&x(0) * &x(1))).unwrap();
        assert_eq!(z.to_string(), "(x1 + x2 + 1)/(x1*x2)");
        assert_eq!(x(1).to_string(), "x2");
    }
}
