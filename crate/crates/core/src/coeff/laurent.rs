//! Laurent polynomials in `v` with integer coefficients.

use super::int::Int;
use super::poly;
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Element of ℤ[v, v⁻¹], stored as exponent-sorted nonzero terms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(i64, Int)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, Int::ONE)
    }

    pub fn constant(c: impl Into<Int>) -> Self {
        Self::monomial(0, c.into())
    }

    /// `v^e`.
    pub fn v_pow(e: i64) -> Self {
        Self::monomial(e, Int::ONE)
    }

    pub fn monomial(e: i64, c: Int) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly { terms: vec![(e, c)] }
        }
    }

    /// Builds from arbitrary (exponent, coefficient) pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (i64, Int)>>(it: I) -> Self {
        let mut v: Vec<(i64, Int)> = it.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_by_key(|(e, _)| *e);
        let mut out: Vec<(i64, Int)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += &c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        LaurentPoly { terms: out }
    }

    /// From small integer pairs, convenient in tests.
    pub fn from_pairs(pairs: &[(i64, i64)]) -> Self {
        Self::from_terms(pairs.iter().map(|&(e, c)| (e, Int::from(c))))
    }

    /// Dense coefficients starting at exponent `low`.
    pub(crate) fn from_dense(low: i64, coeffs: Vec<Int>) -> Self {
        let terms = coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (low + k as i64, c))
            .collect();
        LaurentPoly { terms }
    }

    /// Returns (low, dense coefficients); zero gives (0, []).
    pub(crate) fn to_dense(&self) -> (i64, Vec<Int>) {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => {
                let mut d = vec![Int::ZERO; (hi - lo + 1) as usize];
                for (e, c) in &self.terms {
                    d[(e - lo) as usize] = c.clone();
                }
                (lo, d)
            }
            _ => (0, Vec::new()),
        }
    }

    pub fn terms(&self) -> &[(i64, Int)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn coeff(&self, e: i64) -> Int {
        match self.terms.binary_search_by_key(&e, |(x, _)| *x) {
            Ok(k) => self.terms[k].1.clone(),
            Err(_) => Int::ZERO,
        }
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.last().map(|(e, _)| *e)
    }

    /// Single-term value `c·v^e`, if it is one.
    pub fn as_monomial(&self) -> Option<(i64, &Int)> {
        match self.terms.as_slice() {
            [(e, c)] => Some((*e, c)),
            _ => None,
        }
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &Int) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    /// The involution v ↦ v⁻¹.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().rev().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient in ℤ[v, v⁻¹], or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        assert!(!d.is_zero(), "division by zero Laurent polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (lo_n, n) = self.to_dense();
        let (lo_d, dd) = d.to_dense();
        let q = poly::div_exact(&n, &dd)?;
        Some(Self::from_dense(lo_n - lo_d, q))
    }

    /// Gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> Int {
        self.terms.iter().fold(Int::ZERO, |g, (_, c)| g.gcd(c))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.iter().all(|(_, c)| !c.is_negative())
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let (a, b) = (&self.terms, &o.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = &a[i].1 + &b[j].1;
                    if !s.is_zero() {
                        out.push((a[i].0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        LaurentPoly { terms: out }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        self + &(-o)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || o.is_zero() {
            return LaurentPoly::zero();
        }
        if let Some((e, c)) = self.as_monomial() {
            return o.shift(e).scale(c);
        }
        if let Some((e, c)) = o.as_monomial() {
            return self.shift(e).scale(c);
        }
        let lo = self.min_exp().unwrap() + o.min_exp().unwrap();
        let hi = self.max_exp().unwrap() + o.max_exp().unwrap();
        let mut acc = vec![Int::ZERO; (hi - lo + 1) as usize];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let k = (ea + eb - lo) as usize;
                acc[k] = &acc[k] + &(ca * cb);
            }
        }
        LaurentPoly::from_dense(lo, acc)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, o: LaurentPoly) -> LaurentPoly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono = match *e {
                0 => String::new(),
                1 => "v".to_string(),
                e => format!("v^{e}"),
            };
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            m.serialize_entry(&e.to_string(), &c.to_string())?;
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = LaurentPoly;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a map from exponent strings to integer strings")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut a: A) -> Result<LaurentPoly, A::Error> {
                let mut terms = Vec::new();
                while let Some((k, val)) = a.next_entry::<String, String>()? {
                    let e: i64 = k.parse().map_err(de::Error::custom)?;
                    let c: Int = val.parse().map_err(de::Error::custom)?;
                    terms.push((e, c));
                }
                Ok(LaurentPoly::from_terms(terms))
            }
        }
        d.deserialize_map(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_basics() {
        let a = LaurentPoly::from_pairs(&[(1, 1), (-1, 1)]);
        let b = LaurentPoly::from_pairs(&[(1, 1), (-1, -1)]);
        assert_eq!(&a * &b, LaurentPoly::from_pairs(&[(2, 1), (-2, -1)]));
        assert!((&a - &a).is_zero());
        assert_eq!(a.bar(), a);
        assert_eq!(b.bar(), -&b);
    }

    #[test]
    fn bar_example() {
        let x = LaurentPoly::from_pairs(&[(2, 1), (-1, 3)]);
        assert_eq!(x.bar(), LaurentPoly::from_pairs(&[(-2, 1), (1, 3)]));
    }

    #[test]
    fn exact_division() {
        let a = LaurentPoly::from_pairs(&[(2, 1), (-2, -1)]);
        let b = LaurentPoly::from_pairs(&[(1, 1), (-1, -1)]);
        assert_eq!(a.div_exact(&b), Some(LaurentPoly::from_pairs(&[(1, 1), (-1, 1)])));
        assert_eq!(b.div_exact(&a), None);
    }

    #[test]
    fn json_format() {
        let x = LaurentPoly::from_pairs(&[(-2, 1), (0, 2)]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"-2":"1","0":"2"}"#);
        let y: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn display() {
        let x = LaurentPoly::from_pairs(&[(-2, 1), (0, 2), (1, -3)]);
        assert_eq!(x.to_string(), "-3v + 2 + v^-2");
    }
}
