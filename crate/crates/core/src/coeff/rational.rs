//! Rational functions in `v` over ℚ in reduced normal form.

use super::int::Int;
use super::laurent::LaurentPoly;
use super::poly;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// `num / den` with `den` a polynomial with nonzero constant term and positive
/// leading coefficient, coprime to `num` in ℤ[v]. Powers of `v` live in `num`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunc {
    pub fn zero() -> Self {
        RationalFunc {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        LaurentPoly::one().into()
    }

    pub fn v_pow(e: i64) -> Self {
        LaurentPoly::v_pow(e).into()
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let d0 = den.min_exp().unwrap();
        let n0 = num.min_exp().unwrap();
        let (_, dd) = den.to_dense();
        let (_, nd) = num.to_dense();
        let mut low = n0 - d0;
        let (mut nd, mut dd) = if dd.len() == 1 {
            // constant denominator: only the integer content can cancel
            let g = poly::content(&nd).gcd(&dd[0]);
            (poly::div_scalar(&nd, &g), poly::div_scalar(&dd, &g))
        } else {
            let g = poly::gcd(&nd, &dd);
            if g.len() == 1 && g[0].is_one() {
                (nd, dd)
            } else {
                (
                    poly::div_exact(&nd, &g).expect("gcd divides numerator"),
                    poly::div_exact(&dd, &g).expect("gcd divides denominator"),
                )
            }
        };
        if poly::lead(&dd).is_negative() {
            nd = nd.iter().map(|c| -c).collect();
            dd = dd.iter().map(|c| -c).collect();
        }
        while nd.first().map(|c| c.is_zero()).unwrap_or(false) {
            nd.remove(0);
            low += 1;
        }
        RationalFunc {
            num: LaurentPoly::from_dense(low, nd),
            den: LaurentPoly::from_dense(0, dd),
        }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    /// Numerator and denominator as genuine polynomials in `v` (nonnegative exponents).
    pub fn to_poly_pair(&self) -> (LaurentPoly, LaurentPoly) {
        match self.num.min_exp() {
            Some(lo) if lo < 0 => (self.num.shift(-lo), self.den.shift(-lo)),
            _ => (self.num.clone(), self.den.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// The value as a Laurent polynomial, if the denominator is trivial.
    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        if self.den.is_one() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    /// Like [`to_laurent`](Self::to_laurent) but panics on a nontrivial denominator.
    pub fn expect_laurent(&self, what: &str) -> LaurentPoly {
        self.to_laurent()
            .unwrap_or_else(|| panic!("{what}: expected a Laurent polynomial, got {self}"))
    }

    /// Degree at v → ∞: deg(num) − deg(den); `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        let dn = self.num.max_exp()?;
        Some(dn - self.den.max_exp().unwrap())
    }

    pub fn bar(&self) -> Self {
        RationalFunc::new(self.num.bar(), self.den.bar())
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        RationalFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn scale_int(&self, s: &Int) -> Self {
        RationalFunc::new(self.num.scale(s), self.den.clone())
    }

    pub fn mul_laurent(&self, l: &LaurentPoly) -> Self {
        if l.is_zero() || self.is_zero() {
            return Self::zero();
        }
        if let Some((e, c)) = l.as_monomial() {
            if c.is_one() {
                return RationalFunc {
                    num: self.num.shift(e),
                    den: self.den.clone(),
                };
            }
        }
        if self.den.is_one() {
            return (&self.num * l).into();
        }
        RationalFunc::new(&self.num * l, self.den.clone())
    }

    /// Multiplication by `v^e`.
    pub fn shift(&self, e: i64) -> Self {
        RationalFunc {
            num: self.num.shift(e),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl From<LaurentPoly> for RationalFunc {
    fn from(l: LaurentPoly) -> Self {
        RationalFunc {
            num: l,
            den: LaurentPoly::one(),
        }
    }
}

impl From<&LaurentPoly> for RationalFunc {
    fn from(l: &LaurentPoly) -> Self {
        l.clone().into()
    }
}

impl From<i64> for RationalFunc {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c).into()
    }
}

impl<'a> Add<&'a RationalFunc> for &'a RationalFunc {
    type Output = RationalFunc;
    fn add(self, o: &RationalFunc) -> RationalFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return (&self.num + &o.num).into();
        }
        if self.den == o.den {
            return RationalFunc::new(&self.num + &o.num, self.den.clone());
        }
        if o.den.is_one() {
            return RationalFunc::new(&self.num + &(&o.num * &self.den), self.den.clone());
        }
        if self.den.is_one() {
            return RationalFunc::new(&(&self.num * &o.den) + &o.num, o.den.clone());
        }
        let (_, d1) = self.den.to_dense();
        let (_, d2) = o.den.to_dense();
        let g = poly::gcd(&d1, &d2);
        let (c1, c2) = if g.len() == 1 && g[0].is_one() {
            (d1, d2.clone())
        } else {
            (
                poly::div_exact(&d1, &g).unwrap(),
                poly::div_exact(&d2, &g).unwrap(),
            )
        };
        let c1l = LaurentPoly::from_dense(0, c1.clone());
        let c2l = LaurentPoly::from_dense(0, c2);
        let num = &(&self.num * &c2l) + &(&o.num * &c1l);
        let den = LaurentPoly::from_dense(0, poly::mul(&c1, &d2));
        RationalFunc::new(num, den)
    }
}

impl<'a> Sub<&'a RationalFunc> for &'a RationalFunc {
    type Output = RationalFunc;
    fn sub(self, o: &RationalFunc) -> RationalFunc {
        self + &(-o)
    }
}

impl Neg for &RationalFunc {
    type Output = RationalFunc;
    fn neg(self) -> RationalFunc {
        RationalFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<'a> Mul<&'a RationalFunc> for &'a RationalFunc {
    type Output = RationalFunc;
    fn mul(self, o: &RationalFunc) -> RationalFunc {
        if self.is_zero() || o.is_zero() {
            return RationalFunc::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return (&self.num * &o.num).into();
        }
        if o.den.is_one() {
            return self.mul_laurent(&o.num);
        }
        if self.den.is_one() {
            return o.mul_laurent(&self.num);
        }
        RationalFunc::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl<'a> Div<&'a RationalFunc> for &'a RationalFunc {
    type Output = RationalFunc;
    fn div(self, o: &RationalFunc) -> RationalFunc {
        self * &o.inv()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunc {
            type Output = RationalFunc;
            fn $m(self, o: RationalFunc) -> RationalFunc {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RationalFunc {
    type Output = RationalFunc;
    fn neg(self) -> RationalFunc {
        -&self
    }
}

impl Default for RationalFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for RationalFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

#[derive(Serialize, Deserialize)]
struct RationalRepr {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Serialize for RationalFunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RationalRepr {
            num: self.num.clone(),
            den: self.den.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalFunc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = RationalRepr::deserialize(d)?;
        if r.den.is_zero() {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(RationalFunc::new(r.num, r.den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(p: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_pairs(p)
    }

    #[test]
    fn normal_form_is_structural() {
        // (v^2 - 1)/(v - 1) = v + 1
        let a = RationalFunc::new(lp(&[(2, 1), (0, -1)]), lp(&[(1, 1), (0, -1)]));
        assert_eq!(a, RationalFunc::from(lp(&[(1, 1), (0, 1)])));
        // 2/(-4v) = -v^-1/2
        let b = RationalFunc::new(lp(&[(0, 2)]), lp(&[(1, -4)]));
        assert_eq!(b.numerator(), &lp(&[(-1, -1)]));
        assert_eq!(b.denominator(), &lp(&[(0, 2)]));
    }

    #[test]
    fn bar_example() {
        // v/(1 - v^-2) -> v^-1/(1 - v^2)
        let x = RationalFunc::new(lp(&[(1, 1)]), lp(&[(0, 1), (-2, -1)]));
        let y = RationalFunc::new(lp(&[(-1, 1)]), lp(&[(0, 1), (2, -1)]));
        assert_eq!(x.bar(), y);
        assert_eq!(x.bar().bar(), x);
    }

    #[test]
    fn field_operations() {
        let x = RationalFunc::new(lp(&[(1, 1)]), lp(&[(0, 1), (-2, -1)]));
        let y = RationalFunc::new(lp(&[(0, 3)]), lp(&[(0, 1), (1, 1)]));
        let s = &x + &y;
        assert_eq!(&s - &y, x);
        let p = &x * &y;
        assert_eq!(&p / &y, x);
        assert!((&x / &x).is_one());
    }

    #[test]
    fn degree() {
        let x = RationalFunc::new(lp(&[(0, 1)]), lp(&[(0, 1), (-2, -1)]));
        assert_eq!(x.degree(), Some(0));
        assert_eq!(RationalFunc::v_pow(-3).degree(), Some(-3));
    }
}
