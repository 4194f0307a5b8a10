//! Shared oracles for the integration tests.
#![allow(dead_code)]

use framedcb::canonical::CBIndex;
use framedcb::tensor::TensorElement;

/// Independent evaluation of the A1 closed forms, from scratch Laurent arithmetic.
pub mod oracle {
    use std::collections::BTreeMap;

    pub type Poly = BTreeMap<i64, i64>;

    fn mul(a: &Poly, b: &Poly) -> Poly {
        let mut out = Poly::new();
        for (ea, ca) in a {
            for (eb, cb) in b {
                *out.entry(ea + eb).or_insert(0) += ca * cb;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// [n choose s] for n ≥ 0 through the q-Pascal rule.
    pub fn binom(n: i64, s: i64) -> Poly {
        if s < 0 || s > n {
            return Poly::new();
        }
        if s == 0 || s == n {
            return [(0, 1)].into_iter().collect();
        }
        // [n,s] = v^{-s}[n-1,s] + v^{n-s}[n-1,s-1]
        let a = mul(&[(-s, 1)].into_iter().collect(), &binom(n - 1, s));
        let b = mul(&[(n - s, 1)].into_iter().collect(), &binom(n - 1, s - 1));
        let mut out = a;
        for (e, c) in b {
            *out.entry(e).or_insert(0) += c;
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// Map (left k, right l) → coefficient, for α_{k,l} (alpha=true) or β_{k,l}.
    pub fn element(m: i64, n: i64, k: i64, l: i64, alpha: bool) -> BTreeMap<(i64, i64), Poly> {
        let mut out = BTreeMap::new();
        for s in 0..=k.min(l) {
            let (e, b) = if alpha { (s * (k - m - s), binom(n - l + s, s)) } else { (s * (l - n - s), binom(m - k + s, s)) };
            let c = mul(&[(e, 1)].into_iter().collect(), &b);
            if !c.is_empty() {
                out.insert((m - k + s, l - s), c);
            }
        }
        out
    }
}

/// Oracle form of the closed-form ◊ element for (k,l), picking α or β by family.
pub fn closed_form(m: i64, n: i64, k: i64, l: i64) -> std::collections::BTreeMap<(i64, i64), oracle::Poly> {
    oracle::element(m, n, k, l, k - l <= m - n)
}

pub fn to_oracle_form(t: &TensorElement) -> std::collections::BTreeMap<(i64, i64), oracle::Poly> {
    t.coords
        .iter()
        .map(|((a, b), c)| {
            let (CBIndex::A1 { k: x }, CBIndex::A1 { k: y }) = (a, b) else { panic!("not A1") };
            let l = c.to_laurent().expect("integral");
            let p: oracle::Poly = l.terms().iter().map(|(e, c)| (*e, c.to_i64().unwrap())).collect();
            ((*x as i64, *y as i64), p)
        })
        .collect()
}

