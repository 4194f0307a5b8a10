//! Canonical bases of f in types A1 and A2, expansion in canonical
//! coordinates, and the divisibility statistics t_i, t_i^σ.

use crate::cartan::{CartanDatum, RootVec, Weight};
use crate::coeff::{LaurentPoly, RationalFunc};
use crate::error::{Error, Result};
use crate::falg::{FAlg, FreeElement, SeedFn, Word};
use crate::linalg::{self, Vector};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CBType {
    A1,
    A2,
}

impl CBType {
    pub fn rank(self) -> usize {
        match self {
            CBType::A1 => 1,
            CBType::A2 => 2,
        }
    }

    /// Recognizes A1 (one node) and A2 (two nodes with pairing −1).
    pub fn from_datum(d: &CartanDatum) -> Result<CBType> {
        match d.len() {
            1 => Ok(CBType::A1),
            2 if d.dot(0, 1) == -1 => Ok(CBType::A2),
            _ => Err(Error::UnsupportedType(format!("datum with matrix {:?}", d.matrix()))),
        }
    }

    pub fn check(self, d: &CartanDatum) -> Result<()> {
        if CBType::from_datum(d)? == self {
            Ok(())
        } else {
            Err(Error::UnsupportedType(format!("{self:?} requested for a {}-node datum", d.len())))
        }
    }
}

impl std::str::FromStr for CBType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A1" => Ok(CBType::A1),
            "A2" => Ok(CBType::A2),
            other => Err(Error::UnsupportedType(other.to_string())),
        }
    }
}

/// Index of a canonical basis element. `A2Left(p,q,r)` is θ_0^{(p)}θ_1^{(q)}θ_0^{(r)},
/// `A2Right(p,q,r)` is θ_1^{(r)}θ_0^{(q)}θ_1^{(p)}; both need q ≥ p+r, and on
/// q = p+r only the left form is used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CBIndex {
    A1 { k: u32 },
    A2Left { p: u32, q: u32, r: u32 },
    A2Right { p: u32, q: u32, r: u32 },
}

impl CBIndex {
    pub fn left(p: u32, q: u32, r: u32) -> Result<CBIndex> {
        if q < p + r {
            return Err(Error::InvalidArgument(format!("A2L[{p},{q},{r}] needs q >= p+r")));
        }
        Ok(CBIndex::A2Left { p, q, r })
    }

    /// The right family; the boundary q = p+r is returned in its left form.
    pub fn right(p: u32, q: u32, r: u32) -> Result<CBIndex> {
        if q < p + r {
            return Err(Error::InvalidArgument(format!("A2R[{p},{q},{r}] needs q >= p+r")));
        }
        if q == p + r {
            Ok(CBIndex::A2Left { p, q, r })
        } else {
            Ok(CBIndex::A2Right { p, q, r })
        }
    }

    pub fn cb_type(&self) -> CBType {
        match self {
            CBIndex::A1 { .. } => CBType::A1,
            _ => CBType::A2,
        }
    }

    pub fn weight(&self) -> RootVec {
        match *self {
            CBIndex::A1 { k } => vec![k as i64],
            CBIndex::A2Left { p, q, r } => vec![(p + r) as i64, q as i64],
            CBIndex::A2Right { p, q, r } => vec![q as i64, (p + r) as i64],
        }
    }

    /// The defining divided-power monomial.
    pub fn word(&self) -> Word {
        let letters: Vec<(usize, u32)> = match *self {
            CBIndex::A1 { k } => vec![(0, k)],
            CBIndex::A2Left { p, q, r } => vec![(0, p), (1, q), (0, r)],
            CBIndex::A2Right { p, q, r } => vec![(1, r), (0, q), (1, p)],
        };
        let nonzero: Vec<(usize, u32)> = letters.into_iter().filter(|&(_, m)| m > 0).collect();
        let (c, w) = Word::from_letters(&nonzero);
        debug_assert!(c.is_one());
        w
    }

    pub fn parse(s: &str) -> Result<CBIndex> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad canonical basis index {s}"));
        let open = s.find('[').ok_or_else(bad)?;
        let body = s[open + 1..].strip_suffix(']').ok_or_else(bad)?;
        let nums: Vec<u32> = body
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        match (&s[..open], nums.as_slice()) {
            ("A1", [k]) => Ok(CBIndex::A1 { k: *k }),
            ("A2L", [p, q, r]) => CBIndex::left(*p, *q, *r),
            ("A2R", [p, q, r]) => CBIndex::right(*p, *q, *r),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for CBIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CBIndex::A1 { k } => write!(f, "A1[{k}]"),
            CBIndex::A2Left { p, q, r } => write!(f, "A2L[{p},{q},{r}]"),
            CBIndex::A2Right { p, q, r } => write!(f, "A2R[{p},{q},{r}]"),
        }
    }
}

/// All canonical basis indices of weight ν.
pub fn cb_list(ty: CBType, nu: &[i64]) -> Result<Vec<CBIndex>> {
    if nu.len() != ty.rank() {
        return Err(Error::InvalidArgument(format!("weight {nu:?} has the wrong length for {ty:?}")));
    }
    if nu.iter().any(|&c| c < 0) {
        return Ok(vec![]);
    }
    Ok(match ty {
        CBType::A1 => vec![CBIndex::A1 { k: nu[0] as u32 }],
        CBType::A2 => {
            let (a, b) = (nu[0] as u32, nu[1] as u32);
            let mut out = Vec::new();
            if b >= a {
                out.extend((0..=a).map(|p| CBIndex::A2Left { p, q: b, r: a - p }));
            }
            if a > b {
                out.extend((0..=b).map(|p| CBIndex::A2Right { p, q: a, r: b - p }));
            }
            out
        }
    })
}

pub fn cb_word_form(b: &CBIndex) -> FreeElement {
    FreeElement::from_word(b.word())
}

/// Seed provider offering the canonical basis words of each weight.
pub fn seed(ty: CBType) -> SeedFn {
    Arc::new(move |nu: &[i64]| {
        cb_list(ty, nu).map(|l| l.iter().map(|b| b.word()).collect()).unwrap_or_default()
    })
}

/// An algebra context whose weight bases are the canonical basis words.
pub fn seeded_falg(ty: CBType, d: CartanDatum) -> Result<FAlg> {
    ty.check(&d)?;
    Ok(FAlg::new(d).with_seed(seed(ty)))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalExpansion {
    pub coords: BTreeMap<CBIndex, LaurentPoly>,
}

impl CanonicalExpansion {
    pub fn get(&self, b: &CBIndex) -> LaurentPoly {
        self.coords.get(b).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn is_positive(&self) -> bool {
        self.coords.values().all(|c| c.is_nonnegative())
    }

    pub fn render(&self) -> String {
        if self.coords.is_empty() {
            return "0".into();
        }
        self.coords
            .iter()
            .map(|(b, c)| if c.is_one() { b.to_string() } else { format!("({c})*{b}") })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Coordinates of the canonical basis of weight ν in the word basis of `f`.
fn cb_coordinate_columns(f: &FAlg, ty: CBType, nu: &[i64]) -> Result<(Vec<CBIndex>, Option<Vec<Vector>>)> {
    let list = cb_list(ty, nu)?;
    let basis = f.weight_basis(nu);
    let words: Vec<Word> = list.iter().map(|b| b.word()).collect();
    if basis.words == words {
        return Ok((list, None));
    }
    let cols = list.iter().map(|b| f.coords(&cb_word_form(b), nu)).collect();
    Ok((list, Some(cols)))
}

/// Expansion with coefficients in ℚ(v).
pub fn expand_cb_rational(f: &FAlg, x: &FreeElement, ty: CBType) -> Result<BTreeMap<CBIndex, RationalFunc>> {
    ty.check(f.datum())?;
    let mut out = BTreeMap::new();
    for (nu, part) in x.graded_parts(f.rank()) {
        let target = f.coords(&part, &nu);
        let (list, cols) = cb_coordinate_columns(f, ty, &nu)?;
        let c = match cols {
            None => target,
            Some(cols) => linalg::express_in_span(&cols, &target)
                .ok_or_else(|| Error::Invariant(format!("canonical basis does not span weight {nu:?}")))?,
        };
        for (b, k) in list.into_iter().zip(c) {
            if !k.is_zero() {
                out.insert(b, k);
            }
        }
        let mut back = FreeElement::zero();
        for (b, k) in &out {
            if b.weight() == nu {
                back = back.add(&cb_word_form(b).scale(k));
            }
        }
        if !f.equals_in_f(&part, &back) {
            return Err(Error::Invariant(format!("residual of the expansion at weight {nu:?} is nonzero")));
        }
    }
    Ok(out)
}

/// Expansion in the canonical basis; coordinates must be Laurent polynomials.
pub fn expand_cb(f: &FAlg, x: &FreeElement, ty: CBType) -> Result<CanonicalExpansion> {
    let raw = expand_cb_rational(f, x, ty)?;
    let mut coords = BTreeMap::new();
    for (b, c) in raw {
        let l = c.to_laurent().ok_or_else(|| Error::NotIntegral(format!("{b}: {c}")))?;
        coords.insert(b, l);
    }
    Ok(CanonicalExpansion { coords })
}

/// Coordinates (in the word basis of ν) of θ_i^{(n)}·w or w·θ_i^{(n)} for w
/// running over a basis of f_{ν−n i}.
pub fn divisible_span(f: &FAlg, nu: &[i64], i: usize, n: u32, on_left: bool) -> Vec<Vector> {
    let mut sub = nu.to_vec();
    sub[i] -= n as i64;
    if sub[i] < 0 {
        return vec![];
    }
    let t = FreeElement::theta(i, n);
    f.weight_basis(&sub)
        .words
        .iter()
        .map(|w| {
            let we = FreeElement::from_word(w.clone());
            let g = if on_left { t.mul(&we) } else { we.mul(&t) };
            f.coords(&g, nu)
        })
        .collect()
}

/// Largest n with x ∈ θ_i^{(n)} f (left) or x ∈ f θ_i^{(n)} (right); x nonzero homogeneous.
pub fn divisibility(f: &FAlg, x: &FreeElement, i: usize, on_left: bool) -> Result<u32> {
    let nu = x.homogeneous_weight(f.rank()).ok_or(Error::NotHomogeneous)?;
    let target = f.coords(x, &nu);
    let mut n = 0u32;
    while (n as i64) < nu[i] {
        let span = divisible_span(f, &nu, i, n + 1, on_left);
        if linalg::express_in_span(&span, &target).is_none() {
            break;
        }
        n += 1;
    }
    Ok(n)
}

/// (t_i(b), t_i^σ(b)) by span membership tests.
pub fn t_stats(f: &FAlg, b: &CBIndex, i: usize) -> Result<(u32, u32)> {
    b.cb_type().check(f.datum())?;
    let x = cb_word_form(b);
    Ok((divisibility(f, &x, i, true)?, divisibility(f, &x, i, false)?))
}

/// The indices b with t_i^σ(b) ≤ ⟨i,λ⟩ for all i.
pub fn b_lambda_subset(f: &FAlg, ty: CBType, lam: &Weight) -> Result<Vec<CBIndex>> {
    ty.check(f.datum())?;
    if !lam.is_dominant() {
        return Err(Error::NotDominant);
    }
    let bound: i64 = lam.pairings.iter().sum();
    let mut out = Vec::new();
    for nu in weights_in_box(ty.rank(), bound) {
        for b in cb_list(ty, &nu)? {
            let x = cb_word_form(&b);
            let ok = (0..ty.rank()).all(|i| {
                (nu[i] as u32) <= lam.pairing(i) as u32
                    || divisibility(f, &x, i, false).map(|t| t as i64 <= lam.pairing(i)).unwrap_or(false)
            });
            if ok {
                out.push(b);
            }
        }
    }
    Ok(out)
}

/// All ν with 0 ≤ ν_i ≤ bound, ordered by total degree then lexicographically.
pub fn weights_in_box(n: usize, bound: i64) -> Vec<RootVec> {
    let mut out: Vec<RootVec> = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=bound).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out.sort_by_key(|v| (v.iter().sum::<i64>(), v.clone()));
    out
}
