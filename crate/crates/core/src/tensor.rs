//! Tensor products Λ_ξ ⊗ Λ_λ: coproduct actions, the quasi-R-matrix, the
//! involution Ψ and the canonical basis {b₁ ◊ b₂}.

use crate::canonical::{self, CBIndex, CBType};
use crate::cartan::{RootVec, Weight};
use crate::coeff::{LaurentPoly, RationalFunc};
use crate::error::{Error, Result};
use crate::falg::{FAlg, FreeElement, Word};
use crate::hwmodule::{HWElement, HwModule};
use crate::memo::Memo;
use crate::par::par_map;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

/// A pure tensor b₁ ⊗ b₂ of canonical basis elements.
pub type Pair = (CBIndex, CBIndex);

/// Coordinates in the basis B(Λ_ξ) ⊗ B(Λ_λ).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorElement {
    pub coords: BTreeMap<Pair, RationalFunc>,
}

impl TensorElement {
    pub fn zero() -> Self {
        TensorElement::default()
    }

    pub fn pure(p: Pair) -> Self {
        let mut t = TensorElement::zero();
        t.add_term(p, RationalFunc::one());
        t
    }

    pub fn add_term(&mut self, p: Pair, c: RationalFunc) {
        if c.is_zero() {
            return;
        }
        let e = self.coords.entry(p).or_default();
        *e = &*e + &c;
        if e.is_zero() {
            self.coords.remove(&p);
        }
    }

    pub fn get(&self, p: &Pair) -> RationalFunc {
        self.coords.get(p).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add(&self, o: &TensorElement) -> TensorElement {
        let mut r = self.clone();
        for (p, c) in &o.coords {
            r.add_term(*p, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &TensorElement) -> TensorElement {
        let mut r = self.clone();
        for (p, c) in &o.coords {
            r.add_term(*p, -c);
        }
        r
    }

    pub fn scale(&self, s: &RationalFunc) -> TensorElement {
        let mut r = TensorElement::zero();
        for (p, c) in &self.coords {
            r.add_term(*p, c * s);
        }
        r
    }

    /// Coefficient bar; pure tensors of canonical basis elements are bar-fixed.
    pub fn bar(&self) -> TensorElement {
        TensorElement { coords: self.coords.iter().map(|(p, c)| (*p, c.bar())).collect() }
    }

    /// Coordinates as Laurent polynomials, if they all are.
    pub fn to_laurent(&self) -> Option<BTreeMap<Pair, LaurentPoly>> {
        self.coords.iter().map(|(p, c)| c.to_laurent().map(|l| (*p, l))).collect()
    }

    pub fn render(&self) -> String {
        if self.coords.is_empty() {
            return "0".into();
        }
        self.coords
            .iter()
            .map(|((a, b), c)| {
                if c.is_one() {
                    format!("{a}(x){b}")
                } else {
                    format!("({c})*{a}(x){b}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Chevalley generators acting through the coproduct.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Generator {
    E(usize),
    F(usize),
    K(Vec<i64>),
}

/// The basis of f_ν dual to the canonical basis under the bilinear form.
#[derive(Clone, Debug)]
pub struct DualBasisTable {
    pub weight: RootVec,
    pub indices: Vec<CBIndex>,
    pub dual: Vec<FreeElement>,
}

impl DualBasisTable {
    /// (b*, b′) = δ for all b, b′ of this weight.
    pub fn check(&self, f: &FAlg) -> bool {
        self.dual.iter().enumerate().all(|(a, d)| {
            self.indices.iter().enumerate().all(|(b, idx)| {
                let p = f.bilinear_form(d, &canonical::cb_word_form(idx));
                if a == b {
                    p.is_one()
                } else {
                    p.is_zero()
                }
            })
        })
    }
}

/// The canonical basis of one weight space: columns of a unitriangular matrix.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiamondSpace {
    pub depth: RootVec,
    /// Pure tensors in the triangular order.
    pub order: Vec<Pair>,
    /// psi[p][q]: coordinate of e_p in Ψ(e_q).
    pub psi: Vec<Vec<LaurentPoly>>,
    /// p[p][q]: coordinate of e_p in the ◊ element led by e_q.
    pub p: Vec<Vec<LaurentPoly>>,
}

impl DiamondSpace {
    pub fn element(&self, q: usize) -> TensorElement {
        let mut t = TensorElement::zero();
        for (k, pair) in self.order.iter().enumerate() {
            if !self.p[k][q].is_zero() {
                t.add_term(*pair, self.p[k][q].clone().into());
            }
        }
        t
    }

    /// Coordinates of a vector of this weight space in the ◊ basis (back substitution).
    pub fn solve(&self, t: &TensorElement) -> Option<BTreeMap<Pair, RationalFunc>> {
        let n = self.order.len();
        let mut rhs: Vec<RationalFunc> = self.order.iter().map(|p| t.get(p)).collect();
        if t.coords.keys().any(|p| !self.order.contains(p)) {
            return None;
        }
        let mut out = BTreeMap::new();
        for q in (0..n).rev() {
            let c = rhs[q].clone();
            if c.is_zero() {
                continue;
            }
            for p in 0..q {
                if !self.p[p][q].is_zero() {
                    rhs[p] = &rhs[p] - &c.mul_laurent(&self.p[p][q]);
                }
            }
            out.insert(self.order[q], c);
        }
        Some(out)
    }
}

type Expansion = Arc<BTreeMap<CBIndex, RationalFunc>>;

pub struct TensorModule {
    left: Arc<HwModule>,
    right: Arc<HwModule>,
    ty: CBType,
    left_cb: Vec<CBIndex>,
    right_cb: Vec<CBIndex>,
    duals: Memo<RootVec, Arc<DualBasisTable>>,
    minus: Memo<(Word, CBIndex), Expansion>,
    plus: Memo<(Word, CBIndex), Expansion>,
    acts: Memo<(bool, bool, usize, CBIndex), Expansion>,
    theta_cols: Memo<Pair, Arc<TensorElement>>,
    spaces: Memo<RootVec, Arc<DiamondSpace>>,
}

fn depth_of(b: &CBIndex) -> RootVec {
    b.weight()
}

fn add_roots(a: &[i64], b: &[i64]) -> RootVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl TensorModule {
    /// Λ_ξ ⊗ Λ_λ over an A1 or A2 algebra context.
    pub fn new(falg: Arc<FAlg>, xi: Weight, lambda: Weight) -> Result<Self> {
        let ty = CBType::from_datum(falg.datum())?;
        let left = Arc::new(HwModule::new(falg.clone(), xi)?);
        let right = Arc::new(HwModule::new(falg, lambda)?);
        let left_cb = left.cb_of_lambda()?.into_iter().map(|(b, _)| b).collect();
        let right_cb = right.cb_of_lambda()?.into_iter().map(|(b, _)| b).collect();
        Ok(TensorModule {
            left,
            right,
            ty,
            left_cb,
            right_cb,
            duals: Memo::new(),
            minus: Memo::new(),
            plus: Memo::new(),
            acts: Memo::new(),
            theta_cols: Memo::new(),
            spaces: Memo::new(),
        })
    }

    pub fn left(&self) -> &Arc<HwModule> {
        &self.left
    }

    pub fn right(&self) -> &Arc<HwModule> {
        &self.right
    }

    pub fn falg(&self) -> &Arc<FAlg> {
        self.left.falg()
    }

    pub fn cb_type(&self) -> CBType {
        self.ty
    }

    pub fn left_cb(&self) -> &[CBIndex] {
        &self.left_cb
    }

    pub fn right_cb(&self) -> &[CBIndex] {
        &self.right_cb
    }

    /// All pure tensors of canonical basis elements.
    pub fn pairs(&self) -> Vec<Pair> {
        self.left_cb.iter().flat_map(|a| self.right_cb.iter().map(move |b| (*a, *b))).collect()
    }

    pub fn depth(&self, p: &Pair) -> RootVec {
        add_roots(&depth_of(&p.0), &depth_of(&p.1))
    }

    /// Total depths of the nonzero weight spaces.
    pub fn depths(&self) -> Vec<RootVec> {
        let mut v: Vec<RootVec> = self.pairs().iter().map(|p| self.depth(p)).collect();
        v.sort_by_key(|x| (x.iter().sum::<i64>(), x.clone()));
        v.dedup();
        v
    }

    /// Pure tensors of one weight in the triangular order.
    pub fn ordered_pairs(&self, depth: &[i64]) -> Vec<Pair> {
        let mut v: Vec<Pair> = self.pairs().into_iter().filter(|p| self.depth(p) == depth).collect();
        v.sort_by_key(|(a, b)| {
            let d2 = depth_of(b);
            (d2.iter().sum::<i64>(), d2, depth_of(a), *a, *b)
        });
        v
    }

    fn left_element(&self, b: &CBIndex) -> HWElement {
        self.left.element(canonical::cb_word_form(b))
    }

    fn right_element(&self, b: &CBIndex) -> HWElement {
        self.right.element(canonical::cb_word_form(b))
    }

    /// E_i or F_i on a canonical basis element of one factor, in canonical coordinates.
    fn act_on_cb(&self, on_left: bool, is_e: bool, i: usize, b: &CBIndex) -> Result<Expansion> {
        let key = (on_left, is_e, i, *b);
        if let Some(v) = self.acts.get(&key) {
            return Ok(v);
        }
        let (m, x) = if on_left {
            (&self.left, self.left_element(b))
        } else {
            (&self.right, self.right_element(b))
        };
        let y = if is_e { m.act_e(i, &x) } else { m.act_f(i, 1, &x) };
        let e = Arc::new(m.expand_in_cb(&y)?);
        Ok(self.acts.get_or_compute(&key, || e))
    }

    /// ⟨μ, weight of the canonical basis element⟩ in one factor.
    fn k_exp(&self, on_left: bool, mu: &[i64], b: &CBIndex) -> i64 {
        let m = if on_left { &self.left } else { &self.right };
        m.lambda().pair_root(mu) - self.falg().datum().dot_roots(mu, &depth_of(b))
    }

    /// Action of a generator through Δ(F_i) = F_i⊗K_{−i} + 1⊗F_i,
    /// Δ(E_i) = E_i⊗1 + K_i⊗E_i, Δ(K_μ) = K_μ⊗K_μ.
    pub fn delta_act(&self, g: &Generator, t: &TensorElement) -> Result<TensorElement> {
        let mut out = TensorElement::zero();
        let n = self.falg().rank();
        for ((a, b), c) in &t.coords {
            match g {
                Generator::K(mu) => {
                    let e = self.k_exp(true, mu, a) + self.k_exp(false, mu, b);
                    out.add_term((*a, *b), c * &RationalFunc::v_pow(e));
                }
                Generator::F(i) | Generator::E(i) => {
                    let is_e = matches!(g, Generator::E(_));
                    let mut unit = vec![0; n];
                    unit[*i] = if is_e { 1 } else { -1 };
                    // left factor term
                    let kb = if is_e { 0 } else { self.k_exp(false, &unit, b) };
                    for (a2, ca) in self.act_on_cb(true, is_e, *i, a)?.iter() {
                        out.add_term((*a2, *b), &(c * ca) * &RationalFunc::v_pow(kb));
                    }
                    // right factor term
                    let ka = if is_e { self.k_exp(true, &unit, a) } else { 0 };
                    for (b2, cb) in self.act_on_cb(false, is_e, *i, b)?.iter() {
                        out.add_term((*a, *b2), &(c * cb) * &RationalFunc::v_pow(ka));
                    }
                }
            }
        }
        Ok(out)
    }

    /// The basis of f_ν dual to the canonical basis.
    pub fn dual_table(&self, nu: &[i64]) -> Result<Arc<DualBasisTable>> {
        let key = nu.to_vec();
        if let Some(t) = self.duals.get(&key) {
            return Ok(t);
        }
        let f = self.falg();
        let indices = canonical::cb_list(self.ty, nu)?;
        let gram: Vec<Vec<RationalFunc>> = indices
            .iter()
            .map(|a| {
                indices
                    .iter()
                    .map(|b| f.bilinear_form(&canonical::cb_word_form(a), &canonical::cb_word_form(b)))
                    .collect()
            })
            .collect();
        let inv = crate::linalg::inverse(&gram)
            .ok_or_else(|| Error::Invariant(format!("canonical basis Gram matrix singular at {nu:?}")))?;
        let dual = inv
            .iter()
            .map(|row| {
                let mut x = FreeElement::zero();
                for (b, c) in indices.iter().zip(row) {
                    x.add_term(b.word(), c.clone());
                }
                x
            })
            .collect();
        let t = Arc::new(DualBasisTable { weight: nu.to_vec(), indices, dual });
        Ok(self.duals.get_or_compute(&key, || t))
    }

    /// b⁻ applied to a canonical basis element of Λ_ξ.
    fn minus_on(&self, w: &Word, b1: &CBIndex) -> Result<Expansion> {
        let key = (w.clone(), *b1);
        if let Some(v) = self.minus.get(&key) {
            return Ok(v);
        }
        let x = self.left.element(FreeElement::from_word(w.clone()).mul(&canonical::cb_word_form(b1)));
        let e = Arc::new(self.left.expand_in_cb(&x)?);
        Ok(self.minus.get_or_compute(&key, || e))
    }

    /// The word w read as a product of divided E-powers, applied to Λ_λ.
    fn plus_on(&self, w: &Word, b2: &CBIndex) -> Result<Expansion> {
        let key = (w.clone(), *b2);
        if let Some(v) = self.plus.get(&key) {
            return Ok(v);
        }
        let mut x = self.right_element(b2);
        for l in w.letters().iter().rev() {
            x = self.right.act_e_pow_commuting(l.node, l.mult, &x);
            if x.carrier.is_zero() {
                break;
            }
        }
        let e = Arc::new(self.right.expand_in_cb(&x)?);
        Ok(self.plus.get_or_compute(&key, || e))
    }

    /// Θ(b₁⊗b₂) = Σ_ν (−v)^{tr ν} Σ_{b∈B_ν} b⁻b₁ ⊗ b*⁺b₂.
    pub fn quasi_r_pure(&self, p: &Pair) -> Result<Arc<TensorElement>> {
        if let Some(v) = self.theta_cols.get(p) {
            return Ok(v);
        }
        let (b1, b2) = p;
        let d2 = depth_of(b2);
        let mut out = TensorElement::zero();
        for nu in sub_boxes(&d2) {
            let tr: i64 = nu.iter().sum();
            let sign = if tr % 2 == 0 { 1 } else { -1 };
            let scale = RationalFunc::from(LaurentPoly::monomial(tr, crate::coeff::Int::from(sign as i64)));
            let table = self.dual_table(&nu)?;
            for (b, dual) in table.indices.iter().zip(&table.dual) {
                let minus = self.minus_on(&b.word(), b1)?;
                if minus.is_empty() {
                    continue;
                }
                let mut plus: BTreeMap<CBIndex, RationalFunc> = BTreeMap::new();
                for (w, c) in dual.terms() {
                    for (k, v) in self.plus_on(w, b2)?.iter() {
                        let e = plus.entry(*k).or_default();
                        *e = &*e + &(c * v);
                    }
                }
                for (x, cx) in minus.iter() {
                    for (y, cy) in &plus {
                        out.add_term((*x, *y), &(&scale * cx) * cy);
                    }
                }
            }
        }
        let v = Arc::new(out);
        Ok(self.theta_cols.get_or_compute(p, || v))
    }

    pub fn quasi_r(&self, t: &TensorElement) -> Result<TensorElement> {
        let mut out = TensorElement::zero();
        for (p, c) in &t.coords {
            out = out.add(&self.quasi_r_pure(p)?.scale(c));
        }
        Ok(out)
    }

    /// Ψ = Θ ∘ bar.
    pub fn psi(&self, t: &TensorElement) -> Result<TensorElement> {
        self.quasi_r(&t.bar())
    }

    /// The canonical basis of the weight space at total depth ν.
    pub fn diamond_space(&self, depth: &[i64]) -> Result<Arc<DiamondSpace>> {
        let key = depth.to_vec();
        if let Some(s) = self.spaces.get(&key) {
            return Ok(s);
        }
        let order = self.ordered_pairs(depth);
        let n = order.len();
        let pos: BTreeMap<Pair, usize> = order.iter().enumerate().map(|(k, p)| (*p, k)).collect();
        let mut psi = vec![vec![LaurentPoly::zero(); n]; n];
        for (q, pq) in order.iter().enumerate() {
            for (pp, c) in &self.quasi_r_pure(pq)?.coords {
                let p = *pos
                    .get(pp)
                    .ok_or_else(|| Error::Invariant(format!("Θ left the weight space at {depth:?}")))?;
                psi[p][q] = c
                    .to_laurent()
                    .ok_or_else(|| Error::NotIntegral(format!("Θ coordinate {c} at {depth:?}")))?;
            }
        }
        for q in 0..n {
            if !psi[q][q].is_one() || (q + 1..n).any(|p| !psi[p][q].is_zero()) {
                return Err(Error::Invariant(format!("Ψ is not unitriangular at {depth:?}")));
            }
        }
        let mut p = vec![vec![LaurentPoly::zero(); n]; n];
        for q in 0..n {
            p[q][q] = LaurentPoly::one();
            for r in (0..q).rev() {
                let mut rhs = LaurentPoly::zero();
                for s in r + 1..=q {
                    if !psi[r][s].is_zero() && !p[s][q].is_zero() {
                        rhs = &rhs + &(&psi[r][s] * &p[s][q].bar());
                    }
                }
                if rhs.bar() != -&rhs || !rhs.coeff(0).is_zero() {
                    return Err(Error::Invariant(format!("no bar-invariant solution at {depth:?}")));
                }
                p[r][q] = LaurentPoly::from_terms(rhs.terms().iter().filter(|(e, _)| *e < 0).cloned());
            }
        }
        let s = Arc::new(DiamondSpace { depth: depth.to_vec(), order, psi, p });
        Ok(self.spaces.get_or_compute(&key, || s))
    }

    /// All ◊ elements, keyed by their leading pure tensor.
    pub fn diamond_basis(&self) -> Result<BTreeMap<Pair, TensorElement>> {
        let depths = self.depths();
        let spaces = par_map(&depths, |d| self.diamond_space(d));
        let mut out = BTreeMap::new();
        for s in spaces {
            let s = s?;
            for (q, pair) in s.order.iter().enumerate() {
                out.insert(*pair, s.element(q));
            }
        }
        Ok(out)
    }

    /// Coordinates in the ◊ basis.
    pub fn expand_in_diamond(&self, t: &TensorElement) -> Result<BTreeMap<Pair, RationalFunc>> {
        let mut by_depth: BTreeMap<RootVec, TensorElement> = BTreeMap::new();
        for (p, c) in &t.coords {
            by_depth.entry(self.depth(p)).or_default().add_term(*p, c.clone());
        }
        let mut out = BTreeMap::new();
        for (d, part) in by_depth {
            let s = self.diamond_space(&d)?;
            let c = s.solve(&part).ok_or_else(|| Error::Invariant("vector outside the weight space".into()))?;
            out.extend(c);
        }
        Ok(out)
    }

    /// (m₁⊗m₂, m₁′⊗m₂′) = (m₁,m₁′)(m₂,m₂′).
    pub fn tensor_form(&self, s: &TensorElement, t: &TensorElement) -> RationalFunc {
        let mut acc = RationalFunc::zero();
        for ((a, b), c1) in &s.coords {
            for ((a2, b2), c2) in &t.coords {
                if depth_of(a) != depth_of(a2) || depth_of(b) != depth_of(b2) {
                    continue;
                }
                let x = self.left.admissible_form(&self.left_element(a), &self.left_element(a2));
                if x.is_zero() {
                    continue;
                }
                let y = self.right.admissible_form(&self.right_element(b), &self.right_element(b2));
                acc = &acc + &(&(c1 * c2) * &(&x * &y));
            }
        }
        acc
    }
}

/// All ν with 0 ≤ ν ≤ d componentwise.
fn sub_boxes(d: &[i64]) -> Vec<RootVec> {
    let mut out: Vec<RootVec> = vec![vec![]];
    for &c in d {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=c).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::seeded_falg;
    use crate::cartan::CartanDatum;
    use crate::coeff::quantum_integer;

    fn a1(m: i64, n: i64) -> TensorModule {
        let f = Arc::new(seeded_falg(CBType::A1, CartanDatum::a1()).unwrap());
        TensorModule::new(f, Weight::new(vec![m]), Weight::new(vec![n])).unwrap()
    }

    fn k(x: u32) -> CBIndex {
        CBIndex::A1 { k: x }
    }

    #[test]
    fn coproduct_on_highest_vectors() {
        let t = a1(2, 3);
        let top = TensorElement::pure((k(0), k(0)));
        let f = t.delta_act(&Generator::F(0), &top).unwrap();
        let mut want = TensorElement::zero();
        want.add_term((k(1), k(0)), RationalFunc::v_pow(-3));
        want.add_term((k(0), k(1)), RationalFunc::one());
        assert_eq!(f, want);
        assert!(t.delta_act(&Generator::E(0), &top).unwrap().is_zero());
        assert_eq!(t.delta_act(&Generator::K(vec![1]), &top).unwrap(), top.scale(&RationalFunc::v_pow(5)));
    }

    #[test]
    fn quasi_r_examples() {
        let n = 3;
        let t = a1(2, n);
        let x = TensorElement::pure((k(1), k(0)));
        assert_eq!(t.quasi_r(&x).unwrap(), x);
        let y = TensorElement::pure((k(0), k(1)));
        let mut want = y.clone();
        let c = &(&LaurentPoly::from_pairs(&[(1, -1)]) * &LaurentPoly::from_pairs(&[(0, 1), (-2, -1)])) * &quantum_integer(n);
        want.add_term((k(1), k(0)), c.into());
        assert_eq!(t.quasi_r(&y).unwrap(), want);
        let top = TensorElement::pure((k(0), k(0)));
        assert_eq!(t.psi(&top.scale(&RationalFunc::v_pow(1))).unwrap(), top.scale(&RationalFunc::v_pow(-1)));
    }

    #[test]
    fn dual_table_is_dual() {
        let f = Arc::new(seeded_falg(CBType::A2, CartanDatum::a2()).unwrap());
        let t = TensorModule::new(f.clone(), Weight::new(vec![1, 0]), Weight::new(vec![0, 1])).unwrap();
        for nu in [[1, 1], [2, 1], [2, 2]] {
            assert!(t.dual_table(&nu).unwrap().check(&f));
        }
    }

    #[test]
    fn small_diamond_table() {
        let t = a1(1, 1);
        let d = t.diamond_basis().unwrap();
        assert_eq!(d.len(), 4);
        let v = |e: i64| RationalFunc::v_pow(e);
        assert_eq!(d[&(k(0), k(0))], TensorElement::pure((k(0), k(0))));
        let mut want = TensorElement::pure((k(0), k(1)));
        want.add_term((k(1), k(0)), v(-1));
        assert_eq!(d[&(k(0), k(1))], want);
        assert_eq!(d[&(k(1), k(0))], TensorElement::pure((k(1), k(0))));
        assert_eq!(d[&(k(1), k(1))], TensorElement::pure((k(1), k(1))));
    }

    #[test]
    fn psi_is_involution() {
        let t = a1(2, 2);
        for p in t.pairs() {
            let x = TensorElement::pure(p).scale(&RationalFunc::v_pow(2));
            assert_eq!(t.psi(&t.psi(&x).unwrap()).unwrap(), x);
        }
    }
}
