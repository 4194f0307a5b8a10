//! Integrable highest-weight modules Λ_λ = f / Σ_i f θ_i^{⟨i,λ⟩+1}.

use crate::canonical::{self, CBIndex, CBType};
use crate::cartan::{CartanDatum, RootVec, Weight};
use crate::coeff::{quantum_binomial, quantum_factorial, LaurentPoly, RationalFunc};
use crate::error::{Error, Result};
use crate::falg::{FAlg, FreeElement, Word};
use crate::linalg::{self, GrowingGram, Vector};
use crate::memo::Memo;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

/// x⁻η_λ, stored through its carrier x ∈ f.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HWElement {
    pub carrier: FreeElement,
    pub lambda: Weight,
}

impl HWElement {
    pub fn is_zero_carrier(&self) -> bool {
        self.carrier.is_zero()
    }

    pub fn add(&self, o: &HWElement) -> HWElement {
        HWElement { carrier: self.carrier.add(&o.carrier), lambda: self.lambda.clone() }
    }

    pub fn sub(&self, o: &HWElement) -> HWElement {
        HWElement { carrier: self.carrier.sub(&o.carrier), lambda: self.lambda.clone() }
    }

    pub fn scale(&self, c: &RationalFunc) -> HWElement {
        HWElement { carrier: self.carrier.scale(c), lambda: self.lambda.clone() }
    }

    /// The bar involution: bar on the carrier.
    pub fn bar(&self) -> HWElement {
        HWElement { carrier: self.carrier.bar(), lambda: self.lambda.clone() }
    }
}

/// Canonical basis elements of one weight space with their admissible Gram matrix.
#[derive(Clone, Debug)]
pub struct ModuleBasis {
    pub depth: RootVec,
    pub indices: Vec<CBIndex>,
    pub gram: GrowingGram,
}

pub struct HwModule {
    falg: Arc<FAlg>,
    lambda: Weight,
    cb: Option<CBType>,
    ideal: Memo<RootVec, Arc<Vec<Vector>>>,
    cb_bases: Memo<RootVec, Arc<ModuleBasis>>,
    e_memo: Memo<(usize, u32, Word), FreeElement>,
    form_memo: Memo<(Word, Word), RationalFunc>,
}

impl HwModule {
    pub fn new(falg: Arc<FAlg>, lambda: Weight) -> Result<Self> {
        if !lambda.is_dominant() {
            return Err(Error::NotDominant);
        }
        if lambda.pairings.len() != falg.rank() {
            return Err(Error::InvalidArgument("weight length does not match datum".into()));
        }
        let cb = CBType::from_datum(falg.datum()).ok();
        Ok(HwModule {
            falg,
            lambda,
            cb,
            ideal: Memo::new(),
            cb_bases: Memo::new(),
            e_memo: Memo::new(),
            form_memo: Memo::new(),
        })
    }

    pub fn falg(&self) -> &Arc<FAlg> {
        &self.falg
    }

    pub fn datum(&self) -> &CartanDatum {
        self.falg.datum()
    }

    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }

    pub fn cb_type(&self) -> Option<CBType> {
        self.cb
    }

    fn n(&self) -> usize {
        self.falg.rank()
    }

    pub fn eta(&self) -> HWElement {
        self.element(FreeElement::one())
    }

    pub fn element(&self, carrier: FreeElement) -> HWElement {
        HWElement { carrier, lambda: self.lambda.clone() }
    }

    pub fn zero(&self) -> HWElement {
        self.element(FreeElement::zero())
    }

    fn check(&self, m: &HWElement) {
        assert_eq!(m.lambda, self.lambda, "element belongs to a different module");
    }

    /// ⟨i, λ − ν⟩.
    fn pair_at(&self, i: usize, nu: &[i64]) -> i64 {
        self.lambda.pairing(i) - self.datum().dot_node_root(i, nu)
    }

    pub fn act_f(&self, i: usize, a: u32, m: &HWElement) -> HWElement {
        self.check(m);
        self.element(FreeElement::theta(i, a).mul(&m.carrier))
    }

    /// E_i through the derivations _ir and r_i.
    pub fn act_e(&self, i: usize, m: &HWElement) -> HWElement {
        self.check(m);
        let vmv = RationalFunc::from(LaurentPoly::from_pairs(&[(1, 1), (-1, -1)]));
        let mut out = FreeElement::zero();
        for (nu, x) in m.carrier.graded_parts(self.n()) {
            let a = self.falg.i_r(i, &x).scale(&RationalFunc::v_pow(self.pair_at(i, &nu) + 2));
            let b = self.falg.r_i(i, &x).scale(&RationalFunc::v_pow(-self.lambda.pairing(i)));
            out = out.add(&a.sub(&b).scale(&vmv.inv()));
        }
        self.element(out)
    }

    /// E_i^{(a)} as a-fold E_i divided by [a]!.
    pub fn act_e_pow(&self, i: usize, a: u32, m: &HWElement) -> HWElement {
        let mut x = m.clone();
        for _ in 0..a {
            x = self.act_e(i, &x);
        }
        x.scale(&RationalFunc::from(quantum_factorial(a)).inv())
    }

    /// E_i^{(a)} by commuting past the divided-power letters of each word.
    pub fn act_e_pow_commuting(&self, i: usize, a: u32, m: &HWElement) -> HWElement {
        self.check(m);
        let mut out = FreeElement::zero();
        for (w, c) in m.carrier.terms() {
            out = out.add(&self.e_word(i, a, w).scale(c));
        }
        self.element(out)
    }

    fn e_word(&self, i: usize, a: u32, w: &Word) -> FreeElement {
        if a == 0 {
            return FreeElement::from_word(w.clone());
        }
        if w.is_empty() {
            return FreeElement::zero();
        }
        let key = (i, a, w.clone());
        if let Some(v) = self.e_memo.get(&key) {
            return v;
        }
        let first = w.letters()[0];
        let rest = w.tail();
        let head = |k: u32| FreeElement::theta(first.node, k);
        let val = if first.node != i {
            head(first.mult).mul(&self.e_word(i, a, &rest))
        } else {
            let b = first.mult;
            let top = a as i64 - b as i64 + self.pair_at(i, &rest.weight(self.n()));
            let mut acc = FreeElement::zero();
            for k in 0..=a.min(b) {
                let coef = quantum_binomial(top, k);
                if coef.is_zero() {
                    continue;
                }
                let inner = self.e_word(i, a - k, &rest);
                if inner.is_zero() {
                    continue;
                }
                acc = acc.add(&head(b - k).mul(&inner).scale_laurent(&coef));
            }
            acc
        };
        self.e_memo.get_or_compute(&key, || val)
    }

    /// K_μ acts on the weight λ − ν by v^{⟨μ, λ−ν⟩}.
    pub fn act_k(&self, mu: &[i64], m: &HWElement) -> HWElement {
        self.check(m);
        let mut out = FreeElement::zero();
        for (nu, x) in m.carrier.graded_parts(self.n()) {
            let e = self.lambda.pair_root(mu) - self.datum().dot_roots(mu, &nu);
            out = out.add(&x.scale(&RationalFunc::v_pow(e)));
        }
        self.element(out)
    }

    /// Coordinates (in the word basis of ν) of the generators w·θ_i^{(⟨i,λ⟩+1)}.
    pub fn ideal_span(&self, nu: &[i64]) -> Arc<Vec<Vector>> {
        let key = nu.to_vec();
        if let Some(v) = self.ideal.get(&key) {
            return v;
        }
        let mut gens = Vec::new();
        for i in 0..self.n() {
            let c = (self.lambda.pairing(i) + 1) as u32;
            gens.extend(canonical::divisible_span(&self.falg, nu, i, c, false));
        }
        // row-reduce to an independent spanning set
        let mut rows = gens;
        linalg::rref(&mut rows);
        let kept: Vec<Vector> = rows.into_iter().filter(|r| r.iter().any(|c| !c.is_zero())).collect();
        let v = Arc::new(kept);
        self.ideal.get_or_compute(&key, || v)
    }

    /// Equality in Λ_λ: the difference lies in the left ideal, weight by weight.
    pub fn equals(&self, m: &HWElement, m2: &HWElement) -> bool {
        if m.lambda != m2.lambda {
            return false;
        }
        let diff = m.carrier.sub(&m2.carrier);
        diff.graded_parts(self.n()).iter().all(|(nu, x)| {
            let target = self.falg.coords(x, nu);
            if target.iter().all(|c| c.is_zero()) {
                return true;
            }
            let span = self.ideal_span(nu);
            linalg::express_in_span(&span, &target).is_some()
        })
    }

    pub fn is_zero(&self, m: &HWElement) -> bool {
        self.equals(m, &self.zero())
    }

    /// dim Λ_λ^{λ−ν}.
    pub fn dim(&self, nu: &[i64]) -> usize {
        if nu.iter().any(|&c| c < 0) {
            return 0;
        }
        self.falg.dim(nu) - self.ideal_span(nu).len()
    }

    /// All ν with a nonzero weight space λ − ν.
    pub fn depths(&self) -> Vec<RootVec> {
        let n = self.n();
        let mut seen = BTreeSet::new();
        let mut q = VecDeque::new();
        q.push_back(vec![0; n]);
        seen.insert(vec![0; n]);
        while let Some(nu) = q.pop_front() {
            for i in 0..n {
                let mut nx = nu.clone();
                nx[i] += 1;
                if !seen.contains(&nx) && self.dim(&nx) > 0 {
                    seen.insert(nx.clone());
                    q.push_back(nx);
                }
            }
        }
        let mut v: Vec<RootVec> = seen.into_iter().collect();
        v.sort_by_key(|x| (x.iter().sum::<i64>(), x.clone()));
        v
    }

    /// The admissible form with (η,η) = 1.
    pub fn admissible_form(&self, m: &HWElement, m2: &HWElement) -> RationalFunc {
        self.check(m);
        self.check(m2);
        let mut s = RationalFunc::zero();
        for (a, ca) in m.carrier.terms() {
            for (b, cb) in m2.carrier.terms() {
                let p = self.form_words(a, b);
                if !p.is_zero() {
                    s = &s + &(&(ca * cb) * &p);
                }
            }
        }
        s
    }

    fn form_words(&self, x: &Word, y: &Word) -> RationalFunc {
        let n = self.n();
        if x.weight(n) != y.weight(n) {
            return RationalFunc::zero();
        }
        if x.is_empty() {
            return RationalFunc::one();
        }
        let key = if x <= y { (x.clone(), y.clone()) } else { (y.clone(), x.clone()) };
        if let Some(v) = self.form_memo.get(&key) {
            return v;
        }
        let (p, q) = if key.0.len() <= key.1.len() { (&key.0, &key.1) } else { (&key.1, &key.0) };
        let first = p.letters()[0];
        let (i, a) = (first.node, first.mult);
        // (θ_i^{(a)} x′, y) = (x′, v^{a²} K_{−a i} E_i^{(a)} y)
        let e = -((a * a) as i64) - a as i64 * self.pair_at(i, &q.weight(n));
        let tail = p.tail();
        let mut s = RationalFunc::zero();
        for (w, c) in self.e_word(i, a, q).terms() {
            let inner = self.form_words(&tail, w);
            if !inner.is_zero() {
                s = &s + &(c * &inner);
            }
        }
        let val = &s * &RationalFunc::v_pow(e);
        self.form_memo.get_or_compute(&key, || val)
    }

    /// Canonical basis indices of B(λ) at depth ν.
    pub fn cb_indices(&self, nu: &[i64]) -> Result<Vec<CBIndex>> {
        let ty = self.cb.ok_or_else(|| Error::UnsupportedType(format!("{:?}", self.datum().matrix())))?;
        let mut out = Vec::new();
        for b in canonical::cb_list(ty, nu)? {
            let x = canonical::cb_word_form(&b);
            let mut ok = true;
            for i in 0..self.n() {
                if nu[i] > self.lambda.pairing(i)
                    && canonical::divisibility(&self.falg, &x, i, false)? as i64 > self.lambda.pairing(i)
                {
                    ok = false;
                    break;
                }
            }
            if ok {
                out.push(b);
            }
        }
        Ok(out)
    }

    /// Canonical basis at depth ν with its admissible Gram matrix.
    pub fn cb_basis(&self, nu: &[i64]) -> Result<Arc<ModuleBasis>> {
        let key = nu.to_vec();
        if let Some(b) = self.cb_bases.get(&key) {
            return Ok(b);
        }
        let indices = self.cb_indices(nu)?;
        let mut gram = GrowingGram::default();
        for (k, b) in indices.iter().enumerate() {
            let wb = b.word();
            let g: Vector = indices[..k].iter().map(|c| self.form_words(&c.word(), &wb)).collect();
            if !gram.try_push(g, self.form_words(&wb, &wb)) {
                return Err(Error::Invariant(format!("canonical basis of Λ is dependent at depth {nu:?}")));
            }
        }
        if indices.len() != self.dim(nu) {
            return Err(Error::Invariant(format!(
                "B(λ) has {} elements at depth {nu:?} but the weight space has dimension {}",
                indices.len(),
                self.dim(nu)
            )));
        }
        let mb = Arc::new(ModuleBasis { depth: nu.to_vec(), indices, gram });
        Ok(self.cb_bases.get_or_compute(&key, || mb))
    }

    /// The canonical basis {b⁻η_λ : b ∈ B(λ)}.
    pub fn cb_of_lambda(&self) -> Result<Vec<(CBIndex, HWElement)>> {
        let mut out = Vec::new();
        for nu in self.depths() {
            for b in &self.cb_basis(&nu)?.indices {
                out.push((*b, self.element(canonical::cb_word_form(b))));
            }
        }
        Ok(out)
    }

    /// Coordinates in the canonical basis (via the admissible form).
    pub fn expand_in_cb(&self, m: &HWElement) -> Result<BTreeMap<CBIndex, RationalFunc>> {
        self.check(m);
        let mut out = BTreeMap::new();
        for (nu, x) in m.carrier.graded_parts(self.n()) {
            let basis = self.cb_basis(&nu)?;
            let xm = self.element(x);
            let p: Vector = basis
                .indices
                .iter()
                .map(|b| self.admissible_form(&self.element(canonical::cb_word_form(b)), &xm))
                .collect();
            let c = linalg::mat_vec(&basis.gram.inv, &p);
            let mut back = FreeElement::zero();
            for (b, k) in basis.indices.iter().zip(c) {
                if !k.is_zero() {
                    back = back.add(&canonical::cb_word_form(b).scale(&k));
                    out.insert(*b, k);
                }
            }
            if !self.equals(&xm, &self.element(back)) {
                return Err(Error::Invariant(format!("expansion residual nonzero at depth {nu:?}")));
            }
        }
        Ok(out)
    }

    /// Expansion with Laurent-polynomial coordinates.
    pub fn expand_in_cb_laurent(&self, m: &HWElement) -> Result<BTreeMap<CBIndex, LaurentPoly>> {
        self.expand_in_cb(m)?
            .into_iter()
            .map(|(b, c)| c.to_laurent().map(|l| (b, l)).ok_or_else(|| Error::NotIntegral(format!("{b}: {c}"))))
            .collect()
    }

    /// Equality checked through the admissible form against the canonical basis.
    pub fn equals_by_form(&self, m: &HWElement, m2: &HWElement) -> Result<bool> {
        let diff = m.sub(m2);
        for (nu, x) in diff.carrier.graded_parts(self.n()) {
            let xm = self.element(x);
            for b in &self.cb_basis(&nu)?.indices {
                if !self.admissible_form(&self.element(canonical::cb_word_form(b)), &xm).is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn render(&self, m: &HWElement) -> String {
        format!("({}) - eta[{}]", m.carrier.render(self.datum()), render_weight(&self.lambda))
    }
}

pub fn render_weight(w: &Weight) -> String {
    w.pairings.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::seeded_falg;
    use crate::coeff::{quantum_integer, Coefficient, Lattice};

    fn a1(n: i64) -> HwModule {
        let f = Arc::new(seeded_falg(CBType::A1, CartanDatum::a1()).unwrap());
        HwModule::new(f, Weight::new(vec![n])).unwrap()
    }

    fn a2(l: [i64; 2]) -> HwModule {
        let f = Arc::new(seeded_falg(CBType::A2, CartanDatum::a2()).unwrap());
        HwModule::new(f, Weight::new(l.to_vec())).unwrap()
    }

    #[test]
    fn a1_actions() {
        let m = a1(3);
        let eta = m.eta();
        assert!(m.is_zero(&m.act_f(0, 4, &eta)));
        assert!(!m.is_zero(&eta));
        assert_eq!(m.act_f(0, 0, &eta), eta);
        let ff = m.act_f(0, 1, &m.act_f(0, 1, &eta));
        assert!(m.equals(&ff, &m.act_f(0, 2, &eta).scale(&quantum_integer(2).into())));
        assert!(m.act_e(0, &eta).carrier.is_zero());
        for k in 1..=3u32 {
            let x = m.act_f(0, k, &eta);
            let want = m.act_f(0, k - 1, &eta).scale(&quantum_integer(3 - k as i64 + 1).into());
            assert!(m.equals(&m.act_e(0, &x), &want));
        }
        assert_eq!(m.act_k(&[1], &eta), eta.scale(&RationalFunc::v_pow(3)));
        let fe = m.act_f(0, 1, &eta);
        assert_eq!(m.act_k(&[-1], &fe), fe.scale(&RationalFunc::v_pow(-1)));
        assert_eq!(m.act_k(&[0], &fe), fe);
    }

    #[test]
    fn a1_form_closed_form() {
        for n in 0..5i64 {
            let m = a1(n);
            for k in 0..=n as u32 {
                let x = m.act_f(0, k, &m.eta());
                let got = m.admissible_form(&x, &x);
                let want = RationalFunc::from(&quantum_binomial(n, k) * &LaurentPoly::v_pow(-(k as i64) * (n - k as i64)));
                assert_eq!(got, want, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn e_routes_agree() {
        let m = a2([2, 1]);
        for nu in m.depths() {
            for b in m.cb_indices(&nu).unwrap() {
                let x = m.element(canonical::cb_word_form(&b));
                for i in 0..2 {
                    for a in 1..3 {
                        let p = m.act_e_pow(i, a, &x);
                        let q = m.act_e_pow_commuting(i, a, &x);
                        assert!(m.equals(&p, &q), "{b} {i} {a}");
                    }
                }
            }
        }
    }

    #[test]
    fn dimensions_and_cb() {
        let m = a2([1, 0]);
        assert_eq!(m.cb_of_lambda().unwrap().len(), 3);
        let m = a2([1, 1]);
        let total: usize = m.depths().iter().map(|nu| m.dim(nu)).sum();
        assert_eq!(total, 8);
        assert_eq!(a1(0).cb_of_lambda().unwrap().len(), 1);
        let m = a1(3);
        let cb = m.cb_of_lambda().unwrap();
        assert_eq!(cb.len(), 4);
        for (k, (b, _)) in cb.iter().enumerate() {
            assert_eq!(*b, CBIndex::A1 { k: k as u32 });
        }
    }

    #[test]
    fn almost_orthonormal_and_positive() {
        let m = a2([1, 1]);
        let cb = m.cb_of_lambda().unwrap();
        for (a, x) in &cb {
            for (b, y) in &cb {
                let mut p = m.admissible_form(x, y);
                if a == b {
                    p = &p - &RationalFunc::one();
                }
                assert!(p.in_lattice(Lattice::VinvZvInv), "{a} {b}");
            }
            for i in 0..2 {
                for z in [m.act_e(i, x), m.act_f(i, 1, x)] {
                    let e = m.expand_in_cb_laurent(&z).unwrap();
                    assert!(e.values().all(|c| c.is_nonnegative()), "{a}");
                }
            }
        }
    }

    #[test]
    fn framed_quotient() {
        let fd = crate::cartan::frame(&CartanDatum::a1());
        let f = Arc::new(seeded_falg(CBType::A2, fd.full.clone()).unwrap());
        let m = HwModule::new(f, Weight::new(vec![2, 1])).unwrap();
        assert!(m.is_zero(&m.act_f(0, 3, &m.eta())));
        assert!(!m.is_zero(&m.act_f(0, 2, &m.eta())));
    }

    #[test]
    fn rejects_non_dominant() {
        let f = Arc::new(FAlg::new(CartanDatum::a1()));
        assert!(HwModule::new(f, Weight::new(vec![-1])).is_err());
    }
}
