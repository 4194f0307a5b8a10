//! The framed construction: θ_λ, the sandwich subspace fθ_λf ⊂ f̃, the module
//! Λ_{ξ,λ} = π(fθ_λf) ⊂ Λ̃_{ξ⊙λ}, the map φ into Λ_ξ ⊗ Λ_λ, and the framed
//! canonical basis sets for base type A1.

use crate::canonical::{self, CBIndex, CBType};
use crate::cartan::{self, frame, CartanDatum, FramedDatum, RootVec, Weight};
use crate::coeff::{positivity_test, positivity_test_rational, quantum_binomial, Coefficient, Lattice, RationalFunc};
use crate::error::{Error, Result};
use crate::falg::{FAlg, FreeElement, Word};
use crate::hwmodule::{HWElement, HwModule};
use crate::linalg::{self, Vector};
use crate::memo::Memo;
use crate::report::Report;
use crate::tensor::{Generator, Pair, TensorElement, TensorModule};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

/// θ_λ = ∏_i θ_{i′}^{(⟨i,λ⟩)} in node order.
pub fn theta_lambda(lam: &Weight, fd: &FramedDatum) -> Result<Word> {
    if !lam.is_dominant() {
        return Err(Error::NotDominant);
    }
    if lam.pairings.len() != fd.frame_nodes().len() {
        return Err(Error::InvalidArgument("weight length does not match datum".into()));
    }
    let letters: Vec<(usize, u32)> = fd
        .frame_nodes()
        .iter()
        .zip(&lam.pairings)
        .filter(|(_, &c)| c > 0)
        .map(|(&f, &c)| (f, c as u32))
        .collect();
    for (a, &(fa, _)) in letters.iter().enumerate() {
        for &(fb, _) in &letters[a + 1..] {
            if fd.full.dot(fa, fb) != 0 {
                return Err(Error::Invariant("frame nodes do not commute".into()));
            }
        }
    }
    let (c, w) = Word::from_letters(&letters);
    if !c.is_one() {
        return Err(Error::Invariant("θ_λ letters merged".into()));
    }
    Ok(w)
}

/// A combination of sandwich monomials x·θ_λ·y with x, y words over the base nodes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SandwichElement {
    pub terms: BTreeMap<(Word, Word), RationalFunc>,
}

impl SandwichElement {
    pub fn monomial(x: Word, y: Word) -> Self {
        let mut s = SandwichElement::default();
        s.add_term(x, y, RationalFunc::one());
        s
    }

    pub fn add_term(&mut self, x: Word, y: Word, c: RationalFunc) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((x.clone(), y.clone())).or_default();
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&(x, y));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The element of f̃ obtained by multiplying out.
    pub fn flatten(&self, theta: &Word) -> FreeElement {
        let mut out = FreeElement::zero();
        for ((x, y), c) in &self.terms {
            out = out.add(&flatten_monomial(x, theta, y).scale(c));
        }
        out
    }
}

fn flatten_monomial(x: &Word, theta: &Word, y: &Word) -> FreeElement {
    FreeElement::from_word(x.clone()).mul(&FreeElement::from_word(theta.clone())).mul(&FreeElement::from_word(y.clone()))
}

/// All ν′ with 0 ≤ ν′ ≤ ν componentwise.
fn sub_boxes(nu: &[i64]) -> Vec<RootVec> {
    let mut out: Vec<RootVec> = vec![vec![]];
    for &c in nu {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=c.max(0)).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    out
}

fn sub_roots(a: &[i64], b: &[i64]) -> RootVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Sandwich monomials spanning (fθ_λf)_ν with their Gram coordinates in f̃.
struct SandwichSpan {
    monomials: Vec<(Word, Word)>,
    coords: Vec<Vector>,
}

/// Everything needed to compare Λ_{ξ,λ} ⊂ Λ̃_{ξ⊙λ} with Λ_ξ ⊗ Λ_λ.
pub struct FramedSetup {
    fd: FramedDatum,
    xi: Weight,
    lambda: Weight,
    theta: Word,
    theta_weight: RootVec,
    full: Arc<FAlg>,
    framed: Arc<HwModule>,
    tensor: Arc<TensorModule>,
    spans: Memo<RootVec, Arc<SandwichSpan>>,
    phis: Memo<(Word, Word), Arc<TensorElement>>,
}

impl FramedSetup {
    /// Base type A1 or A2; the framed algebra is A2 or A4.
    pub fn new(base: CartanDatum, xi: Weight, lambda: Weight) -> Result<Self> {
        let ty = CBType::from_datum(&base)?;
        let fd = frame(&base);
        let base_f = Arc::new(canonical::seeded_falg(ty, base)?);
        let full = Arc::new(match ty {
            CBType::A1 => canonical::seeded_falg(CBType::A2, fd.full.clone())?,
            CBType::A2 => FAlg::new(fd.full.clone()),
        });
        let framed_weight = cartan::odot(&xi, &lambda, &fd)?;
        let theta = theta_lambda(&lambda, &fd)?;
        let theta_weight = cartan::theta_lambda_weight(&lambda, &fd);
        let framed = Arc::new(HwModule::new(full.clone(), framed_weight)?);
        let tensor = Arc::new(TensorModule::new(base_f, xi.clone(), lambda.clone())?);
        Ok(FramedSetup {
            fd,
            xi,
            lambda,
            theta,
            theta_weight,
            full,
            framed,
            tensor,
            spans: Memo::new(),
            phis: Memo::new(),
        })
    }

    /// Base A1 with ξ = m, λ = n.
    pub fn a1(m: u32, n: u32) -> Result<Self> {
        FramedSetup::new(CartanDatum::a1(), Weight::new(vec![m as i64]), Weight::new(vec![n as i64]))
    }

    pub fn framed_datum(&self) -> &FramedDatum {
        &self.fd
    }

    pub fn xi(&self) -> &Weight {
        &self.xi
    }

    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }

    pub fn theta(&self) -> &Word {
        &self.theta
    }

    pub fn full(&self) -> &Arc<FAlg> {
        &self.full
    }

    pub fn base(&self) -> &Arc<FAlg> {
        self.tensor.falg()
    }

    /// Λ̃_{ξ⊙λ}.
    pub fn framed_module(&self) -> &Arc<HwModule> {
        &self.framed
    }

    pub fn tensor(&self) -> &Arc<TensorModule> {
        &self.tensor
    }

    fn nb(&self) -> usize {
        self.fd.base.len()
    }

    /// Weight in ℕ[Ĩ] of x·θ_λ·y with |x|+|y| = ν.
    pub fn full_weight(&self, nu: &[i64]) -> RootVec {
        let e = self.fd.embed_root(nu);
        e.iter().zip(&self.theta_weight).map(|(a, b)| a + b).collect()
    }

    fn base_part(&self, nu_full: &[i64]) -> Option<RootVec> {
        let nb = self.nb();
        if nu_full[nb..] != self.theta_weight[nb..] {
            return None;
        }
        Some(nu_full[..nb].to_vec())
    }

    /// θ_λ·y as an element of f̃.
    pub fn theta_times(&self, y: &FreeElement) -> FreeElement {
        FreeElement::from_word(self.theta.clone()).mul(y)
    }

    pub fn flatten(&self, s: &SandwichElement) -> FreeElement {
        s.flatten(&self.theta)
    }

    /// Splits a word as x·θ_λ·y when its frame letters are exactly θ_λ.
    fn split_word(&self, w: &Word) -> Option<(Word, Word)> {
        let nb = self.nb();
        let letters = w.letters();
        let pos: Vec<usize> = (0..letters.len()).filter(|&k| letters[k].node >= nb).collect();
        let tl = self.theta.letters();
        if pos.len() != tl.len() {
            return None;
        }
        if let (Some(&a), Some(&b)) = (pos.first(), pos.last()) {
            if b - a + 1 != pos.len() || letters[a..=b] != *tl {
                return None;
            }
        }
        let start = pos.first().copied().unwrap_or(letters.len());
        let end = pos.last().map(|&b| b + 1).unwrap_or(letters.len());
        let to_word = |ls: &[crate::falg::Letter]| {
            Word::from_normal(&ls.iter().map(|l| (l.node, l.mult)).collect::<Vec<_>>()).ok()
        };
        Some((to_word(&letters[..start])?, to_word(&letters[end..])?))
    }

    fn sandwich_span(&self, nu: &[i64]) -> Arc<SandwichSpan> {
        let key = nu.to_vec();
        if let Some(s) = self.spans.get(&key) {
            return s;
        }
        let base = self.base();
        let nu_full = self.full_weight(nu);
        let mut monomials = Vec::new();
        let mut coords = Vec::new();
        for nu1 in sub_boxes(nu) {
            let nu2 = sub_roots(nu, &nu1);
            let xs = base.weight_basis(&nu1).words.clone();
            let ys = base.weight_basis(&nu2).words.clone();
            for x in &xs {
                for y in &ys {
                    coords.push(self.full.coords(&flatten_monomial(x, &self.theta, y), &nu_full));
                    monomials.push((x.clone(), y.clone()));
                }
            }
        }
        let s = Arc::new(SandwichSpan { monomials, coords });
        self.spans.get_or_compute(&key, || s)
    }

    /// Rewrites an element of fθ_λf over sandwich monomials. Words of the
    /// form x·θ_λ·y are read off directly; otherwise each weight component is
    /// solved against the sandwich spanning set.
    pub fn to_sandwich(&self, x: &FreeElement) -> Result<SandwichElement> {
        let mut out = SandwichElement::default();
        let direct: Option<Vec<_>> = x.terms().iter().map(|(w, c)| self.split_word(w).map(|p| (p, c))).collect();
        if let Some(parts) = direct {
            for ((a, b), c) in parts {
                out.add_term(a, b, c.clone());
            }
            return Ok(out);
        }
        for (nu_full, part) in x.graded_parts(self.fd.full.len()) {
            let nu = self
                .base_part(&nu_full)
                .ok_or_else(|| Error::NotSandwich(format!("weight {nu_full:?} is not ν+|θ_λ|")))?;
            let span = self.sandwich_span(&nu);
            let target = self.full.coords(&part, &nu_full);
            let c = linalg::express_in_span(&span.coords, &target)
                .ok_or_else(|| Error::NotSandwich(format!("component of weight {nu_full:?} is outside fθ_λf")))?;
            for ((a, b), k) in span.monomials.iter().zip(c) {
                out.add_term(a.clone(), b.clone(), k);
            }
        }
        Ok(out)
    }

    /// φπ(x·θ_λ·y) = Σ v^{|x₂|·|θ_λ|} x₂⁻y⁻η_ξ ⊗ x₁⁻η_λ over r(x) = Σ x₁⊗x₂.
    pub fn phi_monomial(&self, x: &Word, y: &Word) -> Result<Arc<TensorElement>> {
        let key = (x.clone(), y.clone());
        if let Some(t) = self.phis.get(&key) {
            return Ok(t);
        }
        let nb = self.nb();
        let left = self.tensor.left();
        let right = self.tensor.right();
        let mut out = TensorElement::zero();
        let yel = FreeElement::from_word(y.clone());
        for ((x1, x2), c) in self.base().comult(&FreeElement::from_word(x.clone())) {
            let e = self.fd.full.dot_roots(&self.fd.embed_root(&x2.weight(nb)), &self.theta_weight);
            let l = left.expand_in_cb(&left.element(FreeElement::from_word(x2).mul(&yel)))?;
            if l.is_empty() {
                continue;
            }
            let r = right.expand_in_cb(&right.element(FreeElement::from_word(x1)))?;
            let c = &c * &RationalFunc::v_pow(e);
            for (a, ca) in &l {
                for (b, cb) in &r {
                    out.add_term((*a, *b), &(&c * ca) * cb);
                }
            }
        }
        let t = Arc::new(out);
        Ok(self.phis.get_or_compute(&key, || t))
    }

    pub fn phi_sandwich(&self, s: &SandwichElement) -> Result<TensorElement> {
        let mut out = TensorElement::zero();
        for ((x, y), c) in &s.terms {
            out = out.add(&self.phi_monomial(x, y)?.scale(c));
        }
        Ok(out)
    }

    /// φπ(x) for x ∈ fθ_λf ⊂ f̃.
    pub fn phi(&self, x: &FreeElement) -> Result<TensorElement> {
        self.phi_sandwich(&self.to_sandwich(x)?)
    }

    pub fn phi_module(&self, m: &HWElement) -> Result<TensorElement> {
        if &m.lambda != self.framed.lambda() {
            return Err(Error::InvalidArgument("element of a different module".into()));
        }
        self.phi(&m.carrier)
    }

    /// dim Λ_{ξ,λ} at base depth ν: rank of the sandwich span modulo the ideal.
    pub fn sandwich_dim(&self, nu: &[i64]) -> usize {
        if nu.iter().any(|&c| c < 0) {
            return 0;
        }
        let nu_full = self.full_weight(nu);
        let ideal = self.framed.ideal_span(&nu_full);
        let mut rows: Vec<Vector> = ideal.as_ref().clone();
        rows.extend(self.sandwich_span(nu).coords.iter().cloned());
        linalg::rank(&rows) - ideal.len()
    }

    /// Depths of the tensor product together with one step beyond each.
    fn depths_and_border(&self) -> Vec<RootVec> {
        let mut set: BTreeSet<RootVec> = BTreeSet::new();
        for d in self.tensor.depths() {
            for i in 0..self.nb() {
                let mut e = d.clone();
                e[i] += 1;
                set.insert(e);
            }
            set.insert(d);
        }
        let mut v: Vec<RootVec> = set.into_iter().collect();
        v.sort_by_key(|x| (x.iter().sum::<i64>(), x.clone()));
        v
    }

    fn base_cb_type(&self) -> CBType {
        self.tensor.cb_type()
    }

    fn require_a1(&self) -> Result<()> {
        if self.base_cb_type() != CBType::A1 {
            return Err(Error::UnsupportedType("framed canonical basis needs base type A1".into()));
        }
        Ok(())
    }

    /// B̃(fθ_λf) at base depths c ≤ c_max (base A1), read off from the
    /// canonical basis expansions of the sandwich monomials.
    pub fn b_f_theta_f(&self, c_max: u32) -> Result<Vec<CBIndex>> {
        self.require_a1()?;
        let mut out = Vec::new();
        for c in 0..=c_max as i64 {
            let mut seen = BTreeSet::new();
            let span = self.sandwich_span(&[c]);
            for (x, y) in &span.monomials {
                let e = canonical::expand_cb(&self.full, &flatten_monomial(x, &self.theta, y), CBType::A2)?;
                seen.extend(e.coords.keys().copied());
            }
            out.extend(seen);
        }
        Ok(out)
    }

    /// B̃(ξ,λ): elements of B̃(fθ_λf) with t_i^σ(b) ≤ ⟨i,ξ⟩ (base A1).
    pub fn b_xi_lambda(&self) -> Result<Vec<CBIndex>> {
        let c_max = (self.xi.pairing(0) + self.lambda.pairing(0)) as u32;
        let mut out = Vec::new();
        for b in self.b_f_theta_f(c_max)? {
            let (_, ts) = canonical::t_stats(&self.full, &b, 0)?;
            if ts as i64 <= self.xi.pairing(0) {
                out.push(b);
            }
        }
        Ok(out)
    }

    /// Monomials x·θ_λ·y of base depth with total degree ≤ max_depth.
    fn monomials_up_to(&self, max_depth: i64) -> Vec<(Word, Word)> {
        let mut out = Vec::new();
        for nu in canonical::weights_in_box(self.nb(), max_depth) {
            if nu.iter().sum::<i64>() <= max_depth {
                out.extend(self.sandwich_span(&nu).monomials.iter().cloned());
            }
        }
        out
    }

    /// φ commutes with F_i, E_i and K_i on sandwich monomials up to `max_depth`.
    pub fn verify_module_map(&self, max_depth: i64) -> Report {
        let mut rep = Report::new("phi is a module map");
        let nb = self.nb();
        for (x, y) in self.monomials_up_to(max_depth) {
            let s = flatten_monomial(&x, &self.theta, &y);
            let m = self.framed.element(s.clone());
            for i in 0..nb {
                let mut root = vec![0; nb];
                root[i] = 1;
                let cases: [(&str, Generator, FreeElement); 3] = [
                    ("F", Generator::F(i), FreeElement::theta(i, 1).mul(&s)),
                    ("E", Generator::E(i), self.framed.act_e(i, &m).carrier),
                    ("K", Generator::K(root.clone()), self.framed.act_k(&self.fd.embed_root(&root), &m).carrier),
                ];
                for (g, gen, img) in cases {
                    let name = format!("{g}_{} on {}|{}", self.fd.full.name(i), x.render(&self.fd.base), y.render(&self.fd.base));
                    let r = (|| -> Result<Option<String>> {
                        let lhs = self.phi(&img)?;
                        let rhs = self.tensor.delta_act(&gen, &*self.phi_monomial(&x, &y)?)?;
                        Ok((lhs != rhs).then(|| format!("phi(g m) = {} but g phi(m) = {}", lhs.render(), rhs.render())))
                    })();
                    rep.check_result(name, r);
                }
            }
        }
        rep
    }

    /// φ(bar m) = Ψ(φ m) on v·(sandwich monomial) up to `max_depth`.
    pub fn verify_bar_intertwining(&self, max_depth: i64) -> Report {
        let mut rep = Report::new("phi intertwines the involutions");
        let v = RationalFunc::v_pow(1);
        for (x, y) in self.monomials_up_to(max_depth) {
            let s = flatten_monomial(&x, &self.theta, &y).scale(&v);
            let name = format!("v*{}|{}", x.render(&self.fd.base), y.render(&self.fd.base));
            let r = (|| -> Result<Option<String>> {
                let lhs = self.phi(&s.bar())?;
                let rhs = self.tensor.psi(&self.phi(&s)?)?;
                Ok((lhs != rhs).then(|| format!("{} vs {}", lhs.render(), rhs.render())))
            })();
            rep.check_result(name, r);
        }
        rep
    }

    /// dim Λ_{ξ,λ} = dim(Λ_ξ⊗Λ_λ) weight by weight.
    pub fn verify_dimensions(&self) -> Report {
        let mut rep = Report::new("dimension bookkeeping");
        for nu in self.depths_and_border() {
            let a = self.sandwich_dim(&nu);
            let b = self.tensor.ordered_pairs(&nu).len();
            rep.check(format!("depth {nu:?}"), a == b, || format!("framed {a}, tensor {b}"));
        }
        rep
    }

    /// φ kills fθ_λf ∩ Σ_i f̃θ_i^{⟨i,ξ⟩+1}; checked on a basis of the intersection.
    pub fn verify_kernel(&self) -> Report {
        let mut rep = Report::new("kernel of phi");
        for nu in self.depths_and_border() {
            let nu_full = self.full_weight(&nu);
            let span = self.sandwich_span(&nu);
            let mut gens = span.coords.clone();
            for i in 0..self.nb() {
                let c = (self.xi.pairing(i) + 1) as u32;
                gens.extend(canonical::divisible_span(&self.full, &nu_full, i, c, false));
            }
            let dim = self.full.dim(&nu_full);
            let rows: Vec<Vector> =
                (0..dim).map(|r| gens.iter().map(|g| g[r].clone()).collect()).collect();
            let k = span.monomials.len();
            let mut tested = 0;
            let mut bad = None;
            for z in linalg::kernel(&rows, gens.len()) {
                let mut s = SandwichElement::default();
                for ((a, b), c) in span.monomials.iter().zip(&z[..k]) {
                    s.add_term(a.clone(), b.clone(), c.clone());
                }
                if self.flatten(&s).is_zero() || self.full.coords(&self.flatten(&s), &nu_full).iter().all(|c| c.is_zero()) {
                    continue;
                }
                tested += 1;
                match self.phi_sandwich(&s) {
                    Ok(t) if t.is_zero() => {}
                    Ok(t) => bad = Some(format!("nonzero image {}", t.render())),
                    Err(e) => bad = Some(format!("error: {e}")),
                }
            }
            match bad {
                None => rep.pass(format!("depth {nu:?} ({tested} intersection vectors)")),
                Some(w) => rep.fail(format!("depth {nu:?}"), w),
            }
        }
        rep
    }

    /// (π(θ_λy), π(θ_λy′)) = (φπ(θ_λy), φπ(θ_λy′))·∏ v^{−⟨i,λ⟩ν_i}[⟨i,λ⟩+ν_i choose ⟨i,λ⟩]
    /// for basis words y, y′ of every base weight with total degree ≤ max_depth.
    pub fn verify_two_pairings(&self, max_depth: i64) -> Report {
        let mut rep = Report::new("two pairings");
        let nb = self.nb();
        for nu in canonical::weights_in_box(nb, max_depth) {
            if nu.iter().sum::<i64>() > max_depth {
                continue;
            }
            let mut factor = RationalFunc::one();
            for a in 0..nb {
                let l = self.lambda.pairing(a);
                let q = quantum_binomial(l + nu[a], l as u32);
                factor = &factor * &RationalFunc::from(q.shift(-l * nu[a]));
            }
            let words = self.base().weight_basis(&nu).words.clone();
            for y in &words {
                for y2 in &words {
                    let name = format!("y={} y'={}", y.render(&self.fd.base), y2.render(&self.fd.base));
                    let r = (|| -> Result<Option<String>> {
                        let a = self.framed.element(self.theta_times(&FreeElement::from_word(y.clone())));
                        let b = self.framed.element(self.theta_times(&FreeElement::from_word(y2.clone())));
                        let lhs = self.framed.admissible_form(&a, &b);
                        let ta = self.phi_module(&a)?;
                        let tb = self.phi_module(&b)?;
                        let rhs = &self.tensor.tensor_form(&ta, &tb) * &factor;
                        Ok((lhs != rhs).then(|| format!("framed {lhs}, tensor side {rhs}")))
                    })();
                    rep.check_result(name, r);
                }
            }
        }
        rep
    }

    /// E_i b and F_i b expand positively in B̃(Λ_{ξ,λ}) (base A1), and the
    /// _ir coordinates of B̃(fθ_λf) elements obey the exponent bound.
    pub fn verify_positivity_framed(&self) -> Result<Report> {
        let mut rep = Report::new("framed positivity");
        let bl = self.b_xi_lambda()?;
        let set: BTreeSet<CBIndex> = bl.iter().copied().collect();
        let i = 0;
        for b in &bl {
            let m = self.framed.element(canonical::cb_word_form(b));
            for (g, img) in [("E", self.framed.act_e(i, &m)), ("F", self.framed.act_f(i, 1, &m))] {
                let r = self.framed.expand_in_cb_laurent(&img).map(|e| {
                    e.iter()
                        .find(|(b2, c)| !set.contains(b2) || !positivity_test(c))
                        .map(|(b2, c)| format!("coefficient {c} at {b2}"))
                });
                rep.check_result(format!("{g}_i {b}"), r);
            }
        }
        let c_max = (self.xi.pairing(0) + self.lambda.pairing(0)) as u32;
        let top = self.framed.lambda().pairing(i);
        for b in self.b_f_theta_f(c_max)? {
            let x = self.full.i_r(i, &canonical::cb_word_form(&b));
            let pairing = top - self.fd.full.dot_node_root(i, &b.weight());
            let r = canonical::expand_cb(&self.full, &x, CBType::A2).map(|e| {
                for (b2, d) in &e.coords {
                    if !positivity_test(d) {
                        return Some(format!("negative coefficient {d} at {b2}"));
                    }
                    if set.contains(b2) {
                        if let Some(lo) = d.min_exp() {
                            if pairing + 2 + lo < 0 {
                                return Some(format!("exponent {lo} at {b2} violates the bound"));
                            }
                        }
                    }
                }
                None
            });
            rep.check_result(format!("_ir {b}"), r);
        }
        Ok(rep)
    }

    /// (φπ(b), φπ(b)) ∈ 1 + v⁻¹𝐀 for b ∈ B̃(ξ,λ).
    pub fn verify_almost_orthonormal(&self) -> Result<Report> {
        let mut rep = Report::new("almost orthonormality of phi(B)");
        for b in self.b_xi_lambda()? {
            let r = self.phi(&canonical::cb_word_form(&b)).map(|t| {
                let f = self.tensor.tensor_form(&t, &t);
                let d = &f - &RationalFunc::one();
                (!d.in_lattice(Lattice::VinvA)).then(|| format!("(phi b, phi b) = {f}"))
            });
            rep.check_result(format!("{b}"), r);
        }
        Ok(rep)
    }
}

/// Which closed-form family a framed basis index belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// θ_{i′}^{(n−l)}θ_i^{(m−k+l)}θ_{i′}^{(l)}, k − l ≤ m − n.
    Alpha,
    /// θ_i^{(l)}θ_{i′}^{(n)}θ_i^{(m−k)}, k − l > m − n.
    Beta,
}

/// An element of B̃(m,n) for base A1. On the boundary k − l = m − n both
/// monomials coincide and the index is tagged `Alpha`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FramedCBIndex {
    pub m: u32,
    pub n: u32,
    pub k: u32,
    pub l: u32,
    pub family: Family,
}

impl FramedCBIndex {
    pub fn new(m: u32, n: u32, k: u32, l: u32) -> Result<Self> {
        if k > m || l > n {
            return Err(Error::InvalidArgument(format!("(k,l)=({k},{l}) out of range for ({m},{n})")));
        }
        let family = if (k as i64 - l as i64) <= (m as i64 - n as i64) { Family::Alpha } else { Family::Beta };
        Ok(FramedCBIndex { m, n, k, l, family })
    }

    /// The framed A2 canonical basis element (node 0 = i, node 1 = i′).
    pub fn cb_index(&self) -> CBIndex {
        let FramedCBIndex { m, n, k, l, family } = *self;
        match family {
            Family::Alpha => CBIndex::right(l, m - k + l, n - l),
            Family::Beta => CBIndex::left(l, n, m - k),
        }
        .expect("family constraints give valid indices")
    }

    pub fn word(&self) -> Word {
        self.cb_index().word()
    }

    /// The pure tensor leading its image: F^{(m−k)}η_m ⊗ F^{(l)}η_n.
    pub fn leading_pair(&self) -> Pair {
        (CBIndex::A1 { k: self.m - self.k }, CBIndex::A1 { k: self.l })
    }
}

/// B̃(m,n) as the union of the two families.
pub fn framed_cb_set(m: u32, n: u32) -> Vec<FramedCBIndex> {
    let mut out = Vec::new();
    for k in 0..=m {
        for l in 0..=n {
            out.push(FramedCBIndex::new(m, n, k, l).expect("in range"));
        }
    }
    out
}

/// Whether b has a nonzero coordinate in the canonical basis expansion of x.
pub fn appears_in_cb(full: &FAlg, b: &CBIndex, x: &FreeElement) -> Result<bool> {
    CBType::A2.check(full.datum())?;
    Ok(canonical::expand_cb_rational(full, x, CBType::A2)?.contains_key(b))
}

/// Outcome of matching φπ(B̃(m,n)) against the canonical basis of Λ_m ⊗ Λ_n.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CbCorrespondence {
    pub m: u32,
    pub n: u32,
    pub expected: usize,
    pub framed_size: usize,
    pub tensor_size: usize,
    pub bijection: Vec<(CBIndex, Pair)>,
    pub mismatches: Vec<String>,
}

impl CbCorrespondence {
    pub fn is_perfect(&self) -> bool {
        self.mismatches.is_empty()
            && self.bijection.len() == self.expected
            && self.framed_size == self.expected
            && self.tensor_size == self.expected
    }

    pub fn to_report(&self) -> Report {
        let mut rep = Report::new(format!("canonical basis correspondence ({},{})", self.m, self.n));
        rep.check("sizes", self.framed_size == self.expected && self.tensor_size == self.expected, || {
            format!("framed {}, tensor {}, expected {}", self.framed_size, self.tensor_size, self.expected)
        });
        rep.check("bijection", self.bijection.len() == self.expected, || format!("{} matched", self.bijection.len()));
        rep.check("mismatches", self.mismatches.is_empty(), || self.mismatches.join("; "));
        rep
    }
}

/// Computes φπ(b) for b ∈ B̃(m,n) and matches against ◊ by exact equality.
pub fn verify_cb_correspondence(m: u32, n: u32) -> Result<CbCorrespondence> {
    let s = FramedSetup::a1(m, n)?;
    let bl = s.b_xi_lambda()?;
    let diamonds = s.tensor.diamond_basis()?;
    let mut mismatches = Vec::new();
    let expected_set: BTreeSet<CBIndex> = framed_cb_set(m, n).iter().map(|f| f.cb_index()).collect();
    let found_set: BTreeSet<CBIndex> = bl.iter().copied().collect();
    if expected_set != found_set {
        mismatches.push(format!(
            "B(xi,lambda) = {:?} differs from the two-family set {:?}",
            found_set.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
            expected_set.iter().map(|b| b.to_string()).collect::<Vec<_>>()
        ));
    }
    let mut bijection = Vec::new();
    let mut used = BTreeSet::new();
    for b in &bl {
        let t = s.phi(&canonical::cb_word_form(b))?;
        match diamonds.iter().find(|(_, d)| **d == t) {
            Some((p, _)) if used.insert(*p) => bijection.push((*b, *p)),
            Some((p, _)) => mismatches.push(format!("{b} maps onto the already used {p:?}")),
            None => mismatches.push(format!("phi({b}) = {} is not a canonical basis element", t.render())),
        }
    }
    Ok(CbCorrespondence {
        m,
        n,
        expected: ((m + 1) * (n + 1)) as usize,
        framed_size: bl.len(),
        tensor_size: diamonds.len(),
        bijection,
        mismatches,
    })
}

/// E_i, F_i act positively on the ◊ basis.
pub fn verify_positivity_tensor(tm: &TensorModule) -> Result<Report> {
    let mut rep = Report::new("tensor positivity");
    let nodes = tm.falg().rank();
    for (lead, t) in tm.diamond_basis()? {
        for i in 0..nodes {
            for (g, gen) in [("E", Generator::E(i)), ("F", Generator::F(i))] {
                let r = tm.delta_act(&gen, &t).and_then(|img| tm.expand_in_diamond(&img)).map(|c| {
                    c.iter()
                        .find(|(_, x)| !positivity_test_rational(x))
                        .map(|(p, x)| format!("coefficient {x} at {p:?}"))
                });
                rep.check_result(format!("{g}_{i} on diamond {lead:?}"), r);
            }
        }
    }
    Ok(rep)
}

/// Every off-leading ◊ coordinate lies in v⁻¹ℕ[v⁻¹].
pub fn verify_transition_positivity(tm: &TensorModule) -> Result<Report> {
    let mut rep = Report::new("transition matrix positivity");
    for d in tm.depths() {
        let s = tm.diamond_space(&d)?;
        let n = s.order.len();
        let bad = (0..n).flat_map(|q| (0..n).map(move |p| (p, q))).find(|&(p, q)| {
            p != q && !(positivity_test(&s.p[p][q]) && s.p[p][q].in_lattice(Lattice::VinvZvInv))
        });
        rep.check(format!("depth {d:?}"), bad.is_none(), || {
            let (p, q) = bad.unwrap();
            format!("coordinate {} of {:?} at {:?}", s.p[p][q], s.order[q], s.order[p])
        });
    }
    Ok(rep)
}

/// x ↦ xθ_λ induces Λ_λ ≅ Λ_{0,λ}: rank comparison per weight.
pub fn verify_psi_iso(base: CartanDatum, lambda: Weight) -> Result<Report> {
    let xi = Weight::new(vec![0; base.len()]);
    let s = FramedSetup::new(base, xi, lambda)?;
    let mut rep = Report::new("right multiplication by theta_lambda");
    let right = s.tensor.right().clone();
    for nu in s.depths_and_border() {
        let nu_full = s.full_weight(&nu);
        let ideal = s.framed.ideal_span(&nu_full);
        let mut rows: Vec<Vector> = ideal.as_ref().clone();
        for w in &s.base().weight_basis(&nu).words {
            let x = FreeElement::from_word(w.clone()).mul(&FreeElement::from_word(s.theta.clone()));
            rows.push(s.full.coords(&x, &nu_full));
        }
        let img = linalg::rank(&rows) - ideal.len();
        let d = right.dim(&nu);
        let target = s.sandwich_dim(&nu);
        rep.check(format!("injective at {nu:?}"), img == d, || format!("image rank {img}, dim Λ_λ {d}"));
        rep.check(format!("surjective at {nu:?}"), img == target, || format!("image rank {img}, dim Λ_(0,λ) {target}"));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_examples() {
        let fd = frame(&CartanDatum::a1());
        assert!(theta_lambda(&Weight::new(vec![0]), &fd).unwrap().is_empty());
        assert_eq!(theta_lambda(&Weight::new(vec![3]), &fd).unwrap(), Word::letter(1, 3));
        let fd2 = frame(&CartanDatum::a2());
        let w = theta_lambda(&Weight::new(vec![2, 1]), &fd2).unwrap();
        assert_eq!(w, Word::from_normal(&[(2, 2), (3, 1)]).unwrap());
        // the two frame letters commute in f̃
        let f = FAlg::new(fd2.full.clone());
        let swapped = FreeElement::from_letters(&[(3, 1), (2, 2)]);
        assert!(f.equals_in_f(&FreeElement::from_word(w), &swapped));
    }

    #[test]
    fn framed_set_counts() {
        assert_eq!(framed_cb_set(0, 0).len(), 1);
        assert!(framed_cb_set(0, 0)[0].word().is_empty());
        let s: Vec<(u32, u32)> = framed_cb_set(1, 0).iter().map(|f| (f.k, f.l)).collect();
        assert_eq!(s, vec![(0, 0), (1, 0)]);
        for (m, n) in [(2, 3), (4, 1), (3, 3)] {
            let set = framed_cb_set(m, n);
            assert_eq!(set.len() as u32, (m + 1) * (n + 1));
            let distinct: BTreeSet<CBIndex> = set.iter().map(|f| f.cb_index()).collect();
            assert_eq!(distinct.len(), set.len());
        }
    }

    #[test]
    fn boundary_identification() {
        // k − l = m − n: both monomials are the same element
        let f = FramedCBIndex::new(2, 1, 1, 0).unwrap();
        assert_eq!(f.family, Family::Alpha);
        assert_eq!(CBIndex::right(0, 1, 1).unwrap(), CBIndex::left(0, 1, 1).unwrap());
        assert_eq!(f.cb_index(), CBIndex::left(0, 1, 1).unwrap());
    }

    #[test]
    fn phi_of_theta_times_y() {
        let s = FramedSetup::a1(2, 1).unwrap();
        let t = s.phi(&s.theta_times(&FreeElement::theta(0, 1))).unwrap();
        assert_eq!(t, TensorElement::pure((CBIndex::A1 { k: 1 }, CBIndex::A1 { k: 0 })));
        assert!(matches!(s.phi(&FreeElement::theta(0, 1)), Err(Error::NotSandwich(_))));
    }

    #[test]
    fn rewriting_non_sandwich_words() {
        let s = FramedSetup::a1(1, 2).unwrap();
        // θ_{i′}θ_iθ_{i′} has two frame letters but lies in fθ_{i′}^{(2)}f
        let x = FreeElement::from_letters(&[(1, 1), (0, 1), (1, 1)]);
        let sw = s.to_sandwich(&x).unwrap();
        assert!(s.full.equals_in_f(&s.flatten(&sw), &x));
    }

    #[test]
    fn correspondence_small() {
        let c = verify_cb_correspondence(1, 1).unwrap();
        assert!(c.is_perfect(), "{c:?}");
        assert_eq!(c.bijection.len(), 4);
        let c = verify_cb_correspondence(0, 2).unwrap();
        assert!(c.is_perfect(), "{c:?}");
    }

    #[test]
    fn b_xi_lambda_zero_xi() {
        let s = FramedSetup::a1(0, 3).unwrap();
        assert_eq!(s.b_xi_lambda().unwrap().len(), 4);
    }

    #[test]
    fn two_pairings_factor_example() {
        let s = FramedSetup::a1(1, 1).unwrap();
        let rep = s.verify_two_pairings(1);
        assert!(rep.all_passed(), "{rep:?}");
        assert_eq!(rep.len(), 2);
    }
}
