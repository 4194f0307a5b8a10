//! The algebra context: derivations, comultiplication, the bilinear form and
//! equality in the quotient by the form's radical.

use super::element::FreeElement;
use super::word::{words_of_weight, Letter, Word};
use crate::cartan::{CartanDatum, RootVec};
use crate::coeff::{quantum_binomial, LaurentPoly, RationalFunc};
use crate::error::{Error, Result};
use crate::linalg::{self, GrowingGram, Matrix, Vector};
use crate::memo::Memo;
use crate::par::par_map;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Supplies preferred basis words for a weight (tried before the generic spanning set).
pub type SeedFn = Arc<dyn Fn(&[i64]) -> Vec<Word> + Send + Sync>;

/// An element of the twisted tensor square, as a map on pairs of words.
pub type WordTensor = BTreeMap<(Word, Word), RationalFunc>;

/// A set of words forming a basis of f_ν, with its Gram matrix and inverse.
#[derive(Clone, Debug)]
pub struct WeightBasis {
    pub weight: RootVec,
    pub words: Vec<Word>,
    pub gram: GrowingGram,
}

impl WeightBasis {
    pub fn dim(&self) -> usize {
        self.words.len()
    }
}

/// Pairings of all words of one weight.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GramTable {
    pub weight: RootVec,
    pub words: Vec<Word>,
    pub matrix: Matrix,
    pub rank: usize,
    pub kernel: Vec<Vector>,
}

pub struct FAlg {
    datum: CartanDatum,
    seed: Option<SeedFn>,
    pairs: Memo<(Word, Word), RationalFunc>,
    bases: Memo<RootVec, Arc<WeightBasis>>,
    grams: Memo<RootVec, Arc<GramTable>>,
}

/// (θ_i^{(a)}, θ_i^{(a)}) = ∏_{s=1}^{a} 1/(1 − v^{−2s}).
pub fn divided_power_norm(a: u32) -> RationalFunc {
    let mut den = LaurentPoly::one();
    for s in 1..=a as i64 {
        den = &den * &LaurentPoly::from_pairs(&[(0, 1), (-2 * s, -1)]);
    }
    RationalFunc::new(LaurentPoly::one(), den)
}

/// All ways of distributing `a` over the slots with the given capacities.
fn distributions(caps: &[u32], a: u32) -> Vec<Vec<u32>> {
    fn rec(caps: &[u32], left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == caps.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let rest: u32 = caps[cur.len() + 1..].iter().sum();
        let cap = caps[cur.len()];
        let lo = left.saturating_sub(rest);
        for n in lo..=cap.min(left) {
            cur.push(n);
            rec(caps, left - n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(caps, a, &mut Vec::new(), &mut out);
    out
}

fn multinomial(parts: impl Iterator<Item = u32>) -> LaurentPoly {
    let mut total = 0u32;
    let mut c = LaurentPoly::one();
    for n in parts {
        if n > 0 {
            total += n;
            c = &c * &quantum_binomial(total as i64, n);
        }
    }
    c
}

/// Splits off θ_i^{(a)} on the left of r(w): returns the terms x with
/// r(w) ∋ θ_i^{(a)} ⊗ x, as (coefficient, word).
pub fn left_divided_derivative(d: &CartanDatum, i: usize, a: u32, w: &Word) -> Vec<(LaurentPoly, Word)> {
    split_divided(d, i, a, w, true)
}

/// Splits off θ_i^{(a)} on the right: terms x with r(w) ∋ x ⊗ θ_i^{(a)}.
pub fn right_divided_derivative(d: &CartanDatum, i: usize, a: u32, w: &Word) -> Vec<(LaurentPoly, Word)> {
    split_divided(d, i, a, w, false)
}

fn split_divided(d: &CartanDatum, i: usize, a: u32, w: &Word, left: bool) -> Vec<(LaurentPoly, Word)> {
    if a == 0 {
        return vec![(LaurentPoly::one(), w.clone())];
    }
    let ls = w.letters();
    let slots: Vec<usize> = (0..ls.len()).filter(|&k| ls[k].node == i).collect();
    let caps: Vec<u32> = slots.iter().map(|&k| ls[k].mult).collect();
    let mut out: BTreeMap<Word, LaurentPoly> = BTreeMap::new();
    for dist in distributions(&caps, a) {
        // taken[k]: the part of letter k moved into the θ_i factor
        let mut taken = vec![0u32; ls.len()];
        for (s, &k) in slots.iter().enumerate() {
            taken[k] = dist[s];
        }
        let kept: Vec<u32> = ls.iter().zip(&taken).map(|(l, t)| l.mult - t).collect();
        let mut e: i64 = ls.iter().zip(&taken).map(|(l, &t)| (t * (l.mult - t)) as i64).sum();
        for k in 0..ls.len() {
            for l in k + 1..ls.len() {
                if left {
                    if taken[l] > 0 && kept[k] > 0 {
                        e += taken[l] as i64 * kept[k] as i64 * d.dot(ls[k].node, i);
                    }
                } else if taken[k] > 0 && kept[l] > 0 {
                    e += taken[k] as i64 * kept[l] as i64 * d.dot(i, ls[l].node);
                }
            }
        }
        let letters: Vec<(usize, u32)> = ls
            .iter()
            .zip(&kept)
            .filter(|(_, &m)| m > 0)
            .map(|(l, &m)| (l.node, m))
            .collect();
        let (merge, rest) = Word::from_letters(&letters);
        let c = &(&merge * &multinomial(taken.iter().copied())) * &LaurentPoly::v_pow(e);
        let slot = out.entry(rest).or_insert_with(LaurentPoly::zero);
        *slot = &*slot + &c;
    }
    out.into_iter().filter(|(_, c)| !c.is_zero()).map(|(w, c)| (c, w)).collect()
}

fn apply_word_map(x: &FreeElement, f: impl Fn(&Word) -> Vec<(LaurentPoly, Word)>) -> FreeElement {
    let mut r = FreeElement::zero();
    for (w, c) in x.terms() {
        for (k, nw) in f(w) {
            r.add_term(nw, c.mul_laurent(&k));
        }
    }
    r
}

impl FAlg {
    pub fn new(datum: CartanDatum) -> Self {
        FAlg { datum, seed: None, pairs: Memo::new(), bases: Memo::new(), grams: Memo::new() }
    }

    /// Preferred words offered first when building weight bases.
    pub fn with_seed(mut self, seed: SeedFn) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.len()
    }

    pub fn weight_of(&self, w: &Word) -> RootVec {
        w.weight(self.datum.len())
    }

    pub fn multiply(&self, x: &FreeElement, y: &FreeElement) -> FreeElement {
        x.mul(y)
    }

    pub fn sigma(&self, x: &FreeElement) -> FreeElement {
        x.sigma()
    }

    pub fn bar_f(&self, x: &FreeElement) -> FreeElement {
        x.bar()
    }

    pub fn left_derivative(&self, i: usize, a: u32, x: &FreeElement) -> FreeElement {
        apply_word_map(x, |w| left_divided_derivative(&self.datum, i, a, w))
    }

    pub fn right_derivative(&self, i: usize, a: u32, x: &FreeElement) -> FreeElement {
        apply_word_map(x, |w| right_divided_derivative(&self.datum, i, a, w))
    }

    /// The derivation _ir.
    pub fn i_r(&self, i: usize, x: &FreeElement) -> FreeElement {
        self.left_derivative(i, 1, x)
    }

    /// The derivation r_i.
    pub fn r_i(&self, i: usize, x: &FreeElement) -> FreeElement {
        self.right_derivative(i, 1, x)
    }

    /// Full comultiplication into the twisted tensor square.
    pub fn comult(&self, x: &FreeElement) -> WordTensor {
        let mut out = WordTensor::new();
        for (w, c) in x.terms() {
            for ((a, b), k) in self.comult_word(w) {
                let v = c * &k;
                let e = out.entry((a, b)).or_default();
                *e = &*e + &v;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn comult_word(&self, w: &Word) -> WordTensor {
        let n = self.datum.len();
        let mut acc: WordTensor = BTreeMap::new();
        acc.insert((Word::empty(), Word::empty()), RationalFunc::one());
        for &Letter { node, mult } in w.letters() {
            let mut next = WordTensor::new();
            for ((w1, w2), c) in &acc {
                let w2_wt = w2.weight(n);
                let twist_unit = self.datum.dot_node_root(node, &w2_wt);
                for k in 0..=mult {
                    let (m1, n1) = w1.mul(&Word::letter(node, k));
                    let (m2, n2) = w2.mul(&Word::letter(node, mult - k));
                    let e = (k * (mult - k)) as i64 + twist_unit * k as i64;
                    let coef = c.mul_laurent(&(&(&m1 * &m2) * &LaurentPoly::v_pow(e)));
                    let slot = next.entry((n1, n2)).or_default();
                    *slot = &*slot + &coef;
                }
            }
            next.retain(|_, c| !c.is_zero());
            acc = next;
        }
        acc
    }

    /// The form on pairs of words; zero across different weights.
    pub fn pair_words(&self, x: &Word, y: &Word) -> RationalFunc {
        let n = self.datum.len();
        if x.weight(n) != y.weight(n) {
            return RationalFunc::zero();
        }
        self.pair_same_weight(x, y)
    }

    fn pair_same_weight(&self, x: &Word, y: &Word) -> RationalFunc {
        if x.is_empty() {
            return RationalFunc::one();
        }
        let key = if x <= y { (x.clone(), y.clone()) } else { (y.clone(), x.clone()) };
        if let Some(v) = self.pairs.get(&key) {
            return v;
        }
        // peel the shorter word
        let (p, q) = if key.0.len() <= key.1.len() { (&key.0, &key.1) } else { (&key.1, &key.0) };
        let first = p.letters()[0];
        let tail = p.tail();
        let mut sum = RationalFunc::zero();
        for (c, w) in left_divided_derivative(&self.datum, first.node, first.mult, q) {
            let inner = self.pair_same_weight(&tail, &w);
            if !inner.is_zero() {
                sum = &sum + &inner.mul_laurent(&c);
            }
        }
        let val = &sum * &divided_power_norm(first.mult);
        self.pairs.get_or_compute(&key, || val)
    }

    pub fn bilinear_form(&self, x: &FreeElement, y: &FreeElement) -> RationalFunc {
        let mut s = RationalFunc::zero();
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                let p = self.pair_words(a, b);
                if !p.is_zero() {
                    s = &s + &(&(ca * cb) * &p);
                }
            }
        }
        s
    }

    /// The product form on the tensor square: (a⊗b, c⊗d) = (a,c)(b,d).
    pub fn tensor_form(&self, s: &WordTensor, t: &WordTensor) -> RationalFunc {
        let mut acc = RationalFunc::zero();
        for ((a, b), c1) in s {
            for ((c, d), c2) in t {
                let p = self.pair_words(a, c);
                if p.is_zero() {
                    continue;
                }
                let q = self.pair_words(b, d);
                if !q.is_zero() {
                    acc = &acc + &(&(c1 * c2) * &(&p * &q));
                }
            }
        }
        acc
    }

    /// A basis of f_ν made of words, with its Gram matrix and inverse.
    pub fn weight_basis(&self, nu: &[i64]) -> Arc<WeightBasis> {
        let key = nu.to_vec();
        if let Some(b) = self.bases.get(&key) {
            return b;
        }
        let b = Arc::new(self.build_basis(nu));
        self.bases.get_or_compute(&key, || b)
    }

    fn build_basis(&self, nu: &[i64]) -> WeightBasis {
        let n = self.datum.len();
        if nu.iter().any(|&c| c < 0) {
            return WeightBasis { weight: nu.to_vec(), words: vec![], gram: GrowingGram::default() };
        }
        if nu.iter().all(|&c| c == 0) {
            let mut gram = GrowingGram::default();
            gram.try_push(vec![], RationalFunc::one());
            return WeightBasis { weight: nu.to_vec(), words: vec![Word::empty()], gram };
        }
        let mut candidates: Vec<Word> = Vec::new();
        if let Some(seed) = &self.seed {
            candidates.extend(seed(nu).into_iter().filter(|w| w.weight(n) == nu));
        }
        for i in 0..n {
            if nu[i] == 0 {
                continue;
            }
            let mut sub = nu.to_vec();
            sub[i] -= 1;
            for w in &self.weight_basis(&sub).words {
                candidates.push(Word::letter(i, 1).mul(w).1);
            }
        }
        let mut words: Vec<Word> = Vec::new();
        let mut gram = GrowingGram::default();
        let mut seen = std::collections::HashSet::new();
        for c in candidates {
            if !seen.insert(c.clone()) {
                continue;
            }
            let g: Vector = words.iter().map(|w| self.pair_same_weight(w, &c)).collect();
            let dd = self.pair_same_weight(&c, &c);
            if gram.try_push(g, dd) {
                words.push(c);
            }
        }
        WeightBasis { weight: nu.to_vec(), words, gram }
    }

    pub fn dim(&self, nu: &[i64]) -> usize {
        self.weight_basis(nu).dim()
    }

    /// Pairings of a homogeneous element with the basis words of ν.
    pub fn pairing_vector(&self, x: &FreeElement, nu: &[i64]) -> Vector {
        let basis = self.weight_basis(nu);
        basis
            .words
            .iter()
            .map(|b| {
                let mut s = RationalFunc::zero();
                for (w, c) in x.terms() {
                    let p = self.pair_words(w, b);
                    if !p.is_zero() {
                        s = &s + &(c * &p);
                    }
                }
                s
            })
            .collect()
    }

    /// Coordinates of x in the word basis of ν (x taken modulo the radical).
    pub fn coords(&self, x: &FreeElement, nu: &[i64]) -> Vector {
        let basis = self.weight_basis(nu);
        linalg::mat_vec(&basis.gram.inv, &self.pairing_vector(x, nu))
    }

    pub fn from_coords(&self, nu: &[i64], c: &[RationalFunc]) -> FreeElement {
        let basis = self.weight_basis(nu);
        let mut x = FreeElement::zero();
        for (w, k) in basis.words.iter().zip(c) {
            x.add_term(w.clone(), k.clone());
        }
        x
    }

    /// Equality in f, tested against a basis of each weight component.
    pub fn equals_in_f(&self, x: &FreeElement, y: &FreeElement) -> bool {
        let diff = x.sub(y);
        diff.graded_parts(self.datum.len())
            .iter()
            .all(|(nu, part)| self.pairing_vector(part, nu).iter().all(|p| p.is_zero()))
    }

    /// Equality in f, tested by pairing with every word of each weight.
    pub fn equals_in_f_exhaustive(&self, x: &FreeElement, y: &FreeElement) -> bool {
        let diff = x.sub(y);
        diff.graded_parts(self.datum.len()).iter().all(|(nu, part)| {
            words_of_weight(nu)
                .iter()
                .all(|w| self.bilinear_form(part, &FreeElement::from_word(w.clone())).is_zero())
        })
    }

    /// The full Gram table over all words of weight ν.
    pub fn gram(&self, nu: &[i64]) -> Arc<GramTable> {
        let key = nu.to_vec();
        if let Some(t) = self.grams.get(&key) {
            return t;
        }
        let words = words_of_weight(nu);
        let k = words.len();
        let idx: Vec<(usize, usize)> = (0..k).flat_map(|a| (a..k).map(move |b| (a, b))).collect();
        let vals = par_map(&idx, |&(a, b)| self.pair_same_weight(&words[a], &words[b]));
        let mut matrix = vec![vec![RationalFunc::zero(); k]; k];
        for (&(a, b), v) in idx.iter().zip(vals) {
            matrix[a][b] = v.clone();
            matrix[b][a] = v;
        }
        let kernel = linalg::kernel(&matrix, k);
        let t = Arc::new(GramTable { weight: nu.to_vec(), rank: k - kernel.len(), words, matrix, kernel });
        self.grams.get_or_compute(&key, || t)
    }

    /// Installs a previously computed Gram table (e.g. loaded from disk).
    pub fn preload_gram(&self, t: GramTable) {
        self.grams.insert_if_absent(t.weight.clone(), Arc::new(t));
    }

    pub fn cached_grams(&self) -> Vec<Arc<GramTable>> {
        let mut v: Vec<_> = self.grams.entries().into_iter().map(|(_, t)| t).collect();
        v.sort_by(|a, b| a.weight.cmp(&b.weight));
        v
    }

    pub fn memo_sizes(&self) -> (usize, usize, usize) {
        (self.pairs.len(), self.bases.len(), self.grams.len())
    }

    /// Σ_{n=0}^{1−i·j} (−1)^n θ_i^{(n)} θ_j θ_i^{(1−i·j−n)}.
    pub fn serre_element(&self, i: usize, j: usize) -> Result<FreeElement> {
        if i == j {
            return Err(Error::InvalidArgument("Serre element needs two distinct nodes".into()));
        }
        let n = self.datum.len();
        if i >= n || j >= n {
            return Err(Error::InvalidArgument("node out of range".into()));
        }
        let top = (1 - self.datum.dot(i, j)) as u32;
        let mut x = FreeElement::zero();
        for k in 0..=top {
            let t = FreeElement::from_letters(&[(i, k), (j, 1), (i, top - k)]);
            x = if k % 2 == 0 { x.add(&t) } else { x.sub(&t) };
        }
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::quantum_integer;

    fn lp(p: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_pairs(p)
    }

    fn w(l: &[(usize, u32)]) -> Word {
        Word::from_normal(l).unwrap()
    }

    #[test]
    fn form_examples() {
        let f = FAlg::new(CartanDatum::a2());
        let ti = FreeElement::theta(0, 1);
        let tj = FreeElement::theta(1, 1);
        let one_minus = |k: i64| lp(&[(0, 1), (-k, -1)]);
        assert_eq!(f.bilinear_form(&ti, &ti), RationalFunc::new(LaurentPoly::one(), one_minus(2)));
        assert!(f.bilinear_form(&ti, &tj).is_zero());
        let t2 = FreeElement::theta(0, 2);
        assert_eq!(
            f.bilinear_form(&t2, &t2),
            RationalFunc::new(LaurentPoly::one(), &one_minus(2) * &one_minus(4))
        );
    }

    #[test]
    fn derivative_examples() {
        let f = FAlg::new(CartanDatum::a2());
        assert!(f.i_r(0, &FreeElement::theta(1, 1)).is_zero());
        for a in 1..5 {
            let got = f.i_r(0, &FreeElement::theta(0, a));
            let want = FreeElement::theta(0, a - 1).scale_laurent(&LaurentPoly::v_pow(a as i64 - 1));
            assert_eq!(got, want);
        }
        // _ir(θ_j^{(n)} w) = v^{-n} θ_j^{(n)} _ir(w) when i·j = −1
        let x = FreeElement::from_word(w(&[(1, 2), (0, 1)]));
        assert_eq!(f.i_r(0, &x), FreeElement::theta(1, 2).scale_laurent(&LaurentPoly::v_pow(-2)));
    }

    #[test]
    fn comult_examples() {
        let f = FAlg::new(CartanDatum::a1());
        let r = f.comult(&FreeElement::theta(0, 2));
        assert_eq!(r.len(), 3);
        assert_eq!(r[&(Word::letter(0, 1), Word::letter(0, 1))], RationalFunc::v_pow(1));
        assert!(r[&(Word::letter(0, 2), Word::empty())].is_one());
        let r1 = f.comult(&FreeElement::one());
        assert!(r1[&(Word::empty(), Word::empty())].is_one());
    }

    #[test]
    fn gram_examples() {
        let f = FAlg::new(CartanDatum::a1());
        assert_eq!(f.gram(&[1]).rank, 1);
        let t = f.gram(&[2]);
        assert_eq!(t.words.len(), 1);
        assert_eq!(t.rank, 1);
        let g = FAlg::new(CartanDatum::a2());
        let t = g.gram(&[1, 1]);
        assert_eq!((t.words.len(), t.rank), (2, 2));
        assert!(t.kernel.is_empty());
        let t = g.gram(&[2, 1]);
        assert_eq!((t.words.len(), t.rank), (3, 2));
        assert_eq!(t.kernel.len(), 1);
    }

    #[test]
    fn serre_in_radical() {
        let f = FAlg::new(CartanDatum::a2());
        let s = f.serre_element(0, 1).unwrap();
        assert!(f.equals_in_f(&s, &FreeElement::zero()));
        assert!(f.equals_in_f_exhaustive(&s, &FreeElement::zero()));
        assert!(f.serre_element(0, 0).is_err());
        let a = FreeElement::from_word(w(&[(0, 1), (1, 1)]));
        let b = FreeElement::from_word(w(&[(1, 1), (0, 1)]));
        assert!(!f.equals_in_f(&a, &b));
        let d = CartanDatum::new(vec!["a".into(), "b".into()], vec![vec![2, 0], vec![0, 2]]).unwrap();
        let g = FAlg::new(d);
        let s = g.serre_element(0, 1).unwrap();
        assert_eq!(s.len(), 2);
        assert!(g.equals_in_f(&s, &FreeElement::zero()));
    }

    #[test]
    fn dims_a2() {
        let f = FAlg::new(CartanDatum::a2());
        for a in 0..4i64 {
            for b in 0..4i64 {
                assert_eq!(f.dim(&[a, b]), (a.min(b) + 1) as usize, "({a},{b})");
            }
        }
    }

    #[test]
    fn merge_of_thetas() {
        let x = FreeElement::theta(0, 1).mul(&FreeElement::theta(0, 1));
        assert_eq!(x, FreeElement::theta(0, 2).scale_laurent(&quantum_integer(2)));
    }
}
