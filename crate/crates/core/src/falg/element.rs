//! Linear combinations of words with coefficients in ℚ(v).

use super::word::Word;
use crate::cartan::{CartanDatum, RootVec};
use crate::coeff::{LaurentPoly, RationalFunc};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FreeElement {
    terms: BTreeMap<Word, RationalFunc>,
}

impl FreeElement {
    pub fn zero() -> Self {
        FreeElement::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::empty())
    }

    pub fn from_word(w: Word) -> Self {
        Self::term(w, RationalFunc::one())
    }

    pub fn term(w: Word, c: RationalFunc) -> Self {
        let mut e = FreeElement::zero();
        e.add_term(w, c);
        e
    }

    /// θ_i^{(a)} as an element.
    pub fn theta(node: usize, a: u32) -> Self {
        Self::from_word(Word::letter(node, a))
    }

    /// Product of letters, merging adjacent equal nodes.
    pub fn from_letters(letters: &[(usize, u32)]) -> Self {
        let (c, w) = Word::from_letters(letters);
        Self::term(w, c.into())
    }

    pub fn terms(&self) -> &BTreeMap<Word, RationalFunc> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Word, RationalFunc> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> RationalFunc {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: Word, c: RationalFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_laurent_term(&mut self, w: Word, c: &LaurentPoly) {
        if !c.is_zero() {
            self.add_term(w, c.into());
        }
    }

    pub fn add(&self, o: &FreeElement) -> FreeElement {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(w.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &FreeElement) -> FreeElement {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(w.clone(), -c);
        }
        r
    }

    pub fn neg(&self) -> FreeElement {
        self.scale(&RationalFunc::from(-1))
    }

    pub fn scale(&self, s: &RationalFunc) -> FreeElement {
        if s.is_zero() {
            return FreeElement::zero();
        }
        FreeElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect(),
        }
    }

    pub fn scale_laurent(&self, s: &LaurentPoly) -> FreeElement {
        if s.is_zero() {
            return FreeElement::zero();
        }
        FreeElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.mul_laurent(s))).collect(),
        }
    }

    /// Algebra product: concatenation with divided-power merging.
    pub fn mul(&self, o: &FreeElement) -> FreeElement {
        let mut r = FreeElement::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let (m, w) = a.mul(b);
                r.add_term(w, (ca * cb).mul_laurent(&m));
            }
        }
        r
    }

    /// Left multiplication by a single word.
    pub fn left_mul_word(&self, w: &Word) -> FreeElement {
        let mut r = FreeElement::zero();
        for (b, cb) in &self.terms {
            let (m, nw) = w.mul(b);
            r.add_term(nw, cb.mul_laurent(&m));
        }
        r
    }

    /// Right multiplication by a single word.
    pub fn right_mul_word(&self, w: &Word) -> FreeElement {
        let mut r = FreeElement::zero();
        for (b, cb) in &self.terms {
            let (m, nw) = b.mul(w);
            r.add_term(nw, cb.mul_laurent(&m));
        }
        r
    }

    /// Coefficient bar; words are bar-invariant.
    pub fn bar(&self) -> FreeElement {
        FreeElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.bar())).collect(),
        }
    }

    /// The anti-automorphism σ reversing words.
    pub fn sigma(&self) -> FreeElement {
        let mut r = FreeElement::zero();
        for (w, c) in &self.terms {
            r.add_term(w.reversed(), c.clone());
        }
        r
    }

    /// Common weight of all terms, if homogeneous (zero has none).
    pub fn homogeneous_weight(&self, n: usize) -> Option<RootVec> {
        let mut it = self.terms.keys();
        let first = it.next()?.weight(n);
        if it.all(|w| w.weight(n) == first) {
            Some(first)
        } else {
            None
        }
    }

    /// Splits into homogeneous components.
    pub fn graded_parts(&self, n: usize) -> BTreeMap<RootVec, FreeElement> {
        let mut out: BTreeMap<RootVec, FreeElement> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(w.weight(n)).or_default().add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn render(&self, d: &CartanDatum) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(w, c)| {
                if c.is_one() {
                    w.render(d)
                } else {
                    format!("({c})*{}", w.render(d))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Debug for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("({c})*{w:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
