//! Divided-power words θ_{i₁}^{(a₁)}⋯θ_{iₙ}^{(aₙ)}.

use crate::cartan::{CartanDatum, RootVec};
use crate::coeff::{quantum_binomial, LaurentPoly};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub node: usize,
    pub mult: u32,
}

/// A word in normal form: multiplicities ≥ 1 and adjacent letters on distinct nodes.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(node: usize, mult: u32) -> Self {
        if mult == 0 {
            Word::empty()
        } else {
            Word(vec![Letter { node, mult }])
        }
    }

    /// Builds a word from (node, mult) pairs that are already in normal form.
    pub fn from_normal(letters: &[(usize, u32)]) -> Result<Self> {
        let mut v = Vec::with_capacity(letters.len());
        for &(node, mult) in letters {
            if mult == 0 {
                return Err(Error::Parse("multiplicity must be positive".into()));
            }
            if matches!(v.last(), Some(Letter { node: n, .. }) if *n == node) {
                return Err(Error::Parse("adjacent letters on the same node".into()));
            }
            v.push(Letter { node, mult });
        }
        Ok(Word(v))
    }

    /// Product of arbitrary (node, mult) letters: normal-form word and the merge coefficient.
    pub fn from_letters(letters: &[(usize, u32)]) -> (LaurentPoly, Word) {
        let mut coeff = LaurentPoly::one();
        let mut w = Word::empty();
        for &(node, mult) in letters {
            let (c, nw) = w.mul(&Word::letter(node, mult));
            coeff = &coeff * &c;
            w = nw;
        }
        (coeff, w)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total degree tr ν.
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|l| l.mult).sum()
    }

    pub fn weight(&self, n: usize) -> RootVec {
        let mut v = vec![0; n];
        for l in &self.0 {
            v[l.node] += l.mult as i64;
        }
        v
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn tail(&self) -> Word {
        Word(self.0[1..].to_vec())
    }

    /// Concatenation; equal nodes at the junction merge with [a+b choose a].
    pub fn mul(&self, o: &Word) -> (LaurentPoly, Word) {
        match (self.0.last(), o.0.first()) {
            (Some(a), Some(b)) if a.node == b.node => {
                let c = quantum_binomial((a.mult + b.mult) as i64, a.mult);
                let mut v = self.0.clone();
                v.last_mut().unwrap().mult += b.mult;
                v.extend_from_slice(&o.0[1..]);
                (c, Word(v))
            }
            _ => {
                let mut v = self.0.clone();
                v.extend_from_slice(&o.0);
                (LaurentPoly::one(), Word(v))
            }
        }
    }

    /// Renders as `i(2).i'(3).i(1)`; the empty word is `1`.
    pub fn render(&self, d: &CartanDatum) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|l| format!("{}({})", d.name(l.node), l.mult))
            .collect::<Vec<_>>()
            .join(".")
    }

    /// Parses the `i(2).i'(3).i` syntax; a missing multiplicity means 1.
    /// Adjacent equal nodes are merged, so a coefficient is returned too.
    pub fn parse(s: &str, d: &CartanDatum) -> Result<(LaurentPoly, Word)> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok((LaurentPoly::one(), Word::empty()));
        }
        let mut letters = Vec::new();
        for part in s.split('.') {
            let part = part.trim();
            let (name, mult) = match part.find('(') {
                Some(p) => {
                    let close = part
                        .strip_suffix(')')
                        .ok_or_else(|| Error::Parse(format!("missing ')' in {part}")))?;
                    let m: u32 = close[p + 1..]
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad multiplicity in {part}")))?;
                    (&part[..p], m)
                }
                None => (part, 1),
            };
            let node = d
                .node_index(name.trim())
                .ok_or_else(|| Error::Parse(format!("unknown node {name}")))?;
            if mult == 0 {
                return Err(Error::Parse(format!("zero multiplicity in {part}")));
            }
            letters.push((node, mult));
        }
        Ok(Word::from_letters(&letters))
    }
}

impl Ord for Word {
    fn cmp(&self, o: &Word) -> Ordering {
        self.0
            .iter()
            .map(|l| l.node)
            .cmp(o.0.iter().map(|l| l.node))
            .then_with(|| self.0.iter().map(|l| l.mult).cmp(o.0.iter().map(|l| l.mult)))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Word) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|l| format!("{}^({})", l.node, l.mult)).collect();
        write!(f, "{}", parts.join("."))
    }
}

/// All normal-form words of weight ν, in the lexicographic (nodes, multiplicities) order.
pub fn words_of_weight(nu: &[i64]) -> Vec<Word> {
    fn rec(nu: &mut Vec<i64>, prev: Option<usize>, cur: &mut Vec<Letter>, out: &mut Vec<Word>) {
        if nu.iter().all(|&c| c == 0) {
            out.push(Word(cur.clone()));
            return;
        }
        for j in 0..nu.len() {
            if Some(j) == prev || nu[j] == 0 {
                continue;
            }
            for a in 1..=nu[j] {
                nu[j] -= a;
                cur.push(Letter { node: j, mult: a as u32 });
                rec(nu, Some(j), cur, out);
                cur.pop();
                nu[j] += a;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut nu.to_vec(), None, &mut Vec::new(), &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::quantum_integer;

    #[test]
    fn merge_coefficient() {
        let (c, w) = Word::letter(0, 1).mul(&Word::letter(0, 1));
        assert_eq!(c, quantum_integer(2));
        assert_eq!(w, Word::letter(0, 2));
        let (c, w) = Word::letter(0, 2).mul(&Word::letter(1, 1));
        assert!(c.is_one());
        assert_eq!(w.letters().len(), 2);
        let (c, w) = Word::empty().mul(&Word::letter(1, 3));
        assert!(c.is_one());
        assert_eq!(w, Word::letter(1, 3));
    }

    #[test]
    fn parse_and_render() {
        let d = crate::cartan::frame(&CartanDatum::a1()).full;
        let (c, w) = Word::parse("i(2).i'(3).i(1)", &d).unwrap();
        assert!(c.is_one());
        assert_eq!(w.render(&d), "i(2).i'(3).i(1)");
        let (c, w) = Word::parse("i.i", &d).unwrap();
        assert_eq!(c, quantum_integer(2));
        assert_eq!(w.render(&d), "i(2)");
        assert!(Word::parse("k(1)", &d).is_err());
        assert!(Word::parse("i(0)", &d).is_err());
    }

    #[test]
    fn enumeration() {
        assert_eq!(words_of_weight(&[2]).len(), 1);
        assert_eq!(words_of_weight(&[1, 1]).len(), 2);
        // (2,1): i(2)j, ij i, j i(2)
        assert_eq!(words_of_weight(&[2, 1]).len(), 3);
        let ws = words_of_weight(&[2, 2]);
        let mut sorted = ws.clone();
        sorted.sort();
        assert_eq!(ws, sorted);
    }
}
