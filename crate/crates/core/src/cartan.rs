//! Symmetric Cartan data, dominant weights and framing.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// An element of ℕ[I] (or ℤ[I]) as a coefficient vector over the datum's nodes.
pub type RootVec = Vec<i64>;

/// A node of a (possibly framed) datum: the base node it belongs to and its
/// framing generation (0 for base nodes, 1 for i′, 2 for i″, ...).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Node {
    pub name: String,
    pub base: usize,
    pub generation: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanDatum {
    nodes: Vec<Node>,
    pairing: Vec<Vec<i64>>,
}

impl CartanDatum {
    /// Validates a symmetric Cartan matrix; all nodes are treated as base nodes.
    pub fn new(names: Vec<String>, pairing: Vec<Vec<i64>>) -> Result<Self> {
        let nodes = names
            .into_iter()
            .enumerate()
            .map(|(k, name)| Node { name, base: k, generation: 0 })
            .collect();
        Self::with_nodes(nodes, pairing)
    }

    fn with_nodes(nodes: Vec<Node>, pairing: Vec<Vec<i64>>) -> Result<Self> {
        let n = nodes.len();
        if pairing.len() != n || pairing.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidDatum(format!("pairing matrix must be {n}x{n}")));
        }
        for i in 0..n {
            if pairing[i][i] != 2 {
                return Err(Error::InvalidDatum(format!("{}·{} must be 2", nodes[i].name, nodes[i].name)));
            }
            for j in 0..n {
                if pairing[i][j] != pairing[j][i] {
                    return Err(Error::InvalidDatum("pairing matrix must be symmetric".into()));
                }
                if i != j && pairing[i][j] > 0 {
                    return Err(Error::InvalidDatum("off-diagonal entries must be ≤ 0".into()));
                }
            }
        }
        let mut seen = std::collections::HashSet::new();
        for nd in &nodes {
            if !seen.insert(nd.name.clone()) {
                return Err(Error::InvalidDatum(format!("duplicate node name {}", nd.name)));
            }
        }
        Ok(CartanDatum { nodes, pairing })
    }

    pub fn a1() -> Self {
        Self::new(vec!["i".into()], vec![vec![2]]).unwrap()
    }

    pub fn a2() -> Self {
        Self::new(vec!["i".into(), "j".into()], vec![vec![2, -1], vec![-1, 2]]).unwrap()
    }

    /// Type A_n as a path in the given order.
    pub fn a_n(n: usize) -> Self {
        let names = (0..n).map(|k| format!("a{k}")).collect();
        let m = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match i.abs_diff(j) {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        Self::new(names, m).unwrap()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.pairing
    }

    pub fn name(&self, i: usize) -> &str {
        &self.nodes[i].name
    }

    pub fn node_index(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.name == name)
    }

    /// `i·j`.
    pub fn dot(&self, i: usize, j: usize) -> i64 {
        self.pairing[i][j]
    }

    /// `i·ν` for ν ∈ ℤ[I].
    pub fn dot_node_root(&self, i: usize, nu: &[i64]) -> i64 {
        nu.iter().enumerate().map(|(j, c)| c * self.pairing[i][j]).sum()
    }

    /// `μ·ν` for μ, ν ∈ ℤ[I].
    pub fn dot_roots(&self, mu: &[i64], nu: &[i64]) -> i64 {
        mu.iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| c * self.dot_node_root(i, nu))
            .sum()
    }

    pub fn zero_root(&self) -> RootVec {
        vec![0; self.len()]
    }

    pub fn simple_root(&self, i: usize) -> RootVec {
        let mut v = self.zero_root();
        v[i] = 1;
        v
    }

    /// Largest framing generation present.
    pub fn max_generation(&self) -> u32 {
        self.nodes.iter().map(|n| n.generation).max().unwrap_or(0)
    }

    /// Indices of generation-0 nodes.
    pub fn base_nodes(&self) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.nodes[k].generation == 0).collect()
    }

    /// Restriction of the datum to the given node indices.
    pub fn restrict(&self, idx: &[usize]) -> CartanDatum {
        CartanDatum {
            nodes: idx.iter().map(|&k| self.nodes[k].clone()).collect(),
            pairing: idx.iter().map(|&a| idx.iter().map(|&b| self.pairing[a][b]).collect()).collect(),
        }
    }

    /// Short stable fingerprint of nodes and matrix.
    pub fn fingerprint(&self) -> String {
        let names: Vec<&str> = self.nodes.iter().map(|n| n.name.as_str()).collect();
        let rows: Vec<String> = self
            .pairing
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        format!("{}|{}", names.join(","), rows.join(";"))
    }
}

/// Which role a node of a framed datum plays.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NodeTag {
    Base(usize),
    Frame { of: usize, generation: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FramedDatum {
    pub base: CartanDatum,
    pub full: CartanDatum,
    /// Full-datum index of the newly added partner of each original base node.
    frame_index: Vec<usize>,
}

/// Adds one framing generation: every original (generation-0) node i gets a
/// new partner with i·j⁽ᵍ⁾ = −δ, j⁽ᵍ⁾·k⁽ᵍ⁾ = 2δ and pairing 0 with older frames.
pub fn frame(d: &CartanDatum) -> FramedDatum {
    let g = d.max_generation() + 1;
    let base_idx = d.base_nodes();
    let n = d.len();
    let m = base_idx.len();
    let mut nodes = d.nodes.clone();
    for &b in &base_idx {
        let nd = &d.nodes[b];
        nodes.push(Node {
            name: format!("{}{}", nd.name, "'".repeat(g as usize)),
            base: nd.base,
            generation: g,
        });
    }
    let mut pairing = vec![vec![0; n + m]; n + m];
    for i in 0..n {
        pairing[i][..n].copy_from_slice(&d.pairing[i]);
    }
    for (a, &b) in base_idx.iter().enumerate() {
        pairing[n + a][n + a] = 2;
        pairing[b][n + a] = -1;
        pairing[n + a][b] = -1;
    }
    let full = CartanDatum::with_nodes(nodes, pairing).expect("framing preserves validity");
    FramedDatum {
        base: d.clone(),
        full,
        frame_index: (n..n + m).collect(),
    }
}

impl FramedDatum {
    pub fn tag(&self, k: usize) -> NodeTag {
        let nd = &self.full.nodes[k];
        if k < self.base.len() {
            NodeTag::Base(k)
        } else {
            NodeTag::Frame { of: nd.base, generation: nd.generation }
        }
    }

    /// Full-datum index of the new frame partner of the `a`-th original node.
    pub fn frame_node(&self, a: usize) -> usize {
        self.frame_index[a]
    }

    pub fn frame_nodes(&self) -> &[usize] {
        &self.frame_index
    }

    /// Applies the framing rule to the full datum again (2-framing, 3-framing, ...).
    pub fn frame_again(&self) -> FramedDatum {
        frame(&self.full)
    }

    /// Embeds a root of the datum `base` into the full datum.
    pub fn embed_root(&self, nu: &[i64]) -> RootVec {
        let mut v = self.full.zero_root();
        v[..nu.len()].copy_from_slice(nu);
        v
    }

    /// Checks the framing relations and that `base` is a restriction of `full`.
    pub fn check_invariants(&self) -> bool {
        let nb = self.base.len();
        let restricted = self.full.restrict(&(0..nb).collect::<Vec<_>>());
        if restricted.pairing != self.base.pairing {
            return false;
        }
        let originals = self.base.base_nodes();
        for (a, &i) in originals.iter().enumerate() {
            for (b, &j) in originals.iter().enumerate() {
                let (fi, fj) = (self.frame_node(a), self.frame_node(b));
                let delta = i64::from(i == j);
                if self.full.dot(i, fj) != -delta || self.full.dot(fi, fj) != 2 * delta {
                    return false;
                }
            }
        }
        true
    }
}

/// A weight, stored by its pairings ⟨i, λ⟩ with the datum's nodes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub pairings: Vec<i64>,
}

impl Weight {
    pub fn new(pairings: Vec<i64>) -> Self {
        Weight { pairings }
    }

    pub fn zero(d: &CartanDatum) -> Self {
        Weight { pairings: vec![0; d.len()] }
    }

    pub fn is_dominant(&self) -> bool {
        self.pairings.iter().all(|&p| p >= 0)
    }

    pub fn pairing(&self, i: usize) -> i64 {
        self.pairings[i]
    }

    /// Pairings of λ − ν: ⟨i, λ−ν⟩ = ⟨i,λ⟩ − i·ν.
    pub fn minus_root(&self, d: &CartanDatum, nu: &[i64]) -> Weight {
        Weight {
            pairings: (0..d.len()).map(|i| self.pairings[i] - d.dot_node_root(i, nu)).collect(),
        }
    }

    /// Pairings of λ + ν.
    pub fn plus_root(&self, d: &CartanDatum, nu: &[i64]) -> Weight {
        Weight {
            pairings: (0..d.len()).map(|i| self.pairings[i] + d.dot_node_root(i, nu)).collect(),
        }
    }

    /// ⟨μ, λ⟩ for μ ∈ ℤ[I].
    pub fn pair_root(&self, mu: &[i64]) -> i64 {
        mu.iter().zip(&self.pairings).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight {
            pairings: self.pairings.iter().zip(&o.pairings).map(|(a, b)| a + b).collect(),
        }
    }
}

/// The framed weight ξ⊙λ: nodes of the old datum keep ξ's pairings and each new
/// frame node pairs with it as ⟨i, λ⟩.
pub fn odot(xi: &Weight, lam: &Weight, fd: &FramedDatum) -> Result<Weight> {
    if !xi.is_dominant() || !lam.is_dominant() {
        return Err(Error::NotDominant);
    }
    if xi.pairings.len() != fd.base.len() || lam.pairings.len() != fd.frame_nodes().len() {
        return Err(Error::InvalidDatum("weight length does not match datum".into()));
    }
    let mut p = xi.pairings.clone();
    p.extend_from_slice(&lam.pairings);
    Ok(Weight { pairings: p })
}

/// |θ_λ| = Σ ⟨i,λ⟩·i′ in ℕ[Ĩ].
pub fn theta_lambda_weight(lam: &Weight, fd: &FramedDatum) -> RootVec {
    let mut v = fd.full.zero_root();
    for (a, &f) in fd.frame_nodes().iter().enumerate() {
        v[f] = lam.pairings[a];
    }
    v
}

/// Checks ⟨μ, ξ⊙λ⟩ = ⟨μ, ξ+λ+|θ_λ|⟩ for every base node μ = i, reading ⟨i, λ⟩
/// through the base datum.
pub fn odot_consistent(xi: &Weight, lam: &Weight, fd: &FramedDatum) -> bool {
    let Ok(w) = odot(xi, lam, fd) else { return false };
    let theta = theta_lambda_weight(lam, fd);
    fd.base.base_nodes().iter().enumerate().all(|(a, &i)| {
        let rhs = xi.pairing(i) + lam.pairing(a) + fd.full.dot_node_root(i, &theta);
        w.pairing(i) == rhs
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn framing_a1_gives_a2() {
        let fd = frame(&CartanDatum::a1());
        assert_eq!(fd.full.matrix(), &[vec![2, -1], vec![-1, 2]]);
        assert_eq!(fd.full.name(1), "i'");
        assert!(fd.check_invariants());
        assert_eq!(fd.tag(1), NodeTag::Frame { of: 0, generation: 1 });
    }

    #[test]
    fn framing_a2_is_a4_path() {
        let fd = frame(&CartanDatum::a2());
        // order i, j, i', j' ; path i'-i-j-j'
        let m = fd.full.matrix();
        assert_eq!(m[2][0], -1);
        assert_eq!(m[0][1], -1);
        assert_eq!(m[1][3], -1);
        assert_eq!(m[2][3], 0);
        assert_eq!(m[2][1], 0);
        let edges: usize = (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).filter(|&(i, j)| i < j && m[i][j] == -1).count();
        assert_eq!(edges, 3);
        assert!(fd.check_invariants());
    }

    #[test]
    fn double_framing() {
        let fd2 = frame(&CartanDatum::a1()).frame_again();
        let d = &fd2.full;
        assert_eq!(d.len(), 3);
        let (i, ip, ipp) = (0, d.node_index("i'").unwrap(), d.node_index("i''").unwrap());
        assert_eq!(d.dot(ipp, i), -1);
        assert_eq!(d.dot(ipp, ip), 0);
        assert_eq!(d.dot(ipp, ipp), 2);
        assert!(fd2.check_invariants());
    }

    #[test]
    fn odot_pairings() {
        let fd = frame(&CartanDatum::a1());
        let w = odot(&Weight::new(vec![3]), &Weight::new(vec![2]), &fd).unwrap();
        assert_eq!(w.pairings, vec![3, 2]);
        assert!(odot_consistent(&Weight::new(vec![3]), &Weight::new(vec![2]), &fd));
        let z = odot(&Weight::new(vec![0]), &Weight::new(vec![0]), &fd).unwrap();
        assert_eq!(z.pairings, vec![0, 0]);
        assert!(odot(&Weight::new(vec![-1]), &Weight::new(vec![0]), &fd).is_err());
        let fd2 = fd.frame_again();
        let w2 = odot(&w, &Weight::new(vec![5]), &fd2).unwrap();
        assert_eq!(w2.pairings, vec![3, 2, 5]);
    }

    #[test]
    fn theta_weight() {
        let fd = frame(&CartanDatum::a2());
        assert_eq!(theta_lambda_weight(&Weight::new(vec![2, 3]), &fd), vec![0, 0, 2, 3]);
        assert_eq!(theta_lambda_weight(&Weight::new(vec![0, 0]), &fd), vec![0; 4]);
    }

    #[test]
    fn weight_shift() {
        let d = CartanDatum::a1();
        assert_eq!(Weight::new(vec![4]).minus_root(&d, &[1]).pairings, vec![2]);
        assert!(CartanDatum::new(vec!["a".into()], vec![vec![3]]).is_err());
        assert!(CartanDatum::new(vec!["a".into(), "b".into()], vec![vec![2, 1], vec![1, 2]]).is_err());
    }
}
