//! Dense exact linear algebra over ℚ(v).

use crate::coeff::RationalFunc;

pub type Vector = Vec<RationalFunc>;
pub type Matrix = Vec<Vec<RationalFunc>>;

fn cost(x: &RationalFunc) -> usize {
    x.numerator().terms().len() + 4 * (x.denominator().terms().len() - 1)
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let best = (r..rows)
            .filter(|&k| !m[k][c].is_zero())
            .min_by_key(|&k| cost(&m[k][c]));
        let Some(p) = best else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv();
        if !inv.is_one() {
            for x in m[r].iter_mut().skip(c) {
                *x = &*x * &inv;
            }
        }
        let pivot_row = m[r].clone();
        for (k, row) in m.iter_mut().enumerate() {
            if k == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (j, x) in row.iter_mut().enumerate().skip(c) {
                if !pivot_row[j].is_zero() {
                    *x = &*x - &(&f * &pivot_row[j]);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Basis of the right null space {x : m·x = 0}.
pub fn kernel(m: &Matrix, cols: usize) -> Vec<Vector> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![RationalFunc::zero(); cols];
            x[f] = RationalFunc::one();
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = -&a[r][f];
            }
            x
        })
        .collect()
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut a: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { RationalFunc::one() } else { RationalFunc::zero() }));
            r
        })
        .collect();
    let piv = rref(&mut a);
    if piv.len() < n || piv.iter().enumerate().any(|(k, &c)| k != c) {
        return None;
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec(m: &Matrix, x: &[RationalFunc]) -> Vector {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(RationalFunc::zero(), |acc, (a, b)| &acc + &(a * b))
        })
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .enumerate()
                        .filter(|(k, x)| !x.is_zero() && !b[*k][j].is_zero())
                        .fold(RationalFunc::zero(), |acc, (k, x)| &acc + &(x * &b[k][j]))
                })
                .collect()
        })
        .collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { RationalFunc::one() } else { RationalFunc::zero() }).collect())
        .collect()
}

/// Coefficients c with Σ c_k · gens[k] = target, if the target lies in the span.
/// The returned solution sets free variables to zero.
pub fn express_in_span(gens: &[Vector], target: &[RationalFunc]) -> Option<Vector> {
    let dim = target.len();
    let k = gens.len();
    let mut a: Matrix = (0..dim)
        .map(|r| {
            let mut row: Vector = gens.iter().map(|g| g[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let piv = rref(&mut a);
    if piv.contains(&k) {
        return None;
    }
    let mut x = vec![RationalFunc::zero(); k];
    for (r, &c) in piv.iter().enumerate() {
        x[c] = a[r][k].clone();
    }
    Some(x)
}

/// Symmetric Gram matrix maintained together with its inverse while vectors
/// are appended one at a time (block-inverse update via the Schur complement).
#[derive(Clone, Debug, Default)]
pub struct GrowingGram {
    pub gram: Matrix,
    pub inv: Matrix,
}

impl GrowingGram {
    pub fn len(&self) -> usize {
        self.gram.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gram.is_empty()
    }

    /// Schur complement of a candidate with pairings `g` against the current
    /// vectors and self-pairing `d`; zero means the Gram matrix would become singular.
    pub fn schur(&self, g: &[RationalFunc], d: &RationalFunc) -> (Vector, RationalFunc) {
        let w = mat_vec(&self.inv, g);
        let gw = g
            .iter()
            .zip(&w)
            .fold(RationalFunc::zero(), |acc, (a, b)| &acc + &(a * b));
        (w, d - &gw)
    }

    /// Appends the candidate if it keeps the Gram matrix nonsingular.
    pub fn try_push(&mut self, g: Vector, d: RationalFunc) -> bool {
        let (w, s) = self.schur(&g, &d);
        if s.is_zero() {
            return false;
        }
        let n = self.len();
        let sinv = s.inv();
        let mut inv = vec![vec![RationalFunc::zero(); n + 1]; n + 1];
        for i in 0..n {
            for j in 0..n {
                inv[i][j] = &self.inv[i][j] + &(&(&w[i] * &w[j]) * &sinv);
            }
            let off = -&(&w[i] * &sinv);
            inv[i][n] = off.clone();
            inv[n][i] = off;
        }
        inv[n][n] = sinv;
        for (row, x) in self.gram.iter_mut().zip(&g) {
            row.push(x.clone());
        }
        let mut last = g;
        last.push(d);
        self.gram.push(last);
        self.inv = inv;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::LaurentPoly;

    fn r(p: &[(i64, i64)]) -> RationalFunc {
        LaurentPoly::from_pairs(p).into()
    }

    #[test]
    fn inverse_and_rank() {
        let m = vec![vec![r(&[(1, 1)]), r(&[(0, 1)])], vec![r(&[(0, 1)]), r(&[(-1, 1)])]];
        // det = 1 - 1 = 0
        assert_eq!(rank(&m), 1);
        assert!(inverse(&m).is_none());
        let k = kernel(&m, 2);
        assert_eq!(k.len(), 1);
        assert!(mat_vec(&m, &k[0]).iter().all(|x| x.is_zero()));
        let m2 = vec![vec![r(&[(1, 1)]), r(&[(0, 1)])], vec![r(&[(0, 1)]), r(&[(0, 1)])]];
        let inv = inverse(&m2).unwrap();
        assert_eq!(mat_mul(&m2, &inv), identity(2));
    }

    #[test]
    fn growing_gram_matches_inverse() {
        let m = vec![
            vec![r(&[(0, 2)]), r(&[(1, 1)]), r(&[(0, 1)])],
            vec![r(&[(1, 1)]), r(&[(0, 3)]), r(&[(-1, 1)])],
            vec![r(&[(0, 1)]), r(&[(-1, 1)]), r(&[(0, 5)])],
        ];
        let mut g = GrowingGram::default();
        for i in 0..3 {
            assert!(g.try_push(m[i][..i].to_vec(), m[i][i].clone()));
        }
        assert_eq!(g.inv, inverse(&m).unwrap());
        // a dependent vector is rejected
        let mut h = GrowingGram::default();
        assert!(h.try_push(vec![], r(&[(0, 1)])));
        assert!(!h.try_push(vec![r(&[(0, 2)])], r(&[(0, 4)])));
    }

    #[test]
    fn span_expression() {
        let gens = vec![vec![r(&[(0, 1)]), r(&[(1, 1)])], vec![r(&[(0, 1)]), r(&[(0, 1)])]];
        let target = vec![r(&[(0, 2)]), r(&[(1, 1), (0, 1)])];
        let c = express_in_span(&gens, &target).unwrap();
        assert_eq!(c, vec![r(&[(0, 1)]), r(&[(0, 1)])]);
        assert!(express_in_span(&gens[..1], &target).is_none());
    }
}
