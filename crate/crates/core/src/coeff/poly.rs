//! Dense univariate polynomial kernels over ℤ (lowest degree first, no trailing zeros).

use super::int::Int;

pub(crate) type Poly = Vec<Int>;

pub(crate) fn trim(p: &mut Poly) {
    while matches!(p.last(), Some(c) if c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn lead(p: &[Int]) -> &Int {
    p.last().expect("leading coefficient of zero polynomial")
}

pub(crate) fn mul(a: &[Int], b: &[Int]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Int::ZERO; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn scale(a: &[Int], s: &Int) -> Poly {
    if s.is_zero() {
        return Vec::new();
    }
    a.iter().map(|c| c * s).collect()
}

pub(crate) fn content(a: &[Int]) -> Int {
    let mut g = Int::ZERO;
    for c in a {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

pub(crate) fn div_scalar(a: &[Int], s: &Int) -> Poly {
    a.iter()
        .map(|c| c.div_exact(s).expect("inexact scalar division"))
        .collect()
}

/// Primitive part with positive leading coefficient.
pub(crate) fn primitive(a: &[Int]) -> Poly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut c = content(a);
    if lead(a).is_negative() {
        c = -c;
    }
    div_scalar(a, &c)
}

/// Pseudo-remainder of `a` by `b` (b nonzero).
fn pseudo_rem(a: &[Int], b: &[Int]) -> Poly {
    let db = b.len() - 1;
    let lb = lead(b).clone();
    let mut r: Poly = a.to_vec();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = lead(&r).clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        for (k, bc) in b.iter().enumerate() {
            r[k + shift] = &r[k + shift] - &(&lr * bc);
        }
        trim(&mut r);
    }
    r
}

/// Exact quotient a / b in ℤ[v], or `None` when b does not divide a.
pub(crate) fn div_exact(a: &[Int], b: &[Int]) -> Option<Poly> {
    assert!(!b.is_empty(), "division by zero polynomial");
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let db = b.len() - 1;
    let lb = lead(b);
    let mut r: Poly = a.to_vec();
    let mut q = vec![Int::ZERO; a.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = lead(&r).div_exact(lb)?;
        let shift = dr - db;
        for (k, bc) in b.iter().enumerate() {
            r[k + shift] = &r[k + shift] - &(&c * bc);
        }
        q[shift] = c;
        trim(&mut r);
    }
    if r.is_empty() {
        trim(&mut q);
        Some(q)
    } else {
        None
    }
}

/// Greatest common divisor in ℤ[v], normalized to positive leading coefficient.
pub(crate) fn gcd(a: &[Int], b: &[Int]) -> Poly {
    if a.is_empty() {
        return primitive_keep_content(b);
    }
    if b.is_empty() {
        return primitive_keep_content(a);
    }
    let cg = content(a).gcd(&content(b));
    if a.len() == 1 || b.len() == 1 {
        return vec![cg];
    }
    let (mut p, mut q) = if a.len() >= b.len() {
        (primitive(a), primitive(b))
    } else {
        (primitive(b), primitive(a))
    };
    // Cheap exits for the common cases of one factor dividing the other.
    if div_exact(&p, &q).is_some() {
        return scale(&q, &cg);
    }
    loop {
        let r = pseudo_rem(&p, &q);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            return vec![cg];
        }
        p = q;
        q = primitive(&r);
    }
    scale(&q, &cg)
}

fn primitive_keep_content(a: &[Int]) -> Poly {
    if a.is_empty() {
        return Vec::new();
    }
    if lead(a).is_negative() {
        a.iter().map(|c| -c).collect()
    } else {
        a.to_vec()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> Poly {
        let mut x: Poly = v.iter().map(|&c| Int::from(c)).collect();
        trim(&mut x);
        x
    }

    #[test]
    fn gcd_of_products() {
        // (v-1)(v+2) and (v-1)(2v+3)
        let a = mul(&p(&[-1, 1]), &p(&[2, 1]));
        let b = mul(&p(&[-1, 1]), &p(&[3, 2]));
        assert_eq!(gcd(&a, &b), p(&[-1, 1]));
        assert_eq!(gcd(&scale(&a, &Int::from(6)), &scale(&b, &Int::from(4))), p(&[-2, 2]));
        assert_eq!(gcd(&p(&[1, 1]), &p(&[-1, 1])), p(&[1]));
    }

    #[test]
    fn exact_division() {
        let a = mul(&p(&[1, 0, 1]), &p(&[5, -3, 2]));
        assert_eq!(div_exact(&a, &p(&[1, 0, 1])), Some(p(&[5, -3, 2])));
        assert_eq!(div_exact(&a, &p(&[1, 1])), None);
    }
}
