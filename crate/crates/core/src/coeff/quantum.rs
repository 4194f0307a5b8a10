//! Quantum integers, factorials and binomial coefficients.

use super::laurent::LaurentPoly;

/// `[n] = (vⁿ − v⁻ⁿ)/(v − v⁻¹)`.
pub fn quantum_integer(n: i64) -> LaurentPoly {
    if n == 0 {
        return LaurentPoly::zero();
    }
    let sign = if n < 0 { -1 } else { 1 };
    let a = n.abs();
    LaurentPoly::from_terms((0..a).map(|k| (a - 1 - 2 * k, sign.into())))
}

/// `[m]! = [1][2]⋯[m]`.
pub fn quantum_factorial(m: u32) -> LaurentPoly {
    (1..=m as i64).fold(LaurentPoly::one(), |acc, k| &acc * &quantum_integer(k))
}

/// Quantum binomial `[n choose m]` for any integer `n`, computed by exact division
/// of the defining products.
pub fn quantum_binomial(n: i64, m: u32) -> LaurentPoly {
    let m = m as i64;
    let mut top = LaurentPoly::one();
    for k in 0..m {
        top = &top * &LaurentPoly::from_pairs(&[(n - k, 1), (-n + k, -1)]);
    }
    let mut bottom = LaurentPoly::one();
    for k in 1..=m {
        bottom = &bottom * &LaurentPoly::from_pairs(&[(k, 1), (-k, -1)]);
    }
    top.div_exact(&bottom)
        .unwrap_or_else(|| panic!("quantum binomial [{n} choose {m}] left a remainder"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers() {
        assert!(quantum_integer(0).is_zero());
        assert!(quantum_integer(1).is_one());
        assert_eq!(quantum_integer(3), LaurentPoly::from_pairs(&[(2, 1), (0, 1), (-2, 1)]));
        assert_eq!(quantum_integer(-2), LaurentPoly::from_pairs(&[(1, -1), (-1, -1)]));
    }

    #[test]
    fn binomials() {
        assert!(quantum_binomial(7, 0).is_one());
        assert!(quantum_binomial(-3, 0).is_one());
        assert_eq!(quantum_binomial(2, 1), quantum_integer(2));
        assert_eq!(
            quantum_binomial(4, 2),
            LaurentPoly::from_pairs(&[(4, 1), (2, 1), (0, 2), (-2, 1), (-4, 1)])
        );
        assert!(quantum_binomial(2, 3).is_zero());
        // [-1 choose 1] = [-1] = -1
        assert_eq!(quantum_binomial(-1, 1), LaurentPoly::constant(-1));
    }
}
