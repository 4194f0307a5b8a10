//! Exact coefficient arithmetic: ℤ[v,v⁻¹], ℚ(v), quantum numbers and lattice tests.

mod int;
mod laurent;
mod poly;
mod quantum;
mod rational;

pub use int::Int;
pub use laurent::LaurentPoly;
pub use quantum::{quantum_binomial, quantum_factorial, quantum_integer};
pub use rational::RationalFunc;

use serde::{Deserialize, Serialize};

/// The coefficient rings and lattices used for "mod v⁻¹" statements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Lattice {
    /// ℤ[v⁻¹]
    ZvInv,
    /// v⁻¹ℤ[v⁻¹]
    VinvZvInv,
    /// ℚ[[v⁻¹]] ∩ ℚ(v)
    ARing,
    /// v⁻¹ times the previous ring
    VinvA,
}

/// Values that can be tested for lattice membership and bar-conjugated.
pub trait Coefficient {
    fn in_lattice(&self, which: Lattice) -> bool;
    fn bar_value(&self) -> Self;
}

impl Coefficient for LaurentPoly {
    fn in_lattice(&self, which: Lattice) -> bool {
        match self.max_exp() {
            None => true,
            Some(top) => match which {
                Lattice::ZvInv | Lattice::ARing => top <= 0,
                Lattice::VinvZvInv | Lattice::VinvA => top < 0,
            },
        }
    }

    fn bar_value(&self) -> Self {
        self.bar()
    }
}

impl Coefficient for RationalFunc {
    fn in_lattice(&self, which: Lattice) -> bool {
        match which {
            Lattice::ZvInv | Lattice::VinvZvInv => match self.to_laurent() {
                Some(l) => l.in_lattice(which),
                None => false,
            },
            Lattice::ARing => self.degree().is_none_or(|d| d <= 0),
            Lattice::VinvA => self.degree().is_none_or(|d| d < 0),
        }
    }

    fn bar_value(&self) -> Self {
        self.bar()
    }
}

/// Membership of `x` in the chosen ring or lattice.
pub fn lattice_test<C: Coefficient>(x: &C, which: Lattice) -> bool {
    x.in_lattice(which)
}

/// True iff every coefficient is nonnegative.
pub fn positivity_test(x: &LaurentPoly) -> bool {
    x.is_nonnegative()
}

/// Positivity for a rational value: it must be a Laurent polynomial with
/// nonnegative coefficients.
pub fn positivity_test_rational(x: &RationalFunc) -> bool {
    x.to_laurent().is_some_and(|l| l.is_nonnegative())
}
