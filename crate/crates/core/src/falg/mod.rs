//! The free algebra on divided-power words and its quotient f.

mod algebra;
mod element;
mod word;

pub use algebra::{
    divided_power_norm, left_divided_derivative, right_divided_derivative, FAlg, GramTable, SeedFn,
    WordTensor, WeightBasis,
};
pub use element::FreeElement;
pub use word::{words_of_weight, Letter, Word};
