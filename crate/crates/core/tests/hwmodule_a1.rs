use framedcb::canonical::{seeded_falg, CBType};
use framedcb::cartan::{CartanDatum, Weight};
use framedcb::coeff::{LaurentPoly, RationalFunc};
use framedcb::falg::FreeElement;
use framedcb::hwmodule::HwModule;
use std::sync::Arc;

fn lp(pairs: &[(i64, i64)]) -> RationalFunc {
    RationalFunc::from(LaurentPoly::from_pairs(pairs))
}

// Recorded output of the E^{(a)} recursion, kept as regression data.
#[test]
fn divided_power_norms_on_small_a1_modules() {
    let f = Arc::new(seeded_falg(CBType::A1, CartanDatum::a1()).unwrap());
    let table: &[(i64, &[RationalFunc])] = &[
        (0, &[lp(&[(0, 1)])]),
        (1, &[lp(&[(0, 1)]), lp(&[(0, 1)])]),
        (2, &[lp(&[(0, 1)]), lp(&[(0, 1), (-2, 1)]), lp(&[(0, 1)])]),
        (3, &[lp(&[(0, 1)]), lp(&[(0, 1), (-2, 1), (-4, 1)]), lp(&[(0, 1), (-2, 1), (-4, 1)]), lp(&[(0, 1)])]),
    ];
    for (n, want) in table {
        let hw = HwModule::new(f.clone(), Weight::new(vec![*n])).unwrap();
        for (k, w) in want.iter().enumerate() {
            let m = hw.element(FreeElement::theta(0, k as u32));
            assert_eq!(&hw.admissible_form(&m, &m), w, "n={n} k={k}");
        }
        let past = hw.element(FreeElement::theta(0, *n as u32 + 1));
        assert!(hw.is_zero(&past));
    }
}
