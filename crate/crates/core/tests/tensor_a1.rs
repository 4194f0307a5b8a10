mod common;

use common::{oracle, to_oracle_form};
use framedcb::canonical::{seeded_falg, CBIndex, CBType};
use framedcb::cartan::{CartanDatum, Weight};
use framedcb::coeff::{LaurentPoly, RationalFunc};
use framedcb::tensor::{Generator, Pair, TensorElement, TensorModule};
use std::sync::Arc;

fn module(m: i64, n: i64) -> TensorModule {
    let f = Arc::new(seeded_falg(CBType::A1, CartanDatum::a1()).unwrap());
    TensorModule::new(f, Weight::new(vec![m]), Weight::new(vec![n])).unwrap()
}

fn a1(k: i64) -> CBIndex {
    CBIndex::A1 { k: k as u32 }
}

#[test]
fn diamond_matches_closed_forms() {
    for (m, n) in [(1, 1), (2, 1), (2, 2), (3, 2), (4, 3), (1, 3), (0, 2)] {
        let t = module(m, n);
        let d = t.diamond_basis().unwrap();
        assert_eq!(d.len() as i64, (m + 1) * (n + 1));
        for k in 0..=m {
            for l in 0..=n {
                let alpha = k - l <= m - n;
                let want = oracle::element(m, n, k, l, alpha);
                if k - l == m - n {
                    assert_eq!(want, oracle::element(m, n, k, l, false));
                }
                let got = to_oracle_form(&d[&(a1(m - k), a1(l))]);
                assert_eq!(got, want, "(m,n)=({m},{n}) (k,l)=({k},{l})");
            }
        }
    }
}

fn sample(t: &TensorModule) -> Vec<TensorElement> {
    let pairs: Vec<Pair> = t.pairs();
    let mut out = Vec::new();
    for (j, p) in pairs.iter().enumerate() {
        let mut x = TensorElement::pure(*p);
        if let Some(q) = pairs.get(j + 1) {
            x.add_term(*q, LaurentPoly::from_pairs(&[(1, 2), (-1, -1)]).into());
        }
        out.push(x);
    }
    out
}

#[test]
fn psi_is_semilinear() {
    let t = module(2, 3);
    for x in sample(&t) {
        let px = t.psi(&x).unwrap();
        assert_eq!(t.psi(&px).unwrap(), x);
        let f = t.delta_act(&Generator::F(0), &x).unwrap();
        assert_eq!(t.psi(&f).unwrap(), t.delta_act(&Generator::F(0), &px).unwrap());
        let k = t.delta_act(&Generator::K(vec![1]), &x).unwrap();
        assert_eq!(t.psi(&k).unwrap(), t.delta_act(&Generator::K(vec![-1]), &px).unwrap());
        let e = t.delta_act(&Generator::E(0), &x).unwrap();
        assert_eq!(t.psi(&e).unwrap(), t.delta_act(&Generator::E(0), &px).unwrap());
    }
}

#[test]
fn tensor_form_examples() {
    let t = module(2, 2);
    let top = TensorElement::pure((a1(0), a1(0)));
    assert!(t.tensor_form(&top, &top).is_one());
    assert!(t.tensor_form(&top, &TensorElement::pure((a1(1), a1(0)))).is_zero());
    for p in t.pairs() {
        let x = TensorElement::pure(p);
        let v = &t.tensor_form(&x, &x) - &RationalFunc::one();
        assert!(v.to_laurent().is_some_and(|l| l.max_exp().is_none_or(|e| e < 0)));
    }
}
