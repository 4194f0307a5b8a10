//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use common::{closed_form, oracle, to_oracle_form};
use framedcb::canonical::{self, seeded_falg, CBIndex, CBType};
use framedcb::cartan::{CartanDatum, Weight};
use framedcb::coeff::{Coefficient, Lattice, RationalFunc};
use framedcb::crystal::{
    check_adjoint_tensor, check_eps_phi, check_framed_strings, check_pi_phi, check_reachability, check_theta_lambda_b,
    FCrystal,
};
use framedcb::falg::{FAlg, FreeElement, Word};
use framedcb::framed::{
    framed_cb_set, verify_cb_correspondence, verify_positivity_tensor, verify_psi_iso, verify_transition_positivity,
    FramedSetup,
};
use framedcb::hwmodule::HwModule;
use framedcb::report::Report;
use framedcb::tensor::{Generator, Pair, TensorElement, TensorModule};
use std::sync::Arc;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn a1_falg() -> Arc<FAlg> {
    Arc::new(seeded_falg(CBType::A1, CartanDatum::a1()).unwrap())
}

fn a2_falg() -> Arc<FAlg> {
    Arc::new(seeded_falg(CBType::A2, CartanDatum::a2()).unwrap())
}

fn a1_tensor(m: i64, n: i64) -> TensorModule {
    TensorModule::new(a1_falg(), Weight::new(vec![m]), Weight::new(vec![n])).unwrap()
}

fn a2_weights() -> Vec<Weight> {
    vec![Weight::new(vec![1, 0]), Weight::new(vec![0, 1]), Weight::new(vec![1, 1])]
}

/// Folds reports into one outcome, counting the individual checks.
fn absorb(total: &mut usize, rep: Report) -> Result<(), String> {
    *total += rep.len();
    match rep.failures().next() {
        None => Ok(()),
        Some(c) => Err(format!("{} / {}: {}", rep.title, c.name, c.witness.clone().unwrap_or_default())),
    }
}

fn lift<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn closed_forms() -> Outcome {
    let four_two: oracle::Poly = [(-4, 1), (-2, 1), (0, 2), (2, 1), (4, 1)].into_iter().collect();
    if oracle::binom(4, 2) != four_two {
        return Err("oracle self-test [4 choose 2] failed".into());
    }
    let mut count = 0;
    for (m, n) in [(1, 1), (2, 1), (2, 2), (3, 2), (4, 3)] {
        let d = lift(a1_tensor(m, n).diamond_basis())?;
        if d.len() as i64 != (m + 1) * (n + 1) {
            return Err(format!("({m},{n}): {} elements", d.len()));
        }
        for k in 0..=m {
            for l in 0..=n {
                let lead: Pair = (CBIndex::A1 { k: (m - k) as u32 }, CBIndex::A1 { k: l as u32 });
                let got = to_oracle_form(&d[&lead]);
                if got != closed_form(m, n, k, l) {
                    return Err(format!("({m},{n}) (k,l)=({k},{l}): {got:?}"));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} elements equal"))
}

fn correspondence() -> Outcome {
    let mut pairs = 0;
    for m in 0..=4u32 {
        for n in 0..=4u32 {
            let c = lift(verify_cb_correspondence(m, n))?;
            if !c.is_perfect() {
                return Err(format!("({m},{n}): {:?}", c.mismatches));
            }
            pairs += c.bijection.len();
            let s = lift(FramedSetup::a1(m, n))?;
            for b in framed_cb_set(m, n) {
                let t = lift(s.phi(&FreeElement::from_word(b.word())))?;
                if to_oracle_form(&t) != closed_form(m as i64, n as i64, b.k as i64, b.l as i64) {
                    return Err(format!("({m},{n}) (k,l)=({},{}): phi differs from the closed form", b.k, b.l));
                }
            }
        }
    }
    Ok(format!("25 cases, {pairs} matched pairs"))
}

fn positivity() -> Outcome {
    let mut total = 0;
    for m in 0..=4 {
        for n in 0..=4 {
            absorb(&mut total, lift(verify_positivity_tensor(&a1_tensor(m, n)))?)?;
        }
    }
    for m in 0..=3 {
        for n in 0..=3 {
            absorb(&mut total, lift(lift(FramedSetup::a1(m, n))?.verify_positivity_framed())?)?;
        }
    }
    for xi in a2_weights() {
        for la in a2_weights() {
            let tm = lift(TensorModule::new(a2_falg(), xi.clone(), la))?;
            absorb(&mut total, lift(verify_positivity_tensor(&tm))?)?;
        }
    }
    Ok(format!("{total} checks"))
}

fn transition_positivity() -> Outcome {
    let mut total = 0;
    for m in 0..=4 {
        for n in 0..=4 {
            absorb(&mut total, lift(verify_transition_positivity(&a1_tensor(m, n)))?)?;
        }
    }
    for xi in a2_weights() {
        for la in a2_weights() {
            let tm = lift(TensorModule::new(a2_falg(), xi.clone(), la))?;
            absorb(&mut total, lift(verify_transition_positivity(&tm))?)?;
        }
    }
    Ok(format!("{total} weight spaces"))
}

fn two_pairings() -> Outcome {
    let mut total = 0;
    for m in 0..=3 {
        for n in 0..=3 {
            absorb(&mut total, lift(FramedSetup::a1(m, n))?.verify_two_pairings(4))?;
        }
    }
    Ok(format!("{total} pairs"))
}

fn psi_checks(tm: &TensorModule, total: &mut usize) -> Result<(), String> {
    let pairs = tm.pairs();
    let twist = RationalFunc::from(framedcb::coeff::LaurentPoly::from_pairs(&[(2, 1), (-1, 3)]));
    let n = tm.falg().rank();
    for (j, p) in pairs.iter().enumerate() {
        let mut x = TensorElement::pure(*p);
        if let Some(q) = pairs.get(j + 1).filter(|q| tm.depth(q) == tm.depth(p)) {
            x.add_term(*q, twist.clone());
        }
        let px = lift(tm.psi(&x))?;
        if lift(tm.psi(&px))? != x {
            return Err(format!("Ψ² ≠ id at {p:?}"));
        }
        for i in 0..n {
            let f = lift(tm.delta_act(&Generator::F(i), &x))?;
            if lift(tm.psi(&f))? != lift(tm.delta_act(&Generator::F(i), &px))? {
                return Err(format!("Ψ F_{i} ≠ F_{i} Ψ at {p:?}"));
            }
            let mut mu = vec![0; n];
            mu[i] = 1;
            let neg: Vec<i64> = mu.iter().map(|c| -c).collect();
            let k = lift(tm.delta_act(&Generator::K(mu), &x))?;
            if lift(tm.psi(&k))? != lift(tm.delta_act(&Generator::K(neg), &px))? {
                return Err(format!("Ψ K ≠ K⁻¹ Ψ at {p:?}"));
            }
        }
        *total += 1;
    }
    Ok(())
}

fn adjunction(hw: &HwModule, total: &mut usize) -> Result<(), String> {
    let cb = lift(hw.cb_of_lambda())?;
    let n = hw.falg().rank();
    for (a, x) in &cb {
        for (b, y) in &cb {
            for i in 0..n {
                // (F_i x, y) = v^{-1-⟨i,λ-|y|⟩}(x, E_i y)
                let mut up = a.weight();
                up[i] += 1;
                if up != b.weight() {
                    continue;
                }
                let pair = hw.lambda().pairing(i) - hw.datum().dot_node_root(i, &b.weight());
                let lhs = hw.admissible_form(&hw.act_f(i, 1, x), y);
                let rhs = &hw.admissible_form(x, &hw.act_e(i, y)) * &RationalFunc::v_pow(-1 - pair);
                if lhs != rhs {
                    return Err(format!("(F x, y) ≠ (x, E y) for {a}, {b}, node {i}"));
                }
                *total += 1;
            }
        }
    }
    Ok(())
}

fn serre_in_radical(f: &FAlg, total: &mut usize) -> Result<(), String> {
    let n = f.rank();
    let probes: Vec<Word> = [vec![], vec![(0, 1)], vec![(1, 1), (0, 1)], vec![(n - 1, 2), (0, 1)]]
        .iter()
        .map(|l| Word::from_letters(l).1)
        .collect();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let s = lift(f.serre_element(i, j))?;
            for l in &probes {
                for r in &probes {
                    let e = FreeElement::from_word(l.clone()).mul(&s).mul(&FreeElement::from_word(r.clone()));
                    if e.is_zero() || e.terms().keys().next().unwrap().degree() > 6 {
                        continue;
                    }
                    if !f.equals_in_f_exhaustive(&e, &FreeElement::zero()) {
                        return Err(format!("Serre element ({i},{j}) not in the radical"));
                    }
                    *total += 1;
                }
            }
        }
    }
    Ok(())
}

fn structural() -> Outcome {
    let mut total = 0;
    psi_checks(&a1_tensor(2, 3), &mut total)?;
    psi_checks(&lift(TensorModule::new(a2_falg(), Weight::new(vec![1, 0]), Weight::new(vec![1, 1])))?, &mut total)?;
    for lam in [vec![3], vec![4]] {
        adjunction(&lift(HwModule::new(a1_falg(), Weight::new(lam)))?, &mut total)?;
    }
    for lam in [vec![1, 1], vec![2, 1]] {
        adjunction(&lift(HwModule::new(a2_falg(), Weight::new(lam)))?, &mut total)?;
    }
    // bar ∘ bar = id on f, on modules and on the tensor product
    let x = FreeElement::from_letters(&[(0, 1), (1, 2), (0, 1)])
        .scale(&RationalFunc::from(framedcb::coeff::LaurentPoly::from_pairs(&[(3, 1), (-1, -2)])));
    if x.bar().bar() != x {
        return Err("bar ∘ bar ≠ id on f".into());
    }
    let t = TensorElement::pure((CBIndex::A1 { k: 1 }, CBIndex::A1 { k: 0 })).scale(&RationalFunc::v_pow(3));
    if t.bar().bar() != t {
        return Err("bar ∘ bar ≠ id on the tensor product".into());
    }
    total += 2;
    let a4 = FAlg::new(CartanDatum::a_n(4));
    for f in [FAlg::new(CartanDatum::a2()), a4] {
        serre_in_radical(&f, &mut total)?;
    }
    // Gram rank over all words = canonical basis count
    let plain = FAlg::new(CartanDatum::a2());
    for nu in canonical::weights_in_box(2, 7) {
        if nu.iter().sum::<i64>() > 7 {
            continue;
        }
        let rank = plain.gram(&nu).rank;
        let count = lift(canonical::cb_list(CBType::A2, &nu))?.len();
        if rank != count {
            return Err(format!("Gram rank {rank} ≠ {count} at {nu:?}"));
        }
        total += 1;
    }
    // almost orthonormality of the canonical basis of f and of modules
    let f = a2_falg();
    for nu in canonical::weights_in_box(2, 6) {
        let cb = lift(canonical::cb_list(CBType::A2, &nu))?;
        for a in &cb {
            for b in &cb {
                let mut p = f.bilinear_form(&canonical::cb_word_form(a), &canonical::cb_word_form(b));
                if a == b {
                    p = &p - &RationalFunc::one();
                }
                if !p.in_lattice(Lattice::VinvA) {
                    return Err(format!("(b,b') = {p} for {a}, {b}"));
                }
                total += 1;
            }
        }
    }
    for lam in [vec![1, 1], vec![2, 1], vec![2, 2]] {
        let hw = lift(HwModule::new(a2_falg(), Weight::new(lam)))?;
        let cb = lift(hw.cb_of_lambda())?;
        for (a, x) in &cb {
            for (b, y) in &cb {
                let mut p = hw.admissible_form(x, y);
                if a == b {
                    p = &p - &RationalFunc::one();
                }
                if !p.in_lattice(Lattice::VinvZvInv) {
                    return Err(format!("module form {p} for {a}, {b}"));
                }
                total += 1;
            }
        }
    }
    for m in 0..=3 {
        for n in 0..=3 {
            let s = lift(FramedSetup::a1(m, n))?;
            absorb(&mut total, lift(s.verify_almost_orthonormal())?)?;
            absorb(&mut total, s.verify_module_map(3))?;
            absorb(&mut total, s.verify_bar_intertwining(3))?;
            absorb(&mut total, s.verify_kernel())?;
        }
    }
    for m in 0..=4 {
        for n in 0..=4 {
            absorb(&mut total, lift(FramedSetup::a1(m, n))?.verify_dimensions())?;
        }
        absorb(&mut total, lift(verify_psi_iso(CartanDatum::a1(), Weight::new(vec![m as i64])))?)?;
    }
    Ok(format!("{total} checks"))
}

fn crystal() -> Outcome {
    let mut total = 0;
    let cr = FCrystal::new(a2_falg());
    absorb(&mut total, check_eps_phi(&cr, CBType::A2, 5))?;
    for n in 0..=4 {
        absorb(&mut total, lift(check_theta_lambda_b(n))?)?;
    }
    for m in 0..=3 {
        for n in 0..=3 {
            absorb(&mut total, lift(check_pi_phi(m, n))?)?;
        }
    }
    for n in 0..=5 {
        absorb(&mut total, lift(check_reachability(n, 5))?)?;
        absorb(&mut total, lift(check_framed_strings(n, 5))?)?;
    }
    absorb(&mut total, lift(check_adjoint_tensor(&a1_tensor(2, 2)))?)?;
    let tm = lift(TensorModule::new(a2_falg(), Weight::new(vec![1, 0]), Weight::new(vec![1, 1])))?;
    absorb(&mut total, lift(check_adjoint_tensor(&tm))?)?;
    Ok(format!("{total} checks"))
}

/// The (1,1) suite from scratch: correspondence, positivity, pairings, structure.
fn smoke() -> Result<Duration, String> {
    let start = Instant::now();
    let c = lift(verify_cb_correspondence(1, 1))?;
    if !c.is_perfect() {
        return Err(format!("{:?}", c.mismatches));
    }
    let s = lift(FramedSetup::a1(1, 1))?;
    let mut total = 0;
    absorb(&mut total, lift(s.verify_positivity_framed())?)?;
    absorb(&mut total, lift(verify_positivity_tensor(s.tensor()))?)?;
    absorb(&mut total, s.verify_two_pairings(4))?;
    absorb(&mut total, s.verify_module_map(2))?;
    Ok(start.elapsed())
}

fn main() {
    let start = Instant::now();
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("closed forms of the A1 tensor canonical basis", closed_forms),
        ("framed canonical basis maps onto the tensor canonical basis (m,n <= 4)", correspondence),
        ("positivity of E_i, F_i on canonical bases", positivity),
        ("positivity of the transition matrix", transition_positivity),
        ("two pairings identity (m,n <= 3, weight <= 4i)", two_pairings),
        ("structural suite", structural),
        ("crystal suite", crystal),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let t = Instant::now();
        let r = f();
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(d) => println!("PASS  {name} [{d}; {secs:.1}s]"),
            Err(e) => {
                failed += 1;
                println!("FAIL  {name}: {e} [{secs:.1}s]");
            }
        }
    }
    let total = start.elapsed();
    match smoke() {
        Ok(d) if d < Duration::from_secs(5) && total < Duration::from_secs(600) => println!(
            "PASS  runtime [(1,1) smoke {:.2}s < 5s; full suite {:.1}s < 600s]",
            d.as_secs_f64(),
            total.as_secs_f64()
        ),
        Ok(d) => {
            failed += 1;
            println!("FAIL  runtime: smoke {:.2}s, full suite {:.1}s", d.as_secs_f64(), total.as_secs_f64());
        }
        Err(e) => {
            failed += 1;
            println!("FAIL  runtime: smoke suite failed: {e}");
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
