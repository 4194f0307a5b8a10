use crate::args::*;
use crate::cache::GramCache;
use crate::config::{resolve_root, resolve_weight, ConfigFile};
use crate::error::CliError;
use framedcb::canonical::{cb_list, cb_word_form, expand_cb, seeded_falg, CBIndex, CBType};
use framedcb::cartan::{frame, CartanDatum, NodeTag, Weight};
use framedcb::coeff::{Coefficient, Lattice, RationalFunc};
use framedcb::crystal::{
    check_adjoint_tensor, check_eps_phi, check_framed_strings, check_pi_phi, check_reachability,
    check_theta_lambda_b, FCrystal,
};
use framedcb::falg::{FAlg, FreeElement, Word};
use framedcb::framed::{
    verify_cb_correspondence, verify_positivity_tensor, verify_transition_positivity, FramedSetup,
};
use framedcb::hwmodule::HwModule;
use framedcb::report::Report;
use framedcb::tensor::{Pair, TensorElement, TensorModule};
use serde_json::{json, Map, Value};
use std::sync::Arc;

pub struct Ctx {
    pub datum: CartanDatum,
    pub cfg: ConfigFile,
    pub cache: Option<GramCache>,
    pub verbose: u8,
}

pub struct Outcome {
    pub report: Report,
    pub data: Value,
}

type CmdResult = Result<Outcome, CliError>;

fn rf(x: &RationalFunc) -> String {
    x.to_string()
}

fn pair_key(p: &Pair) -> String {
    format!("({},{})", p.0, p.1)
}

fn tensor_json(t: &TensorElement) -> Value {
    let m: Map<String, Value> = t.coords.iter().map(|(p, c)| (pair_key(p), Value::String(rf(c)))).collect();
    Value::Object(m)
}

fn cb_type(d: &CartanDatum) -> Result<CBType, CliError> {
    CBType::from_datum(d).map_err(CliError::from)
}

fn seeded(d: &CartanDatum) -> Result<Arc<FAlg>, CliError> {
    Ok(Arc::new(seeded_falg(cb_type(d)?, d.clone())?))
}

fn weight_json(w: &Weight) -> Value {
    json!(w.pairings)
}

impl Ctx {
    fn warm(&mut self, f: &FAlg) {
        if let Some(c) = &mut self.cache {
            c.warm(f);
        }
    }

    fn persist(&mut self, f: &FAlg) -> Result<(), CliError> {
        if let Some(c) = &mut self.cache {
            c.persist(f)?;
        }
        Ok(())
    }

    fn gram(&mut self, f: &FAlg, nu: &[i64]) -> Result<Arc<framedcb::falg::GramTable>, CliError> {
        match &mut self.cache {
            Some(c) => Ok(c.gram(f, nu)?),
            None => Ok(f.gram(nu)),
        }
    }

    /// (ξ, λ) from flags; `defaults` is used when nothing was given.
    fn pair(&self, a: &PairArgs, defaults: Option<(Vec<i64>, Vec<i64>)>) -> Result<(Weight, Weight), CliError> {
        let short = a.m.is_some() || a.n.is_some();
        let long = a.xi.is_some() || a.lambda.is_some();
        if short && long {
            return Err(CliError::usage("use either --m/--n or --xi/--lambda"));
        }
        if short {
            if self.datum.len() != 1 {
                return Err(CliError::usage("--m/--n are shorthands for a rank-one datum; use --xi/--lambda"));
            }
            return Ok((Weight::new(vec![a.m.unwrap_or(0) as i64]), Weight::new(vec![a.n.unwrap_or(0) as i64])));
        }
        match (&a.xi, &a.lambda) {
            (Some(x), Some(l)) => Ok((resolve_weight(x, &self.cfg, &self.datum)?, resolve_weight(l, &self.cfg, &self.datum)?)),
            (None, None) => match defaults {
                Some((x, l)) => Ok((Weight::new(x), Weight::new(l))),
                None => Err(CliError::usage("weights required: --xi and --lambda (or --m and --n)")),
            },
            _ => Err(CliError::usage("--xi and --lambda must be given together")),
        }
    }

    fn a1_pair(&self, a: &PairArgs) -> Result<(u32, u32), CliError> {
        if self.datum.len() != 1 {
            return Err(CliError::unsupported("this command needs base type A1"));
        }
        let (x, l) = self.pair(a, None)?;
        Ok((x.pairing(0) as u32, l.pairing(0) as u32))
    }
}

pub fn dispatch(ctx: &mut Ctx, cmd: &Command) -> CmdResult {
    match cmd {
        Command::Datum(c) => datum(ctx, c),
        Command::Falg(c) => falg(ctx, c),
        Command::Cb(c) => cb(ctx, c),
        Command::Module(c) => module(ctx, c),
        Command::Tensor(c) => tensor(ctx, c),
        Command::Framed(c) => framed(ctx, c),
        Command::Crystal(c) => crystal(ctx, c),
    }
}

fn datum(ctx: &mut Ctx, c: &DatumCmd) -> CmdResult {
    let d = &ctx.datum;
    match c {
        DatumCmd::Show => {
            let names: Vec<&str> = (0..d.len()).map(|i| d.name(i)).collect();
            let ty = CBType::from_datum(d).ok().map(|t| format!("{t:?}"));
            Ok(Outcome {
                report: Report::new("datum"),
                data: json!({ "names": names, "matrix": d.matrix(), "fingerprint": d.fingerprint(), "canonical_basis_type": ty }),
            })
        }
        DatumCmd::Frame { times } => {
            if *times == 0 {
                return Err(CliError::usage("--times must be at least 1"));
            }
            let mut fd = frame(d);
            let mut rep = Report::new("framing");
            rep.check("framing relations (1)", fd.check_invariants(), || "invariants violated".into());
            for g in 2..=*times {
                fd = fd.frame_again();
                rep.check(format!("framing relations ({g})"), fd.check_invariants(), || "invariants violated".into());
            }
            let full = &fd.full;
            let tags: Vec<Value> = (0..full.len())
                .map(|k| match fd.tag(k) {
                    NodeTag::Base(b) => json!({ "node": full.name(k), "base": b }),
                    NodeTag::Frame { of, generation } => json!({ "node": full.name(k), "frame_of": of, "generation": generation }),
                })
                .collect();
            let names: Vec<&str> = (0..full.len()).map(|i| full.name(i)).collect();
            let ty = CBType::from_datum(full).ok().map(|t| format!("{t:?}"));
            Ok(Outcome {
                report: rep,
                data: json!({ "names": names, "matrix": full.matrix(), "nodes": tags, "fingerprint": full.fingerprint(), "canonical_basis_type": ty }),
            })
        }
    }
}

/// Σ_{n} (−1)ⁿ θ_i^{(n)}θ_jθ_i^{(1−i·j−n)} multiplied by short probe words on both sides.
fn serre_check(f: &FAlg, max_degree: u32) -> Result<(Report, Value), CliError> {
    let n = f.rank();
    let mut probes = vec![Word::empty()];
    for i in 0..n {
        probes.push(Word::letter(i, 1));
        for j in 0..n {
            if i != j {
                probes.push(Word::from_letters(&[(i, 1), (j, 1)]).1);
            }
        }
    }
    let mut rep = Report::new("Serre elements in the radical");
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let s = f.serre_element(i, j)?;
            let mut tested = 0usize;
            let mut bad = None;
            for l in &probes {
                for r in &probes {
                    let e = FreeElement::from_word(l.clone()).mul(&s).mul(&FreeElement::from_word(r.clone()));
                    let Some((w, _)) = e.terms().iter().next() else { continue };
                    if w.degree() > max_degree {
                        continue;
                    }
                    tested += 1;
                    if bad.is_none() && !f.equals_in_f_exhaustive(&e, &FreeElement::zero()) {
                        bad = Some(format!("{} · S · {}", l.render(f.datum()), r.render(f.datum())));
                    }
                }
            }
            let (a, b) = (f.datum().name(i).to_string(), f.datum().name(j).to_string());
            rep.check(format!("serre ({a},{b})"), bad.is_none(), || bad.clone().unwrap_or_default());
            out.push(json!({ "i": a, "j": b, "element": s.render(f.datum()), "products_tested": tested }));
        }
    }
    Ok((rep, json!({ "max_degree": max_degree, "relations": out })))
}

fn falg(ctx: &mut Ctx, c: &FalgCmd) -> CmdResult {
    let f = FAlg::new(ctx.datum.clone());
    let d = ctx.datum.clone();
    match c {
        FalgCmd::Dim { nu } => {
            let nu = resolve_root(nu, &d)?;
            let t = ctx.gram(&f, &nu)?;
            let mut rep = Report::new("dimension");
            if let Ok(ty) = CBType::from_datum(&d) {
                let count = cb_list(ty, &nu)?.len();
                rep.check("rank equals canonical basis count", count == t.rank, || format!("rank {}, basis {count}", t.rank));
            }
            Ok(Outcome { report: rep, data: json!({ "nu": nu, "dim": t.rank, "words": t.words.len() }) })
        }
        FalgCmd::Gram { nu } => {
            let nu = resolve_root(nu, &d)?;
            let t = ctx.gram(&f, &nu)?;
            let mut rep = Report::new("Gram table");
            let sym = (0..t.words.len()).all(|a| (0..a).all(|b| t.matrix[a][b] == t.matrix[b][a]));
            rep.check("symmetric", sym, || "matrix is not symmetric".into());
            let words: Vec<String> = t.words.iter().map(|w| w.render(&d)).collect();
            let matrix: Vec<Vec<String>> = t.matrix.iter().map(|r| r.iter().map(rf).collect()).collect();
            let kernel: Vec<Vec<String>> = t.kernel.iter().map(|r| r.iter().map(rf).collect()).collect();
            Ok(Outcome {
                report: rep,
                data: json!({ "nu": nu, "words": words, "matrix": matrix, "rank": t.rank, "kernel": kernel }),
            })
        }
        FalgCmd::SerreCheck { max_degree } => {
            if d.len() < 2 {
                return Ok(Outcome {
                    report: Report::new("Serre elements in the radical"),
                    data: json!({ "max_degree": max_degree, "relations": [] }),
                });
            }
            ctx.warm(&f);
            let (rep, data) = serre_check(&f, *max_degree)?;
            ctx.persist(&f)?;
            Ok(Outcome { report: rep, data })
        }
    }
}

fn parse_sum(words: &[String], d: &CartanDatum) -> Result<FreeElement, CliError> {
    let mut x = FreeElement::zero();
    for w in words {
        let (c, w) = Word::parse(w, d)?;
        x.add_laurent_term(w, &c);
    }
    Ok(x)
}

fn cb(ctx: &mut Ctx, c: &CbCmd) -> CmdResult {
    let d = ctx.datum.clone();
    let ty = cb_type(&d)?;
    match c {
        CbCmd::List { nu } => {
            let nu = resolve_root(nu, &d)?;
            let list = cb_list(ty, &nu)?;
            let plain = FAlg::new(d.clone());
            let t = ctx.gram(&plain, &nu)?;
            let mut rep = Report::new("canonical basis");
            rep.check("count equals Gram rank", t.rank == list.len(), || format!("{} vs rank {}", list.len(), t.rank));
            let elems: Vec<Value> =
                list.iter().map(|b| json!({ "index": b.to_string(), "word": cb_word_form(b).render(&d) })).collect();
            Ok(Outcome { report: rep, data: json!({ "nu": nu, "count": list.len(), "elements": elems }) })
        }
        CbCmd::Expand { words } => {
            let x = parse_sum(words, &d)?;
            if x.homogeneous_weight(d.len()).is_none() {
                return Err(CliError::usage("the words must all have the same weight"));
            }
            let f = seeded(&d)?;
            ctx.warm(&f);
            let e = expand_cb(&f, &x, ty)?;
            let mut back = FreeElement::zero();
            for (b, c) in &e.coords {
                back = back.add(&cb_word_form(b).scale_laurent(c));
            }
            let mut rep = Report::new("canonical basis expansion");
            rep.check("expansion reproduces the input", f.equals_in_f(&back, &x), || e.render());
            rep.check("coefficients in N[v,v^-1]", e.is_positive(), || e.render());
            ctx.persist(&f)?;
            let coords: Map<String, Value> = e.coords.iter().map(|(b, c)| (b.to_string(), Value::String(c.to_string()))).collect();
            Ok(Outcome { report: rep, data: json!({ "input": x.render(&d), "expansion": coords }) })
        }
    }
}

/// Weyl dimension formula for the two supported types.
fn weyl_dim(ty: CBType, w: &Weight) -> i64 {
    match ty {
        CBType::A1 => w.pairing(0) + 1,
        CBType::A2 => {
            let (a, b) = (w.pairing(0), w.pairing(1));
            (a + 1) * (b + 1) * (a + b + 2) / 2
        }
    }
}

fn module(ctx: &mut Ctx, c: &ModuleCmd) -> CmdResult {
    let d = ctx.datum.clone();
    let ty = cb_type(&d)?;
    let f = seeded(&d)?;
    ctx.warm(&f);
    let out = match c {
        ModuleCmd::Weights { lambda } => {
            let lam = resolve_weight(lambda, &ctx.cfg, &d)?;
            let hw = HwModule::new(f.clone(), lam.clone())?;
            let mut rep = Report::new("weight spaces");
            let mut spaces = Vec::new();
            let mut total = 0i64;
            for nu in hw.depths() {
                let dim = hw.dim(&nu);
                let idx = hw.cb_indices(&nu)?;
                rep.check(format!("dim at {nu:?} equals canonical basis count"), dim == idx.len(), || {
                    format!("dim {dim}, basis {}", idx.len())
                });
                total += dim as i64;
                let weight = lam.minus_root(&d, &nu);
                let names: Vec<String> = idx.iter().map(|b| b.to_string()).collect();
                spaces.push(json!({ "depth": nu, "weight": weight_json(&weight), "dim": dim, "canonical_basis": names }));
            }
            let want = weyl_dim(ty, &lam);
            rep.check("total dimension matches the Weyl formula", total == want, || format!("{total} vs {want}"));
            Outcome { report: rep, data: json!({ "lambda": weight_json(&lam), "dim": total, "weight_spaces": spaces }) }
        }
        ModuleCmd::Form { lambda, nu } => {
            let lam = resolve_weight(lambda, &ctx.cfg, &d)?;
            let nu = resolve_root(nu, &d)?;
            let hw = HwModule::new(f.clone(), lam.clone())?;
            let elems: Vec<(CBIndex, _)> = hw.cb_of_lambda()?.into_iter().filter(|(b, _)| b.weight() == nu).collect();
            let mut rep = Report::new("admissible form");
            let mut matrix = Vec::new();
            let mut worst = None;
            for (a, x) in &elems {
                let mut row = Vec::new();
                for (b, y) in &elems {
                    let p = hw.admissible_form(x, y);
                    let off = if a == b { &p - &RationalFunc::one() } else { p.clone() };
                    if worst.is_none() && !off.in_lattice(Lattice::VinvZvInv) {
                        worst = Some(format!("({a},{b}) = {p}"));
                    }
                    row.push(rf(&p));
                }
                matrix.push(row);
            }
            rep.check("almost orthonormal", worst.is_none(), || worst.clone().unwrap_or_default());
            let names: Vec<String> = elems.iter().map(|(b, _)| b.to_string()).collect();
            Outcome { report: rep, data: json!({ "lambda": weight_json(&lam), "nu": nu, "basis": names, "matrix": matrix }) }
        }
    };
    ctx.persist(&f)?;
    Ok(out)
}

fn tensor(ctx: &mut Ctx, c: &TensorCmd) -> CmdResult {
    let d = ctx.datum.clone();
    let f = seeded(&d)?;
    let w = match c {
        TensorCmd::Diamond { weights } | TensorCmd::Theta { weights } => weights,
    };
    let (xi, lam) = ctx.pair(w, None)?;
    ctx.warm(&f);
    let tm = TensorModule::new(f.clone(), xi.clone(), lam.clone())?;
    let head = json!({ "xi": weight_json(&xi), "lambda": weight_json(&lam) });
    let out = match c {
        TensorCmd::Diamond { .. } => {
            let basis = tm.diamond_basis()?;
            let mut rep = Report::new("tensor canonical basis");
            let mut table = Map::new();
            let mut bad = None;
            for (p, e) in &basis {
                if bad.is_none() && tm.psi(e)? != *e {
                    bad = Some(pair_key(p));
                }
                table.insert(pair_key(p), tensor_json(e));
            }
            rep.check("psi-invariant", bad.is_none(), || bad.clone().unwrap_or_default());
            rep.merge(verify_transition_positivity(&tm)?);
            let mut data = head;
            data["count"] = json!(basis.len());
            data["diamond"] = Value::Object(table);
            Outcome { report: rep, data }
        }
        TensorCmd::Theta { .. } => {
            let mut rep = Report::new("quasi-R-matrix");
            let mut table = Map::new();
            let mut bad = None;
            for p in tm.pairs() {
                let th = tm.quasi_r_pure(&p)?;
                let pure = TensorElement::pure(p);
                if bad.is_none() && tm.psi(&tm.psi(&pure)?)? != pure {
                    bad = Some(pair_key(&p));
                }
                table.insert(pair_key(&p), tensor_json(&th));
            }
            rep.check("psi squared is the identity on pure tensors", bad.is_none(), || bad.clone().unwrap_or_default());
            let mut data = head;
            data["theta"] = Value::Object(table);
            Outcome { report: rep, data }
        }
    };
    ctx.persist(&f)?;
    Ok(out)
}

fn setup(ctx: &Ctx, w: &PairArgs) -> Result<FramedSetup, CliError> {
    cb_type(&ctx.datum)?;
    let (xi, lam) = ctx.pair(w, None)?;
    Ok(FramedSetup::new(ctx.datum.clone(), xi, lam)?)
}

fn framed(ctx: &mut Ctx, c: &FramedCmd) -> CmdResult {
    match c {
        FramedCmd::VerifyCb { weights } => {
            let (m, n) = ctx.a1_pair(weights)?;
            let cc = verify_cb_correspondence(m, n)?;
            let pairs: Vec<Value> =
                cc.bijection.iter().map(|(b, p)| json!({ "framed": b.to_string(), "tensor": pair_key(p) })).collect();
            let data = json!({
                "m": m, "n": n, "expected": cc.expected, "framed_size": cc.framed_size,
                "tensor_size": cc.tensor_size, "bijection": pairs, "mismatches": cc.mismatches,
            });
            Ok(Outcome { report: cc.to_report(), data })
        }
        FramedCmd::VerifyPositivity { weights } => {
            let s = setup(ctx, weights)?;
            ctx.warm(s.base());
            let mut rep = Report::new("positivity");
            let mut data = json!({ "xi": weight_json(s.xi()), "lambda": weight_json(s.lambda()) });
            if ctx.datum.len() == 1 {
                ctx.warm(s.full());
                rep.merge(s.verify_positivity_framed()?);
                let b: Vec<String> = s.b_xi_lambda()?.iter().map(|b| b.to_string()).collect();
                data["framed_basis"] = json!(b);
                ctx.persist(s.full())?;
            } else {
                rep.note("framed-side positivity needs base type A1; tensor-side checks only");
            }
            rep.merge(verify_positivity_tensor(s.tensor())?);
            rep.merge(verify_transition_positivity(s.tensor())?);
            ctx.persist(s.base())?;
            Ok(Outcome { report: rep, data })
        }
        FramedCmd::VerifyPairings { weights, max_depth } => {
            let s = setup(ctx, weights)?;
            let rep = s.verify_two_pairings(*max_depth);
            Ok(Outcome {
                report: rep,
                data: json!({ "xi": weight_json(s.xi()), "lambda": weight_json(s.lambda()), "max_depth": max_depth }),
            })
        }
        FramedCmd::Phi { weights, words } => {
            let s = setup(ctx, weights)?;
            let full = s.framed_datum().full.clone();
            let x = parse_sum(words, &full)?;
            let t = s.phi(&x)?;
            let mut rep = Report::new("phi");
            let barred = s.phi(&x.bar())?;
            let psi = s.tensor().psi(&t)?;
            rep.check("phi intertwines bar with psi", barred == psi, || format!("{} vs {}", barred.render(), psi.render()));
            Ok(Outcome {
                report: rep,
                data: json!({
                    "xi": weight_json(s.xi()), "lambda": weight_json(s.lambda()),
                    "input": x.render(&full), "image": tensor_json(&t),
                }),
            })
        }
    }
}

fn crystal(ctx: &mut Ctx, c: &CrystalCmd) -> CmdResult {
    let CrystalCmd::Check { suite, weights, max_tr } = c;
    let d = ctx.datum.clone();
    let run = |s: Suite| *suite == Suite::All || *suite == s;
    let given = weights.m.is_some() || weights.n.is_some();
    let mut rep = Report::new("crystal");
    let mut ran = Vec::new();
    let a1_only = |ctx: &Ctx| -> Result<(), CliError> {
        if ctx.datum.len() != 1 {
            return Err(CliError::unsupported("framed crystal suites need base type A1"));
        }
        Ok(())
    };
    if run(Suite::EpsPhi) {
        let ty = cb_type(&d)?;
        let f = seeded(&d)?;
        ctx.warm(&f);
        rep.merge(check_eps_phi(&FCrystal::new(f.clone()), ty, max_tr.unwrap_or(5)));
        ctx.persist(&f)?;
        ran.push("eps-phi");
    }
    let n_range = |hi: u32| -> Vec<u32> {
        match weights.n {
            Some(n) => vec![n],
            None => (0..=hi).collect(),
        }
    };
    let is_all = *suite == Suite::All;
    let a1 = d.len() == 1;
    if run(Suite::ThetaLambda) && (a1 || !is_all) {
        a1_only(ctx)?;
        for n in n_range(4) {
            rep.merge(check_theta_lambda_b(n)?);
        }
        ran.push("theta-lambda");
    }
    if run(Suite::PiPhi) && (a1 || !is_all) {
        a1_only(ctx)?;
        let ms: Vec<u32> = match weights.m {
            Some(m) => vec![m],
            None => (0..=3).collect(),
        };
        for &m in &ms {
            for n in n_range(3) {
                rep.merge(check_pi_phi(m, n)?);
            }
        }
        ran.push("pi-phi");
    }
    if run(Suite::Reachability) && (a1 || !is_all) {
        a1_only(ctx)?;
        for n in n_range(5) {
            rep.merge(check_reachability(n, max_tr.unwrap_or(5))?);
        }
        ran.push("reachability");
    }
    if run(Suite::FramedStrings) && (a1 || !is_all) {
        a1_only(ctx)?;
        for n in n_range(5) {
            rep.merge(check_framed_strings(n, max_tr.unwrap_or(5))?);
        }
        ran.push("framed-strings");
    }
    if run(Suite::Adjoint) {
        let ty = cb_type(&d)?;
        let defaults = match ty {
            CBType::A1 => (vec![2], vec![2]),
            CBType::A2 => (vec![1, 0], vec![1, 1]),
        };
        let (xi, lam) = if given || weights.xi.is_some() { ctx.pair(weights, None)? } else { ctx.pair(weights, Some(defaults))? };
        let f = seeded(&d)?;
        let tm = TensorModule::new(f, xi, lam)?;
        rep.merge(check_adjoint_tensor(&tm)?);
        ran.push("adjoint");
    }
    if !a1 && is_all {
        rep.note("framed suites skipped: they need base type A1");
    }
    let count = rep.len();
    Ok(Outcome { report: rep, data: json!({ "suites": ran, "check_count": count }) })
}
