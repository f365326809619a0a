//! One line per acceptance criterion; exits nonzero if any criterion fails.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use bvext_core::algebra::{frobenius_structure, nakayama_grading, FrobeniusStructure};
use bvext_core::bv::{cohomology_dims, nakayama_weight_report, weight_decomposition, BvEngine, Subcomplex};
use bvext_core::cyclic::{cyclic_operad_report, frobenius_contraaction, homotopy_report, ContraBase, CyclicStructure};
use bvext_core::dual::LeftHopfAlgebroid;
use bvext_core::hochschild::{operad_axiom_report, CoefficientModule};
use bvext_core::hopf::{ext_bv_report, hopf_cyclic, tau_crosscheck, trivial_contraaction, twisted_involution_check, HopfAlgebra};
use bvext_core::io::Presentation;
use bvext_core::report::SuiteReport;
use common::{corpus, endo};

type Outcome = Result<String, String>;

const FROBENIUS: [&str; 8] =
    ["rationals", "dual_numbers", "truncated_cubic", "matrix_2x2", "group_c2", "gf2_dual_numbers", "sweedler", "nakayama_2cycle"];
const SYMMETRIC: [&str; 6] = ["rationals", "dual_numbers", "truncated_cubic", "matrix_2x2", "group_c2", "gf2_dual_numbers"];
const HOPF: [&str; 3] = ["group_c2", "gf2_dual_numbers", "sweedler"];
const BV_IDENTITY: &str = "bracket is the deviation of B from a derivation of the cup product";
const LIMIT: Duration = Duration::from_secs(60);

fn frob(p: &Presentation) -> FrobeniusStructure {
    frobenius_structure(&p.algebra, p.frobenius.as_ref().expect("Frobenius form")).expect("nondegenerate")
}

fn envelope(p: &Presentation) -> Arc<CyclicStructure> {
    let gamma = frobenius_contraaction(&p.algebra, &frob(p)).expect("contraaction");
    Arc::new(CyclicStructure::envelope(endo(p), gamma))
}

fn hopf(p: &Presentation) -> (&HopfAlgebra, Vec<bvext_core::field::Scalar>) {
    let h = p.hopf.as_ref().expect("Hopf data");
    (h, h.grouplike().expect("grouplike").to_vec())
}

fn require(rep: &SuiteReport, what: &str) -> Result<(), String> {
    match rep.failures().next() {
        None => Ok(()),
        Some(c) => Err(format!("{what}: {} ({})", c.name, c.witness.clone().unwrap_or_default())),
    }
}

fn require_check(rep: &SuiteReport, name: &str, what: &str) -> Result<u64, String> {
    match rep.check(name) {
        Some(c) if c.passed => Ok(c.cases),
        Some(c) => Err(format!("{what}: {name} ({})", c.witness.clone().unwrap_or_default())),
        None => Err(format!("{what}: {name} not run")),
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    ok.then_some(()).ok_or_else(msg)
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn operad_suite() -> Outcome {
    let mut cases = 0;
    for name in ["dual_numbers", "matrix_2x2"] {
        let rep = operad_axiom_report(&endo(&corpus(name)), 3, 3, 3).map_err(err)?;
        require(&rep, name)?;
        require_check(&rep, "μ ∘_1 μ = μ ∘_2 μ", name)?;
        require_check(&rep, "μ ∘_1 e = μ ∘_2 e = 𝟙", name)?;
        cases += rep.checks.iter().map(|c| c.cases).sum::<u64>();
    }
    Ok(format!("{cases} basis cases, p, q, r ≤ 3"))
}

fn cyclic_suite() -> Outcome {
    let mut out = Vec::new();
    for name in SYMMETRIC {
        let p = corpus(name);
        let bound = if p.algebra.dim() <= 2 { 4 } else { 3 };
        let f = frob(&p);
        let rep = cyclic_operad_report(&envelope(&p), bound, Some(f.nakayama())).map_err(err)?;
        require(&rep, name)?;
        require_check(&rep, "τ^{n+1} = id", name)?;
        require_check(&rep, "τμ = μ", name)?;
        out.push(format!("{name}≤{bound}"));
    }
    Ok(out.join(", "))
}

fn contramodule_axioms() -> Outcome {
    for name in FROBENIUS {
        let p = corpus(name);
        let f = frob(&p);
        let gamma = frobenius_contraaction(&p.algebra, &f).map_err(err)?;
        let twisted = CoefficientModule::twisted(&p.algebra, f.nakayama());
        let rep = gamma.check_axioms(&ContraBase::Envelope(p.algebra.clone()), &twisted);
        require(&rep, name)?;
        ensure(rep.checks.len() == 3, || format!("{name}: expected three axioms"))?;
        let defect = gamma.stability_defect(&CoefficientModule::regular(&p.algebra));
        ensure(defect == *f.nakayama(), || format!("{name}: defect differs from σ"))?;
        ensure(!f.is_symmetric() || defect.is_identity(), || format!("{name}: symmetric but defect ≠ id"))?;
    }
    Ok(format!("{} Frobenius instances", FROBENIUS.len()))
}

fn homotopy_identity() -> Outcome {
    for name in FROBENIUS {
        let p = corpus(name);
        let bound = if p.algebra.dim() <= 2 { 4 } else { 3 };
        require(&homotopy_report(&envelope(&p), bound).map_err(err)?, name)?;
    }
    for name in HOPF {
        let p = corpus(name);
        let (h, g) = hopf(&p);
        require(&homotopy_report(&hopf_cyclic(h, &g, 1024).map_err(err)?, 3).map_err(err)?, name)?;
    }
    let p = corpus("nakayama_2cycle");
    let cs = envelope(&p);
    let field = p.algebra.field();
    let (minus_one, two) = (field.from_i64(-1), field.from_i64(2));
    let grading = nakayama_grading(&frob(&p), false).map_err(err)?;
    let dec = weight_decomposition(cs.complex(), grading, 3).map_err(err)?;
    let mut seen = 0;
    for n in 0..=3 {
        let h = cs.homotopy(n).map_err(err)?;
        for v in dec.part(n, &minus_one) {
            ensure(cs.apply(&h, v, n) == v.scale(&two), || format!("weight -1, degree {n}: not 2·id"))?;
            seen += 1;
        }
    }
    ensure(seen > 0, || "weight -1 subcomplex is empty".into())?;
    Ok(format!("all instances; weight -1 acts by 2 on {seen} cochains"))
}

fn bv_identity() -> Outcome {
    let mut cases = 0;
    let mut vacuous = Vec::new();
    for (name, bound) in [("dual_numbers", 4), ("group_c2", 3), ("matrix_2x2", 3)] {
        let p = corpus(name);
        let e = BvEngine::new(endo(&p), Some(envelope(&p)), None::<Arc<Subcomplex>>, bound).map_err(err)?;
        let rep = e.bv_report().map_err(err)?;
        require(&rep, name)?;
        let n = require_check(&rep, BV_IDENTITY, name)?;
        if n == 0 {
            vacuous.push(name);
        }
        cases += n;
        require_check(&rep, "B² = 0 on cohomology", name)?;
    }
    let p = corpus("nakayama_2cycle");
    let rep = nakayama_weight_report(&p.algebra, &frob(&p), 3, 1024, false).map_err(err)?;
    require(&rep, "nakayama weight one")?;
    cases += require_check(&rep, BV_IDENTITY, "nakayama weight one")?;
    require_check(&rep, "B² = 0 on cohomology", "nakayama weight one")?;
    ensure(cases > 0, || "no class pairs tested".into())?;
    let note = if vacuous.is_empty() { String::new() } else { format!(" (no positive-degree classes: {})", vacuous.join(", ")) };
    Ok(format!("{cases} class pairs reduce to zero{note}"))
}

fn hochschild_dimensions() -> Outcome {
    let expected: [(&str, &[usize]); 3] =
        [("dual_numbers", &[2, 1, 1, 1, 1]), ("matrix_2x2", &[1, 0, 0, 0]), ("group_c2", &[2, 0, 0, 0])];
    let mut out = Vec::new();
    for (name, dims) in expected {
        let p = corpus(name);
        let bound = dims.len() - 1;
        let got = cohomology_dims(&endo(&p), None, bound).map_err(err)?;
        let oracle = common::hh_dims(&p, bound);
        ensure(got == dims && oracle == dims, || format!("{name}: {got:?}, oracle {oracle:?}, anchor {dims:?}"))?;
        out.push(format!("{name} {got:?}"));
    }
    Ok(out.join(", "))
}

fn nakayama_splitting() -> Outcome {
    let p = corpus("nakayama_2cycle");
    let f = frob(&p);
    let cx = endo(&p);
    let dec = weight_decomposition(&cx, nakayama_grading(&f, false).map_err(err)?, 3).map_err(err)?;
    let minus_one = p.algebra.field().from_i64(-1);
    let one = p.algebra.field().one();
    let off = cohomology_dims(&cx, Some(&dec.subcomplex(&minus_one)), 3).map_err(err)?;
    let on = cohomology_dims(&cx, Some(&dec.subcomplex(&one)), 3).map_err(err)?;
    let full = cohomology_dims(&cx, None, 3).map_err(err)?;
    ensure(off.iter().all(|&d| d == 0), || format!("H(C_-1) = {off:?}"))?;
    ensure(on == full, || format!("H(C_1) = {on:?} but HH = {full:?}"))?;
    Ok(format!("H(C_-1) = {off:?}, H(C_1) = HH = {full:?}"))
}

fn hopf_suite() -> Outcome {
    let p = corpus("sweedler");
    let (h, g) = hopf(&p);
    ensure(twisted_involution_check(h, &g).map_err(err)?, || "S² is not conjugation by g".into())?;
    let cs = hopf_cyclic(h, &g, 1024).map_err(err)?;
    for n in 0..=3 {
        ensure(cs.is_cyclic_in(n).map_err(err)?, || format!("τ^(n+1) ≠ id in degree {n}"))?;
    }
    let ext = cohomology_dims(cs.complex(), None, 3).map_err(err)?;
    let oracle = common::ext_dims(&p, 3);
    ensure(ext == oracle, || format!("H4 Ext {ext:?}, oracle {oracle:?}"))?;
    let rep = ext_bv_report(h, &g, 3, 1024).map_err(err)?;
    require(&rep, "H4")?;
    require_check(&rep, BV_IDENTITY, "H4")?;

    let q = corpus("gf2_dual_numbers");
    let (h2, g2) = hopf(&q);
    let ext2 = cohomology_dims(&h2.complex(1024), None, 3).map_err(err)?;
    ensure(ext2 == [1, 1, 1, 1] && common::ext_dims(&q, 3) == ext2, || format!("GF(2) Ext {ext2:?}"))?;
    let rep2 = ext_bv_report(h2, &g2, 3, 1024).map_err(err)?;
    require(&rep2, "GF(2)")?;
    require_check(&rep2, BV_IDENTITY, "GF(2)")?;
    Ok(format!("H4 Ext {ext:?} (independent oracle), GF(2) Ext {ext2:?}"))
}

fn translation_suite() -> Outcome {
    let mut count = 0;
    let mut run = |name: &str, u: &LeftHopfAlgebroid, antipode: Option<&bvext_core::field::Matrix>| -> Result<(), String> {
        let rep = u.hopf_galois_report(antipode);
        require(&rep, name)?;
        require_check(&rep, "φ⁻φ⁺⁽¹⁾ ⊗ φ⁺⁽²⁾ = ε ⊗ φ", name)?;
        require_check(&rep, "φ⁽¹⁾φ⁽²⁾⁻ ⊗ φ⁽²⁾⁺ = ε ⊗ φ", name)?;
        require_check(&rep, "φ⁺ ◁ ⟨φ⁻, u⟩ = u ⇀ φ", name)?;
        if antipode.is_some() {
            require_check(&rep, "φ⁻ ⊗ φ⁺ = S*(φ₍₁₎) ⊗ φ₍₂₎", name)?;
        }
        count += 1;
        Ok(())
    };
    for name in ["group_c2", "sweedler"] {
        let p = corpus(name);
        let h = p.hopf.as_ref().expect("Hopf data");
        run(name, &LeftHopfAlgebroid::from_hopf(h).map_err(err)?, Some(h.antipode()))?;
    }
    for name in ["dual_numbers", "matrix_2x2"] {
        run(name, &LeftHopfAlgebroid::envelope(corpus(name).algebra.clone()), None)?;
    }
    Ok(format!("{count} instances, antipode comparison exact"))
}

fn dictionary() -> Outcome {
    let mut count = 0;
    for name in FROBENIUS {
        let p = corpus(name);
        let f = frob(&p);
        let gamma = frobenius_contraaction(&p.algebra, &f).map_err(err)?;
        let module = CoefficientModule::twisted(&p.algebra, f.nakayama());
        let rep = LeftHopfAlgebroid::envelope(p.algebra.clone()).dictionary_report(&gamma, &module).map_err(err)?;
        require(&rep, name)?;
        count += 1;
    }
    for name in HOPF {
        let p = corpus(name);
        let (h, g) = hopf(&p);
        let gamma = trivial_contraaction(h, &g).map_err(err)?;
        let rep = LeftHopfAlgebroid::from_hopf(h).map_err(err)?.dictionary_report(&gamma, &h.trivial_module()).map_err(err)?;
        require(&rep, name)?;
        count += 1;
    }
    Ok(format!("{count} contramodules"))
}

fn cross_path() -> Outcome {
    for name in HOPF {
        let p = corpus(name);
        let (h, g) = hopf(&p);
        let c = tau_crosscheck(h, &g, 3, 1024).map_err(err)?;
        ensure(c.passed && c.cases == 4, || format!("{name}: {:?}", c.witness))?;
    }
    Ok("closed formula equals general τ in degrees 0..=3".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("operad identities", operad_suite),
        ("cyclic operad on symmetric instances", cyclic_suite),
        ("contramodule axioms and stability defect", contramodule_axioms),
        ("βB + Bβ = id − τ^{n+1}", homotopy_identity),
        ("BV identity on cohomology", bv_identity),
        ("Hochschild dimensions", hochschild_dimensions),
        ("Nakayama weight splitting", nakayama_splitting),
        ("Hopf suite", hopf_suite),
        ("dual translation map", translation_suite),
        ("dictionary round trips", dictionary),
        ("closed and general τ agree", cross_path),
    ];
    let mut failed = 0;
    for (i, (label, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let mut outcome = run();
        let elapsed = t.elapsed();
        if outcome.is_ok() && elapsed > LIMIT {
            outcome = Err(format!("took {elapsed:.1?}"));
        }
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {label}: {detail} [{elapsed:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {label}: {why} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
