mod common;

use std::sync::Arc;

use bvext_core::algebra::frobenius_structure;
use bvext_core::bv::{nakayama_weight_report, BvEngine, Subcomplex};
use bvext_core::cyclic::{frobenius_contraaction, CyclicStructure};
use bvext_core::hopf::{ext_bv_report, hopf_cyclic};
use bvext_core::io::Presentation;
use bvext_core::report::SuiteReport;
use bvext_core::Error;
use common::{corpus, endo};

const BV_IDENTITY: &str = "bracket is the deviation of B from a derivation of the cup product";

fn engine(p: &Presentation, bound: usize) -> BvEngine {
    let f = frobenius_structure(&p.algebra, p.frobenius.as_ref().unwrap()).unwrap();
    let gamma = frobenius_contraaction(&p.algebra, &f).unwrap();
    let cx = endo(p);
    let cs = Arc::new(CyclicStructure::envelope(cx.clone(), gamma));
    BvEngine::new(cx, Some(cs), None::<Arc<Subcomplex>>, bound).unwrap()
}

fn assert_passes(rep: &SuiteReport, what: &str) {
    assert!(rep.passed(), "{what}: {:?}", rep.failures().collect::<Vec<_>>());
}

#[test]
fn bv_identity_on_symmetric_algebras() {
    for (name, bound) in [("dual_numbers", 4), ("group_c2", 3), ("matrix_2x2", 3), ("truncated_cubic", 3)] {
        let e = engine(&corpus(name), bound);
        let g = e.gerstenhaber_report().unwrap();
        let b = e.bv_report().unwrap();
        assert_passes(&g, name);
        assert_passes(&b, name);
        assert!(b.check(BV_IDENTITY).unwrap().passed, "{name}");
        assert!(b.check("B² = 0 on cohomology").unwrap().passed, "{name}");
    }
}

#[test]
fn dual_numbers_bv_has_nontrivial_cases() {
    let b = engine(&corpus("dual_numbers"), 4).bv_report().unwrap();
    assert!(b.check(BV_IDENTITY).unwrap().cases > 10);
}

#[test]
fn seeds_do_not_change_verdicts() {
    let p = corpus("dual_numbers");
    for seed in [1, 2, 0xdead_beef] {
        let e = engine(&p, 3).with_seed(seed);
        assert_passes(&e.bv_report().unwrap(), "dual_numbers");
    }
}

#[test]
fn nakayama_weight_report_passes() {
    let p = corpus("nakayama_2cycle");
    let f = frobenius_structure(&p.algebra, p.frobenius.as_ref().unwrap()).unwrap();
    let rep = nakayama_weight_report(&p.algebra, &f, 3, 1024, false).unwrap();
    assert_passes(&rep, "nakayama");
    for name in [
        "weight λ ≠ 1 subcomplexes are acyclic",
        "weight-one cohomology has the dimensions of H(A, A)",
        "βB + Bβ = (1 − λ) id on weight λ",
        BV_IDENTITY,
        "B² = 0 on cohomology",
    ] {
        let c = rep.check(name).unwrap_or_else(|| panic!("missing {name}"));
        assert!(c.passed && c.cases > 0, "{name}");
    }
}

#[test]
fn twisted_coefficients_differ_from_weight_one_in_degree_zero() {
    let p = corpus("nakayama_2cycle");
    let f = frobenius_structure(&p.algebra, p.frobenius.as_ref().unwrap()).unwrap();
    let rep = nakayama_weight_report(&p.algebra, &f, 3, 1024, false).unwrap();
    let c = rep.check("H(A, σA) has the dimensions of weight-one cohomology").unwrap();
    assert!(c.informational && !c.passed);
}

#[test]
fn bv_requires_a_cyclic_structure() {
    let p = corpus("nakayama_2cycle");
    let e = engine(&p, 2);
    assert!(e.gerstenhaber_report().unwrap().passed());
    assert!(matches!(e.bv_report(), Err(Error::NotCyclic(_))));
    let plain = BvEngine::new(endo(&p), None, None::<Arc<Subcomplex>>, 2).unwrap();
    assert!(plain.bv_report().is_err());
}

#[test]
fn non_cocycles_are_rejected() {
    let p = corpus("dual_numbers");
    let e = engine(&p, 2);
    let cx = e.complex().clone();
    let f = cx.basis_cochain(1, 0);
    assert!(!cx.differential(&f).is_zero());
    assert!(matches!(e.reduce(&f), Err(Error::NotCocycle)));
}

#[test]
fn hopf_ext_bv_identity() {
    for name in ["sweedler", "gf2_dual_numbers", "group_c2"] {
        let p = corpus(name);
        let h = p.hopf.as_ref().unwrap();
        let g = h.grouplike().unwrap().to_vec();
        let rep = ext_bv_report(h, &g, 3, 1024).unwrap();
        assert_passes(&rep, name);
        assert!(rep.check(BV_IDENTITY).unwrap().passed, "{name}");
    }
}

#[test]
fn gf2_ext_classes_exist_in_every_degree() {
    let p = corpus("gf2_dual_numbers");
    let h = p.hopf.as_ref().unwrap();
    let cs = Arc::new(hopf_cyclic(h, h.grouplike().unwrap(), 1024).unwrap());
    let e = BvEngine::new(cs.complex().clone(), Some(cs), None::<Arc<Subcomplex>>, 3).unwrap();
    assert_eq!(e.dims(), vec![1, 1, 1, 1]);
    for n in 0..=3 {
        assert_eq!(e.classes(n).unwrap().len(), 1);
    }
}

#[test]
fn untwisted_sweedler_is_rejected() {
    let p = corpus("sweedler");
    let h = p.hopf.as_ref().unwrap();
    assert!(matches!(ext_bv_report(h, p.algebra.unit(), 2, 1024), Err(Error::TwistedInvolutionFails)));
}
