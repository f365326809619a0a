mod common;

use bvext_core::algebra::frobenius_structure;
use bvext_core::cyclic::frobenius_contraaction;
use bvext_core::dual::{Functional, InstanceKind, LeftHopfAlgebroid};
use bvext_core::field::{Field, Scalar};
use bvext_core::hochschild::CoefficientModule;
use bvext_core::hopf::trivial_contraaction;
use bvext_core::report::SuiteReport;
use common::corpus;
use proptest::prelude::*;

const GOOD: [&str; 8] =
    ["rationals", "dual_numbers", "truncated_cubic", "matrix_2x2", "group_c2", "gf2_dual_numbers", "sweedler", "nakayama_2cycle"];
const HOPF: [&str; 3] = ["group_c2", "gf2_dual_numbers", "sweedler"];

fn assert_passes(rep: &SuiteReport, what: &str) {
    assert!(rep.passed(), "{what}/{}: {:?}", rep.suite, rep.failures().collect::<Vec<_>>());
    assert!(rep.checks.iter().all(|c| c.cases > 0 || c.informational), "{what}/{}: empty check", rep.suite);
}

#[test]
fn envelope_suites_pass() {
    for name in GOOD {
        let u = LeftHopfAlgebroid::envelope(corpus(name).algebra.clone());
        assert_eq!(u.kind(), InstanceKind::Envelope);
        assert_eq!(u.rank(), u.base().dim());
        assert_passes(&u.translation_report(), name);
        assert_passes(&u.dual_report(), name);
        let hg = u.hopf_galois_report(None);
        assert_passes(&hg, name);
        assert!(hg.check("φ⁻ ⊗ φ⁺ = S*(φ₍₁₎) ⊗ φ₍₂₎").is_none());
    }
}

#[test]
fn hopf_suites_pass_with_antipode_comparison() {
    for name in HOPF {
        let p = corpus(name);
        let h = p.hopf.as_ref().unwrap();
        let u = LeftHopfAlgebroid::from_hopf(h).unwrap();
        assert_eq!(u.kind(), InstanceKind::Hopf);
        assert_passes(&u.translation_report(), name);
        assert_passes(&u.dual_report(), name);
        let hg = u.hopf_galois_report(Some(h.antipode()));
        assert_passes(&hg, name);
        let cmp = hg.check("φ⁻ ⊗ φ⁺ = S*(φ₍₁₎) ⊗ φ₍₂₎").unwrap();
        assert!(cmp.passed && cmp.cases as usize == u.dim().pow(3));
    }
}

#[test]
fn dictionary_round_trips() {
    for name in GOOD {
        let p = corpus(name);
        let a = &p.algebra;
        let f = frobenius_structure(a, p.frobenius.as_ref().unwrap()).unwrap();
        let gamma = frobenius_contraaction(a, &f).unwrap();
        let module = CoefficientModule::twisted(a, f.nakayama());
        let u = LeftHopfAlgebroid::envelope(a.clone());
        assert_passes(&u.dictionary_report(&gamma, &module).unwrap(), name);
    }
    for name in HOPF {
        let p = corpus(name);
        let h = p.hopf.as_ref().unwrap();
        let gamma = trivial_contraaction(h, h.grouplike().unwrap()).unwrap();
        let u = LeftHopfAlgebroid::from_hopf(h).unwrap();
        assert_passes(&u.dictionary_report(&gamma, &h.trivial_module()).unwrap(), name);
    }
}

#[test]
fn harpoon_and_slice_are_different_actions() {
    for name in ["dual_numbers", "matrix_2x2"] {
        let u = LeftHopfAlgebroid::envelope(corpus(name).algebra.clone());
        assert!(u.dual_report().check("harpoon and slice actions differ").unwrap().passed, "{name}");
    }
    let p = corpus("sweedler");
    let u = LeftHopfAlgebroid::from_hopf(p.hopf.as_ref().unwrap()).unwrap();
    assert!(u.dual_report().check("harpoon and slice actions differ").unwrap().passed);
}

fn combo(u: &LeftHopfAlgebroid, coeffs: &[i8]) -> Functional {
    let basis = u.dual_basis();
    let field = u.field();
    Functional::from_fn(u.dim(), |k| {
        let mut acc = vec![field.zero(); u.base().dim()];
        for (phi, c) in basis.iter().zip(coeffs.iter().cycle()) {
            let c = field.from_i64(*c as i64);
            for (x, y) in acc.iter_mut().zip(phi.on_basis(k)) {
                x.add_mul(&c, y);
            }
        }
        acc
    })
}

fn element(field: Field, dim: usize, coeffs: &[i8]) -> Vec<Scalar> {
    (0..dim).map(|i| field.from_i64(coeffs[i % coeffs.len()] as i64)).collect()
}

fn algebroid() -> impl Strategy<Value = LeftHopfAlgebroid> {
    prop_oneof![
        Just("dual_numbers").prop_map(|n| LeftHopfAlgebroid::envelope(corpus(n).algebra.clone())),
        Just("nakayama_2cycle").prop_map(|n| LeftHopfAlgebroid::envelope(corpus(n).algebra.clone())),
        Just("sweedler").prop_map(|n| LeftHopfAlgebroid::from_hopf(corpus(n).hopf.as_ref().unwrap()).unwrap()),
    ]
}

fn coeffs() -> impl Strategy<Value = Vec<i8>> {
    prop::collection::vec(-2i8..=2, 1..9)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn dual_product_is_associative_and_unital(u in algebroid(), a in coeffs(), b in coeffs(), c in coeffs()) {
        let (x, y, z) = (combo(&u, &a), combo(&u, &b), combo(&u, &c));
        prop_assert_eq!(u.product(&u.product(&x, &y), &z), u.product(&x, &u.product(&y, &z)));
        prop_assert_eq!(u.product(&u.unit(), &x), x.clone());
        prop_assert_eq!(u.product(&x, &u.unit()), x);
    }

    #[test]
    fn harpoon_is_an_action(u in algebroid(), a in coeffs(), v in coeffs(), w in coeffs()) {
        let phi = combo(&u, &a);
        let field = u.field();
        let v = element(field, u.dim(), &v);
        let w = element(field, u.dim(), &w);
        let vw = u.total().multiply(&v, &w).unwrap();
        prop_assert_eq!(u.harpoon(&v, &u.harpoon(&w, &phi)), u.harpoon(&vw, &phi));
    }
}
