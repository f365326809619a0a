use rayon::prelude::*;

use super::cochain::{decode, Cochain};
use super::complex::CochainComplex;
use super::operad::{group_by_id, Groups, Operad};
use crate::error::Result;
use crate::field::Scalar;
use crate::report::{Check, SuiteReport};

type Keyed = Vec<((usize, usize, usize), Scalar)>;

fn normalise(mut v: Keyed) -> Keyed {
    v.sort_unstable_by_key(|a| a.0);
    let mut out: Keyed = Vec::with_capacity(v.len());
    for (k, c) in v {
        match out.last_mut() {
            Some((k2, c2)) if *k2 == k => *c2 += &c,
            _ => out.push((k, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

/// `(f ∘_a ψ) ∘_b χ` for all basis `ψ ∈ C^q`, `χ ∈ C^r`, keyed by `(ψ, χ, index)`.
/// With `swap`, the first insertion is `χ` and the second `ψ`.
fn two_step(op: &Operad, f: &Cochain, a: usize, first: &Groups, b: usize, second: &Groups, swap: bool) -> Keyed {
    let (d, m) = (op.base_dim(), op.value_dim());
    let mut raw = Vec::new();
    op.compose_grouped(f, a, first, &mut raw);
    let mid = group_by_id(raw, f.degree() + first.q - 1, d, m);
    let mut out = Vec::new();
    let mut buf = Vec::new();
    for (x, g) in mid {
        buf.clear();
        op.compose_grouped(&g, b, second, &mut buf);
        for (y, t, c) in buf.drain(..) {
            let key = if swap { (y, x, t) } else { (x, y, t) };
            out.push((key, c));
        }
    }
    normalise(out)
}

fn describe(p: usize, q: usize, r: usize, phi: usize, i: usize, j: usize, d: usize, m: usize) -> String {
    format!(
        "p={p} q={q} r={r}, φ=basis{:?}→e{}, i={i}, j={j}",
        decode(phi / m, d, p),
        phi % m
    )
}

/// Checks the three sequential/parallel composition laws on all basis cochains.
pub fn associativity_checks(cx: &CochainComplex, max_p: usize, max_q: usize, max_r: usize) -> Result<[Check; 3]> {
    let op = cx.operad()?;
    let (d, m) = (cx.base_dim(), cx.value_dim());
    let mut checks = [
        Check::new("sequential composition, j < i"),
        Check::new("nested composition, i ≤ j < q + i"),
        Check::new("sequential composition, j ≥ q + i"),
    ];
    for p in 1..=max_p {
        let dim_p = cx.space_dim(p)?;
        for q in 0..=max_q {
            let gq = op.basis_groups(q)?;
            for r in 0..=max_r {
                let gr = op.basis_groups(r)?;
                let dim_r = cx.space_dim(r)?;
                cx.space_dim(p + q + r - 1)?;
                if p + q < 2 {
                    continue;
                }
                // Nested compositions ψ ∘_k χ for every slot k of ψ, shared by all φ.
                let nested: Vec<Groups> = (1..=q)
                    .map(|k| {
                        let mut raw = Vec::new();
                        for psi in 0..cx.space_dim(q)? {
                            let g = cx.basis_cochain(q, psi);
                            let mut part = Vec::new();
                            op.compose_grouped(&g, k, &gr, &mut part);
                            raw.extend(part.into_iter().map(|(chi, t, c)| (psi * dim_r + chi, t, c)));
                        }
                        let items = group_by_id(raw, q + r - 1, d, m);
                        op.groups(q + r - 1, items.iter().map(|(id, c)| (*id, c)))
                    })
                    .collect::<Result<_>>()?;
                let results: Vec<[Check; 3]> = (0..dim_p)
                    .into_par_iter()
                    .map(|phi| {
                        let f = cx.basis_cochain(p, phi);
                        let mut local = [Check::new(""), Check::new(""), Check::new("")];
                        for i in 1..=p {
                            for j in 1..=p + q - 1 {
                                let lhs = two_step(op, &f, i, &gq, j, &gr, false);
                                let (case, rhs) = if j < i {
                                    (0, two_step(op, &f, j, &gr, i + r - 1, &gq, true))
                                } else if j < q + i {
                                    let mut raw = Vec::new();
                                    op.compose_grouped(&f, i, &nested[j - i], &mut raw);
                                    let keyed = raw.into_iter().map(|(id, t, c)| ((id / dim_r, id % dim_r, t), c)).collect();
                                    (1, normalise(keyed))
                                } else {
                                    (2, two_step(op, &f, j - q + 1, &gr, i, &gq, true))
                                };
                                local[case].record(lhs == rhs, || {
                                    let bad = lhs.iter().zip(&rhs).find(|(a, b)| a != b).map(|(a, _)| a.0 .0);
                                    format!("{} first differing ψ={bad:?}", describe(p, q, r, phi, i, j, d, m))
                                });
                            }
                        }
                        local
                    })
                    .collect();
                for local in results {
                    for (c, l) in checks.iter_mut().zip(local) {
                        c.merge(l);
                    }
                }
            }
        }
    }
    Ok(checks)
}

/// Unit laws for `𝟙` and the multiplication axioms for `μ` and `e`.
pub fn unit_checks(cx: &CochainComplex, max_p: usize) -> Result<Vec<Check>> {
    let op = cx.operad()?;
    let one = op.identity();
    let mut right = Check::new("φ ∘_i 𝟙 = φ");
    let mut left = Check::new("𝟙 ∘_1 φ = φ");
    for p in 0..=max_p {
        for idx in 0..cx.check_budget(p)? {
            let f = cx.basis_cochain(p, idx);
            for i in 1..=p {
                right.record(op.compose(&f, i, one)? == f, || format!("degree {p}, basis {idx}, slot {i}"));
            }
            left.record(op.compose(one, 1, &f)? == f, || format!("degree {p}, basis {idx}"));
        }
    }
    let mu = op.mu();
    let assoc = Check::from_bool("μ ∘_1 μ = μ ∘_2 μ", op.compose(mu, 1, mu)? == op.compose(mu, 2, mu)?, || {
        "μ ∘_1 μ ≠ μ ∘_2 μ".into()
    });
    let e = op.e();
    let unit = Check::from_bool("μ ∘_1 e = μ ∘_2 e = 𝟙", {
        let a = op.compose(mu, 1, e)?;
        let b = op.compose(mu, 2, e)?;
        a == *one && b == *one
    }, || "μ ∘_i e ≠ 𝟙".into());
    Ok(vec![right, left, assoc, unit])
}

/// The full non-cyclic operad suite.
pub fn operad_axiom_report(cx: &CochainComplex, max_p: usize, max_q: usize, max_r: usize) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("operad");
    for c in associativity_checks(cx, max_p, max_q, max_r)? {
        rep.push(c);
    }
    for c in unit_checks(cx, max_p.max(max_q).max(max_r))? {
        rep.push(c);
    }
    rep.note(format!("bounds p≤{max_p}, q≤{max_q}, r≤{max_r}"));
    Ok(rep)
}
