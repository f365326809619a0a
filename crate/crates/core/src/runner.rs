//! Suite dispatch and the versioned report format emitted by the command line.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::algebra::{frobenius_structure, FrobeniusStructure};
use crate::bv::{cohomology_dims, nakayama_weight_report, BvEngine, Subcomplex};
use crate::cyclic::{
    cyclic_operad_report, frobenius_contraaction, homotopy_report, symmetric_contraaction_crosscheck, ContraBase, CyclicStructure,
};
use crate::dual::LeftHopfAlgebroid;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::hochschild::{operad_axiom_report, CochainComplex, CoefficientModule, DEFAULT_BUDGET};
use crate::hopf::{hopf_cyclic, tau_crosscheck, trivial_contraaction, twisted_involution_check, validate_hopf, HopfAlgebra};
use crate::io::Presentation;
use crate::report::{Check, SuiteReport, SCHEMA_VERSION};

/// One verification suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Validate,
    Cohomology,
    Operad,
    Cyclic,
    Bv,
    Nakayama,
    Dual,
}

impl Suite {
    pub const ALL: [Suite; 7] = [Suite::Validate, Suite::Cohomology, Suite::Operad, Suite::Cyclic, Suite::Bv, Suite::Nakayama, Suite::Dual];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Validate => "validate",
            Suite::Cohomology => "cohomology",
            Suite::Operad => "operad",
            Suite::Cyclic => "cyclic",
            Suite::Bv => "bv",
            Suite::Nakayama => "nakayama",
            Suite::Dual => "dual",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// Bounds shared by every suite of one run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunConfig {
    /// Overrides the per-instance default degree bound.
    pub max_degree: Option<usize>,
    pub budget: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { max_degree: None, budget: DEFAULT_BUDGET }
    }
}

impl RunConfig {
    pub fn degree_for(&self, dim: usize) -> usize {
        self.max_degree.unwrap_or_else(|| default_degree(dim))
    }
}

/// Largest degree whose cochain spaces stay small enough for the full BV suite.
pub fn default_degree(dim: usize) -> usize {
    match dim {
        0..=3 => 4,
        4 => 3,
        _ => 2,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Cohomology dimensions for degrees `0..=n` of one complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionRow {
    pub complex: String,
    pub dims: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_us: u64,
}

impl Timing {
    fn since(t: Instant) -> Self {
        Timing { elapsed_us: t.elapsed().as_micros().try_into().unwrap_or(u64::MAX) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteRun {
    pub suite: Suite,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub dimensions: Vec<DimensionRow>,
    pub sections: Vec<SuiteReport>,
    pub timing: Timing,
}

impl SuiteRun {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn section(&self, name: &str) -> Option<&SuiteReport> {
        self.sections.iter().find(|s| s.suite == name)
    }

    /// Finds a check by name across all sections.
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.sections.iter().find_map(|s| s.check(name))
    }

    pub fn dims(&self, complex: &str) -> Option<&[usize]> {
        self.dimensions.iter().find(|r| r.complex == complex).map(|r| r.dims.as_slice())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceReport {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    pub field: String,
    pub dim: usize,
    pub max_degree: usize,
    pub passed: bool,
    pub suites: Vec<SuiteRun>,
}

impl InstanceReport {
    pub fn suite(&self, s: Suite) -> Option<&SuiteRun> {
        self.suites.iter().find(|r| r.suite == s)
    }
}

/// Top-level output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub passed: bool,
    pub instances: Vec<InstanceReport>,
    pub timing: Timing,
}

impl Report {
    pub fn new(command: impl Into<String>, instances: Vec<InstanceReport>, started: Instant) -> Self {
        let passed = instances.iter().all(|i| i.passed);
        Report { schema_version: SCHEMA_VERSION, command: command.into(), passed, instances, timing: Timing::since(started) }
    }
}

/// Assembles per-suite results, in the given order, into an instance report.
pub fn instance_report(p: &Presentation, source: Option<String>, cfg: &RunConfig, runs: Vec<SuiteRun>) -> InstanceReport {
    let a = &p.algebra;
    InstanceReport {
        name: p.name.clone().unwrap_or_else(|| "unnamed".into()),
        source,
        field: a.field().to_string(),
        dim: a.dim(),
        max_degree: cfg.degree_for(a.dim()),
        passed: runs.iter().all(SuiteRun::passed),
        suites: runs,
    }
}

/// Runs one suite on one presentation.
///
/// Budget overruns propagate as errors; missing structure yields [`Status::Skipped`].
pub fn run_suite(p: &Presentation, suite: Suite, cfg: &RunConfig) -> Result<SuiteRun> {
    let started = Instant::now();
    let ctx = Ctx::new(p, cfg)?;
    let out = match suite {
        Suite::Validate => ctx.validate(),
        Suite::Cohomology => ctx.cohomology(),
        Suite::Operad => ctx.operad(),
        Suite::Cyclic => ctx.cyclic(),
        Suite::Bv => ctx.bv(),
        Suite::Nakayama => ctx.nakayama(),
        Suite::Dual => ctx.dual(),
    }?;
    let status = match (&out.skipped, out.sections.iter().all(SuiteReport::passed)) {
        (Some(_), _) => Status::Skipped,
        (None, true) => Status::Pass,
        (None, false) => Status::Fail,
    };
    Ok(SuiteRun {
        suite,
        status,
        reason: out.skipped,
        dimensions: out.dimensions,
        sections: out.sections,
        timing: Timing::since(started),
    })
}

#[derive(Default)]
struct Outcome {
    sections: Vec<SuiteReport>,
    dimensions: Vec<DimensionRow>,
    skipped: Option<String>,
}

impl Outcome {
    fn skip(reason: impl Into<String>) -> Self {
        Outcome { skipped: Some(reason.into()), ..Default::default() }
    }

    fn row(&mut self, complex: impl Into<String>, dims: Vec<usize>) {
        self.dimensions.push(DimensionRow { complex: complex.into(), dims });
    }
}

struct Ctx<'a> {
    p: &'a Presentation,
    bound: usize,
    budget: usize,
    /// Parsed Frobenius data; `Err` keeps the reason the form was rejected.
    frob: Option<std::result::Result<FrobeniusStructure, Error>>,
}

impl<'a> Ctx<'a> {
    fn new(p: &'a Presentation, cfg: &RunConfig) -> Result<Self> {
        let bound = cfg.degree_for(p.algebra.dim());
        if bound == 0 && cfg.max_degree.is_some() {
            return Err(Error::Schema("--max-degree must be positive".into()));
        }
        let frob = p.frobenius.as_ref().map(|eps| frobenius_structure(&p.algebra, eps));
        Ok(Ctx { p, bound, budget: cfg.budget, frob })
    }

    fn complex(&self) -> Arc<CochainComplex> {
        Arc::new(CochainComplex::endomorphism(self.p.algebra.clone()).with_budget(self.budget))
    }

    fn frobenius(&self) -> std::result::Result<&FrobeniusStructure, String> {
        match &self.frob {
            None => Err("no Frobenius form given".into()),
            Some(Err(e)) => Err(e.to_string()),
            Some(Ok(f)) => Ok(f),
        }
    }

    fn grouplike(&self, h: &HopfAlgebra) -> Vec<Scalar> {
        h.grouplike().map(<[Scalar]>::to_vec).unwrap_or_else(|| h.algebra().unit().to_vec())
    }

    fn validate(&self) -> Result<Outcome> {
        let a = &self.p.algebra;
        let mut out = Outcome::default();
        let alg = a.validate();
        let algebra_ok = alg.passed();
        out.sections.push(alg.report);
        match &self.frob {
            None => {}
            Some(Err(e)) => {
                let mut r = SuiteReport::new("frobenius");
                r.push(Check::from_bool("Frobenius form is nondegenerate", false, || e.to_string()));
                out.sections.push(r);
            }
            Some(Ok(f)) if algebra_ok => {
                let mut r = f.check_invariants(a);
                r.note(format!("symmetric: {}", f.is_symmetric()));
                out.sections.push(r);
            }
            Some(Ok(_)) => {}
        }
        if let Some(h) = &self.p.hopf {
            let mut r = validate_hopf(h);
            let g = self.grouplike(h);
            match twisted_involution_check(h, &g) {
                Ok(ok) => r.push(Check::from_bool("S² is conjugation by the distinguished grouplike", ok, || "S² ≠ ς(−)ς⁻¹".into()).info()),
                Err(e) => r.note(format!("twisted involution not checked: {e}")),
            }
            out.sections.push(r);
        }
        Ok(out)
    }

    fn cohomology(&self) -> Result<Outcome> {
        let a = &self.p.algebra;
        let mut out = Outcome::default();
        let mut rep = SuiteReport::new("cohomology");
        let mut square = Check::new("β² = 0");
        let mut record = |label: &str, cx: &CochainComplex, out: &mut Outcome| -> Result<()> {
            for n in 0..self.bound {
                let d0 = cx.differential_matrix(n)?;
                let d1 = cx.differential_matrix(n + 1)?;
                square.record(d1.mul(&d0)?.is_zero(), || format!("{label}, degree {n}"));
            }
            out.row(label, cohomology_dims(cx, None, self.bound)?);
            Ok(())
        };
        record("HH(A, A)", &self.complex(), &mut out)?;
        if let Ok(f) = self.frobenius() {
            if !f.is_symmetric() {
                let m = Arc::new(CoefficientModule::twisted(a, f.nakayama()));
                let cx = CochainComplex::with_module(a.clone(), m)?.with_budget(self.budget);
                record("HH(A, σA)", &cx, &mut out)?;
            }
        }
        if let Some(h) = &self.p.hopf {
            record("Ext_H(k, k)", &h.complex(self.budget), &mut out)?;
        }
        rep.push(square);
        out.sections.push(rep);
        Ok(out)
    }

    fn operad(&self) -> Result<Outcome> {
        let b = self.bound.min(3);
        let mut out = Outcome::default();
        let mut rep = operad_axiom_report(&self.complex(), b, b, b)?;
        rep.suite = "endomorphism operad".into();
        out.sections.push(rep);
        if let Some(h) = &self.p.hopf {
            let mut rep = operad_axiom_report(&h.complex(self.budget), b, b, b)?;
            rep.suite = "convolution operad".into();
            out.sections.push(rep);
        }
        Ok(out)
    }

    fn cyclic(&self) -> Result<Outcome> {
        let a = &self.p.algebra;
        let mut out = Outcome::default();
        if let Ok(f) = self.frobenius() {
            let gamma = frobenius_contraaction(a, f)?;
            let module = CoefficientModule::twisted(a, f.nakayama());
            let mut contra = gamma.check_axioms(&ContraBase::Envelope(a.clone()), &module);
            // Against the plain left action the defect is σ; against the twisted one it vanishes.
            let defect = gamma.stability_defect(&CoefficientModule::regular(a));
            contra.push(Check::from_bool("stability defect of the plain action equals σ", defect == *f.nakayama(), || "defect ≠ σ".into()));
            contra.push(Check::from_bool("plain action is stable iff ε is symmetric", defect.is_identity() == f.is_symmetric(), || "mismatch".into()));
            contra.push(Check::from_bool("twisted module σA is stable", gamma.is_stable(&module), || "γ((−)m) ≠ m".into()));
            if f.is_symmetric() {
                contra.extend(symmetric_contraaction_crosscheck(a, f, &gamma)?);
            }
            out.sections.push(contra);
            let cs = CyclicStructure::envelope(self.complex(), gamma);
            out.sections.push(cyclic_operad_report(&cs, self.bound, Some(f.nakayama()))?);
            out.sections.push(homotopy_report(&cs, self.bound)?);
        }
        if let Some(h) = &self.p.hopf {
            let g = self.grouplike(h);
            if !twisted_involution_check(h, &g)? {
                let mut r = SuiteReport::new("hopf cyclic");
                r.push(Check::from_bool("S² is conjugation by the distinguished grouplike", false, || "S² ≠ ς(−)ς⁻¹".into()));
                out.sections.push(r);
            } else {
                let gamma = trivial_contraaction(h, &g)?;
                let mut contra = gamma.check_axioms(&h.contra_base(), &h.trivial_module());
                contra.suite = "contraaction on k".into();
                out.sections.push(contra);
                let cs = hopf_cyclic(h, &g, self.budget)?;
                let mut rep = cyclic_operad_report(&cs, self.bound, None)?;
                rep.suite = "hopf cyclic operad".into();
                rep.push(tau_crosscheck(h, &g, self.bound, self.budget)?);
                out.sections.push(rep);
                let mut hom = homotopy_report(&cs, self.bound)?;
                hom.suite = "hopf homotopy".into();
                out.sections.push(hom);
            }
        }
        if out.sections.is_empty() {
            return Ok(Outcome::skip(self.frobenius().err().unwrap_or_default()));
        }
        Ok(out)
    }

    fn bv(&self) -> Result<Outcome> {
        let a = &self.p.algebra;
        let mut out = Outcome::default();
        let cx = self.complex();
        let cyclic = match self.frobenius() {
            Ok(f) if f.is_symmetric() => Some(Arc::new(CyclicStructure::envelope(cx.clone(), frobenius_contraaction(a, f)?))),
            _ => None,
        };
        let symmetric = cyclic.is_some();
        let engine = BvEngine::new(cx, cyclic, None::<Arc<Subcomplex>>, self.bound)?;
        out.row("HH(A, A)", engine.dims());
        let mut g = engine.gerstenhaber_report()?;
        g.suite = "Gerstenhaber on HH(A, A)".into();
        out.sections.push(g);
        if symmetric {
            let mut b = engine.bv_report()?;
            b.suite = "BV on HH(A, A)".into();
            out.sections.push(b);
        } else if let Some(s) = out.sections.last_mut() {
            s.note("no symmetric Frobenius form: B is not defined on the whole complex");
        }
        if let Some(h) = &self.p.hopf {
            let gl = self.grouplike(h);
            if twisted_involution_check(h, &gl)? {
                let cs = Arc::new(hopf_cyclic(h, &gl, self.budget)?);
                let engine = BvEngine::new(cs.complex().clone(), Some(cs.clone()), None::<Arc<Subcomplex>>, self.bound)?;
                out.row("Ext_H(k, k)", engine.dims());
                let mut g = engine.gerstenhaber_report()?;
                g.suite = "Gerstenhaber on Ext_H(k, k)".into();
                out.sections.push(g);
                let mut b = engine.bv_report()?;
                b.suite = "BV on Ext_H(k, k)".into();
                out.sections.push(b);
            } else {
                let mut r = SuiteReport::new("BV on Ext_H(k, k)");
                r.push(Check::from_bool("S² is conjugation by the distinguished grouplike", false, || "S² ≠ ς(−)ς⁻¹".into()));
                out.sections.push(r);
            }
        }
        Ok(out)
    }

    fn nakayama(&self) -> Result<Outcome> {
        let f = match self.frobenius() {
            Ok(f) => f,
            Err(reason) => return Ok(Outcome::skip(reason)),
        };
        let allow = self.p.algebra.field().characteristic() > 0;
        match nakayama_weight_report(&self.p.algebra, f, self.bound, self.budget, allow) {
            Ok(r) => Ok(Outcome { sections: vec![r], ..Default::default() }),
            Err(e @ (Error::NotDiagonalizable | Error::PositiveCharacteristic)) => Ok(Outcome::skip(e.to_string())),
            Err(e) => Err(e),
        }
    }

    fn dual(&self) -> Result<Outcome> {
        let a = &self.p.algebra;
        let mut out = Outcome::default();
        let rename = |mut r: SuiteReport, prefix: &str| {
            r.suite = format!("{prefix}: {}", r.suite);
            r
        };
        let env = LeftHopfAlgebroid::envelope(a.clone());
        out.sections.push(rename(env.translation_report(), "A^e"));
        out.sections.push(rename(env.dual_report(), "A^e"));
        out.sections.push(rename(env.hopf_galois_report(None), "A^e"));
        if let Ok(f) = self.frobenius() {
            let gamma = frobenius_contraaction(a, f)?;
            let module = CoefficientModule::twisted(a, f.nakayama());
            out.sections.push(rename(env.dictionary_report(&gamma, &module)?, "A^e"));
        }
        if let Some(h) = &self.p.hopf {
            let u = LeftHopfAlgebroid::from_hopf(h)?;
            out.sections.push(rename(u.translation_report(), "H"));
            out.sections.push(rename(u.dual_report(), "H"));
            out.sections.push(rename(u.hopf_galois_report(Some(h.antipode())), "H"));
            let g = self.grouplike(h);
            let gamma = trivial_contraaction(h, &g)?;
            out.sections.push(rename(u.dictionary_report(&gamma, &h.trivial_module())?, "H"));
        }
        Ok(out)
    }
}
