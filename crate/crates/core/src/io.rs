//! JSON presentations of algebras, Frobenius forms and Hopf structures.

use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::{Field, Rational, Scalar};
use crate::hopf::HopfAlgebra;

/// A scalar written either as a string such as `"-3/4"` or as a JSON integer.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum RawScalar {
    Int(i64),
    Text(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPresentation {
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    description: Option<String>,
    #[serde(default)]
    field: Option<Field>,
    #[serde(default)]
    dim: Option<usize>,
    basis: Vec<String>,
    mul: Vec<Vec<Vec<RawScalar>>>,
    unit: Vec<RawScalar>,
    #[serde(default)]
    frobenius: Option<Vec<RawScalar>>,
    #[serde(default)]
    comult: Option<Vec<Vec<Vec<RawScalar>>>>,
    #[serde(default)]
    counit: Option<Vec<RawScalar>>,
    #[serde(default)]
    antipode: Option<Vec<Vec<RawScalar>>>,
    #[serde(default)]
    grouplike: Option<Vec<RawScalar>>,
}

/// A parsed input file.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub name: Option<String>,
    pub description: Option<String>,
    pub algebra: Arc<Algebra>,
    pub frobenius: Option<Vec<Scalar>>,
    pub hopf: Option<HopfAlgebra>,
}

#[derive(Serialize)]
struct Emitted<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    name: &'a Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    description: &'a Option<String>,
    field: Field,
    dim: usize,
    basis: &'a [String],
    mul: Vec<Vec<Vec<String>>>,
    unit: Vec<String>,
}

fn scalar(field: Field, raw: &RawScalar) -> Result<Scalar> {
    let r = match raw {
        RawScalar::Int(n) => Rational::from_int(*n),
        RawScalar::Text(s) => Rational::from_str(s).map_err(|_| Error::Schema(format!("{s:?} is not a scalar")))?,
    };
    field.from_rational(&r)
}

fn vector(field: Field, raw: &[RawScalar], len: usize, what: &str) -> Result<Vec<Scalar>> {
    if raw.len() != len {
        return Err(Error::Schema(format!("{what} must have length {len}, found {}", raw.len())));
    }
    raw.iter().map(|x| scalar(field, x)).collect()
}

fn matrix(field: Field, raw: &[Vec<RawScalar>], rows: usize, cols: usize, what: &str) -> Result<Vec<Vec<Scalar>>> {
    if raw.len() != rows {
        return Err(Error::Schema(format!("{what} must have {rows} rows, found {}", raw.len())));
    }
    raw.iter().enumerate().map(|(i, r)| vector(field, r, cols, &format!("{what}[{i}]"))).collect()
}

fn cube(field: Field, raw: &[Vec<Vec<RawScalar>>], d: usize, what: &str) -> Result<Vec<Vec<Vec<Scalar>>>> {
    if raw.len() != d {
        return Err(Error::Schema(format!("{what} must have {d} entries, found {}", raw.len())));
    }
    raw.iter().enumerate().map(|(i, m)| matrix(field, m, d, d, &format!("{what}[{i}]"))).collect()
}

/// Parses a presentation; `field_override` replaces the field named in the file.
pub fn parse_presentation(text: &str, field_override: Option<Field>) -> Result<Presentation> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let raw: RawPresentation = serde_json::from_value(value).map_err(|e| Error::Schema(e.to_string()))?;
    let field = field_override.or(raw.field).unwrap_or(Field::Rationals);
    let d = raw.basis.len();
    if d == 0 {
        return Err(Error::Schema("basis must be nonempty".into()));
    }
    if raw.dim.is_some_and(|n| n != d) {
        return Err(Error::Schema(format!("dim {} disagrees with {d} basis labels", raw.dim.unwrap_or(0))));
    }
    let mul = cube(field, &raw.mul, d, "mul")?;
    let unit = vector(field, &raw.unit, d, "unit")?;
    let algebra = Arc::new(Algebra::new(field, raw.basis.clone(), mul, unit)?);
    let frobenius = raw.frobenius.as_deref().map(|f| vector(field, f, d, "frobenius")).transpose()?;

    let hopf = match (&raw.comult, &raw.counit, &raw.antipode) {
        (None, None, None) => {
            if raw.grouplike.is_some() {
                return Err(Error::Schema("grouplike given without a Hopf structure".into()));
            }
            None
        }
        (Some(c), Some(e), Some(s)) => {
            let comult = cube(field, c, d, "comult")?;
            let counit = vector(field, e, d, "counit")?;
            let antipode = matrix(field, s, d, d, "antipode")?;
            let grouplike = raw.grouplike.as_deref().map(|g| vector(field, g, d, "grouplike")).transpose()?;
            Some(HopfAlgebra::new(algebra.clone(), comult, counit, antipode, grouplike)?)
        }
        _ => return Err(Error::Schema("comult, counit and antipode must be given together".into())),
    };
    Ok(Presentation { name: raw.name, description: raw.description, algebra, frobenius, hopf })
}

pub fn load_presentation(path: impl AsRef<Path>, field_override: Option<Field>) -> Result<Presentation> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_presentation(&text, field_override)
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

/// Serialises a presentation in the input format.
pub fn presentation_to_json(p: &Presentation) -> Value {
    let a = &p.algebra;
    let emitted = Emitted {
        name: &p.name,
        description: &p.description,
        field: a.field(),
        dim: a.dim(),
        basis: a.labels(),
        mul: a.structure_constants().iter().map(|m| m.iter().map(|r| strings(r)).collect()).collect(),
        unit: strings(a.unit()),
    };
    let mut v = serde_json::to_value(emitted).expect("serialisable");
    let obj = v.as_object_mut().expect("object");
    if let Some(f) = &p.frobenius {
        obj.insert("frobenius".into(), json!(strings(f)));
    }
    if let Some(h) = &p.hopf {
        let d = a.dim();
        let field = a.field();
        let comult: Vec<Vec<Vec<String>>> = h
            .coproduct()
            .iter()
            .map(|terms| {
                let mut m = vec![vec![field.zero(); d]; d];
                for (j, k, c) in terms {
                    m[*j][*k] += c;
                }
                m.iter().map(|r| strings(r)).collect()
            })
            .collect();
        obj.insert("comult".into(), json!(comult));
        obj.insert("counit".into(), json!(strings(h.counit())));
        let antipode: Vec<Vec<String>> = (0..d).map(|i| strings(&h.antipode().column(i))).collect();
        obj.insert("antipode".into(), json!(antipode));
        if let Some(g) = h.grouplike() {
            obj.insert("grouplike".into(), json!(strings(g)));
        }
    }
    v
}
