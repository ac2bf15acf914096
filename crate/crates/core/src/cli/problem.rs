//! Problem files: a field, a semidirect product `N ⋊ H` and optional named
//! representations, validated in that order.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::fields::{FieldSpec, Scalar};
use crate::groups::{group_from_permutations, AbelianGroupSpec, IntMatrix, SemidirectGroup, Subgroup};
use crate::linalg::Matrix;
use crate::repr::{require_semisimple, Representation};

/// A field element as written in files: an integer for prime fields, a
/// little-endian coefficient list for extensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Encoded {
    Int(i64),
    Coeffs(Vec<i64>),
}

impl Encoded {
    pub fn encode(field: &FieldSpec, x: Scalar) -> Self {
        if field.degree() == 1 {
            Encoded::Int(x as i64)
        } else {
            Encoded::Coeffs(field.coeffs(x).into_iter().map(i64::from).collect())
        }
    }

    pub fn decode(&self, field: &FieldSpec) -> crate::Result<Scalar> {
        match self {
            Encoded::Int(n) => Ok(field.from_int(*n)),
            Encoded::Coeffs(c) => field.from_coeffs(c),
        }
    }
}

pub fn encode_matrix(m: &Matrix) -> Vec<Vec<Encoded>> {
    m.to_rows().into_iter().map(|r| r.into_iter().map(|x| Encoded::encode(m.field(), x)).collect()).collect()
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDesc {
    pub p: u64,
    #[serde(default = "one")]
    pub k: usize,
    #[serde(default)]
    pub min_poly: Option<Vec<u64>>,
}

fn one() -> usize {
    1
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NDesc {
    pub moduli: Vec<u64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HDesc {
    pub perm_gens: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepDesc {
    /// Generators of the subgroup the representation lives on, as words in
    /// the generators of `G`. Absent means `G` itself.
    #[serde(default)]
    pub subgroup: Option<Vec<String>>,
    /// One square matrix per subgroup generator, rows outermost.
    pub images: Vec<Vec<Vec<Encoded>>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub field: FieldDesc,
    #[serde(rename = "N")]
    pub n: NDesc,
    #[serde(rename = "H")]
    pub h: HDesc,
    pub action: Vec<IntMatrix>,
    #[serde(default)]
    pub reps: BTreeMap<String, RepDesc>,
}

/// A validation failure together with the part of the file it concerns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemError {
    pub location: String,
    pub error: Error,
}

impl fmt::Display for ProblemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.error)
    }
}

impl std::error::Error for ProblemError {}

fn at(location: impl Into<String>) -> impl FnOnce(Error) -> ProblemError {
    let location = location.into();
    move |error| ProblemError { location, error }
}

/// A representation named in the problem file.
#[derive(Clone, Debug)]
pub struct NamedRep {
    pub subgroup: Subgroup,
    pub rep: Representation,
}

#[derive(Clone, Debug)]
pub struct ProblemSpec {
    pub field: FieldSpec,
    pub group: SemidirectGroup,
    pub reps: BTreeMap<String, NamedRep>,
}

pub fn parse_problem(text: &str) -> Result<ProblemSpec, ProblemError> {
    let file: ProblemFile =
        serde_json::from_str(text).map_err(|e| ProblemError { location: "file".into(), error: Error::Parse(e.to_string()) })?;
    validate(&file)
}

pub fn validate(file: &ProblemFile) -> Result<ProblemSpec, ProblemError> {
    let fd = &file.field;
    let field = FieldSpec::new(fd.p, fd.k, fd.min_poly.as_deref()).map_err(at("field"))?;
    let n = AbelianGroupSpec::new(file.n.moduli.clone()).map_err(at("N.moduli"))?;
    let h = Arc::new(group_from_permutations(&file.h.perm_gens).map_err(at("H.perm_gens"))?);
    let order = n.order() * h.order();
    require_semisimple(order, &field).map_err(at("field.p"))?;
    let group = SemidirectGroup::new(n, &h, file.action.clone()).map_err(at("action"))?;
    let mut reps = BTreeMap::new();
    for (name, desc) in &file.reps {
        let loc = format!("reps.{name}");
        let named = build_rep(&group, &field, desc, &loc)?;
        reps.insert(name.clone(), named);
    }
    Ok(ProblemSpec { field, group, reps })
}

fn build_rep(sd: &SemidirectGroup, field: &FieldSpec, desc: &RepDesc, loc: &str) -> Result<NamedRep, ProblemError> {
    let g = sd.group();
    let subgroup = match &desc.subgroup {
        None => Subgroup::whole(g),
        Some(words) => {
            let elems = words
                .iter()
                .enumerate()
                .map(|(i, w)| g.parse_word(w).map_err(at(format!("{loc}.subgroup[{i}]"))))
                .collect::<Result<Vec<_>, _>>()?;
            Subgroup::generated(g, &elems).map_err(at(format!("{loc}.subgroup")))?
        }
    };
    let dim = desc.images.first().map_or(0, Vec::len);
    let images = desc
        .images
        .iter()
        .enumerate()
        .map(|(i, rows)| {
            let vals = rows
                .iter()
                .map(|r| r.iter().map(|x| x.decode(field)).collect::<crate::Result<Vec<_>>>())
                .collect::<crate::Result<Vec<_>>>()
                .map_err(at(format!("{loc}.images[{i}]")))?;
            if vals.is_empty() {
                return Err(at(format!("{loc}.images[{i}]"))(Error::DimensionMismatch("empty matrix".into())));
            }
            Matrix::from_rows(field, &vals).map_err(at(format!("{loc}.images[{i}]")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if dim == 0 && subgroup.group().generators().is_empty() {
        return Err(at(format!("{loc}.images"))(Error::DimensionMismatch(
            "cannot infer the dimension of a representation of the trivial group".into(),
        )));
    }
    let rep = Representation::from_images(subgroup.group(), field, dim, images).map_err(at(format!("{loc}.images")))?;
    Ok(NamedRep { subgroup, rep })
}

#[cfg(test)]
mod tests {
    use super::*;

    const S3: &str = r#"{"field": {"p": 7}, "N": {"moduli": [3]}, "H": {"perm_gens": [[1, 0]]}, "action": [[[-1]]]}"#;

    #[test]
    fn s3_file_is_valid() {
        let spec = parse_problem(S3).unwrap();
        assert_eq!(spec.group.order(), 6);
    }

    #[test]
    fn modular_characteristic_refused() {
        let err = parse_problem(&S3.replace("\"p\": 7", "\"p\": 3")).unwrap_err();
        assert_eq!(err.error, Error::CharacteristicDivides { p: 3, order: 6 });
        assert_eq!(err.location, "field.p");
    }

    #[test]
    fn non_automorphism_refused() {
        let text = r#"{"field": {"p": 5}, "N": {"moduli": [4]}, "H": {"perm_gens": [[1, 0]]}, "action": [[[2]]]}"#;
        let err = parse_problem(text).unwrap_err();
        assert_eq!(err.location, "action");
        assert!(matches!(err.error, Error::NotAutomorphism { .. }));
    }

    #[test]
    fn named_reps_on_subgroups() {
        let text = r#"{"field": {"p": 3}, "N": {"moduli": [4]}, "H": {"perm_gens": []}, "action": [],
            "reps": {"L": {"subgroup": ["n0^2"], "images": [[[2]]]}, "bad": {"images": [[[0]]]}}}"#;
        let err = parse_problem(text).unwrap_err();
        assert_eq!(err.location, "reps.bad.images");
        let ok = text.replace(r#", "bad": {"images": [[[0]]]}"#, "");
        let spec = parse_problem(&ok).unwrap();
        assert_eq!(spec.reps["L"].subgroup.order(), 2);
    }

    #[test]
    fn extension_field_entries() {
        let text = r#"{"field": {"p": 5, "k": 2, "min_poly": [1, 1, 1]}, "N": {"moduli": [3]},
            "H": {"perm_gens": []}, "action": [], "reps": {"w": {"images": [[[[0, 1]]]]}}}"#;
        let spec = parse_problem(text).unwrap();
        let x = spec.reps["w"].rep.images()[0].get(0, 0);
        assert_eq!(spec.field.multiplicative_order(x), 3);
        assert_eq!(Encoded::encode(&spec.field, x), Encoded::Coeffs(vec![0, 1]));
    }
}
