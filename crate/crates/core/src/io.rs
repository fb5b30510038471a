//! JSON files for algebras and maximality reports. Output is canonical:
//! sorted keys, rationals as lowest-terms strings, no whitespace.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Realization, RealizationKind, Shape, Superalgebra, Superinvolution};
use crate::catalog::CatalogEntry;
use crate::error::{Error, Result};
use crate::generation::{maximality_check, MaximalityReport, Mode};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::subspace::{GradedSubspace, Parity};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationBlock {
    pub kind: String,
    pub module_parities: Vec<u8>,
    pub matrices: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub format_version: u32,
    pub name: String,
    pub dim: usize,
    pub parities: Vec<u8>,
    pub constants: Vec<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub realization: Option<RealizationBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub superinvolution: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<String>,
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

fn matrix_strings(m: &Matrix<Scalar>) -> Vec<Vec<String>> {
    m.row_vectors().iter().map(|r| strings(r)).collect()
}

fn parse_scalar(s: &str) -> Result<Scalar> {
    s.parse()
}

fn parse_matrix(rows: &[Vec<String>], n: usize) -> Result<Matrix<Scalar>> {
    let rows: Vec<Vec<Scalar>> =
        rows.iter().map(|r| r.iter().map(|s| parse_scalar(s)).collect::<Result<_>>()).collect::<Result<_>>()?;
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Parse(format!("expected a {n}×{n} matrix")));
    }
    Matrix::from_rows(&(), n, &rows)
}

fn parities_from(bits: &[u8]) -> Result<Vec<Parity>> {
    bits.iter()
        .map(|&b| match b {
            0 | 1 => Ok(Parity::from_bit(b)),
            _ => Err(Error::Parse(format!("parity {b} is not 0 or 1"))),
        })
        .collect()
}

fn shape_string(s: Shape) -> Option<String> {
    match s {
        Shape::Table => None,
        Shape::Matrix { n } => Some(format!("matrix:{n}")),
        Shape::MatrixPlus { n } => Some(format!("matrix-plus:{n}")),
    }
}

fn parse_shape(s: &str) -> Result<Shape> {
    let bad = || Error::Parse(format!("unknown shape {s:?}"));
    match s.split_once(':') {
        Some(("matrix", n)) => Ok(Shape::Matrix { n: n.parse().map_err(|_| bad())? }),
        Some(("matrix-plus", n)) => Ok(Shape::MatrixPlus { n: n.parse().map_err(|_| bad())? }),
        _ if s == "table" => Ok(Shape::Table),
        _ => Err(bad()),
    }
}

impl AlgebraFile {
    pub fn from_algebra(a: &Superalgebra, s: Option<&Superinvolution>) -> AlgebraFile {
        let default_labels = a.labels().iter().enumerate().all(|(i, l)| *l == format!("b{i}"));
        AlgebraFile {
            format_version: FORMAT_VERSION,
            name: a.name().to_string(),
            dim: a.dim(),
            parities: a.parities().iter().map(|p| p.bit()).collect(),
            constants: a.dense_constants().iter().map(|row| row.iter().map(|v| strings(v)).collect()).collect(),
            labels: (!default_labels).then(|| a.labels().to_vec()),
            realization: a.realization().map(|r| RealizationBlock {
                kind: match r.kind {
                    RealizationKind::Matrix => "matrix".into(),
                    RealizationKind::Queer => "queer".into(),
                },
                module_parities: r.module_parities.iter().map(|p| p.bit()).collect(),
                matrices: r.matrices.iter().map(matrix_strings).collect(),
            }),
            superinvolution: s.map(|s| matrix_strings(&s.map)),
            shape: shape_string(a.shape()),
        }
    }

    pub fn from_entry(e: &CatalogEntry) -> AlgebraFile {
        Self::from_algebra(&e.algebra, e.superinvolution.as_ref())
    }

    /// Rebuilds the algebra, re-validating the grading, the realization and
    /// any fast-path shape against the constants.
    pub fn to_entry(&self) -> Result<CatalogEntry> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Parse(format!("unsupported format_version {}", self.format_version)));
        }
        let d = self.dim;
        if self.parities.len() != d || self.constants.len() != d {
            return Err(Error::Parse(format!("dim {d} disagrees with parities or constants")));
        }
        let parities = parities_from(&self.parities)?;
        let mut table = Vec::with_capacity(d * d);
        for row in &self.constants {
            if row.len() != d {
                return Err(Error::Parse("constants must be dim × dim × dim".into()));
            }
            for v in row {
                if v.len() != d {
                    return Err(Error::Parse("constants must be dim × dim × dim".into()));
                }
                let mut sparse = Vec::new();
                for (k, s) in v.iter().enumerate() {
                    let c = parse_scalar(s)?;
                    if !c.is_zero() {
                        sparse.push((k, c));
                    }
                }
                table.push(sparse);
            }
        }
        let mut a = Superalgebra::from_table(self.name.clone(), self.labels.clone().unwrap_or_default(), parities, table)?;
        if let Some(r) = &self.realization {
            let kind = match r.kind.as_str() {
                "matrix" => RealizationKind::Matrix,
                "queer" => RealizationKind::Queer,
                k => return Err(Error::Parse(format!("unknown realization kind {k:?}"))),
            };
            let n = r.module_parities.len();
            if r.matrices.len() != d {
                return Err(Error::Parse("realization needs one matrix per basis element".into()));
            }
            let matrices = r.matrices.iter().map(|m| parse_matrix(m, n)).collect::<Result<Vec<_>>>()?;
            let real = Realization { matrices, module_parities: parities_from(&r.module_parities)?, kind };
            for i in 0..d {
                if real.matrix_parity(&real.matrices[i]) != Some(a.parity(i)) {
                    return Err(Error::Parse(format!("realization matrix {i} has the wrong parity")));
                }
            }
            a = a.with_realization(real);
        }
        if let Some(s) = &self.shape {
            let shape = parse_shape(s)?;
            let shaped = a.clone().with_shape(shape);
            let fits = match shape {
                Shape::Table => true,
                Shape::Matrix { n } | Shape::MatrixPlus { n } => n * n == d,
            };
            let agrees = fits
                && (0..d).all(|i| {
                    (0..d).all(|j| shaped.mul(&a.basis(i), &a.basis(j)) == a.table().basis_product_dense(i, j))
                });
            if !agrees {
                return Err(Error::Parse(format!("shape {s} disagrees with the constants")));
            }
            a = shaped;
        }
        let superinvolution = match &self.superinvolution {
            None => None,
            Some(rows) => Some(Superinvolution { map: parse_matrix(rows, d)?, algebra: Arc::new(a.clone()) }),
        };
        Ok(CatalogEntry { algebra: a, superinvolution })
    }

    pub fn to_canonical_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&serde_json::to_value(self)?)?)
    }

    pub fn from_json(s: &str) -> Result<AlgebraFile> {
        Ok(serde_json::from_str(s)?)
    }
}

pub fn write_algebra(path: &Path, e: &CatalogEntry) -> Result<()> {
    std::fs::write(path, AlgebraFile::from_entry(e).to_canonical_json()?)?;
    Ok(())
}

pub fn read_algebra(path: &Path) -> Result<CatalogEntry> {
    AlgebraFile::from_json(&std::fs::read_to_string(path)?)?.to_entry()
}

/// A maximality run with everything needed to repeat it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportFile {
    pub format_version: u32,
    pub claim: String,
    pub mode: Mode,
    pub verdict: String,
    pub ambient_dims: (usize, usize),
    pub sub_dims: (usize, usize),
    pub sub_basis: Vec<Vec<String>>,
    pub seed: Option<u64>,
    pub prime: Option<u64>,
    pub millis: u128,
    pub report: MaximalityReport,
}

impl ReportFile {
    pub fn new(claim: impl Into<String>, sub: &GradedSubspace<Scalar>, report: MaximalityReport, millis: u128) -> Self {
        let (seed, prime) = match report.mode {
            Mode::Randomized { seed, .. } => (Some(seed), None),
            Mode::ExhaustiveModP { p } => (None, Some(p)),
            Mode::ComplementBasis => (None, None),
        };
        ReportFile {
            format_version: FORMAT_VERSION,
            claim: claim.into(),
            mode: report.mode,
            verdict: report.verdict.to_string(),
            ambient_dims: report.ambient_dims,
            sub_dims: report.sub_dims,
            sub_basis: sub.basis().iter().map(|v| strings(v)).collect(),
            seed,
            prime,
            millis,
            report,
        }
    }

    pub fn to_canonical_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&serde_json::to_value(self)?)?)
    }

    pub fn from_json(s: &str) -> Result<ReportFile> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn sub(&self, j: &Superalgebra) -> Result<GradedSubspace<Scalar>> {
        let vs: Vec<Vec<Scalar>> = self
            .sub_basis
            .iter()
            .map(|v| v.iter().map(|s| parse_scalar(s)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        GradedSubspace::graded_hull(&(), j.parities(), &vs)
    }

    /// Re-runs the recorded mode; true when verdict and witnesses repeat.
    pub fn replay(&self, j: &Superalgebra) -> Result<bool> {
        let again = maximality_check(j, &self.sub(j)?, self.mode)?;
        Ok(again.verdict == self.report.verdict && again.witnesses == self.report.witnesses)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::build;

    #[test]
    fn round_trip_is_byte_identical() {
        for spec in ["K3", "Dt:-2/3", "Mosp:1,1", "Q:2", "plus:M:1,1", "osp:1,1", "kantor:1"] {
            let e = build(spec).unwrap();
            let a = AlgebraFile::from_entry(&e).to_canonical_json().unwrap();
            let back = AlgebraFile::from_json(&a).unwrap().to_entry().unwrap();
            assert_eq!(back.algebra, e.algebra, "{spec}");
            let b = AlgebraFile::from_entry(&back).to_canonical_json().unwrap();
            assert_eq!(a, b, "{spec}");
        }
    }

    #[test]
    fn keys_are_sorted() {
        let s = AlgebraFile::from_entry(&build("K3").unwrap()).to_canonical_json().unwrap();
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert!(s.starts_with("{\"constants\":"));
    }

    #[test]
    fn grading_is_revalidated() {
        let mut f = AlgebraFile::from_entry(&build("K3").unwrap());
        // e·e = x would be even·even → odd
        f.constants[0][0][1] = "1".into();
        assert!(f.to_entry().is_err());
        let mut f = AlgebraFile::from_entry(&build("K3").unwrap());
        f.constants[0][0][0] = "1/0".into();
        assert!(f.to_entry().is_err());
        let mut f = AlgebraFile::from_entry(&build("M:1,1").unwrap());
        f.shape = Some("matrix:3".into());
        assert!(f.to_entry().is_err());
    }

    #[test]
    fn reports_replay() {
        let d1 = Arc::new(build("Dt:1").unwrap().algebra);
        let sub = GradedSubspace::from_homogeneous(&(), d1.parities(), &[d1.basis(0)]).unwrap();
        for mode in [Mode::ComplementBasis, Mode::Randomized { trials: 10, seed: 9 }, Mode::ExhaustiveModP { p: 5 }] {
            let r = maximality_check(&d1, &sub, mode).unwrap();
            let file = ReportFile::new("neg", &sub, r, 0);
            let back = ReportFile::from_json(&file.to_canonical_json().unwrap()).unwrap();
            assert_eq!(back, file);
            assert!(back.replay(&d1).unwrap());
        }
    }
}
