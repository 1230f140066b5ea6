//! The JSON instance format.
//!
//! Rationals are `"p/q"` strings and field elements are arrays of
//! coefficient strings in the power basis. Matrices and subspace bases are
//! arrays of columns (subspace, group) or rows (conjugator, matrix).

use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactfield::{parse_rational, FieldElement, NumberField};
use crate::heights::SubspaceSpec;
use crate::liematrix::{kpoint_from_matrix, GroupData, JordanBlock, JordanData, KPoint, LogEigenvalue, MatrixK};

pub const DEFAULT_PRECISION: u32 = 128;
pub const DEFAULT_SEARCH_BUDGET: u32 = 2;

type ElementStrings = Vec<String>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    /// Integer coefficients, constant term first.
    pub minpoly: Vec<String>,
    /// Rows are the basis elements in power-basis coordinates.
    #[serde(default)]
    pub integral_basis: Option<Vec<Vec<String>>>,
    /// Image of the generator under complex conjugation.
    #[serde(default)]
    pub conjugation_image: Option<ElementStrings>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub m: usize,
    /// Columns of the `m^2 x n` coordinate matrix; `null` means `GL_m`.
    #[serde(default)]
    pub basis: Option<Vec<Vec<ElementStrings>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockSpec {
    pub alpha: ElementStrings,
    #[serde(default)]
    pub branch: i64,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KPointSpec {
    /// Jordan blocks of `u`; with `conjugator` this fixes `u = v j v^-1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<BlockSpec>>,
    /// Rows of `v`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conjugator: Option<Vec<Vec<ElementStrings>>>,
    /// Rows of `exp(u)`, factored automatically when `blocks` is absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<ElementStrings>>>,
    /// One logarithm branch per Jordan block of `matrix`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branches: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigenvalue_hints: Option<Vec<ElementStrings>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceSpecJson {
    pub ambient: usize,
    pub dim: usize,
    /// Basis columns.
    pub basis: Vec<Vec<ElementStrings>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsSpec {
    #[serde(default = "default_precision")]
    pub precision: u32,
    #[serde(default = "default_budget")]
    pub search_budget: u32,
}

fn default_precision() -> u32 {
    DEFAULT_PRECISION
}

fn default_budget() -> u32 {
    DEFAULT_SEARCH_BUDGET
}

impl Default for OptionsSpec {
    fn default() -> Self {
        OptionsSpec { precision: DEFAULT_PRECISION, search_budget: DEFAULT_SEARCH_BUDGET }
    }
}

/// The serialized form of an [`Instance`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub field: FieldSpec,
    pub group: GroupSpec,
    pub kpoint: KPointSpec,
    pub subspace: SubspaceSpecJson,
    #[serde(default)]
    pub options: OptionsSpec,
}

/// A validated instance: every part lives over the same field.
#[derive(Clone, Debug)]
pub struct Instance {
    pub id: String,
    pub field: NumberField,
    pub field_spec: FieldSpec,
    pub group: GroupData,
    pub kpoint: KPoint,
    pub subspace: SubspaceSpec,
    pub options: OptionsSpec,
}

fn canonical_rational(s: &str) -> Result<String> {
    Ok(parse_rational(s)?.to_string())
}

fn canonical_integer(s: &str) -> Result<Integer> {
    s.trim().parse::<Integer>().map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

fn rationals(xs: &[String], what: &str) -> Result<Vec<Rational>> {
    xs.iter().map(|s| parse_rational(s).map_err(|e| Error::Parse(format!("{what}: {e}")))).collect()
}

fn element(field: &NumberField, xs: &[String], what: &str) -> Result<FieldElement> {
    FieldElement::from_coeffs(field, rationals(xs, what)?).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

fn element_matrix(field: &NumberField, rows: &[Vec<ElementStrings>], what: &str) -> Result<Vec<Vec<FieldElement>>> {
    rows.iter()
        .enumerate()
        .map(|(i, r)| r.iter().enumerate().map(|(j, x)| element(field, x, &format!("{what}[{i}][{j}]"))).collect())
        .collect()
}

fn square(field: &NumberField, rows: &[Vec<ElementStrings>], what: &str) -> Result<MatrixK> {
    let entries = element_matrix(field, rows, what)?;
    MatrixK::new(field, entries).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

fn element_out(x: &FieldElement) -> ElementStrings {
    x.to_strings()
}

fn matrix_rows_out(m: &MatrixK) -> Vec<Vec<ElementStrings>> {
    m.entries().iter().map(|r| r.iter().map(element_out).collect()).collect()
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec { minpoly: vec!["0".into(), "1".into()], integral_basis: None, conjugation_image: None }
    }

    /// Parses `Q`, `Q(i)`, `Q(sqrt(d))` or comma-separated minimal
    /// polynomial coefficients, constant term first.
    pub fn from_shorthand(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        match t.as_str() {
            "Q" | "QQ" => return Ok(Self::rationals()),
            "Q(i)" | "Qi" | "Q[i]" => return Ok(FieldSpec { minpoly: vec!["1".into(), "0".into(), "1".into()], ..Self::rationals() }),
            _ => {}
        }
        if let Some(d) = t.strip_prefix("Q(sqrt(").and_then(|r| r.strip_suffix("))")) {
            let d: i64 = d.parse().map_err(|_| Error::Parse(format!("bad radicand in {s:?}")))?;
            let f = NumberField::quadratic(d)?;
            return Ok(Self::of(&f));
        }
        let coeffs: Vec<String> = t.split(',').map(str::to_string).collect();
        let spec = FieldSpec { minpoly: coeffs, integral_basis: None, conjugation_image: None };
        spec.build()?;
        Ok(spec)
    }

    /// The canonical description of an existing field.
    pub fn of(field: &NumberField) -> Self {
        let minpoly = field.minpoly().coeffs().iter().map(|c| c.numer().to_string()).collect();
        let integral_basis = (!field.is_power_basis())
            .then(|| field.integral_basis().iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect());
        FieldSpec { minpoly, integral_basis, conjugation_image: None }
    }

    pub fn build(&self) -> Result<NumberField> {
        let minpoly = self.minpoly.iter().map(|s| canonical_integer(s)).collect::<Result<Vec<_>>>()?;
        let basis = match &self.integral_basis {
            Some(rows) => Some(rows.iter().map(|r| rationals(r, "integral_basis")).collect::<Result<Vec<_>>>()?),
            None => None,
        };
        let conj = match &self.conjugation_image {
            Some(c) => Some(rationals(c, "conjugation_image")?),
            None => None,
        };
        NumberField::new(&minpoly, basis, conj)
    }

    fn canonical(&self) -> Result<Self> {
        let rows = |rs: &Vec<Vec<String>>| rs.iter().map(|r| r.iter().map(|s| canonical_rational(s)).collect()).collect::<Result<Vec<Vec<String>>>>();
        Ok(FieldSpec {
            minpoly: self.minpoly.iter().map(|s| canonical_integer(s).map(|i| i.to_string())).collect::<Result<_>>()?,
            integral_basis: self.integral_basis.as_ref().map(rows).transpose()?,
            conjugation_image: self
                .conjugation_image
                .as_ref()
                .map(|c| c.iter().map(|s| canonical_rational(s)).collect::<Result<Vec<_>>>())
                .transpose()?,
        })
    }
}

impl Instance {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: InstanceSpec = serde_json::from_str(text).map_err(|e| Error::Parse(format!("instance: {e}")))?;
        Self::from_spec(&spec)
    }

    pub fn from_spec(spec: &InstanceSpec) -> Result<Self> {
        let field_spec = spec.field.canonical()?;
        let field = field_spec.build()?;
        let opts = spec.options.clone();
        let m = spec.group.m;
        if m == 0 {
            return Err(Error::Parse("group.m must be positive".into()));
        }
        let group = match &spec.group.basis {
            None => GroupData::general_linear(&field, m),
            Some(cols) => {
                let cols = element_matrix(&field, cols, "group.basis")?;
                let n = cols.len();
                if cols.iter().any(|c| c.len() != m * m) {
                    return Err(Error::Parse(format!("group.basis columns must have {} entries", m * m)));
                }
                let z = (0..m * m).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect();
                GroupData::new(&field, m, z)?
            }
        };
        let kp = &spec.kpoint;
        let conjugator = kp.conjugator.as_ref().map(|rows| square(&field, rows, "kpoint.conjugator")).transpose()?;
        let kpoint = match (&kp.blocks, &kp.matrix) {
            (Some(blocks), None) => {
                let blocks = blocks
                    .iter()
                    .enumerate()
                    .map(|(i, b)| {
                        let alpha = element(&field, &b.alpha, &format!("kpoint.blocks[{i}].alpha"))?;
                        Ok(JordanBlock { eig: LogEigenvalue::new(alpha, b.branch)?, size: b.size })
                    })
                    .collect::<Result<Vec<_>>>()?;
                let jordan = JordanData::new(blocks)?;
                let v = conjugator.unwrap_or_else(|| MatrixK::identity(&field, jordan.m()));
                KPoint::new(jordan, v, group.clone(), opts.precision)?
            }
            (None, Some(rows)) => {
                let g = square(&field, rows, "kpoint.matrix")?;
                let hints = kp
                    .eigenvalue_hints
                    .iter()
                    .flatten()
                    .enumerate()
                    .map(|(i, h)| element(&field, h, &format!("kpoint.eigenvalue_hints[{i}]")))
                    .collect::<Result<Vec<_>>>()?;
                let branches = kp.branches.clone().unwrap_or_default();
                kpoint_from_matrix(&g, &branches, &group, &hints, conjugator.as_ref(), opts.precision)?
            }
            _ => return Err(Error::Parse("kpoint needs exactly one of \"blocks\" or \"matrix\"".into())),
        };
        let sub = &spec.subspace;
        let cols = element_matrix(&field, &sub.basis, "subspace.basis")?;
        if cols.len() != sub.dim {
            return Err(Error::Parse(format!("subspace.dim is {} but {} basis columns are given", sub.dim, cols.len())));
        }
        let subspace = SubspaceSpec::from_columns(&field, sub.ambient, &cols)?;
        if sub.ambient != group.n() {
            return Err(Error::Dimension(format!("subspace of K^{} in a Lie algebra of dimension {}", sub.ambient, group.n())));
        }
        Ok(Instance { id: spec.id.clone().unwrap_or_else(|| "instance".into()), field, field_spec, group, kpoint, subspace, options: opts })
    }

    /// The canonical serialized form: blocks and conjugator for the K-point.
    pub fn to_spec(&self) -> InstanceSpec {
        let group_basis = (!self.group.is_general_linear()).then(|| {
            let z = self.group.z();
            let n = self.group.n();
            (0..n).map(|j| z.iter().map(|row| element_out(&row[j])).collect()).collect()
        });
        let blocks = self
            .kpoint
            .jordan()
            .blocks()
            .iter()
            .map(|b| BlockSpec { alpha: element_out(b.eig.alpha()), branch: b.eig.branch(), size: b.size })
            .collect();
        InstanceSpec {
            id: Some(self.id.clone()),
            field: self.field_spec.clone(),
            group: GroupSpec { m: self.group.m(), basis: group_basis },
            kpoint: KPointSpec {
                blocks: Some(blocks),
                conjugator: Some(matrix_rows_out(self.kpoint.conjugator())),
                matrix: None,
                branches: None,
                eigenvalue_hints: None,
            },
            subspace: SubspaceSpecJson {
                ambient: self.subspace.ambient(),
                dim: self.subspace.dim(),
                basis: self.subspace.columns().iter().map(|c| c.iter().map(element_out).collect()).collect(),
            },
            options: self.options.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_spec()).expect("instance specs always serialize");
        s.push('\n');
        s
    }
}
