//! Data-transfer types for every file format the command-line tool reads
//! or writes, with deterministic serialization.
//!
//! Exact values (rational and Gaussian-rational coefficients, matrix
//! entries, certificate margins) are serialized as strings like `"p/q"`,
//! never as floats. Floating-point values appear only in the numeric
//! reports (portrait manifests, area reports) and are rendered with 17
//! significant digits so that output is byte-identical across runs.
//!
//! Polynomials use one schema everywhere:
//!
//! ```json
//! {"vars": ["t", "s"], "terms": [{"exp": [3, 0], "coef": "-3"}]}
//! ```
//!
//! with complex coefficients written as `{"re": "p/q", "im": "r/s"}`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::convexity::{JordanBlock, KallinCertificate, RealJordanSpec};
use crate::foliation::{CoefficientExtraction, VectorField2};
use crate::linalg::RatMat;
use crate::local_algebra::MultiplicityReport;
use crate::poly::{fmt_rat, parse_rat, GaussRat, MultiPoly, Rat};
use crate::symplectic::{HenonSpec, PolyMap};

/// File and schema errors for CLI inputs.
#[derive(thiserror::Error, Debug)]
pub enum JsonError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed JSON in {path} at byte {offset}: {message}")]
    Parse {
        path: String,
        offset: usize,
        message: String,
    },
    #[error("invalid {context}: {message}")]
    Schema { context: String, message: String },
}

fn schema(context: &str, message: impl Into<String>) -> JsonError {
    JsonError::Schema {
        context: context.to_string(),
        message: message.into(),
    }
}

/// Formats a float with 17 significant digits (enough to round-trip any
/// `f64` exactly).
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// One polynomial coefficient: a rational string, or a Gaussian rational
/// as a `{re, im}` pair.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(untagged)]
pub enum CoefDto {
    Real(String),
    Complex { re: String, im: String },
}

impl CoefDto {
    fn to_gauss(&self, context: &str) -> Result<GaussRat, JsonError> {
        match self {
            CoefDto::Real(s) => Ok(GaussRat::new(
                parse_rat(s).map_err(|e| schema(context, e))?,
                Rat::from_integer(0.into()),
            )),
            CoefDto::Complex { re, im } => Ok(GaussRat::new(
                parse_rat(re).map_err(|e| schema(context, e))?,
                parse_rat(im).map_err(|e| schema(context, e))?,
            )),
        }
    }
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct TermDto {
    pub exp: Vec<u32>,
    pub coef: CoefDto,
}

/// The polynomial schema shared by all inputs and outputs.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct PolyDto {
    pub vars: Vec<String>,
    pub terms: Vec<TermDto>,
}

impl PolyDto {
    pub fn from_poly(p: &MultiPoly<Rat>) -> Self {
        PolyDto {
            vars: p.var_names().to_vec(),
            terms: p
                .terms()
                .map(|(m, c)| TermDto {
                    exp: m.0.clone(),
                    coef: CoefDto::Real(fmt_rat(c)),
                })
                .collect(),
        }
    }

    pub fn from_complex_poly(p: &MultiPoly<GaussRat>) -> Self {
        use num::Zero;
        PolyDto {
            vars: p.var_names().to_vec(),
            terms: p
                .terms()
                .map(|(m, c)| TermDto {
                    exp: m.0.clone(),
                    coef: if c.im.is_zero() {
                        CoefDto::Real(fmt_rat(&c.re))
                    } else {
                        CoefDto::Complex {
                            re: fmt_rat(&c.re),
                            im: fmt_rat(&c.im),
                        }
                    },
                })
                .collect(),
        }
    }

    pub fn to_poly(&self, context: &str) -> Result<MultiPoly<Rat>, JsonError> {
        use num::Zero;
        let terms = self.term_values(context)?;
        let real: Vec<(Vec<u32>, Rat)> = terms
            .into_iter()
            .map(|(e, c)| {
                if c.im.is_zero() {
                    Ok((e, c.re))
                } else {
                    Err(schema(context, "complex coefficient in a real polynomial"))
                }
            })
            .collect::<Result<_, _>>()?;
        Ok(MultiPoly::from_terms(&self.vars, real))
    }

    pub fn to_complex_poly(&self, context: &str) -> Result<MultiPoly<GaussRat>, JsonError> {
        let terms = self.term_values(context)?;
        Ok(MultiPoly::from_terms(&self.vars, terms))
    }

    fn term_values(&self, context: &str) -> Result<Vec<(Vec<u32>, GaussRat)>, JsonError> {
        if self.vars.is_empty() {
            return Err(schema(context, "polynomial needs at least one variable"));
        }
        self.terms
            .iter()
            .map(|t| {
                if t.exp.len() != self.vars.len() {
                    return Err(schema(
                        context,
                        format!(
                            "exponent width {} does not match {} variables",
                            t.exp.len(),
                            self.vars.len()
                        ),
                    ));
                }
                Ok((t.exp.clone(), t.coef.to_gauss(context)?))
            })
            .collect()
    }
}

/// A polynomial map between coordinate spaces.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct PolyMapDto {
    pub source_dim: usize,
    pub target_dim: usize,
    pub components: Vec<PolyDto>,
}

impl PolyMapDto {
    pub fn from_map(m: &PolyMap) -> Self {
        PolyMapDto {
            source_dim: m.source_dim(),
            target_dim: m.target_dim(),
            components: m.components().iter().map(PolyDto::from_poly).collect(),
        }
    }

    pub fn to_map(&self, context: &str) -> Result<PolyMap, JsonError> {
        if self.components.len() != self.target_dim {
            return Err(schema(
                context,
                format!(
                    "target_dim {} does not match {} components",
                    self.target_dim,
                    self.components.len()
                ),
            ));
        }
        let comps: Vec<MultiPoly<Rat>> = self
            .components
            .iter()
            .map(|c| c.to_poly(context))
            .collect::<Result<_, _>>()?;
        for c in &comps {
            if c.nvars() != self.source_dim {
                return Err(schema(
                    context,
                    format!(
                        "component over {} variables in a source of dimension {}",
                        c.nvars(),
                        self.source_dim
                    ),
                ));
            }
        }
        Ok(PolyMap::new(comps, self.source_dim))
    }
}

/// A planar vector field `alpha d_t + beta d_s`.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct FieldDto {
    pub alpha: PolyDto,
    pub beta: PolyDto,
}

impl FieldDto {
    pub fn from_field(f: &VectorField2) -> Self {
        FieldDto {
            alpha: PolyDto::from_poly(&f.alpha),
            beta: PolyDto::from_poly(&f.beta),
        }
    }

    pub fn to_field(&self, context: &str) -> Result<VectorField2, JsonError> {
        VectorField2::new(self.alpha.to_poly(context)?, self.beta.to_poly(context)?)
            .map_err(|e| schema(context, e.to_string()))
    }
}

/// Hénon-family data `(V, eta, N)`.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct HenonSpecDto {
    #[serde(rename = "V")]
    pub v: PolyDto,
    pub eta: Vec<String>,
    #[serde(rename = "N")]
    pub n: u32,
}

impl HenonSpecDto {
    pub fn from_spec(s: &HenonSpec) -> Self {
        HenonSpecDto {
            v: PolyDto::from_poly(&s.v),
            eta: s.eta.iter().map(fmt_rat).collect(),
            n: s.n,
        }
    }

    pub fn to_spec(&self, context: &str) -> Result<HenonSpec, JsonError> {
        if self.eta.len() != 2 {
            return Err(schema(context, "eta must have exactly two entries"));
        }
        let e0 = parse_rat(&self.eta[0]).map_err(|e| schema(context, e))?;
        let e1 = parse_rat(&self.eta[1]).map_err(|e| schema(context, e))?;
        HenonSpec::new(self.v.to_poly(context)?, [e0, e1], self.n)
            .map_err(|e| schema(context, e.to_string()))
    }
}

/// Row-major matrix of exact rational strings.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(transparent)]
pub struct MatrixDto(pub Vec<Vec<String>>);

impl MatrixDto {
    pub fn from_matrix(a: &RatMat) -> Self {
        MatrixDto(
            (0..a.nrows())
                .map(|i| (0..a.ncols()).map(|j| fmt_rat(a.at(i, j))).collect())
                .collect(),
        )
    }

    pub fn to_matrix(&self, context: &str) -> Result<RatMat, JsonError> {
        if self.0.is_empty() {
            return Err(schema(context, "matrix has no rows"));
        }
        let cols = self.0[0].len();
        if cols == 0 {
            return Err(schema(context, "matrix has no columns"));
        }
        let mut rows = Vec::with_capacity(self.0.len());
        for r in &self.0 {
            if r.len() != cols {
                return Err(schema(context, "ragged rows"));
            }
            let row: Vec<Rat> = r
                .iter()
                .map(|s| parse_rat(s).map_err(|e| schema(context, e)))
                .collect::<Result<_, _>>()?;
            rows.push(row);
        }
        Ok(RatMat::from_rows(rows))
    }
}

/// One real Jordan block, tagged by kind.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum JordanBlockDto {
    Real { lambda: String, size: usize },
    Complex { s: String, t: String, pairs: usize },
}

/// A full real Jordan model.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct JordanSpecDto {
    pub blocks: Vec<JordanBlockDto>,
}

impl JordanSpecDto {
    pub fn from_spec(spec: &RealJordanSpec) -> Self {
        JordanSpecDto {
            blocks: spec
                .blocks
                .iter()
                .map(|b| match b {
                    JordanBlock::Real { lambda, size } => JordanBlockDto::Real {
                        lambda: fmt_rat(lambda),
                        size: *size,
                    },
                    JordanBlock::Complex { s, t, pairs } => JordanBlockDto::Complex {
                        s: fmt_rat(s),
                        t: fmt_rat(t),
                        pairs: *pairs,
                    },
                })
                .collect(),
        }
    }

    pub fn to_spec(&self, context: &str) -> Result<RealJordanSpec, JsonError> {
        let blocks: Vec<JordanBlock> = self
            .blocks
            .iter()
            .map(|b| match b {
                JordanBlockDto::Real { lambda, size } => Ok(JordanBlock::Real {
                    lambda: parse_rat(lambda).map_err(|e| schema(context, e))?,
                    size: *size,
                }),
                JordanBlockDto::Complex { s, t, pairs } => Ok(JordanBlock::Complex {
                    s: parse_rat(s).map_err(|e| schema(context, e))?,
                    t: parse_rat(t).map_err(|e| schema(context, e))?,
                    pairs: *pairs,
                }),
            })
            .collect::<Result<_, _>>()?;
        RealJordanSpec::new(blocks).map_err(|e| schema(context, e.to_string()))
    }
}

/// Output of `analyze-map`: display strings, the exact field, the
/// low-order template reading, and the genericity flag.
#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
pub struct AnalyzeReportDto {
    pub alpha: String,
    pub beta: String,
    pub field: FieldDto,
    pub coefficients: CoefficientsDto,
    pub generic: bool,
}

/// The template coefficients of a characteristic field.
#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
pub struct CoefficientsDto {
    pub g11: String,
    pub g12: String,
    pub g22: String,
    pub a02: String,
    pub b12: String,
    pub b03: String,
    pub residual_alpha: String,
    pub residual_beta: String,
}

impl AnalyzeReportDto {
    pub fn new(field: &VectorField2, extraction: &CoefficientExtraction) -> Self {
        let c = &extraction.coefficients;
        AnalyzeReportDto {
            alpha: field.alpha.to_string(),
            beta: field.beta.to_string(),
            field: FieldDto::from_field(field),
            coefficients: CoefficientsDto {
                g11: fmt_rat(&c.g11),
                g12: fmt_rat(&c.g12),
                g22: fmt_rat(&c.g22),
                a02: fmt_rat(&c.a02),
                b12: fmt_rat(&c.b12),
                b03: fmt_rat(&c.b03),
                residual_alpha: extraction.residual_alpha.to_string(),
                residual_beta: extraction.residual_beta.to_string(),
            },
            generic: c.generic,
        }
    }
}

/// Output of `determinacy`.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct MultiplicityReportDto {
    pub tau_sequence: Vec<(u32, usize)>,
    pub certified_at: Option<u32>,
    pub mu0: Option<usize>,
    pub k_max: u32,
}

impl MultiplicityReportDto {
    pub fn from_report(r: &MultiplicityReport) -> Self {
        MultiplicityReportDto {
            tau_sequence: r.tau_sequence.clone(),
            certified_at: r.certified_at,
            mu0: r.mu0,
            k_max: r.k_max,
        }
    }
}

/// A separation certificate in transferable form.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct KallinCertificateDto {
    pub p: PolyDto,
    pub alphas: Vec<Vec<String>>,
    pub delta: String,
    pub qform_l1: MatrixDto,
    pub qform_l2: MatrixDto,
    pub margin_l1: String,
    pub margin_l2: String,
}

impl KallinCertificateDto {
    pub fn from_certificate(c: &KallinCertificate) -> Self {
        KallinCertificateDto {
            p: PolyDto::from_complex_poly(&c.p),
            alphas: c
                .alphas
                .iter()
                .map(|row| row.iter().map(fmt_rat).collect())
                .collect(),
            delta: fmt_rat(&c.delta),
            qform_l1: MatrixDto::from_matrix(&c.qform_l1),
            qform_l2: MatrixDto::from_matrix(&c.qform_l2),
            margin_l1: fmt_rat(&c.margin_l1),
            margin_l2: fmt_rat(&c.margin_l2),
        }
    }
}

/// Output of `convexity`: the eigenvalue verdict, a witness eigenvalue
/// for failures, and a certificate when one was constructed.
#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
pub struct ConvexityReportDto {
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub eigenvalues: Vec<String>,
    pub tol: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<KallinCertificateDto>,
}

/// Renders `re + im i` the way the eigenvalue reports expect: `"2i"`,
/// `"1+2i"`, `"-3"`, `"0"`.
pub fn fmt_complex(re: f64, im: f64) -> String {
    if im == 0.0 {
        return format!("{re}");
    }
    let im_part = match im {
        1.0 => "i".to_string(),
        -1.0 => "-i".to_string(),
        _ => format!("{im}i"),
    };
    if re == 0.0 {
        im_part
    } else if im_part.starts_with('-') {
        format!("{re}{im_part}")
    } else {
        format!("{re}+{im_part}")
    }
}

/// Output of `henon`.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct HenonReportDto {
    pub map: PolyMapDto,
    pub inverse: PolyMapDto,
    pub degree: u32,
    pub degree_bound: u32,
    pub roundtrip_identity: bool,
}

/// Output of `area`.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct AreaReportDto {
    pub area: String,
    pub boundary_integral: String,
    pub difference: String,
}

/// Manifest written next to the per-trajectory CSV files.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct PortraitManifestDto {
    pub box_size: String,
    pub seeds: usize,
    pub tol: String,
    pub files: Vec<String>,
    pub terminations: Vec<String>,
}

/// Reads and parses a JSON file, reporting parse failures with the path
/// and the byte offset of the first offending character.
pub fn read_json_file<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, JsonError> {
    let text = std::fs::read_to_string(path).map_err(|e| JsonError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| JsonError::Parse {
        path: path.display().to_string(),
        offset: byte_offset(&text, e.line(), e.column()),
        message: e.to_string(),
    })
}

/// Converts serde_json's one-based line/column into a byte offset.
fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    if line == 0 {
        return 0;
    }
    let line_start = text
        .split_inclusive('\n')
        .take(line - 1)
        .map(str::len)
        .sum::<usize>();
    let col = column.saturating_sub(1);
    let byte_col = text[line_start..]
        .char_indices()
        .nth(col)
        .map(|(i, _)| i)
        .unwrap_or_else(|| text.len() - line_start);
    line_start + byte_col
}

/// Canonical serialization used for all CLI output: two-space pretty
/// printing with struct-declaration field order, so identical values
/// produce identical bytes.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("report types always serialize");
    out.push('\n');
    out
}
