//! Wire formats: the JSON schemas for spaces, frames, perturbations,
//! subspaces, and every report the tool prints, plus conversions to and
//! from the core types.
//!
//! Serialization goes through plain structs with a fixed field order, so
//! identical inputs render byte-identical reports.

use serde::{Deserialize, Serialize};

use schauder::{
    ConstantBound, Exponent, FramePair, Functional, FunctionalSubspace, Matrix, PNormSpace,
    PerturbationCandidate, SpanReport, Vector, VectorSubspace,
};

/// Input-side failure: malformed JSON, bad parameters, or a core-library
/// rejection. Rendered on stderr; exit code 1.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<schauder::Error> for InputError {
    fn from(e: schauder::Error) -> Self {
        InputError(e.to_string())
    }
}

pub type InputResult<T> = Result<T, InputError>;

/// Reads and parses a JSON file, reporting the position of syntax errors.
pub fn read_json<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> InputResult<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

/// Exponent on the wire: a number `≥ 1` or the string `"inf"`.
#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(untagged)]
pub enum ExponentJson {
    Number(f64),
    Word(String),
}

impl ExponentJson {
    pub fn to_core(&self) -> InputResult<Exponent> {
        match self {
            ExponentJson::Number(x) => Ok(Exponent::from_f64(*x)?),
            ExponentJson::Word(w) if w == "inf" => Ok(Exponent::Infinity),
            ExponentJson::Word(w) => Err(InputError(format!(
                "exponent must be a number or \"inf\", got \"{w}\""
            ))),
        }
    }

    pub fn from_core(p: Exponent) -> Self {
        match p {
            Exponent::Finite(x) => ExponentJson::Number(x),
            Exponent::Infinity => ExponentJson::Word("inf".to_string()),
        }
    }
}

/// Parses an exponent given on the command line (`1`, `2`, `1.5`, `inf`).
pub fn exponent_from_arg(arg: &str) -> InputResult<Exponent> {
    if arg == "inf" {
        return Ok(Exponent::Infinity);
    }
    let x = arg
        .parse::<f64>()
        .map_err(|_| InputError(format!("exponent must be a number or \"inf\", got \"{arg}\"")))?;
    Ok(Exponent::from_f64(x)?)
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct SpaceJson {
    pub dim: usize,
    pub p: ExponentJson,
}

impl SpaceJson {
    pub fn to_core(&self) -> InputResult<PNormSpace> {
        Ok(PNormSpace::new(self.dim, self.p.to_core()?)?)
    }

    pub fn from_core(s: PNormSpace) -> Self {
        SpaceJson {
            dim: s.dim(),
            p: ExponentJson::from_core(s.p()),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct PairJson {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct FrameJson {
    pub space: SpaceJson,
    pub pairs: Vec<PairJson>,
}

impl FrameJson {
    pub fn to_core(&self) -> InputResult<FramePair> {
        let s = self.space.to_core()?;
        let pairs = self
            .pairs
            .iter()
            .map(|p| {
                Ok((
                    Vector::new(s, p.a.clone())?,
                    Functional::new(s, p.b.clone())?,
                ))
            })
            .collect::<InputResult<Vec<_>>>()?;
        Ok(FramePair::new(s, pairs)?)
    }

    pub fn from_core(f: &FramePair) -> Self {
        FrameJson {
            space: SpaceJson::from_core(f.space()),
            pairs: (0..f.len())
                .map(|n| PairJson {
                    a: f.vector(n).coords().to_vec(),
                    b: f.functional(n).coords().to_vec(),
                })
                .collect(),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct CandidatePairJson {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct PerturbationJson {
    pub base: FrameJson,
    pub candidate: Vec<CandidatePairJson>,
}

impl PerturbationJson {
    pub fn to_core(&self) -> InputResult<PerturbationCandidate> {
        let base = self.base.to_core()?;
        let s = base.space();
        let pairs = self
            .candidate
            .iter()
            .map(|p| {
                Ok((
                    Vector::new(s, p.x.clone())?,
                    Functional::new(s, p.y.clone())?,
                ))
            })
            .collect::<InputResult<Vec<_>>>()?;
        Ok(PerturbationCandidate::new(base, pairs)?)
    }
}

/// Basis of a target subspace; used for both vector and functional sides.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct SubspaceJson {
    pub space: SpaceJson,
    pub basis: Vec<Vec<f64>>,
}

impl SubspaceJson {
    pub fn to_vectors(&self) -> InputResult<VectorSubspace> {
        let s = self.space.to_core()?;
        let basis = self
            .basis
            .iter()
            .map(|c| Ok(Vector::new(s, c.clone())?))
            .collect::<InputResult<Vec<_>>>()?;
        Ok(VectorSubspace::new(s, basis)?)
    }

    pub fn to_functionals(&self) -> InputResult<FunctionalSubspace> {
        let s = self.space.to_core()?;
        let basis = self
            .basis
            .iter()
            .map(|c| Ok(Functional::new(s, c.clone())?))
            .collect::<InputResult<Vec<_>>>()?;
        Ok(FunctionalSubspace::new(s, basis)?)
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct BoundJson {
    pub lower: f64,
    pub upper: f64,
    pub exact: bool,
}

impl BoundJson {
    pub fn from_core(b: ConstantBound) -> Self {
        BoundJson {
            lower: b.lower,
            upper: b.upper,
            exact: b.exact,
        }
    }
}

pub fn matrix_rows(m: &Matrix) -> Vec<Vec<f64>> {
    m.to_rows()
}

#[derive(Serialize, Debug)]
pub struct ValidateReport {
    pub residual: f64,
    pub tol: f64,
    #[serde(rename = "isFrame")]
    pub is_frame: bool,
}

#[derive(Serialize, Debug)]
pub struct ConstantsReport {
    #[serde(rename = "K")]
    pub k: BoundJson,
    #[serde(rename = "L")]
    pub l: BoundJson,
    pub residual: f64,
    /// Largest sampled ratio `Σ|bₙ*(x)||y*(aₙ)| / (‖x‖‖y*‖)`; never
    /// exceeds `L.upper` beyond rounding.
    pub diagnostic: f64,
}

#[derive(Serialize, Debug)]
pub struct CheckReport {
    pub criterion: String,
    pub value: BoundJson,
    pub satisfied: bool,
    pub margin: f64,
}

#[derive(Serialize, Debug)]
pub struct SummabilityReport {
    pub alpha: BoundJson,
    #[serde(rename = "baseL")]
    pub base_l: BoundJson,
    #[serde(rename = "frameXZConstant")]
    pub frame_xz_constant: BoundJson,
    #[serde(rename = "frameWYConstant")]
    pub frame_wy_constant: BoundJson,
    pub rhs: f64,
    pub holds: bool,
}

#[derive(Serialize, Debug)]
pub struct PerturbReport {
    pub criterion: String,
    pub value: BoundJson,
    pub satisfied: bool,
    pub certified: bool,
    /// Contraction `Q` the inverse series was driven by.
    pub contraction: f64,
    #[serde(rename = "T")]
    pub t: Vec<Vec<f64>>,
    #[serde(rename = "R")]
    pub r: Vec<Vec<f64>>,
    #[serde(rename = "inverseError")]
    pub inverse_error: f64,
    pub iterations: usize,
    #[serde(rename = "witnessResidual")]
    pub witness_residual: f64,
    #[serde(rename = "frameXZ")]
    pub frame_xz: FrameJson,
    #[serde(rename = "frameWY")]
    pub frame_wy: FrameJson,
    /// Landing bound for the summability constants of the emitted
    /// frames; present for every criterion except the reconstruction one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summability: Option<SummabilityReport>,
}

#[derive(Serialize, Debug)]
pub struct DimensionReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub tail: BoundJson,
    pub method: String,
    pub valid: bool,
}

#[derive(Serialize, Debug)]
pub struct SpansJson {
    #[serde(rename = "insertedVectorsRank")]
    pub inserted_vectors_rank: usize,
    #[serde(rename = "insertedVectorsSpanV")]
    pub inserted_vectors_span_v: bool,
    #[serde(rename = "insertedFunctionalsRank")]
    pub inserted_functionals_rank: usize,
    #[serde(rename = "insertedFunctionalsSpanWImage")]
    pub inserted_functionals_span_w_image: bool,
    #[serde(rename = "correctedVectorsRank")]
    pub corrected_vectors_rank: usize,
    #[serde(rename = "correctedVectorsSpanVImage")]
    pub corrected_vectors_span_v_image: bool,
    #[serde(rename = "keptFunctionalsRank")]
    pub kept_functionals_rank: usize,
    #[serde(rename = "keptFunctionalsSpanW")]
    pub kept_functionals_span_w: bool,
    #[serde(rename = "allHold")]
    pub all_hold: bool,
}

impl SpansJson {
    pub fn from_core(s: &SpanReport) -> Self {
        SpansJson {
            inserted_vectors_rank: s.inserted_vectors_rank,
            inserted_vectors_span_v: s.inserted_vectors_span_v,
            inserted_functionals_rank: s.inserted_functionals_rank,
            inserted_functionals_span_w_image: s.inserted_functionals_span_w_image,
            corrected_vectors_rank: s.corrected_vectors_rank,
            corrected_vectors_span_v_image: s.corrected_vectors_span_v_image,
            kept_functionals_rank: s.kept_functionals_rank,
            kept_functionals_span_w: s.kept_functionals_span_w,
            all_hold: s.all_hold(),
        }
    }
}

#[derive(Serialize, Debug)]
pub struct ConstructReport {
    pub criterion: String,
    pub value: BoundJson,
    pub theta: f64,
    pub scalars: Vec<f64>,
    #[serde(rename = "predictedSum")]
    pub predicted_sum: f64,
    #[serde(rename = "frameXZ")]
    pub frame_xz: FrameJson,
    #[serde(rename = "frameWY")]
    pub frame_wy: FrameJson,
    pub spans: SpansJson,
}

/// Renders a report as pretty JSON with a trailing newline; the byte
/// stream is a pure function of the report contents.
pub fn render<T: Serialize>(report: &T) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("reports always serialize");
    text.push('\n');
    text
}
