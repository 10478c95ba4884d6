use homology::KnotExteriorModel;
use pillowcase_core::GluingMatrix;
use serde::{Deserialize, Serialize};

use crate::{input, Failure};

/// A model given by built-in name or path, or inline as model JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModelSpec {
    Reference(String),
    Inline(serde_json::Value),
}

impl ModelSpec {
    pub fn load(&self) -> Result<KnotExteriorModel, Failure> {
        match self {
            ModelSpec::Reference(r) => crate::load_model(r),
            ModelSpec::Inline(v) => KnotExteriorModel::from_json(&v.to_string()).map_err(input),
        }
    }
}

/// `swap`, `fiber-swap`, `sigma:P`, `a,b,p,c`, or an `{a, b, p, c}` object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GluingSpec {
    Named(String),
    Matrix { a: i64, b: i64, p: i64, c: i64 },
}

fn torus_parameters(model: &KnotExteriorModel) -> Option<(i64, i64)> {
    let inner = model.name.strip_prefix("T(")?.strip_suffix(')')?;
    let (p, q) = inner.split_once(',')?;
    Some((p.trim().parse().ok()?, q.trim().parse().ok()?))
}

impl GluingSpec {
    pub fn parse(text: &str) -> GluingSpec {
        let parts: Vec<Option<i64>> = text.split(',').map(|s| s.trim().parse().ok()).collect();
        match parts.as_slice() {
            [Some(a), Some(b), Some(p), Some(c)] => GluingSpec::Matrix { a: *a, b: *b, p: *p, c: *c },
            _ => GluingSpec::Named(text.trim().to_string()),
        }
    }

    /// The gluing matrix; `fiber-swap` needs two torus-knot models.
    pub fn resolve(&self, m1: &KnotExteriorModel, m2: &KnotExteriorModel) -> Result<GluingMatrix, Failure> {
        match self {
            GluingSpec::Matrix { a, b, p, c } => GluingMatrix::new(*a, *b, *p, *c).map_err(input),
            GluingSpec::Named(name) => match name.as_str() {
                "swap" => Ok(GluingMatrix::swap()),
                "fiber-swap" => match (torus_parameters(m1), torus_parameters(m2)) {
                    (Some(k1), Some(k2)) => Ok(families::fiber_swap_gluing(k1, k2)),
                    _ => Err(Failure::Input("fiber-swap needs two torus-knot models".into())),
                },
                other => {
                    let p = other
                        .strip_prefix("sigma:")
                        .and_then(|s| s.trim().parse::<i64>().ok())
                        .ok_or_else(|| Failure::Input(format!("unknown gluing {other:?}")))?;
                    Ok(GluingMatrix::sigma(p))
                }
            },
        }
    }
}

fn default_resolution() -> usize {
    100
}

/// A splice search request.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpliceJob {
    pub model1: ModelSpec,
    pub model2: ModelSpec,
    pub gluing: GluingSpec,
    #[serde(default = "default_resolution")]
    pub resolution: usize,
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub seed: Option<u64>,
}

impl SpliceJob {
    pub fn from_json(text: &str) -> Result<Self, Failure> {
        serde_json::from_str(text).map_err(|e| Failure::Input(format!("malformed job: {e}")))
    }
}
