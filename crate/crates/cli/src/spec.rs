//! The JSON job format.

use std::collections::BTreeMap;

use hoch::cech::{Ambient, Orientation};
use hoch::dga::{AlgebraPresentation, Generator};
use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Homology,
    HkrCheck,
    Bar,
    IteratedBar,
    TwistedHh,
    ExcisionCheck,
    Cech,
    CupTable,
    ShuffleCheck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum AlgebraSpec {
    Ground,
    Exterior { degree: i64 },
    TruncatedPolynomial { n: usize, degree: i64 },
    Polynomial { weight_bound: i64 },
    Free { name: String, generators: Vec<Generator>, weight_bound: Option<i64> },
    Presentation(AlgebraPresentation),
}

/// A builtin model; `level` is the top simplicial level, derived from the
/// window when omitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceSpec {
    Point {
        level: Option<usize>,
    },
    Interval {
        level: Option<usize>,
    },
    Circle {
        level: Option<usize>,
    },
    SphereStandard {
        d: usize,
        level: Option<usize>,
    },
    SphereSmall {
        d: usize,
        level: Option<usize>,
    },
    Torus {
        level: Option<usize>,
    },
    Surface {
        genus: usize,
        level: Option<usize>,
    },
}

impl SpaceSpec {
    pub fn level(&self) -> Option<usize> {
        match *self {
            SpaceSpec::Point { level }
            | SpaceSpec::Interval { level }
            | SpaceSpec::Circle { level }
            | SpaceSpec::SphereStandard { level, .. }
            | SpaceSpec::SphereSmall { level, .. }
            | SpaceSpec::Torus { level }
            | SpaceSpec::Surface { level, .. } => level,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuleSpec {
    Regular,
    Augmentation,
}

/// An open of the line (`lo`, `hi`, optional closed ends) or of the circle
/// `ℝ/ℤ` (`start`, `length`). Endpoints are exact rationals such as `"5/12"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpenSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lo: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hi: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub lo_closed: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub hi_closed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ValueSpec {
    /// `ℚ` on every open, coproduct mode.
    Constant,
    /// `ℚ` on every open, tensor mode.
    Trivial,
    /// The job's algebra on every arc of the circle.
    ArcAlgebra {
        #[serde(default = "positive")]
        orientation: Orientation,
    },
    /// `M_r` near 0, the algebra in the bulk, `M_l` near 1, on `[0, 1]`.
    Stratified,
}

fn positive() -> Orientation {
    Orientation::Positive
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GluingSpec {
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub z: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverSpec {
    pub ambient: Ambient,
    pub opens: Vec<OpenSpec>,
    pub values: ValueSpec,
    /// Defaults to every open.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_level: Option<usize>,
    /// Also compute the Mayer–Vietoris cone over `z ⊆ x, y`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gluing: Option<GluingSpec>,
}

/// An independent computation the result is compared against.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Oracle {
    /// The classical Hochschild complex with the job's module.
    Classical,
    /// The Bar construction over `A ⊗ A^op`.
    Enveloping,
    /// The 2-periodic resolution of `k[x]/xⁿ`, twisted by the monodromy.
    Periodic,
    /// Dimensions of the coefficient module.
    ModuleDims,
    /// `Bar(k, A, k)`.
    TwoSidedBar,
    /// The closed-form HKR prediction for the job's space.
    Hkr,
    /// Higher Hochschild chains over another model.
    Space { space: SpaceSpec },
    /// Simplicial homology of a model, with the job's coefficients.
    Simplicial { space: SpaceSpec },
    /// The Mayer–Vietoris cone of the cover's gluing data.
    Gluing,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expect {
    /// Totals over weights, from the top degree of the window downward.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub betti: Option<Vec<usize>>,
    /// Per weight, from the top degree downward.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub betti_by_weight: BTreeMap<i64, Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub oracles: Vec<Oracle>,
}

impl Expect {
    /// Cuts the expected values, listed for `from`, down to the window `to`.
    fn restrict(&mut self, from: [i64; 2], to: [i64; 2]) -> Result<(), String> {
        if self.betti.is_none() && self.betti_by_weight.is_empty() {
            return Ok(());
        }
        if to[0] < from[0] || to[1] > from[1] {
            return Err(format!(
                "expected values cover [{}, {}], not the window [{}, {}]",
                from[0], from[1], to[0], to[1]
            ));
        }
        let cut = |v: &Vec<usize>| v[(from[1] - to[1]) as usize..=(from[1] - to[0]) as usize].to_vec();
        if let Some(b) = &mut self.betti {
            *b = cut(b);
        }
        for b in self.betti_by_weight.values_mut() {
            *b = cut(b);
        }
        Ok(())
    }
}

/// `basis element ↦ combination`; unlisted elements are fixed.
pub type Monodromy = BTreeMap<String, BTreeMap<String, String>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub schema: u32,
    pub task: Task,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<SpaceSpec>,
    /// Coefficients at the basepoint; the algebra itself when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleSpec>,
    /// Right and left modules of the two-sided Bar construction.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<ModuleSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<ModuleSpec>,
    /// Iteration count of the iterated Bar construction.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monodromy: Option<Monodromy>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover: Option<CoverSpec>,
    pub window: [i64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub unnormalized: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<Format>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Expect>,
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub coefficients: Option<String>,
    pub window: Option<[i64; 2]>,
    pub weights: Option<Vec<i64>>,
    pub format: Option<Format>,
    pub cap: Option<usize>,
}

impl JobSpec {
    pub fn parse(text: &str) -> Result<Self, String> {
        let spec: JobSpec = serde_json::from_str(text).map_err(|e| format!("schema error: {e}"))?;
        if spec.schema != SCHEMA {
            return Err(format!("schema error: unsupported schema version {}", spec.schema));
        }
        if spec.window[0] > spec.window[1] {
            return Err(format!("schema error: empty window [{}, {}]", spec.window[0], spec.window[1]));
        }
        Ok(spec)
    }

    pub fn apply(mut self, o: &Overrides) -> Result<Self, String> {
        if let Some(c) = &o.coefficients {
            self.coefficients = Some(c.clone());
        }
        if let Some(w) = o.window {
            if let Some(e) = &mut self.expect {
                e.restrict(self.window, w)?;
            }
            self.window = w;
        }
        if let Some(w) = &o.weights {
            self.weights = Some(w.clone());
        }
        if let Some(f) = o.format {
            self.output = Some(f);
        }
        if let Some(c) = o.cap {
            self.cap = Some(c);
        }
        Ok(self)
    }
}

/// Parses `a..b`.
pub fn parse_window(s: &str) -> Result<[i64; 2], String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("window {s:?} is not of the form a..b"))?;
    let a: i64 = a.trim().parse().map_err(|_| format!("bad window bound {a:?}"))?;
    let b: i64 = b.trim().parse().map_err(|_| format!("bad window bound {b:?}"))?;
    if a > b {
        return Err(format!("empty window {a}..{b}"));
    }
    Ok([a, b])
}
