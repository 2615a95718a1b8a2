//! Serde mirror of the fixture file. Everything here is plain data; see
//! [`super::Fixture::load`] for validation.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

/// Basis name to rational string (`"3/2"`); absent names are zero.
pub type ElemSpec = BTreeMap<String, String>;

/// Rows are target summands, columns source summands.
pub type BlockSpec = Vec<Vec<ElemSpec>>;

/// A Laurent polynomial as `[exponents, coefficient]` terms.
pub type LaurentSpec = Vec<(Vec<i64>, String)>;

fn yes() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

fn is_zero(n: &i64) -> bool {
    *n == 0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureFile {
    pub format_version: u32,
    /// `"Q"` or `"F_p"`.
    pub field: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub algebras: BTreeMap<String, AlgebraSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub ideals: BTreeMap<String, IdealSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub ring_maps: BTreeMap<String, RingMapSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub functors: BTreeMap<String, FunctorSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub modules: BTreeMap<String, ModuleSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub complexes: BTreeMap<String, ComplexSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub maps: BTreeMap<String, MapSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub triangles: BTreeMap<String, TriangleSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub subcategories: BTreeMap<String, SubcatSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub hom_ideals: BTreeMap<String, HomIdealSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub contractions: BTreeMap<String, ContractionSpec>,
    #[serde(default)]
    pub tasks: Vec<TaskSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub basis: Vec<String>,
    /// `[left, right, product]`; unlisted pairs multiply to zero.
    pub products: Vec<(String, String, ElemSpec)>,
    pub unit: ElemSpec,
    /// Complete list of orthogonal idempotents summing to the unit.
    pub idempotents: Vec<ElemSpec>,
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub primitive: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealSpec {
    pub algebra: String,
    /// Two-sided generators.
    pub generators: Vec<ElemSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum RingMapSpec {
    Explicit {
        source: String,
        target: String,
        /// Image of each source basis element.
        images: Vec<ElemSpec>,
    },
    /// `R -> R / I`; the quotient algebra is registered under `target`.
    Quotient { ideal: String, target: String },
    Identity { algebra: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessSpec {
    pub target: usize,
    pub generator: ElemSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FunctorSpec {
    /// `- (x)_R S` along a ring map.
    Induction { map: String },
    /// `- (x)_S S_R` along a ring map `R -> S`, taking `S`-complexes to
    /// `R`-complexes. Witnesses are derived when absent.
    Restriction {
        map: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        witnesses: Option<Vec<Vec<WitnessSpec>>>,
    },
    Identity { algebra: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ModuleSpec {
    Projective { algebra: String, index: usize },
    Simple { algebra: String, index: usize },
    Regular { algebra: String },
    /// Row-convention action matrix for each basis element.
    Explicit {
        algebra: String,
        dim: usize,
        action: Vec<Vec<Vec<String>>>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    pub algebra: String,
    pub lo: i64,
    /// Idempotent indices of the summands in each degree, from `lo` up.
    pub terms: Vec<Vec<usize>>,
    /// `d^n` for `n = lo .. lo + terms.len() - 2`.
    #[serde(default)]
    pub diffs: Vec<BlockSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub degree: i64,
    pub matrix: BlockSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapData {
    #[serde(default, skip_serializing_if = "is_zero")]
    pub degree: i64,
    /// Components at the source degree; unlisted ones are zero.
    #[serde(default)]
    pub components: Vec<ComponentSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub source: String,
    pub target: String,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub degree: i64,
    #[serde(default)]
    pub components: Vec<ComponentSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangleSpec {
    pub alpha: String,
    pub beta: String,
    pub gamma: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubcatSpec {
    pub algebra: String,
    /// Complex names; the subcategory holds all their shifts in `window`.
    pub objects: Vec<String>,
    pub window: (i64, i64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomIdealSpec {
    pub subcategory: String,
    /// Map names; each must be a chain map between window objects.
    #[serde(default)]
    pub generators: Vec<String>,
    /// Complex names; adds every map factoring through their shifts.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub factor_through: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContractionSpec {
    pub variables: Vec<String>,
    /// Variables allowed negative exponents.
    #[serde(default)]
    pub inverted: Vec<String>,
    pub lo: i64,
    pub ranks: Vec<usize>,
    pub diffs: Vec<Vec<Vec<LaurentSpec>>>,
    pub homotopy: Vec<Vec<Vec<LaurentSpec>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "task", rename_all = "kebab-case", deny_unknown_fields)]
pub enum TaskSpec {
    CheckHepi {
        id: String,
        map: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_degree: Option<usize>,
    },
    LiftMap {
        id: String,
        functor: String,
        /// Complexes over the functor's source.
        source: String,
        target: String,
        /// Chain map `F source -> F target` over the functor's target.
        map: String,
        #[serde(default)]
        generators: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        depth: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        window: Option<(i64, i64)>,
    },
    LiftComplex {
        id: String,
        functor: String,
        complex: String,
        preimages: Vec<Vec<usize>>,
        #[serde(default)]
        generators: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        depth: Option<usize>,
    },
    RecognizeTriangle {
        id: String,
        triangle: String,
    },
    CheckIdeal {
        id: String,
        ideal: String,
        #[serde(default)]
        triangles: Vec<String>,
    },
    TelescopeReport {
        id: String,
        functor: String,
        subcategory: String,
        #[serde(default)]
        triangles: Vec<String>,
    },
    AlmostReport {
        id: String,
        ideal: String,
        /// When given, `M -> Me` is run as well.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        idempotent: Option<ElemSpec>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        subcategory: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        window: Option<(i64, i64)>,
    },
    VerifyContraction {
        id: String,
        contraction: String,
    },
}

impl TaskSpec {
    pub fn id(&self) -> &str {
        match self {
            TaskSpec::CheckHepi { id, .. }
            | TaskSpec::LiftMap { id, .. }
            | TaskSpec::LiftComplex { id, .. }
            | TaskSpec::RecognizeTriangle { id, .. }
            | TaskSpec::CheckIdeal { id, .. }
            | TaskSpec::TelescopeReport { id, .. }
            | TaskSpec::AlmostReport { id, .. }
            | TaskSpec::VerifyContraction { id, .. } => id,
        }
    }

    /// The subcommand name, e.g. `check-hepi`.
    pub fn kind(&self) -> &'static str {
        match self {
            TaskSpec::CheckHepi { .. } => "check-hepi",
            TaskSpec::LiftMap { .. } => "lift-map",
            TaskSpec::LiftComplex { .. } => "lift-complex",
            TaskSpec::RecognizeTriangle { .. } => "recognize-triangle",
            TaskSpec::CheckIdeal { .. } => "check-ideal",
            TaskSpec::TelescopeReport { .. } => "telescope-report",
            TaskSpec::AlmostReport { .. } => "almost-report",
            TaskSpec::VerifyContraction { .. } => "verify-contraction",
        }
    }
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

/// Parses fixture text without validating cross-references.
pub fn parse(text: &str) -> Result<FixtureFile> {
    let file: FixtureFile = serde_json::from_str(text).map_err(parse_error)?;
    if file.format_version != FORMAT_VERSION {
        return Err(Error::Fixture(format!(
            "format_version {} is not supported (expected {FORMAT_VERSION})",
            file.format_version
        )));
    }
    Ok(file)
}

/// Pretty JSON with a trailing newline.
pub fn emit(file: &FixtureFile) -> String {
    let mut s = serde_json::to_string_pretty(file).expect("fixture data serializes");
    s.push('\n');
    s
}
