//! Serializable report. Keys are stable; absent sections are omitted.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum MatrixOut {
    /// Exact entries as `p/q` strings.
    Exact(Vec<Vec<String>>),
    Float(Vec<Vec<f64>>),
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    /// `null` when some pairwise meet (join) does not exist.
    pub meet_closed: Option<bool>,
    pub join_closed: Option<bool>,
    pub chain: bool,
    pub wedge_tree: Option<bool>,
    pub vee_tree: Option<bool>,
    pub a_set: Option<bool>,
    /// The Hasse diagram of the set itself is a tree.
    pub hasse_tree: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Closures {
    pub meet_closure: Option<Vec<String>>,
    pub join_closure: Option<Vec<String>>,
    pub down_set: Vec<String>,
    pub up_set: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LabeledValue {
    pub element: String,
    pub value: String,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum CertificateOut {
    Inversion { kind: String, elements: Vec<String>, values: Vec<String> },
    Inconclusive { kind: String, elements: Vec<String>, values: Vec<String>, offending: Vec<String> },
    Minors { minors: Vec<String> },
    FailingMinor { order: usize, minor: String, witness: Vec<String> },
    FloatPivots { pivots: Vec<f64> },
    Hypothesis { failure: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct HypothesesOut {
    pub nonnegative: bool,
    pub order_property: bool,
    pub index_monotone: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundRowOut {
    pub k: usize,
    pub lambda: f64,
    pub bound: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundsOut {
    pub verified: bool,
    pub hypotheses: HypothesesOut,
    pub violation: Option<String>,
    /// Labels of the set in the order the bounds refer to.
    pub order: Vec<String>,
    pub reindex_permutation: Vec<usize>,
    pub rows: Vec<BoundRowOut>,
    pub lower_max: f64,
    pub lambda_max: Option<f64>,
    pub lower_ok: bool,
    pub all_ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct QuadraticFormsOut {
    pub samples_per_k: usize,
    pub seed: u64,
    /// Largest `y*My − k·y*y·f` seen; nonpositive when the forms obey the bound.
    pub max_excess: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub kind: String,
    pub elements: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<Classification>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closures: Option<Closures>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi: Option<Vec<LabeledValue>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<LabeledValue>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub det: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigenvalues: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quadratic_forms: Option<QuadraticFormsOut>,
}

impl Report {
    pub fn new(command: &str, kind: &str, elements: Vec<String>) -> Self {
        Report {
            command: command.into(),
            kind: kind.into(),
            elements,
            matrix: None,
            classification: None,
            closures: None,
            verdict: None,
            method: None,
            certificate: None,
            psi: None,
            phi: None,
            det: None,
            eigenvalues: None,
            bounds: None,
            quadratic_forms: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}

/// `k,lambda,bound,ok` table.
pub fn bounds_csv(bounds: &BoundsOut) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["k", "lambda", "bound", "ok"]).expect("writing to memory");
    for row in &bounds.rows {
        w.write_record([row.k.to_string(), row.lambda.to_string(), row.bound.to_string(), row.ok.to_string()])
            .expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flushing to memory")).expect("ASCII CSV")
}
