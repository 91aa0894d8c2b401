//! Command-line configuration and the per-command pipelines.

use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use meetjoin_core::definiteness::{classify_and_test, pd_oracle_float, Certificate, Failure, PdReport};
use meetjoin_core::error::Hypothesis;
use meetjoin_core::matrix::{det_general, kind_matrix, FloatMatrix, SymMatrix};
use meetjoin_core::mobius::{inversion_over, PosetFunction};
use meetjoin_core::numtheory::{build_named_matrix, Family, NamedFunction};
use meetjoin_core::poset::{
    closure, cover_graph, down_set, is_a_set, is_chain, is_closed, is_tree_set, up_set, FinitePoset, Kind, Subset,
};
use meetjoin_core::spectral::{
    bounds, eigen_sym_with, quadratic_form_check, Support, BOUND_SLACK, DEFAULT_MAX_SWEEPS, DEFAULT_TOLERANCE,
};
use meetjoin_core::{Error as CoreError, Rational};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{CliError, Result, EXIT_PRECONDITION};
use crate::input::{load_function_table, load_poset, matrix_to_csv};
use crate::report::{
    bounds_csv, BoundRowOut, BoundsOut, CertificateOut, Classification, Closures, HypothesesOut, LabeledValue,
    MatrixOut, QuadraticFormsOut, Report,
};

#[derive(Debug, Parser)]
#[command(name = "meetjoin", version, about = "Meet and join matrices on finite posets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the meet or join matrix of the set.
    Build(Common),
    /// Report closedness, chain, tree-set and A-set flags.
    Classify(Common),
    /// Decide positive definiteness and report the deciding test.
    CheckPd(Common),
    /// Compare eigenvalues against the eigenvalue bounds.
    Bounds(BoundsArgs),
    /// List the meet and join closures and the down- and up-sets.
    Closure(Common),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    PowerGcd,
    ReciprocalPowerLcm,
    GcudPower,
    Min,
    Max,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::PowerGcd => Family::PowerGcd,
            FamilyArg::ReciprocalPowerLcm => Family::ReciprocalPowerLcm,
            FamilyArg::GcudPower => Family::GcudPower,
            FamilyArg::Min => Family::Min,
            FamilyArg::Max => Family::Max,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Meet,
    Join,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("input").required(true).args(["poset", "family"])))]
pub struct Common {
    /// Poset file (YAML with `n`, `relation`, `labels`, or `divisors_of` / `generated_by`).
    #[arg(long)]
    pub poset: Option<PathBuf>,
    /// Labels of the set, overriding the file's `subset`.
    #[arg(long, value_delimiter = ',', requires = "poset")]
    pub subset: Option<Vec<String>>,
    /// Named integer matrix family.
    #[arg(long, value_enum, requires = "set", conflicts_with_all = ["values", "function"])]
    pub family: Option<FamilyArg>,
    /// Distinct positive integers for `--family`.
    #[arg(long, value_delimiter = ',', requires = "family")]
    pub set: Option<Vec<u64>>,
    /// Exponent for power families.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub alpha: f64,
    /// Function table with `label: value` lines.
    #[arg(long, conflicts_with = "function")]
    pub values: Option<PathBuf>,
    /// Named function on integer labels: `power:A`, `reciprocal-power:A` or `identity`.
    #[arg(long)]
    pub function: Option<String>,
    /// Meet or join matrix. Families fix this themselves.
    #[arg(long, value_enum)]
    pub kind: Option<KindArg>,
    /// Write the report here instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Include the matrix in JSON reports.
    #[arg(long)]
    pub matrix: bool,
    /// Off-diagonal tolerance of the eigensolver, relative to the matrix norm.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_SWEEPS)]
    pub max_sweeps: usize,
    /// Relative pivot tolerance of the floating-point definiteness test.
    #[arg(long, default_value_t = 1e-12)]
    pub pd_tol: f64,
}

#[derive(Debug, Clone, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub common: Common,
    /// Random supported vectors per k for the quadratic-form check.
    #[arg(long, default_value_t = 0)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Build(c) | Command::Classify(c) | Command::CheckPd(c) | Command::Closure(c) => c,
            Command::Bounds(b) => &b.common,
        }
    }
}

/// Text to emit and the exit status to finish with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub status: u8,
}

/// A set inside an ambient poset with its function.
pub struct Instance {
    pub poset: FinitePoset,
    pub members: Vec<usize>,
    pub kind: Kind,
    pub exact: Option<PosetFunction>,
    /// Float values by ambient element, `NaN` where undefined.
    pub float: Option<Vec<f64>>,
}

fn kind_of(arg: KindArg) -> Kind {
    match arg {
        KindArg::Meet => Kind::Meet,
        KindArg::Join => Kind::Join,
    }
}

fn parse_named_function(spec: &str) -> Result<NamedFunction> {
    let bad = || CliError::Usage(format!("unknown function `{spec}`; use power:A, reciprocal-power:A or identity"));
    if spec == "identity" {
        return Ok(NamedFunction::Identity);
    }
    let (name, alpha) = spec.split_once(':').ok_or_else(bad)?;
    let alpha: f64 = alpha.trim().parse().map_err(|_| bad())?;
    if !alpha.is_finite() {
        return Err(bad());
    }
    match name {
        "power" => Ok(NamedFunction::Power(alpha)),
        "reciprocal-power" => Ok(NamedFunction::ReciprocalPower(alpha)),
        _ => Err(bad()),
    }
}

impl Instance {
    pub fn load(c: &Common) -> Result<Instance> {
        if !(c.tol > 0.0) || !(c.pd_tol > 0.0) {
            return Err(CliError::Usage("tolerances must be positive".into()));
        }
        if let (Some(family), Some(set)) = (c.family, &c.set) {
            let family: Family = family.into();
            if c.kind.is_some_and(|k| kind_of(k) != family.kind()) {
                return Err(CliError::Usage(format!("this family gives a {} matrix", family.kind().name())));
            }
            let named = build_named_matrix(family, set, c.alpha)?;
            let members = named.subset().members().to_vec();
            return Ok(Instance {
                poset: named.lattice.poset().clone(),
                members,
                kind: family.kind(),
                exact: named.exact_function(),
                float: Some(named.float_function()),
            });
        }
        let path = c.poset.as_ref().expect("clap requires an input");
        let input = load_poset(path)?;
        let poset = input.poset;
        let labels: Vec<String> = match (&c.subset, input.subset) {
            (Some(s), _) => s.clone(),
            (None, Some(s)) => s,
            (None, None) => poset.labels().to_vec(),
        };
        let mut members = Vec::with_capacity(labels.len());
        for l in &labels {
            let i = poset
                .index_of_label(l.trim())
                .ok_or_else(|| CliError::Usage(format!("the set names unknown element `{l}`")))?;
            if members.contains(&i) {
                return Err(CliError::Usage(format!("the set lists `{l}` twice")));
            }
            members.push(i);
        }
        members.sort_unstable();
        let kind = c.kind.map_or(Kind::Meet, kind_of);
        let (exact, float) = match (&c.values, &c.function) {
            (Some(file), _) => {
                let f = load_function_table(file, &poset)?;
                let float = f.to_f64();
                (Some(f), Some(float))
            }
            (None, Some(spec)) => {
                let named = parse_named_function(spec)?;
                let ints = poset
                    .labels()
                    .iter()
                    .map(|l| l.parse::<u64>().ok().filter(|&v| v > 0))
                    .collect::<Option<Vec<u64>>>()
                    .ok_or_else(|| CliError::Usage("named functions need positive integer labels".into()))?;
                let exact = ints.iter().map(|&v| named.eval_exact(v)).collect::<Option<Vec<Rational>>>();
                let float = ints.iter().map(|&v| named.eval_f64(v)).collect();
                (exact.map(PosetFunction::new), Some(float))
            }
            (None, None) => (None, None),
        };
        Ok(Instance { poset, members, kind, exact, float })
    }

    pub fn subset(&self) -> Subset<'_> {
        Subset::new(&self.poset, self.members.clone()).expect("members are sorted and distinct")
    }

    fn labels(&self, elements: &[usize]) -> Vec<String> {
        elements.iter().map(|&e| self.poset.label(e).to_string()).collect()
    }

    fn require_function(&self) -> Result<()> {
        if self.float.is_none() {
            return Err(CliError::Usage("this command needs a function: give --values or --function".into()));
        }
        Ok(())
    }

    /// Fails with the labels of closure elements that have no value.
    fn check_coverage(&self) -> Result<()> {
        let c = closure(&self.subset(), self.kind)?;
        let missing: Vec<usize> = match (&self.exact, &self.float) {
            (Some(f), _) => match f.values_at(&c.ambient) {
                Err(CoreError::MissingValue { elements }) => elements,
                Err(e) => return Err(e.into()),
                Ok(_) => Vec::new(),
            },
            (None, Some(v)) => c.ambient.iter().copied().filter(|&e| v[e].is_nan()).collect(),
            (None, None) => Vec::new(),
        };
        if missing.is_empty() {
            Ok(())
        } else {
            Err(CliError::MissingValue { labels: self.labels(&missing) })
        }
    }

    fn exact_matrix(&self) -> Result<Option<SymMatrix>> {
        match &self.exact {
            Some(f) => Ok(Some(kind_matrix(&self.subset(), f, self.kind)?)),
            None => Ok(None),
        }
    }

    fn float_matrix(&self) -> Result<FloatMatrix> {
        let v = self.float.as_ref().expect("function checked");
        let m = &self.members;
        let mut entries = Vec::with_capacity(m.len() * m.len());
        for &a in m {
            for &b in m {
                entries.push(v[self.poset.bound(a, b, self.kind)?]);
            }
        }
        Ok(FloatMatrix::new(m.len(), entries)?)
    }

    fn matrix_out(&self) -> Result<MatrixOut> {
        Ok(match self.exact_matrix()? {
            Some(m) => MatrixOut::Exact(
                (0..m.dim()).map(|i| m.row(i).iter().map(|v| v.to_string()).collect()).collect(),
            ),
            None => {
                let m = self.float_matrix()?;
                let n = m.dim();
                MatrixOut::Float((0..n).map(|i| m.entries()[i * n..(i + 1) * n].to_vec()).collect())
            }
        })
    }

    fn report(&self, command: &str) -> Report {
        Report::new(command, self.kind.name(), self.labels(&self.members))
    }

    fn classification(&self) -> Classification {
        let s = self.subset();
        let ok = |r: std::result::Result<bool, CoreError>| r.ok();
        let hasse_tree = s.induced().map(|(sub, _)| cover_graph(&sub).is_tree(sub.len())).unwrap_or(false);
        Classification {
            meet_closed: ok(is_closed(&s, Kind::Meet)),
            join_closed: ok(is_closed(&s, Kind::Join)),
            chain: is_chain(&s),
            wedge_tree: ok(is_tree_set(&s, Kind::Meet)),
            vee_tree: ok(is_tree_set(&s, Kind::Join)),
            a_set: ok(is_a_set(&s)),
            hasse_tree,
        }
    }

    fn closures(&self) -> Result<Closures> {
        let s = self.subset();
        let list = |c: std::result::Result<meetjoin_core::poset::ClosureResult, CoreError>| {
            c.ok().map(|c| self.labels(&c.ambient))
        };
        Ok(Closures {
            meet_closure: list(closure(&s, Kind::Meet)),
            join_closure: list(closure(&s, Kind::Join)),
            down_set: self.labels(&down_set(&s)?.ambient),
            up_set: self.labels(&up_set(&s)?.ambient),
        })
    }

    fn describe_failure(&self, f: &Failure) -> String {
        match f {
            Failure::NotClosed(k) => format!("the set is not {} closed", k.name()),
            Failure::NotTreeSet(k) => format!("the set is not a {}-tree set", k.name()),
            Failure::NotStrictlyMonotone { lower, upper } => format!(
                "f is not strictly monotone between {} and {}",
                self.poset.label(*lower),
                self.poset.label(*upper)
            ),
            Failure::NonPositive { element } => format!("f is not positive at {}", self.poset.label(*element)),
            Failure::MissingValues(e) => format!("no value for {}", self.labels(e).join(", ")),
        }
    }

    fn describe_hypothesis(&self, h: &Hypothesis, order: &[usize]) -> String {
        match *h {
            Hypothesis::Negative { element } => format!("f is negative at {}", self.poset.label(element)),
            Hypothesis::NotMonotone { lower, upper } => format!(
                "f lacks the order property between {} and {}",
                self.poset.label(lower),
                self.poset.label(upper)
            ),
            Hypothesis::IndexNotMonotone { position } => format!(
                "f is not monotone in the index at {}",
                order.get(position).map_or("?", |&e| self.poset.label(e))
            ),
        }
    }

    fn certificate_out(&self, report: &PdReport) -> CertificateOut {
        let strs = |v: &[Rational]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        match &report.certificate {
            Certificate::Inversion { kind, elements, values } => CertificateOut::Inversion {
                kind: kind.name().into(),
                elements: self.labels(elements),
                values: strs(values),
            },
            Certificate::Inconclusive { kind, elements, values, offending } => CertificateOut::Inconclusive {
                kind: kind.name().into(),
                elements: self.labels(elements),
                values: strs(values),
                offending: offending.iter().map(|&o| self.poset.label(elements[o]).to_string()).collect(),
            },
            Certificate::Minors(m) => CertificateOut::Minors { minors: strs(m) },
            Certificate::FailingMinor { order, minor, witness } => {
                CertificateOut::FailingMinor { order: *order, minor: minor.to_string(), witness: strs(witness) }
            }
            Certificate::FloatPivots(p) => CertificateOut::FloatPivots { pivots: p.clone() },
            Certificate::Hypothesis(f) => CertificateOut::Hypothesis { failure: self.describe_failure(f) },
        }
    }
}

fn csv_unsupported(command: &str) -> CliError {
    CliError::Usage(format!("`{command}` has no CSV form; CSV is available for build and bounds"))
}

fn build(c: &Common) -> Result<Output> {
    let inst = Instance::load(c)?;
    inst.require_function()?;
    inst.check_coverage()?;
    let text = match c.format {
        Format::Csv => match inst.exact_matrix()? {
            Some(m) => matrix_to_csv(&m),
            None => {
                let m = inst.float_matrix()?;
                let n = m.dim();
                let mut w = csv::Writer::from_writer(Vec::new());
                for i in 0..n {
                    w.write_record(m.entries()[i * n..(i + 1) * n].iter().map(|v| v.to_string()))
                        .expect("writing to memory");
                }
                String::from_utf8(w.into_inner().expect("flushing to memory")).expect("ASCII CSV")
            }
        },
        Format::Json => {
            let mut r = inst.report("build");
            r.matrix = Some(inst.matrix_out()?);
            r.to_json()
        }
    };
    Ok(Output { text, status: 0 })
}

fn classify(c: &Common) -> Result<Output> {
    if c.format == Format::Csv {
        return Err(csv_unsupported("classify"));
    }
    let inst = Instance::load(c)?;
    let mut r = inst.report("classify");
    r.classification = Some(inst.classification());
    if c.matrix && inst.float.is_some() {
        inst.check_coverage()?;
        r.matrix = Some(inst.matrix_out()?);
    }
    Ok(Output { text: r.to_json(), status: 0 })
}

fn closure_command(c: &Common) -> Result<Output> {
    if c.format == Format::Csv {
        return Err(csv_unsupported("closure"));
    }
    let inst = Instance::load(c)?;
    let mut r = inst.report("closure");
    r.closures = Some(inst.closures()?);
    Ok(Output { text: r.to_json(), status: 0 })
}

fn check_pd(c: &Common) -> Result<Output> {
    if c.format == Format::Csv {
        return Err(csv_unsupported("check-pd"));
    }
    let inst = Instance::load(c)?;
    inst.require_function()?;
    inst.check_coverage()?;
    let s = inst.subset();
    let mut r = inst.report("check-pd");
    r.classification = Some(inst.classification());
    if c.matrix {
        r.matrix = Some(inst.matrix_out()?);
    }
    let pd = match &inst.exact {
        Some(f) => {
            let cl = closure(&s, inst.kind)?;
            let inv = inversion_over(&cl, f)?;
            let values: Vec<LabeledValue> = cl
                .ambient
                .iter()
                .zip(&inv.values)
                .map(|(&e, v)| LabeledValue { element: inst.poset.label(e).into(), value: v.to_string() })
                .collect();
            match inst.kind {
                Kind::Meet => r.psi = Some(values),
                Kind::Join => r.phi = Some(values),
            }
            let m = kind_matrix(&s, f, inst.kind)?;
            r.det = Some(det_general(&m).to_string());
            classify_and_test(&s, f, inst.kind)?
        }
        None => pd_oracle_float(&inst.float_matrix()?, c.pd_tol),
    };
    r.verdict = Some(pd.verdict.tag().into());
    r.method = Some(pd.method.tag().into());
    r.certificate = Some(inst.certificate_out(&pd));
    Ok(Output { text: r.to_json(), status: 0 })
}

fn bounds_command(b: &BoundsArgs) -> Result<Output> {
    let c = &b.common;
    let inst = Instance::load(c)?;
    inst.require_function()?;
    inst.check_coverage()?;
    let s = inst.subset();
    let values = inst.float.as_ref().expect("function checked");
    let report = bounds(&s, values, inst.kind)?;
    // the matrix in the order the bounds refer to
    let ordered = Instance {
        poset: inst.poset.clone(),
        members: report.order.clone(),
        kind: inst.kind,
        exact: None,
        float: inst.float.clone(),
    };
    let m = ordered.float_matrix()?;
    let spectrum = eigen_sym_with(&m, c.tol, c.max_sweeps)?;
    let check = report.check(&spectrum, BOUND_SLACK);
    let out = BoundsOut {
        verified: report.verified(),
        hypotheses: HypothesesOut {
            nonnegative: report.hypotheses.nonnegative,
            order_property: report.hypotheses.order_property,
            index_monotone: report.hypotheses.index_monotone,
        },
        violation: report.violation.as_ref().map(|h| inst.describe_hypothesis(h, &report.order)),
        order: inst.labels(&report.order),
        reindex_permutation: report.reindex_permutation.clone(),
        rows: check.rows.iter().map(|r| BoundRowOut { k: r.k, lambda: r.lambda, bound: r.bound, ok: r.ok }).collect(),
        lower_max: report.lower_max,
        lambda_max: spectrum.largest(),
        lower_ok: check.lower_ok,
        all_ok: check.all_ok(),
    };
    let status = if report.verified() { 0 } else { EXIT_PRECONDITION };
    let text = match c.format {
        Format::Csv => bounds_csv(&out),
        Format::Json => {
            let mut r = inst.report("bounds");
            if c.matrix {
                r.matrix = Some(inst.matrix_out()?);
            }
            if let Some(m) = inst.exact_matrix()? {
                r.det = Some(det_general(&m).to_string());
            }
            r.eigenvalues = Some(spectrum.eigenvalues.clone());
            if b.samples > 0 {
                r.quadratic_forms = Some(quadratic_forms(&m, values, &report.order, inst.kind, b.samples, b.seed)?);
            }
            r.bounds = Some(out);
            r.to_json()
        }
    };
    Ok(Output { text, status })
}

/// Largest excess of `y*My` over `k·y*y·f(x)` across random supported vectors.
fn quadratic_forms(
    m: &FloatMatrix,
    values: &[f64],
    order: &[usize],
    kind: Kind,
    samples: usize,
    seed: u64,
) -> Result<QuadraticFormsOut> {
    let mut rng = StdRng::seed_from_u64(seed);
    let n = m.dim();
    let mut max_excess = f64::NEG_INFINITY;
    for k in 1..=n {
        let (support, fx) = match kind {
            Kind::Meet => (Support::Leading(k), values[order[k - 1]]),
            Kind::Join => (Support::Trailing(k), values[order[n - k]]),
        };
        let inside = |i: usize| match support {
            Support::Leading(k) => i < k,
            Support::Trailing(k) => i + k >= n,
        };
        let mut drawn = 0;
        while drawn < samples {
            let y: Vec<Complex64> = (0..n)
                .map(|i| {
                    if inside(i) {
                        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
                .collect();
            let norm2: f64 = y.iter().map(|z| z.norm_sqr()).sum();
            if norm2 == 0.0 {
                continue;
            }
            let form = quadratic_form_check(m, &y, support)?;
            max_excess = max_excess.max(form - k as f64 * norm2 * fx);
            drawn += 1;
        }
    }
    Ok(QuadraticFormsOut { samples_per_k: samples, seed, max_excess, ok: max_excess <= BOUND_SLACK })
}

/// Runs one command.
pub fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Build(c) => build(c),
        Command::Classify(c) => classify(c),
        Command::CheckPd(c) => check_pd(c),
        Command::Bounds(b) => bounds_command(b),
        Command::Closure(c) => closure_command(c),
    }
}
