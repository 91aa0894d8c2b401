//! Poset files, function tables, rational literals and matrix CSV.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use meetjoin_core::matrix::SymMatrix;
use meetjoin_core::mobius::PosetFunction;
use meetjoin_core::numtheory::{divisors_of, generated_by};
use meetjoin_core::poset::{build_poset, FinitePoset};
use meetjoin_core::Rational;
use num_bigint::BigInt;
use num_traits::{pow, Zero};
use serde::Deserialize;

use crate::error::{CliError, Result};

/// A YAML scalar used as an element label.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Scalar {
    Int(i64),
    Str(String),
}

impl Scalar {
    fn into_label(self) -> String {
        match self {
            Scalar::Int(v) => v.to_string(),
            Scalar::Str(s) => s,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PosetDoc {
    n: Option<usize>,
    relation: Option<Vec<(usize, usize)>>,
    labels: Option<Vec<Scalar>>,
    divisors_of: Option<u64>,
    generated_by: Option<Vec<u64>>,
    subset: Option<Vec<Scalar>>,
}

/// A parsed poset file.
#[derive(Debug, Clone)]
pub struct PosetInput {
    pub poset: FinitePoset,
    /// Labels of the set `S`, if the file names one.
    pub subset: Option<Vec<String>>,
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn format_error(path: &Path, message: impl Into<String>) -> CliError {
    CliError::Format { path: path.to_path_buf(), message: message.into() }
}

/// Parses a poset document. `path` is used for diagnostics only.
pub fn parse_poset(path: &Path, text: &str) -> Result<PosetInput> {
    let doc: PosetDoc = serde_yaml::from_str(text).map_err(|e| match e.location() {
        Some(loc) => CliError::Parse { path: path.to_path_buf(), line: loc.line(), message: e.to_string() },
        None => format_error(path, e.to_string()),
    })?;
    let subset = doc.subset.map(|s| s.into_iter().map(Scalar::into_label).collect());
    let explicit = doc.n.is_some() || doc.relation.is_some() || doc.labels.is_some();
    let poset = match (doc.divisors_of, doc.generated_by) {
        (Some(_), Some(_)) => return Err(format_error(path, "give only one of `divisors_of` and `generated_by`")),
        (Some(_), None) | (None, Some(_)) if explicit => {
            return Err(format_error(path, "divisor shorthand cannot be combined with `n`, `relation` or `labels`"))
        }
        (Some(m), None) => divisors_of(m)?.poset().clone(),
        (None, Some(gens)) => generated_by(&gens)?.poset().clone(),
        (None, None) => {
            let n = doc.n.ok_or_else(|| format_error(path, "missing field `n`"))?;
            let mut relation = Vec::new();
            for (k, &(a, b)) in doc.relation.unwrap_or_default().iter().enumerate() {
                for v in [a, b] {
                    if v == 0 || v > n {
                        return Err(format_error(
                            path,
                            format!("relation pair {} [{a}, {b}]: index {v} outside 1..={n}", k + 1),
                        ));
                    }
                }
                relation.push((a - 1, b - 1));
            }
            let labels = match doc.labels {
                Some(l) => {
                    let labels: Vec<String> = l.into_iter().map(Scalar::into_label).collect();
                    if labels.len() != n {
                        return Err(format_error(path, format!("{} labels for {n} elements", labels.len())));
                    }
                    let mut seen = BTreeSet::new();
                    if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
                        return Err(format_error(path, format!("label `{dup}` used twice")));
                    }
                    Some(labels)
                }
                None => None,
            };
            build_poset(n, &relation, labels)?
        }
    };
    Ok(PosetInput { poset, subset })
}

pub fn load_poset(path: &Path) -> Result<PosetInput> {
    parse_poset(path, &read_file(path)?)
}

/// Parses an integer, a fraction `p/q` or a finite decimal exactly.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let t = text.trim();
    if t.contains('/') {
        let r = Rational::from_str(t).ok()?;
        return Some(r);
    }
    if let Some((int, frac)) = t.split_once('.') {
        let (sign, int) = match int.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, int.strip_prefix('+').unwrap_or(int)),
        };
        let digits_ok = |s: &str| s.chars().all(|c| c.is_ascii_digit());
        if (int.is_empty() && frac.is_empty()) || !digits_ok(int) || !digits_ok(frac) {
            return None;
        }
        let numer = BigInt::from_str(&format!("{int}{frac}")).ok().unwrap_or_else(BigInt::zero);
        let denom = pow(BigInt::from(10), frac.len());
        return Some(Rational::new(numer * sign, denom));
    }
    BigInt::from_str(t).ok().map(Rational::from_integer)
}

/// Parses `label: value` lines against the poset's labels. Blank lines and
/// text after `#` are ignored. Elements without a line stay undefined.
pub fn parse_function_table(path: &Path, text: &str, poset: &FinitePoset) -> Result<PosetFunction> {
    let mut values: Vec<Option<Rational>> = vec![None; poset.len()];
    let mut first_line: BTreeMap<usize, usize> = BTreeMap::new();
    let parse_error = |line: usize, message: String| CliError::Parse { path: path.to_path_buf(), line, message };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (label, value) = content
            .split_once(':')
            .ok_or_else(|| parse_error(line, format!("expected `label: value`, found `{content}`")))?;
        let label = label.trim();
        let element = poset
            .index_of_label(label)
            .ok_or_else(|| parse_error(line, format!("unknown element `{label}`")))?;
        let value =
            parse_rational(value).ok_or_else(|| parse_error(line, format!("`{}` is not a rational number", value.trim())))?;
        if let Some(&first) = first_line.get(&element) {
            return Err(CliError::Duplicate { path: path.to_path_buf(), line, first, label: label.to_string() });
        }
        first_line.insert(element, line);
        values[element] = Some(value);
    }
    Ok(PosetFunction::partial(values))
}

pub fn load_function_table(path: &Path, poset: &FinitePoset) -> Result<PosetFunction> {
    parse_function_table(path, &read_file(path)?, poset)
}

/// Writes a rational matrix as CSV with one `p/q` cell per entry.
pub fn matrix_to_csv(m: &SymMatrix) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for i in 0..m.dim() {
        w.write_record(m.row(i).iter().map(|v| v.to_string())).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flushing to memory")).expect("CSV of ASCII cells")
}

/// Parses a matrix written by [`matrix_to_csv`].
pub fn parse_matrix_csv(path: &Path, text: &str) -> Result<SymMatrix> {
    let mut reader = csv::ReaderBuilder::new().has_headers(false).from_reader(text.as_bytes());
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let line = i + 1;
        let record = record.map_err(|e| CliError::Parse { path: path.to_path_buf(), line, message: e.to_string() })?;
        let row = record
            .iter()
            .map(|cell| {
                parse_rational(cell).ok_or_else(|| CliError::Parse {
                    path: path.to_path_buf(),
                    line,
                    message: format!("`{cell}` is not a rational number"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    let n = rows.len();
    if let Some(bad) = rows.iter().position(|r| r.len() != n) {
        return Err(CliError::Parse {
            path: path.to_path_buf(),
            line: bad + 1,
            message: format!("row has {} entries, expected {n}", rows[bad].len()),
        });
    }
    Ok(SymMatrix::new(n, rows.into_iter().flatten().collect())?)
}

/// Placeholder path for text that did not come from a file.
pub fn inline(name: &str) -> PathBuf {
    PathBuf::from(format!("<{name}>"))
}
