//! Positive-definiteness tests for meet and join matrices.
//!
//! Every test returns a [`PdReport`] carrying a certificate that can be
//! re-checked with [`PdReport::validate`] without going through the code
//! that produced it. Sufficient-only conditions never return a negative
//! verdict: when they fail the report is `NotApplicable` and lists the
//! offending inversion values.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Precondition, Result};
use crate::matrix::{det_general, kind_matrix, FloatMatrix, SymMatrix};
use crate::mobius::{inversion, PosetFunction};
use crate::poset::{
    closure, cover_graph, down_set, is_closed, is_tree_set, order_violation, up_set, ClosureResult,
    Kind, Subset,
};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    PositiveDefinite,
    NotPositiveDefinite,
    NotApplicable,
}

impl Verdict {
    pub fn tag(self) -> &'static str {
        match self {
            Verdict::PositiveDefinite => "positive-definite",
            Verdict::NotPositiveDefinite => "not-positive-definite",
            Verdict::NotApplicable => "not-applicable",
        }
    }
}

/// Which test decided the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Sign of the inversion over a closed set (necessary and sufficient).
    ClosedSet(Kind),
    /// Positive inversion over a closed superset (sufficient only).
    Superset(Kind),
    /// Tree-shaped closure with a strictly monotone positive function.
    TreeMonotone(Kind),
    /// Exact leading principal minors.
    MinorOracle,
    /// `LDLᵀ` pivots in floating point.
    FloatOracle,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::ClosedSet(Kind::Meet) => "meet-closed",
            Method::ClosedSet(Kind::Join) => "join-closed",
            Method::Superset(Kind::Meet) => "meet-superset",
            Method::Superset(Kind::Join) => "join-superset",
            Method::TreeMonotone(Kind::Meet) => "meet-tree",
            Method::TreeMonotone(Kind::Join) => "join-tree",
            Method::MinorOracle => "minor-oracle",
            Method::FloatOracle => "float-oracle",
        }
    }
}

/// Why a theorem did not apply.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    NotClosed(Kind),
    NotTreeSet(Kind),
    NotStrictlyMonotone { lower: usize, upper: usize },
    NonPositive { element: usize },
    MissingValues(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Certificate {
    /// Inversion values over `elements` (ambient indices, in the order of the
    /// set's own linear extension).
    Inversion { kind: Kind, elements: Vec<usize>, values: Vec<Rational> },
    /// A sufficient condition failed at the `offending` positions.
    Inconclusive { kind: Kind, elements: Vec<usize>, values: Vec<Rational>, offending: Vec<usize> },
    /// All leading principal minors, each positive.
    Minors(Vec<Rational>),
    /// The leading minor of this order is not positive; `witness` is
    /// supported on the first `order` coordinates with `yᵀMy ≤ 0`.
    FailingMinor { order: usize, minor: Rational, witness: Vec<Rational> },
    /// `LDLᵀ` pivots from the float oracle.
    FloatPivots(Vec<f64>),
    Hypothesis(Failure),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PdReport {
    pub verdict: Verdict,
    pub method: Method,
    pub certificate: Certificate,
}

impl PdReport {
    pub fn is_positive_definite(&self) -> bool {
        self.verdict == Verdict::PositiveDefinite
    }

    /// Re-checks the certificate against the matrix of kind `kind` of `s`.
    pub fn validate(&self, s: &Subset<'_>, f: &PosetFunction, kind: Kind) -> Result<bool> {
        match &self.certificate {
            Certificate::Inversion { kind: k, elements, values } => {
                if !resums_to(s, f, *k, elements, values)? {
                    return Ok(false);
                }
                let positive = values.iter().all(|v| v > &Rational::zero());
                Ok(match self.verdict {
                    Verdict::PositiveDefinite => positive,
                    Verdict::NotPositiveDefinite => {
                        !positive && matches!(self.method, Method::ClosedSet(_))
                    }
                    Verdict::NotApplicable => false,
                })
            }
            Certificate::Inconclusive { kind: k, elements, values, offending } => Ok(self.verdict
                == Verdict::NotApplicable
                && resums_to(s, f, *k, elements, values)?
                && !offending.is_empty()
                && offending.iter().all(|&o| values[o] <= Rational::zero())),
            Certificate::Minors(_) | Certificate::FailingMinor { .. } => {
                self.validate_matrix(&kind_matrix(s, f, kind)?)
            }
            Certificate::FloatPivots(_) => Ok(true),
            Certificate::Hypothesis(_) => Ok(self.verdict == Verdict::NotApplicable),
        }
    }

    /// Re-checks a minor certificate against `m`.
    pub fn validate_matrix(&self, m: &SymMatrix) -> Result<bool> {
        match &self.certificate {
            Certificate::Minors(minors) => Ok(self.verdict == Verdict::PositiveDefinite
                && minors.len() == m.dim()
                && minors
                    .iter()
                    .enumerate()
                    .all(|(k, v)| v > &Rational::zero() && *v == det_general(&m.leading(k + 1)))),
            Certificate::FailingMinor { order, minor, witness } => {
                if self.verdict != Verdict::NotPositiveDefinite
                    || *order == 0
                    || *order > m.dim()
                    || *minor != det_general(&m.leading(*order))
                    || *minor > Rational::zero()
                {
                    return Ok(false);
                }
                let supported = witness[*order..].iter().all(Zero::is_zero);
                let nonzero = witness.iter().any(|w| !w.is_zero());
                Ok(supported && nonzero && m.quadratic_form(witness)? <= Rational::zero())
            }
            _ => Err(Error::InvalidArgument("certificate does not refer to a bare matrix".into())),
        }
    }
}

/// Checks `f(e_k) = Σ values` over the down-set (meet) or up-set (join) of
/// `e_k` within `elements`, using only the ambient order.
fn resums_to(
    s: &Subset<'_>,
    f: &PosetFunction,
    kind: Kind,
    elements: &[usize],
    values: &[Rational],
) -> Result<bool> {
    if elements.len() != values.len() {
        return Ok(false);
    }
    let p = s.parent();
    for &e in elements {
        let sum = elements
            .iter()
            .zip(values)
            .filter(|(&v, _)| match kind {
                Kind::Meet => p.leq(v, e),
                Kind::Join => p.leq(e, v),
            })
            .fold(Rational::zero(), |acc, (_, val)| acc + val);
        if &sum != f.get(e)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn not_applicable(method: Method, failure: Failure) -> PdReport {
    PdReport { verdict: Verdict::NotApplicable, method, certificate: Certificate::Hypothesis(failure) }
}

/// Exact leading-principal-minor test.
pub fn pd_oracle(m: &SymMatrix) -> PdReport {
    let n = m.dim();
    let mut a: Vec<Vec<Rational>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut minors = Vec::with_capacity(n);
    let mut minor = Rational::one();
    for k in 0..n {
        let pivot = a[k][k].clone();
        minor = &minor * &pivot;
        if pivot <= Rational::zero() {
            return PdReport {
                verdict: Verdict::NotPositiveDefinite,
                method: Method::MinorOracle,
                certificate: Certificate::FailingMinor {
                    order: k + 1,
                    minor,
                    witness: refuting_vector(m, k),
                },
            };
        }
        minors.push(minor.clone());
        for i in (k + 1)..n {
            let factor = &a[i][k] / &pivot;
            for j in k..n {
                let v = &a[i][j] - &factor * &a[k][j];
                a[i][j] = v;
            }
        }
    }
    PdReport {
        verdict: Verdict::PositiveDefinite,
        method: Method::MinorOracle,
        certificate: Certificate::Minors(minors),
    }
}

/// `y = (−A⁻¹ b, 1, 0, …)` with `A` the leading `k × k` block and `b` the first
/// `k` entries of column `k`; then `yᵀMy` is the `k`-th pivot.
fn refuting_vector(m: &SymMatrix, k: usize) -> Vec<Rational> {
    let n = m.dim();
    let mut y = vec![Rational::zero(); n];
    y[k] = Rational::one();
    if k > 0 {
        let mut aug: Vec<Vec<Rational>> = (0..k)
            .map(|i| {
                let mut row: Vec<Rational> = (0..k).map(|j| m.get(i, j).clone()).collect();
                row.push(-m.get(i, k).clone());
                row
            })
            .collect();
        // The leading k×k block is positive definite here, so no pivot vanishes.
        for c in 0..k {
            for r in (c + 1)..k {
                let factor = &aug[r][c] / &aug[c][c];
                for j in c..=k {
                    let v = &aug[r][j] - &factor * &aug[c][j];
                    aug[r][j] = v;
                }
            }
        }
        for c in (0..k).rev() {
            let tail = ((c + 1)..k).fold(Rational::zero(), |acc, j| acc + &aug[c][j] * &y[j]);
            y[c] = (&aug[c][k] - tail) / &aug[c][c];
        }
    }
    y
}

/// Float `LDLᵀ` test. Positive definite when every pivot exceeds
/// `rel_tol · max |m_ii|`.
pub fn pd_oracle_float(m: &FloatMatrix, rel_tol: f64) -> PdReport {
    let n = m.dim();
    let scale = (0..n).map(|i| libm::fabs(m.get(i, i))).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let mut a: Vec<f64> = m.entries().to_vec();
    let mut pivots = Vec::with_capacity(n);
    let mut verdict = Verdict::PositiveDefinite;
    for k in 0..n {
        let pivot = a[k * n + k];
        pivots.push(pivot);
        if !(pivot > rel_tol * scale) {
            verdict = Verdict::NotPositiveDefinite;
            break;
        }
        for i in (k + 1)..n {
            let factor = a[i * n + k] / pivot;
            for j in k..n {
                a[i * n + j] -= factor * a[k * n + j];
            }
        }
    }
    PdReport { verdict, method: Method::FloatOracle, certificate: Certificate::FloatPivots(pivots) }
}

/// Decides positive definiteness of the meet (join) matrix of a meet (join)
/// closed set from the signs of the inversion over the set itself.
pub fn pd_closed(s: &Subset<'_>, f: &PosetFunction, kind: Kind) -> Result<PdReport> {
    let method = Method::ClosedSet(kind);
    if !is_closed(s, kind)? {
        return Ok(not_applicable(method, Failure::NotClosed(kind)));
    }
    let (sub, map) = s.induced()?;
    let g = PosetFunction::new(f.values_at(&map)?);
    let inv = inversion(&sub, &g, kind)?;
    let verdict =
        if inv.all_positive() { Verdict::PositiveDefinite } else { Verdict::NotPositiveDefinite };
    Ok(PdReport {
        verdict,
        method,
        certificate: Certificate::Inversion { kind, elements: map, values: inv.values },
    })
}

pub fn pd_meet_closed(s: &Subset<'_>, f: &PosetFunction) -> Result<PdReport> {
    pd_closed(s, f, Kind::Meet)
}

pub fn pd_join_closed(s: &Subset<'_>, f: &PosetFunction) -> Result<PdReport> {
    pd_closed(s, f, Kind::Join)
}

/// Sufficient test over a closed superset `d`; the matrix kind follows
/// `d.kind`. Fails with an error when `d` is not closed or misses a member.
pub fn pd_superset_sufficient(
    s: &Subset<'_>,
    d: &ClosureResult,
    f: &PosetFunction,
) -> Result<PdReport> {
    let kind = d.kind;
    if let Some(&m) = s.members().iter().find(|&&m| d.position(m).is_none()) {
        return Err(Error::NotSuperset { element: m });
    }
    if !d.is_closed(s.parent())? {
        return Err(Error::NotClosed { kind });
    }
    let inv = inversion(&d.closed, &f.restrict(d)?, kind)?;
    let elements = d.ambient.clone();
    let offending = inv.non_positive();
    Ok(if offending.is_empty() {
        PdReport {
            verdict: Verdict::PositiveDefinite,
            method: Method::Superset(kind),
            certificate: Certificate::Inversion { kind, elements, values: inv.values },
        }
    } else {
        PdReport {
            verdict: Verdict::NotApplicable,
            method: Method::Superset(kind),
            certificate: Certificate::Inconclusive { kind, elements, values: inv.values, offending },
        }
    })
}

/// Tree-set test: positive on the closure, tree-shaped closure, strictly
/// order-preserving (meet) or order-reversing (join) on the closure.
pub fn pd_tree(s: &Subset<'_>, f: &PosetFunction, kind: Kind) -> Result<PdReport> {
    let method = Method::TreeMonotone(kind);
    let c = closure(s, kind)?;
    let values = match f.values_at(&c.ambient) {
        Ok(v) => v,
        Err(Error::MissingValue { elements }) => {
            return Ok(not_applicable(method, Failure::MissingValues(elements)))
        }
        Err(e) => return Err(e),
    };
    if let Some(k) = values.iter().position(|v| v <= &Rational::zero()) {
        return Ok(not_applicable(method, Failure::NonPositive { element: c.ambient[k] }));
    }
    if !is_tree_set(s, kind)? {
        return Ok(not_applicable(method, Failure::NotTreeSet(kind)));
    }
    let p = s.parent();
    let mut by_ambient: Vec<Option<Rational>> = vec![None; p.len()];
    for (k, &a) in c.ambient.iter().enumerate() {
        by_ambient[a] = Some(values[k].clone());
    }
    if let Some((lower, upper)) =
        order_violation(p, &c.ambient, &by_ambient, true, kind == Kind::Join)
    {
        return Ok(not_applicable(method, Failure::NotStrictlyMonotone { lower, upper }));
    }
    let inv = inversion(&c.closed, &PosetFunction::new(values), kind)?;
    Ok(PdReport {
        verdict: Verdict::PositiveDefinite,
        method,
        certificate: Certificate::Inversion { kind, elements: c.ambient, values: inv.values },
    })
}

/// For a set whose own Hasse diagram is a tree, with its minimum listed first
/// (meet) or its maximum listed last (join), and whose matrix is positive
/// definite: reports whether `f` is strictly order-preserving (meet) or
/// order-reversing (join) on the set with positive values.
pub fn monotonicity_from_pd(s: &Subset<'_>, f: &PosetFunction, kind: Kind) -> Result<bool> {
    if s.is_empty() {
        return Err(Error::Precondition(Precondition::Empty));
    }
    let p = s.parent();
    let m = s.members();
    let extreme = match kind {
        Kind::Meet => m[0],
        Kind::Join => m[m.len() - 1],
    };
    let bounds_all = m.iter().all(|&x| match kind {
        Kind::Meet => p.leq(extreme, x),
        Kind::Join => p.leq(x, extreme),
    });
    if !bounds_all {
        return Err(Error::Precondition(Precondition::NoMinimum));
    }
    let (sub, _) = s.induced()?;
    if !cover_graph(&sub).is_tree(sub.len()) {
        return Err(Error::Precondition(Precondition::HasseNotTree));
    }
    if !pd_oracle(&kind_matrix(s, f, kind)?).is_positive_definite() {
        return Err(Error::Precondition(Precondition::NotPositiveDefinite));
    }
    let values = f.values_at(m)?;
    let mut by_ambient: Vec<Option<Rational>> = vec![None; p.len()];
    for (k, &a) in m.iter().enumerate() {
        by_ambient[a] = Some(values[k].clone());
    }
    let monotone = order_violation(p, m, &by_ambient, true, kind == Kind::Join).is_none();
    Ok(monotone && values.iter().all(|v| v > &Rational::zero()))
}

/// Runs the theorem-backed tests in order (closed set, closed supersets,
/// tree set) and falls back to the exact oracle. The first test that decides
/// the question is reported.
pub fn classify_and_test(s: &Subset<'_>, f: &PosetFunction, kind: Kind) -> Result<PdReport> {
    let matrix = kind_matrix(s, f, kind)?;
    let report = pd_closed(s, f, kind)?;
    if report.verdict != Verdict::NotApplicable {
        return Ok(report);
    }
    let canonical = match kind {
        Kind::Meet => down_set(s),
        Kind::Join => up_set(s),
    };
    for superset in [closure(s, kind), canonical] {
        let Ok(d) = superset else { continue };
        match pd_superset_sufficient(s, &d, f) {
            Ok(r) if r.is_positive_definite() => return Ok(r),
            Ok(_) | Err(Error::MissingValue { .. }) | Err(Error::NotClosed { .. }) => {}
            Err(Error::NoMeet { .. }) | Err(Error::NoJoin { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    let tree = pd_tree(s, f, kind)?;
    if tree.is_positive_definite() {
        return Ok(tree);
    }
    Ok(pd_oracle(&matrix))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::meet_matrix;
    use crate::poset::{meet_closure, FinitePoset};
    use alloc::string::ToString;

    fn r(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn mat(rows: &[&[i64]]) -> SymMatrix {
        let n = rows.len();
        SymMatrix::new(n, rows.iter().flat_map(|row| row.iter().map(|&v| r(v))).collect()).unwrap()
    }

    fn divisors(values: &[u64]) -> FinitePoset {
        let labels = values.iter().map(|v| v.to_string()).collect();
        FinitePoset::from_fn(values.len(), |a, b| values[b] % values[a] == 0, Some(labels)).unwrap()
    }

    fn chain(n: usize) -> FinitePoset {
        FinitePoset::from_fn(n, |a, b| a <= b, None).unwrap()
    }

    #[test]
    fn oracle_basics() {
        let m = mat(&[&[5, -1, 3], &[-1, 2, -2], &[3, -2, 3]]);
        let rep = pd_oracle(&m);
        assert!(rep.is_positive_definite());
        assert!(rep.validate_matrix(&m).unwrap());
        assert!(pd_oracle(&SymMatrix::identity(3)).is_positive_definite());
        let zero = mat(&[&[0]]);
        let rep = pd_oracle(&zero);
        assert_eq!(rep.verdict, Verdict::NotPositiveDefinite);
        assert!(rep.validate_matrix(&zero).unwrap());
    }

    #[test]
    fn oracle_refutation_witness() {
        let m = mat(&[&[2, 3, 0], &[3, 4, 1], &[0, 1, 5]]);
        let rep = pd_oracle(&m);
        match &rep.certificate {
            Certificate::FailingMinor { order, minor, .. } => {
                assert_eq!(*order, 2);
                assert_eq!(*minor, r(-1));
            }
            other => panic!("unexpected certificate {other:?}"),
        }
        assert!(rep.validate_matrix(&m).unwrap());
    }

    #[test]
    fn chain_with_increasing_values() {
        let p = chain(4);
        let s = Subset::all(&p);
        let f = PosetFunction::from_fn(4, |i| r(i as i64 + 1));
        let rep = pd_meet_closed(&s, &f).unwrap();
        assert!(rep.is_positive_definite());
        assert!(rep.validate(&s, &f, Kind::Meet).unwrap());
        assert_eq!(classify_and_test(&s, &f, Kind::Meet).unwrap().method, Method::ClosedSet(Kind::Meet));
        assert!(pd_tree(&s, &f, Kind::Meet).unwrap().is_positive_definite());
    }

    #[test]
    fn chain_with_a_flat_step() {
        let p = chain(3);
        let s = Subset::all(&p);
        let f = PosetFunction::new(vec![r(1), r(1), r(2)]);
        let rep = pd_meet_closed(&s, &f).unwrap();
        assert_eq!(rep.verdict, Verdict::NotPositiveDefinite);
        assert!(rep.validate(&s, &f, Kind::Meet).unwrap());
        assert_eq!(pd_oracle(&meet_matrix(&s, &f).unwrap()).verdict, Verdict::NotPositiveDefinite);
    }

    fn example() -> (FinitePoset, PosetFunction) {
        let p = divisors(&[1, 2, 3, 5, 6, 10, 15]);
        let f = PosetFunction::new([0, -1, 3, -2, 5, 2, 3].into_iter().map(r).collect());
        (p, f)
    }

    #[test]
    fn non_closed_example_is_decided_by_the_oracle() {
        let (p, f) = example();
        let s = Subset::from_labels(&p, &["6", "10", "15"]).unwrap();
        let d = meet_closure(&s).unwrap();
        let rep = pd_superset_sufficient(&s, &d, &f).unwrap();
        assert_eq!(rep.verdict, Verdict::NotApplicable);
        assert!(rep.validate(&s, &f, Kind::Meet).unwrap());
        let full = classify_and_test(&s, &f, Kind::Meet).unwrap();
        assert_eq!(full.method, Method::MinorOracle);
        assert!(full.is_positive_definite());
        assert!(full.validate(&s, &f, Kind::Meet).unwrap());
    }

    #[test]
    fn closed_example_lattice_is_not_pd() {
        let (p, f) = example();
        let s = Subset::all(&p);
        let rep = pd_meet_closed(&s, &f).unwrap();
        assert_eq!(rep.verdict, Verdict::NotPositiveDefinite);
        assert_eq!(pd_oracle(&meet_matrix(&s, &f).unwrap()).verdict, Verdict::NotPositiveDefinite);
    }

    #[test]
    fn constant_one_is_inconclusive() {
        let (p, _) = example();
        let s = Subset::from_labels(&p, &["6", "10"]).unwrap();
        let f = PosetFunction::from_fn(7, |_| r(1));
        let rep = pd_superset_sufficient(&s, &meet_closure(&s).unwrap(), &f).unwrap();
        assert_eq!(rep.verdict, Verdict::NotApplicable);
    }

    #[test]
    fn superset_errors() {
        let (p, f) = example();
        let s = Subset::from_labels(&p, &["6", "10"]).unwrap();
        let t = Subset::from_labels(&p, &["6", "10", "15"]).unwrap();
        let d = meet_closure(&s).unwrap();
        assert_eq!(pd_superset_sufficient(&t, &d, &f), Err(Error::NotSuperset { element: 6 }));
        let open = ClosureResult::from_elements(&s, &[4, 5], Kind::Meet).unwrap();
        assert_eq!(pd_superset_sufficient(&s, &open, &f), Err(Error::NotClosed { kind: Kind::Meet }));
    }

    #[test]
    fn tree_not_applicable_when_not_tree() {
        let p = divisors(&[1, 2, 3, 6]);
        let s = Subset::all(&p);
        let f = PosetFunction::from_fn(4, |i| r([1, 2, 3, 6][i]));
        let rep = pd_tree(&s, &f, Kind::Meet).unwrap();
        assert_eq!(rep.certificate, Certificate::Hypothesis(Failure::NotTreeSet(Kind::Meet)));
    }

    #[test]
    fn monotonicity_from_pd_on_chain() {
        let p = chain(3);
        let s = Subset::all(&p);
        let f = PosetFunction::from_fn(3, |i| r(i as i64 + 1));
        assert!(monotonicity_from_pd(&s, &f, Kind::Meet).unwrap());
        let g = PosetFunction::from_fn(3, |i| r(3 - i as i64));
        assert!(monotonicity_from_pd(&s, &g, Kind::Join).unwrap());
    }

    #[test]
    fn monotonicity_preconditions() {
        let p = build_antichain();
        let s = Subset::all(&p);
        let f = PosetFunction::from_fn(2, |_| r(1));
        assert_eq!(
            monotonicity_from_pd(&s, &f, Kind::Meet),
            Err(Error::Precondition(Precondition::NoMinimum))
        );
    }

    fn build_antichain() -> FinitePoset {
        crate::poset::build_poset(2, &[], None).unwrap()
    }

    #[test]
    fn float_oracle() {
        let m = FloatMatrix::new(2, vec![1.0, 1.0, 1.0, 2.0]).unwrap();
        assert!(pd_oracle_float(&m, 1e-12).is_positive_definite());
        let m = FloatMatrix::new(2, vec![1.0, 1.0, 1.0, 1.0]).unwrap();
        assert!(!pd_oracle_float(&m, 1e-12).is_positive_definite());
    }
}
