//! Eigenvalue bounds for meet and join matrices with monotone functions, and
//! a cyclic Jacobi eigensolver used to check them.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Hypothesis, Result};
use crate::matrix::FloatMatrix;
use crate::poset::{closure, order_violation, Kind, Subset};

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_MAX_SWEEPS: usize = 100;
/// Absolute slack used when comparing eigenvalues against bounds.
pub const BOUND_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// `max_k ‖M v_k − λ_k v_k‖_∞` over the computed pairs.
    pub residual: f64,
    pub sweeps: usize,
}

impl Spectrum {
    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    pub fn product(&self) -> f64 {
        self.eigenvalues.iter().product()
    }

    pub fn largest(&self) -> Option<f64> {
        self.eigenvalues.last().copied()
    }
}

pub fn eigen_sym(m: &FloatMatrix, tol: f64) -> Result<Spectrum> {
    eigen_sym_with(m, tol, DEFAULT_MAX_SWEEPS)
}

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops below
/// `tol · max(1, ‖M‖_F)`.
pub fn eigen_sym_with(m: &FloatMatrix, tol: f64, max_sweeps: usize) -> Result<Spectrum> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let n = m.dim();
    let mut a = m.entries().to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let norm = libm::sqrt(a.iter().map(|x| x * x).sum::<f64>());
    let target = tol * norm.max(1.0);
    let off = |a: &[f64]| {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j] * a[i * n + j];
                }
            }
        }
        libm::sqrt(s)
    };
    let mut sweeps = 0;
    while off(&a) >= target {
        if sweeps == max_sweeps {
            return Err(Error::Convergence { sweeps, off_norm: off(&a) });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = libm::copysign(1.0, theta) / (libm::fabs(theta) + libm::sqrt(theta * theta + 1.0));
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let (vkp, vkq) = (v[k * n + p], v[k * n + q]);
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut pairs: Vec<(f64, usize)> = (0..n).map(|i| (a[i * n + i], i)).collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut residual: f64 = 0.0;
    for &(lambda, col) in &pairs {
        for i in 0..n {
            let mv: f64 = (0..n).map(|j| m.get(i, j) * v[j * n + col]).sum();
            residual = residual.max(libm::fabs(mv - lambda * v[i * n + col]));
        }
    }
    Ok(Spectrum { eigenvalues: pairs.into_iter().map(|p| p.0).collect(), residual, sweeps })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
}

/// Reorders `s` so that `values` (indexed by ambient element) is monotone in
/// the index. Requires `values` order-preserving on the meet closure for
/// `Increasing`, order-reversing on the join closure for `Decreasing`.
/// Returns the reordered subset and `perm` with `new[i] = old[perm[i]]`.
pub fn reindex_monotone<'a>(
    s: &Subset<'a>,
    values: &[f64],
    direction: Direction,
) -> Result<(Subset<'a>, Vec<usize>)> {
    let kind = match direction {
        Direction::Increasing => Kind::Meet,
        Direction::Decreasing => Kind::Join,
    };
    let c = closure(s, kind)?;
    let p = s.parent();
    if let Some((lower, upper)) =
        order_violation(p, &c.ambient, values, false, direction == Direction::Decreasing)
    {
        return Err(Error::Monotonicity { lower, upper });
    }
    Ok(sort_by_values(s, values, direction))
}

fn sort_by_values<'a>(s: &Subset<'a>, values: &[f64], direction: Direction) -> (Subset<'a>, Vec<usize>) {
    let m = s.members();
    let mut perm: Vec<usize> = (0..m.len()).collect();
    perm.sort_by(|&x, &y| {
        let ord = values[m[x]].total_cmp(&values[m[y]]);
        match direction {
            Direction::Increasing => ord,
            Direction::Decreasing => ord.reverse(),
        }
    });
    let members = perm.iter().map(|&i| m[i]).collect();
    // Monotone values keep the listing a linear extension.
    let sorted = Subset::new(s.parent(), members).expect("monotone reordering respects the order");
    (sorted, perm)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Hypotheses {
    pub nonnegative: bool,
    /// Order-preserving on the meet closure (meet) or order-reversing on the
    /// join closure (join).
    pub order_property: bool,
    /// Monotone in the index after reordering.
    pub index_monotone: bool,
}

impl Hypotheses {
    pub fn all(&self) -> bool {
        self.nonnegative && self.order_property && self.index_monotone
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport {
    pub kind: Kind,
    /// Ambient indices of `S` in the order the bounds refer to.
    pub order: Vec<usize>,
    /// `order[i] = s.members()[reindex_permutation[i]]`.
    pub reindex_permutation: Vec<usize>,
    /// `upper[k-1]` bounds the `k`-th smallest eigenvalue.
    pub upper: Vec<f64>,
    /// Lower bound on the largest eigenvalue.
    pub lower_max: f64,
    pub hypotheses: Hypotheses,
    pub violation: Option<Hypothesis>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundRow {
    /// 1-based.
    pub k: usize,
    pub lambda: f64,
    pub bound: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundsCheck {
    pub rows: Vec<BoundRow>,
    pub lower_ok: bool,
}

impl BoundsCheck {
    pub fn all_ok(&self) -> bool {
        self.lower_ok && self.rows.iter().all(|r| r.ok)
    }
}

impl BoundsReport {
    /// `true` when every hypothesis holds and the bounds are theorems.
    pub fn verified(&self) -> bool {
        self.hypotheses.all()
    }

    pub fn require_hypotheses(&self) -> Result<()> {
        match self.violation {
            Some(h) => Err(Error::Hypothesis(h)),
            None => Ok(()),
        }
    }

    pub fn check(&self, spectrum: &Spectrum, slack: f64) -> BoundsCheck {
        let rows = spectrum
            .eigenvalues
            .iter()
            .zip(&self.upper)
            .enumerate()
            .map(|(i, (&lambda, &bound))| BoundRow { k: i + 1, lambda, bound, ok: lambda <= bound + slack })
            .collect();
        let lower_ok = spectrum.largest().map_or(true, |top| self.lower_max <= top + slack);
        BoundsCheck { rows, lower_ok }
    }
}

/// Bounds `λ_k ≤ k f(x_k)` and `f(x_n) ≤ λ_n` for the meet matrix.
pub fn meet_bounds(s: &Subset<'_>, values: &[f64]) -> Result<BoundsReport> {
    bounds(s, values, Kind::Meet)
}

/// Bounds `λ_k ≤ k f(x_{n−k+1})` and `f(x_1) ≤ λ_n` for the join matrix.
pub fn join_bounds(s: &Subset<'_>, values: &[f64]) -> Result<BoundsReport> {
    bounds(s, values, Kind::Join)
}

pub fn bounds(s: &Subset<'_>, values: &[f64], kind: Kind) -> Result<BoundsReport> {
    let p = s.parent();
    if values.len() != p.len() {
        return Err(Error::DimensionMismatch { expected: p.len(), found: values.len() });
    }
    if let Some(&e) = s.members().iter().find(|&&e| !values[e].is_finite()) {
        return Err(Error::InvalidArgument(alloc::format!("non-finite value at element {e}")));
    }
    let reversing = kind == Kind::Join;
    let direction = if reversing { Direction::Decreasing } else { Direction::Increasing };
    let c = closure(s, kind)?;
    let mut violation = None;

    let negative = c.ambient.iter().copied().find(|&e| !(values[e] >= 0.0));
    if let Some(element) = negative {
        violation.get_or_insert(Hypothesis::Negative { element });
    }
    let order_break = order_violation(p, &c.ambient, values, false, reversing);
    if let Some((lower, upper)) = order_break {
        violation.get_or_insert(Hypothesis::NotMonotone { lower, upper });
    }

    let (order, perm) = if order_violation(p, s.members(), values, false, reversing).is_none() {
        let (sorted, perm) = sort_by_values(s, values, direction);
        (sorted.members().to_vec(), perm)
    } else {
        (s.members().to_vec(), (0..s.len()).collect())
    };
    let index_break = order.windows(2).position(|w| match kind {
        Kind::Meet => values[w[0]] > values[w[1]],
        Kind::Join => values[w[0]] < values[w[1]],
    });
    if let Some(position) = index_break {
        violation.get_or_insert(Hypothesis::IndexNotMonotone { position: position + 1 });
    }

    let n = order.len();
    let upper = (0..n)
        .map(|k| {
            let x = match kind {
                Kind::Meet => order[k],
                Kind::Join => order[n - 1 - k],
            };
            (k + 1) as f64 * values[x]
        })
        .collect();
    let lower_max = match (kind, n) {
        (_, 0) => 0.0,
        (Kind::Meet, _) => values[order[n - 1]],
        (Kind::Join, _) => values[order[0]],
    };
    Ok(BoundsReport {
        kind,
        order,
        reindex_permutation: perm,
        upper,
        lower_max,
        hypotheses: Hypotheses {
            nonnegative: negative.is_none(),
            order_property: order_break.is_none(),
            index_monotone: index_break.is_none(),
        },
        violation,
    })
}

/// Coordinates a test vector may occupy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Support {
    /// The first `k` coordinates.
    Leading(usize),
    /// The last `k` coordinates.
    Trailing(usize),
}

/// `Re(y* M y)` for `y` supported as declared.
pub fn quadratic_form_check(m: &FloatMatrix, y: &[Complex64], support: Support) -> Result<f64> {
    let n = m.dim();
    if y.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: y.len() });
    }
    let allowed = |i: usize| match support {
        Support::Leading(k) => i < k,
        Support::Trailing(k) => i + k >= n,
    };
    if let Some(coordinate) = (0..n).find(|&i| !allowed(i) && y[i] != Complex64::new(0.0, 0.0)) {
        return Err(Error::Support { coordinate });
    }
    if y.iter().all(|z| *z == Complex64::new(0.0, 0.0)) {
        return Err(Error::InvalidArgument("test vector must be nonzero".into()));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += y[i].conj() * m.get(i, j) * y[j];
        }
    }
    Ok(acc.re)
}
