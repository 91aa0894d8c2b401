//! Meet and join matrices, their incidence factorization and determinants.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::mobius::{inversion, inversion_over, PosetFunction};
use crate::poset::{is_closed, ClosureResult, FinitePoset, Kind, Subset};
use crate::Rational;

/// Dense symmetric matrix with exact rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl SymMatrix {
    /// Row-major entries; symmetry is checked.
    pub fn new(n: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: entries.len() });
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if entries[i * n + j] != entries[j * n + i] {
                    return Err(Error::NotSymmetric { i, j });
                }
            }
        }
        Ok(SymMatrix { n, entries })
    }

    /// Fills the upper triangle from `f` and mirrors it.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Result<Rational>) -> Result<Self> {
        let mut entries = vec![Rational::zero(); n * n];
        for i in 0..n {
            for j in i..n {
                let v = f(i, j)?;
                entries[j * n + i] = v.clone();
                entries[i * n + j] = v;
            }
        }
        Ok(SymMatrix { n, entries })
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![Rational::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Rational::one();
        }
        SymMatrix { n, entries }
    }

    pub fn zeros(n: usize) -> Self {
        SymMatrix { n, entries: vec![Rational::zero(); n * n] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    /// Principal submatrix on `indices`, in the given order.
    pub fn principal(&self, indices: &[usize]) -> SymMatrix {
        let k = indices.len();
        let mut entries = Vec::with_capacity(k * k);
        for &i in indices {
            for &j in indices {
                entries.push(self.get(i, j).clone());
            }
        }
        SymMatrix { n: k, entries }
    }

    /// Leading `k × k` block.
    pub fn leading(&self, k: usize) -> SymMatrix {
        let idx: Vec<usize> = (0..k).collect();
        self.principal(&idx)
    }

    /// `P M Pᵀ` where row `i` of the result is row `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> SymMatrix {
        self.principal(perm)
    }

    /// `yᵀ M y`.
    pub fn quadratic_form(&self, y: &[Rational]) -> Result<Rational> {
        if y.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: y.len() });
        }
        let mut acc = Rational::zero();
        for i in 0..self.n {
            if y[i].is_zero() {
                continue;
            }
            let row: Rational = (0..self.n).fold(Rational::zero(), |s, j| s + self.get(i, j) * &y[j]);
            acc += &y[i] * row;
        }
        Ok(acc)
    }

    pub fn to_float(&self) -> FloatMatrix {
        FloatMatrix {
            n: self.n,
            entries: self.entries.iter().map(|r| r.to_f64().unwrap_or(f64::NAN)).collect(),
        }
    }

    pub fn trace(&self) -> Rational {
        (0..self.n).fold(Rational::zero(), |acc, i| acc + self.get(i, i))
    }
}

/// Dense symmetric `f64` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl FloatMatrix {
    pub fn new(n: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: entries.len() });
        }
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("non-finite matrix entry".into()));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if entries[i * n + j] != entries[j * n + i] {
                    return Err(Error::NotSymmetric { i, j });
                }
            }
        }
        Ok(FloatMatrix { n, entries })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                entries[i * n + j] = v;
                entries[j * n + i] = v;
            }
        }
        Self::new(n, entries)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn principal(&self, indices: &[usize]) -> FloatMatrix {
        let k = indices.len();
        let mut entries = Vec::with_capacity(k * k);
        for &i in indices {
            for &j in indices {
                entries.push(self.get(i, j));
            }
        }
        FloatMatrix { n: k, entries }
    }
}

/// 0/1 incidence matrix between `S` (rows) and a superset (columns).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncMatrix {
    pub rows: usize,
    pub cols: usize,
    bits: Vec<bool>,
}

impl IncMatrix {
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[bool] {
        &self.bits[i * self.cols..(i + 1) * self.cols]
    }
}

/// Diagonal matrix, stored as its diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagMatrix {
    pub diagonal: Vec<Rational>,
}

/// Matrix with `f(x_i ∧ x_j)` (meet) or `f(x_i ∨ x_j)` (join) at `(i, j)`,
/// for an arbitrary listing of ambient elements.
pub fn pairwise_matrix(
    p: &FinitePoset,
    elements: &[usize],
    f: &PosetFunction,
    kind: Kind,
) -> Result<SymMatrix> {
    f.check_len(p.len())?;
    SymMatrix::from_fn(elements.len(), |i, j| {
        let z = p.bound(elements[i], elements[j], kind)?;
        f.get(z).cloned()
    })
}

pub fn meet_matrix(s: &Subset<'_>, f: &PosetFunction) -> Result<SymMatrix> {
    pairwise_matrix(s.parent(), s.members(), f, Kind::Meet)
}

pub fn join_matrix(s: &Subset<'_>, f: &PosetFunction) -> Result<SymMatrix> {
    pairwise_matrix(s.parent(), s.members(), f, Kind::Join)
}

pub fn kind_matrix(s: &Subset<'_>, f: &PosetFunction, kind: Kind) -> Result<SymMatrix> {
    pairwise_matrix(s.parent(), s.members(), f, kind)
}

/// Row `i` marks the superset elements below `x_i` (meet kind) or above it
/// (join kind).
pub fn incidence_matrix(s: &Subset<'_>, d: &ClosureResult) -> IncMatrix {
    let p = s.parent();
    let rows = s.len();
    let cols = d.len();
    let mut bits = vec![false; rows * cols];
    for (i, &x) in s.members().iter().enumerate() {
        for (j, &a) in d.ambient.iter().enumerate() {
            bits[i * cols + j] = match d.kind {
                Kind::Meet => p.leq(a, x),
                Kind::Join => p.leq(x, a),
            };
        }
    }
    IncMatrix { rows, cols, bits }
}

/// `E · diag(inversion) · Eᵀ`. Requires every pairwise meet (join) of `S` to
/// lie in `d`.
pub fn factored_matrix(s: &Subset<'_>, d: &ClosureResult, f: &PosetFunction) -> Result<SymMatrix> {
    let p = s.parent();
    let m = s.members();
    for a in 0..m.len() {
        for b in a..m.len() {
            let z = p.bound(m[a], m[b], d.kind)?;
            if d.position(z).is_none() {
                return Err(Error::NotSuperset { element: z });
            }
        }
    }
    let e = incidence_matrix(s, d);
    let lambda = DiagMatrix { diagonal: inversion_over(d, f)?.values };
    SymMatrix::from_fn(s.len(), |i, j| {
        Ok((0..e.cols)
            .filter(|&k| e.get(i, k) && e.get(j, k))
            .fold(Rational::zero(), |acc, k| acc + &lambda.diagonal[k]))
    })
}

pub fn factored_meet_matrix(s: &Subset<'_>, d: &ClosureResult, f: &PosetFunction) -> Result<SymMatrix> {
    if d.kind != Kind::Meet {
        return Err(Error::InvalidArgument("expected a meet-kind superset".into()));
    }
    factored_matrix(s, d, f)
}

pub fn factored_join_matrix(s: &Subset<'_>, d: &ClosureResult, f: &PosetFunction) -> Result<SymMatrix> {
    if d.kind != Kind::Join {
        return Err(Error::InvalidArgument("expected a join-kind superset".into()));
    }
    factored_matrix(s, d, f)
}

/// Determinant of the meet (join) matrix of a meet (join) closed set as the
/// product of the inversion values over the set itself.
pub fn det_closed(s: &Subset<'_>, f: &PosetFunction, kind: Kind) -> Result<Rational> {
    if !is_closed(s, kind)? {
        return Err(Error::NotClosed { kind });
    }
    let (sub, map) = s.induced()?;
    let g = PosetFunction::new(f.values_at(&map)?);
    Ok(inversion(&sub, &g, kind)?.product())
}

/// Exact determinant by fraction-free (Bareiss) elimination with row pivoting.
pub fn det_general(m: &SymMatrix) -> Rational {
    let n = m.dim();
    let mut a: Vec<Vec<Rational>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut sign = Rational::one();
    let mut prev = Rational::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Rational::zero(),
            }
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = Rational::zero();
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return Rational::one();
    }
    sign * &a[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{down_set, meet_closure, up_set};
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

    fn example_function() -> (FinitePoset, PosetFunction) {
        let p = divisors(&[1, 2, 3, 5, 6, 10, 15]);
        let f = PosetFunction::new([0, -1, 3, -2, 5, 2, 3].into_iter().map(r).collect());
        (p, f)
    }

    #[test]
    fn gcd_matrix_of_6_10_15() {
        let (p, f) = example_function();
        let s = Subset::from_labels(&p, &["6", "10", "15"]).unwrap();
        let expected = mat(&[&[5, -1, 3], &[-1, 2, -2], &[3, -2, 3]]);
        assert_eq!(meet_matrix(&s, &f).unwrap(), expected);
        let d = meet_closure(&s).unwrap();
        assert_eq!(factored_meet_matrix(&s, &d, &f).unwrap(), expected);
        // cofactor expansion: 5·2 + 1·3 + 3·(−4) = 1; leading minors 5, 9, 1
        assert_eq!(det_general(&expected), r(1));
    }

    #[test]
    fn incidence_rows() {
        let (p, _) = example_function();
        let s = Subset::from_labels(&p, &["6", "10", "15"]).unwrap();
        let d = meet_closure(&s).unwrap();
        let e = incidence_matrix(&s, &d);
        assert_eq!((e.rows, e.cols), (3, 7));
        // row of 6 marks 1, 2, 3, 6
        assert_eq!(e.row(0), &[true, true, true, false, true, false, false]);
    }

    #[test]
    fn chain_incidence_is_lower_triangular() {
        let p = divisors(&[1, 2, 4]);
        let s = Subset::all(&p);
        let e = incidence_matrix(&s, &down_set(&s).unwrap());
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(e.get(i, j), j <= i);
            }
        }
    }

    #[test]
    fn min_matrix_and_determinant() {
        let p = FinitePoset::from_fn(3, |a, b| a <= b, None).unwrap();
        let s = Subset::all(&p);
        let f = PosetFunction::from_fn(3, |i| r(i as i64 + 1));
        let m = meet_matrix(&s, &f).unwrap();
        assert_eq!(m, mat(&[&[1, 1, 1], &[1, 2, 2], &[1, 2, 3]]));
        assert_eq!(det_closed(&s, &f, Kind::Meet).unwrap(), r(1));
        assert_eq!(det_general(&m), r(1));
        let max = join_matrix(&s, &f).unwrap();
        assert_eq!(max, mat(&[&[1, 2, 3], &[2, 2, 3], &[3, 3, 3]]));
        assert_eq!(factored_join_matrix(&s, &up_set(&s).unwrap(), &f).unwrap(), max);
        assert_eq!(det_closed(&s, &f, Kind::Join).unwrap(), det_general(&max));
    }

    #[test]
    fn closed_determinant_of_the_example_lattice_vanishes() {
        let (p, f) = example_function();
        let s = Subset::all(&p);
        assert_eq!(det_closed(&s, &f, Kind::Meet).unwrap(), r(0));
        assert_eq!(det_general(&meet_matrix(&s, &f).unwrap()), r(0));
        let t = Subset::from_labels(&p, &["6", "10", "15"]).unwrap();
        assert_eq!(det_closed(&t, &f, Kind::Meet), Err(Error::NotClosed { kind: Kind::Meet }));
    }

    #[test]
    fn constant_functions() {
        let (p, _) = example_function();
        let s = Subset::all(&p);
        let ones = meet_matrix(&s, &PosetFunction::from_fn(7, |_| r(1))).unwrap();
        assert!(ones.entries().iter().all(|v| *v == r(1)));
        let zero = PosetFunction::zero(7);
        assert_eq!(factored_meet_matrix(&s, &down_set(&s).unwrap(), &zero).unwrap(), SymMatrix::zeros(7));
        assert_eq!(det_closed(&s, &zero, Kind::Meet).unwrap(), r(0));
    }

    #[test]
    fn bareiss_basics() {
        assert_eq!(det_general(&SymMatrix::identity(4)), r(1));
        assert_eq!(det_general(&SymMatrix::zeros(3)), r(0));
        // needs a pivot swap
        assert_eq!(det_general(&mat(&[&[0, 1], &[1, 0]])), r(-1));
    }

    #[test]
    fn superset_missing_a_meet() {
        let (p, f) = example_function();
        let s = Subset::from_labels(&p, &["6", "10"]).unwrap();
        let d = ClosureResult::from_elements(&s, &s.members().to_vec(), Kind::Meet).unwrap();
        assert!(matches!(factored_meet_matrix(&s, &d, &f), Err(Error::NotSuperset { .. })));
    }
}
