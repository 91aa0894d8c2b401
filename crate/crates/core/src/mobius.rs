//! Möbius inversion on finite posets.
//!
//! For a poset indexed by a linear extension, `psi` is the unique function
//! with `f(d_k) = Σ_{d_v ⪯ d_k} psi(d_v)` and `phi` the unique function with
//! `f(b_k) = Σ_{b_k ⪯ b_v} phi(b_v)`. Both are computed twice, once by the
//! triangular recursion and once as a Möbius sum, and the two must agree.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poset::{ClosureResult, FinitePoset, Kind};
use crate::Rational;

/// Real-valued function on the elements of a poset, possibly partial.
///
/// Missing entries are only an error when a computation needs them; this is
/// what lets a table cover the meet closure of a set without covering the
/// whole ambient poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetFunction {
    values: Vec<Option<Rational>>,
}

impl PosetFunction {
    pub fn new(values: Vec<Rational>) -> Self {
        PosetFunction { values: values.into_iter().map(Some).collect() }
    }

    pub fn partial(values: Vec<Option<Rational>>) -> Self {
        PosetFunction { values }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> Rational) -> Self {
        Self::new((0..n).map(f).collect())
    }

    pub fn zero(n: usize) -> Self {
        Self::from_fn(n, |_| Rational::zero())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: usize) -> Result<&Rational> {
        match self.values.get(i) {
            Some(Some(v)) => Ok(v),
            Some(None) => Err(Error::MissingValue { elements: vec![i] }),
            None => Err(Error::Index { index: i, len: self.values.len() }),
        }
    }

    pub fn raw(&self) -> &[Option<Rational>] {
        &self.values
    }

    pub fn check_len(&self, n: usize) -> Result<()> {
        if self.values.len() == n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: n, found: self.values.len() })
        }
    }

    /// Values at `elements`, reporting every missing one at once.
    pub fn values_at(&self, elements: &[usize]) -> Result<Vec<Rational>> {
        let missing: Vec<usize> = elements
            .iter()
            .copied()
            .filter(|&e| !matches!(self.values.get(e), Some(Some(_))))
            .collect();
        if !missing.is_empty() {
            return Err(Error::MissingValue { elements: missing });
        }
        Ok(elements.iter().map(|&e| self.values[e].clone().unwrap()).collect())
    }

    /// The function transported onto the closed poset of `closure`.
    pub fn restrict(&self, closure: &ClosureResult) -> Result<PosetFunction> {
        Ok(PosetFunction::new(self.values_at(&closure.ambient)?))
    }

    /// Float view; missing entries become NaN.
    pub fn to_f64(&self) -> Vec<f64> {
        self.values
            .iter()
            .map(|v| v.as_ref().and_then(|r| r.to_f64()).unwrap_or(f64::NAN))
            .collect()
    }
}

/// Integer Möbius function of a poset indexed by a linear extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MobiusTable {
    n: usize,
    mu: Vec<i64>,
}

impl MobiusTable {
    /// `μ(x_i, x_j)`; zero when `x_i ⋠ x_j`.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.mu[i * self.n + j]
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Checks `ζ · μ = I` over the integers.
    pub fn inverts_zeta(&self, p: &FinitePoset) -> bool {
        let n = self.n;
        (0..n).all(|i| {
            (0..n).all(|j| {
                let sum: i128 =
                    (0..n).filter(|&k| p.leq(i, k)).map(|k| self.get(k, j) as i128).sum();
                sum == (i == j) as i128
            })
        })
    }
}

/// `μ(a,a) = 1`, `μ(a,b) = −Σ_{a ⪯ z ≺ b} μ(a,z)`.
pub fn mobius_table(p: &FinitePoset) -> MobiusTable {
    let n = p.len();
    let mut mu = vec![0i64; n * n];
    for a in 0..n {
        mu[a * n + a] = 1;
        for b in (a + 1)..n {
            if !p.leq(a, b) {
                continue;
            }
            let s: i64 = (a..b).filter(|&z| p.leq(a, z) && p.lt(z, b)).map(|z| mu[a * n + z]).sum();
            mu[a * n + b] = -s;
        }
    }
    MobiusTable { n, mu }
}

/// Inverted values over a poset indexed by a linear extension: `psi` for the
/// meet side, `phi` for the join side, as tagged by `kind`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InversionVector {
    pub kind: Kind,
    pub values: Vec<Rational>,
}

pub type PsiVector = InversionVector;
pub type PhiVector = InversionVector;

impl InversionVector {
    pub fn all_positive(&self) -> bool {
        self.values.iter().all(|v| v > &Rational::zero())
    }

    /// Indices whose value is not strictly positive.
    pub fn non_positive(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&k| self.values[k] <= Rational::zero()).collect()
    }

    pub fn product(&self) -> Rational {
        self.values.iter().fold(Rational::from_integer(1.into()), |acc, v| acc * v)
    }

    /// Rebuilds `f` by summing over down-sets (meet) or up-sets (join).
    pub fn resum(&self, p: &FinitePoset) -> Vec<Rational> {
        let n = self.values.len();
        (0..n)
            .map(|k| {
                (0..n)
                    .filter(|&v| match self.kind {
                        Kind::Meet => p.leq(v, k),
                        Kind::Join => p.leq(k, v),
                    })
                    .fold(Rational::zero(), |acc, v| acc + &self.values[v])
            })
            .collect()
    }
}

/// `psi(d_k) = f(d_k) − Σ_{d_v ≺ d_k} psi(d_v)`, in index order.
pub fn psi_recursive(d: &FinitePoset, f: &PosetFunction) -> Result<Vec<Rational>> {
    f.check_len(d.len())?;
    let mut out: Vec<Rational> = Vec::with_capacity(d.len());
    for k in 0..d.len() {
        let below = (0..k).filter(|&v| d.lt(v, k)).fold(Rational::zero(), |acc, v| acc + &out[v]);
        out.push(f.get(k)? - below);
    }
    Ok(out)
}

/// `psi(d_k) = Σ_{d_v ⪯ d_k} f(d_v) μ(d_v, d_k)`.
pub fn psi_mobius(d: &FinitePoset, f: &PosetFunction, mu: &MobiusTable) -> Result<Vec<Rational>> {
    f.check_len(d.len())?;
    (0..d.len())
        .map(|k| {
            (0..=k).filter(|&v| d.leq(v, k)).try_fold(Rational::zero(), |acc, v| {
                Ok(acc + f.get(v)? * Rational::from_integer(mu.get(v, k).into()))
            })
        })
        .collect()
}

/// `phi(b_k) = f(b_k) − Σ_{b_k ≺ b_v} phi(b_v)`, from the top down.
pub fn phi_recursive(b: &FinitePoset, f: &PosetFunction) -> Result<Vec<Rational>> {
    f.check_len(b.len())?;
    let n = b.len();
    let mut out = vec![Rational::zero(); n];
    for k in (0..n).rev() {
        let above = (k + 1..n).filter(|&v| b.lt(k, v)).fold(Rational::zero(), |acc, v| acc + &out[v]);
        out[k] = f.get(k)? - above;
    }
    Ok(out)
}

/// `phi(b_k) = Σ_{b_k ⪯ b_v} f(b_v) μ(b_k, b_v)`.
pub fn phi_mobius(b: &FinitePoset, f: &PosetFunction, mu: &MobiusTable) -> Result<Vec<Rational>> {
    f.check_len(b.len())?;
    let n = b.len();
    (0..n)
        .map(|k| {
            (k..n).filter(|&v| b.leq(k, v)).try_fold(Rational::zero(), |acc, v| {
                Ok(acc + f.get(v)? * Rational::from_integer(mu.get(k, v).into()))
            })
        })
        .collect()
}

fn cross_checked(a: Vec<Rational>, b: Vec<Rational>, kind: Kind) -> Result<InversionVector> {
    if let Some(index) = (0..a.len()).find(|&k| a[k] != b[k]) {
        return Err(Error::InversionMismatch { index });
    }
    Ok(InversionVector { kind, values: a })
}

/// Meet-side inversion over `d`, cross-checked against the Möbius sum.
pub fn psi(d: &FinitePoset, f: &PosetFunction) -> Result<PsiVector> {
    let mu = mobius_table(d);
    cross_checked(psi_recursive(d, f)?, psi_mobius(d, f, &mu)?, Kind::Meet)
}

/// Join-side inversion over `b`, cross-checked against the Möbius sum.
pub fn phi(b: &FinitePoset, f: &PosetFunction) -> Result<PhiVector> {
    let mu = mobius_table(b);
    cross_checked(phi_recursive(b, f)?, phi_mobius(b, f, &mu)?, Kind::Join)
}

pub fn inversion(p: &FinitePoset, f: &PosetFunction, kind: Kind) -> Result<InversionVector> {
    match kind {
        Kind::Meet => psi(p, f),
        Kind::Join => phi(p, f),
    }
}

/// Inversion over a closure, with `f` given on the ambient poset.
pub fn inversion_over(closure: &ClosureResult, f: &PosetFunction) -> Result<InversionVector> {
    inversion(&closure.closed, &f.restrict(closure)?, closure.kind)
}
