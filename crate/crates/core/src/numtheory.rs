//! The divisibility lattice and the integer matrix families built on it.

use alloc::collections::BTreeSet;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow};

use crate::error::{Error, Result};
use crate::matrix::{kind_matrix, FloatMatrix, SymMatrix};
use crate::mobius::PosetFunction;
use crate::poset::{FinitePoset, Kind, Subset};
use crate::Rational;

/// Default cap on the number of elements in a generated universe.
pub const DEFAULT_UNIVERSE_CAP: usize = 10_000;

/// Partial order placed on a set of positive integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegerOrder {
    /// `a | b`.
    Divisibility,
    /// `a` divides `b` unitarily: `a | b` and `gcd(a, b/a) = 1`.
    Unitary,
    /// `a ≤ b`; every set is a chain.
    Natural,
}

impl IntegerOrder {
    pub fn leq(self, a: u64, b: u64) -> bool {
        match self {
            IntegerOrder::Divisibility => b % a == 0,
            IntegerOrder::Unitary => b % a == 0 && (b / a).gcd(&a) == 1,
            IntegerOrder::Natural => a <= b,
        }
    }
}

/// A finite set of positive integers ordered as a poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorLattice {
    /// `values[i]` is the integer at poset index `i`.
    values: Vec<u64>,
    order: IntegerOrder,
    poset: FinitePoset,
}

impl DivisorLattice {
    pub fn from_universe(values: &[u64], order: IntegerOrder) -> Result<Self> {
        Self::from_universe_capped(values, order, DEFAULT_UNIVERSE_CAP)
    }

    pub fn from_universe_capped(values: &[u64], order: IntegerOrder, cap: usize) -> Result<Self> {
        let sorted: BTreeSet<u64> = values.iter().copied().collect();
        if sorted.contains(&0) {
            return Err(Error::InvalidArgument("integers must be positive".into()));
        }
        if sorted.len() > cap {
            return Err(Error::UniverseTooLarge { cap });
        }
        let input: Vec<u64> = sorted.into_iter().collect();
        let labels = input.iter().map(|v| v.to_string()).collect();
        let poset =
            FinitePoset::from_fn(input.len(), |a, b| order.leq(input[a], input[b]), Some(labels))?;
        let values = (0..input.len()).map(|i| input[poset.source_index(i)]).collect();
        Ok(DivisorLattice { values, order, poset })
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn value(&self, i: usize) -> u64 {
        self.values[i]
    }

    pub fn order(&self) -> IntegerOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn index_of(&self, value: u64) -> Option<usize> {
        self.values.iter().position(|&v| v == value)
    }

    /// The subset holding `members`, sorted by poset index.
    pub fn subset(&self, members: &[u64]) -> Result<Subset<'_>> {
        let idx = members
            .iter()
            .map(|&m| {
                self.index_of(m).ok_or_else(|| {
                    Error::InvalidArgument(alloc::format!("{m} is not in the universe"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Subset::sorted(&self.poset, idx)
    }

    /// Exact values of `f` at every element, or `None` if `f` is not exact.
    pub fn exact_function(&self, f: &NamedFunction) -> Option<PosetFunction> {
        let vals = self.values.iter().map(|&v| f.eval_exact(v)).collect::<Option<Vec<_>>>()?;
        Some(PosetFunction::new(vals))
    }

    pub fn float_function(&self, f: &NamedFunction) -> Vec<f64> {
        self.values.iter().map(|&v| f.eval_f64(v)).collect()
    }
}

pub fn divisors(m: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= m {
        if m % d == 0 {
            small.push(d);
            if d != m / d {
                large.push(m / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Prime factorization by trial division, as `(p, e)` pairs.
pub fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

fn positive(s: &[u64]) -> Result<()> {
    if s.contains(&0) {
        Err(Error::InvalidArgument("integers must be positive".into()))
    } else {
        Ok(())
    }
}

pub fn lcm_of(s: &[u64]) -> Result<u64> {
    s.iter().try_fold(1u64, |acc, &x| {
        let g = acc.gcd(&x);
        (acc / g).checked_mul(x).ok_or(Error::Overflow)
    })
}

/// Every divisor of every member.
pub fn divisor_down_set(s: &[u64]) -> Result<DivisorLattice> {
    positive(s)?;
    let mut all = BTreeSet::new();
    for &x in s {
        all.extend(divisors(x));
        if all.len() > DEFAULT_UNIVERSE_CAP {
            return Err(Error::UniverseTooLarge { cap: DEFAULT_UNIVERSE_CAP });
        }
    }
    DivisorLattice::from_universe(&all.into_iter().collect::<Vec<_>>(), IntegerOrder::Divisibility)
}

/// Divisors of `lcm(s)` that are multiples of some member.
pub fn lcm_up_set(s: &[u64]) -> Result<DivisorLattice> {
    positive(s)?;
    let l = lcm_of(s)?;
    let universe: Vec<u64> = divisors(l).into_iter().filter(|d| s.iter().any(|x| d % x == 0)).collect();
    DivisorLattice::from_universe(&universe, IntegerOrder::Divisibility)
}

/// All divisors of `m`.
pub fn divisors_of(m: u64) -> Result<DivisorLattice> {
    positive(&[m])?;
    DivisorLattice::from_universe(&divisors(m), IntegerOrder::Divisibility)
}

fn close_under(s: &[u64], op: impl Fn(u64, u64) -> Result<u64>) -> Result<Vec<u64>> {
    positive(s)?;
    let mut set: BTreeSet<u64> = s.iter().copied().collect();
    loop {
        let current: Vec<u64> = set.iter().copied().collect();
        let mut grew = false;
        for (a, &x) in current.iter().enumerate() {
            for &y in &current[a + 1..] {
                grew |= set.insert(op(x, y)?);
            }
        }
        if set.len() > DEFAULT_UNIVERSE_CAP {
            return Err(Error::UniverseTooLarge { cap: DEFAULT_UNIVERSE_CAP });
        }
        if !grew {
            return Ok(set.into_iter().collect());
        }
    }
}

fn lcm2(a: u64, b: u64) -> Result<u64> {
    (a / a.gcd(&b)).checked_mul(b).ok_or(Error::Overflow)
}

/// `s` closed under gcd.
pub fn gcd_closure(s: &[u64]) -> Result<DivisorLattice> {
    let u = close_under(s, |a, b| Ok(a.gcd(&b)))?;
    DivisorLattice::from_universe(&u, IntegerOrder::Divisibility)
}

/// `s` closed under lcm.
pub fn lcm_closure(s: &[u64]) -> Result<DivisorLattice> {
    let u = close_under(s, lcm2)?;
    DivisorLattice::from_universe(&u, IntegerOrder::Divisibility)
}

/// The sublattice of `(Z+, |)` generated by `s` under gcd and lcm.
pub fn generated_by(s: &[u64]) -> Result<DivisorLattice> {
    let u = close_under(s, |a, b| Ok(a.gcd(&b)))?;
    let u = close_under(&u, lcm2)?;
    let u = close_under(&u, |a, b| Ok(a.gcd(&b)))?;
    DivisorLattice::from_universe(&u, IntegerOrder::Divisibility)
}

/// Unitary divisors of the members, ordered by unitary divisibility.
pub fn unitary_down_set(s: &[u64]) -> Result<DivisorLattice> {
    positive(s)?;
    let mut all = BTreeSet::new();
    for &x in s {
        all.extend(divisors(x).into_iter().filter(|&d| IntegerOrder::Unitary.leq(d, x)));
    }
    DivisorLattice::from_universe(&all.into_iter().collect::<Vec<_>>(), IntegerOrder::Unitary)
}

/// `J_α(m) = m^α Π_{p | m} (1 − p^{−α})`.
pub fn jordan_totient(alpha: f64, m: u64) -> f64 {
    factorize(m).iter().fold(libm::pow(m as f64, alpha), |acc, &(p, _)| {
        acc * (1.0 - libm::pow(p as f64, -alpha))
    })
}

/// `J_α(m)` for a natural exponent, exactly: `Π p^{α(e−1)} (p^α − 1)`.
pub fn jordan_totient_exact(alpha: u32, m: u64) -> BigInt {
    factorize(m).iter().fold(BigInt::one(), |acc, &(p, e)| {
        let p = BigInt::from(p);
        let pa: BigInt = Pow::pow(&p, alpha);
        acc * Pow::pow(&p, alpha * (e - 1)) * (pa - 1)
    })
}

/// Greatest common unitary divisor, by scanning the unitary divisors of `a`.
pub fn gcud(a: u64, b: u64) -> u64 {
    divisors(a)
        .into_iter()
        .filter(|&d| IntegerOrder::Unitary.leq(d, a) && IntegerOrder::Unitary.leq(d, b))
        .max()
        .unwrap_or(1)
}

/// The function families used on integers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NamedFunction {
    /// `n^α`.
    Power(f64),
    /// `1 / n^α`.
    ReciprocalPower(f64),
    Identity,
}

impl NamedFunction {
    pub fn eval_f64(&self, n: u64) -> f64 {
        match *self {
            NamedFunction::Power(a) => libm::pow(n as f64, a),
            NamedFunction::ReciprocalPower(a) => libm::pow(n as f64, -a),
            NamedFunction::Identity => n as f64,
        }
    }

    /// Exact value when the exponent is an integer.
    pub fn eval_exact(&self, n: u64) -> Option<Rational> {
        let power = |a: f64| -> Option<Rational> {
            if libm::trunc(a) != a || libm::fabs(a) > 64.0 {
                return None;
            }
            let base = Rational::from_integer(BigInt::from(n));
            Some(Pow::pow(base, a as i32))
        };
        match *self {
            NamedFunction::Power(a) => power(a),
            NamedFunction::ReciprocalPower(a) => power(-a),
            NamedFunction::Identity => Some(Rational::from_integer(BigInt::from(n))),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.eval_exact(1).is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `gcd(x_i, x_j)^α`.
    PowerGcd,
    /// `1 / lcm(x_i, x_j)^α`.
    ReciprocalPowerLcm,
    /// `gcud(x_i, x_j)^α`.
    GcudPower,
    /// `min(x_i, x_j)`.
    Min,
    /// `max(x_i, x_j)`.
    Max,
}

impl Family {
    pub fn kind(self) -> Kind {
        match self {
            Family::PowerGcd | Family::GcudPower | Family::Min => Kind::Meet,
            Family::ReciprocalPowerLcm | Family::Max => Kind::Join,
        }
    }
}

/// A named matrix together with the poset and function that produce it.
#[derive(Debug, Clone)]
pub struct NamedMatrix {
    pub family: Family,
    pub alpha: f64,
    /// Ambient poset: the meet (join) closure of the set under the family's
    /// order, so every pairwise meet (join) is present.
    pub lattice: DivisorLattice,
    /// The set, in lattice index order.
    pub members: Vec<u64>,
    pub function: NamedFunction,
    /// Present when every entry is rational.
    pub exact: Option<SymMatrix>,
    pub float: FloatMatrix,
}

impl NamedMatrix {
    pub fn kind(&self) -> Kind {
        self.family.kind()
    }

    pub fn subset(&self) -> Subset<'_> {
        self.lattice.subset(&self.members).expect("members lie in their own lattice")
    }

    pub fn exact_function(&self) -> Option<PosetFunction> {
        self.lattice.exact_function(&self.function)
    }

    pub fn float_function(&self) -> Vec<f64> {
        self.lattice.float_function(&self.function)
    }
}

/// Builds one of the named matrix families on a set of distinct positive
/// integers, along with the poset and function that realize it.
pub fn build_named_matrix(family: Family, s: &[u64], alpha: f64) -> Result<NamedMatrix> {
    positive(s)?;
    if !alpha.is_finite() {
        return Err(Error::InvalidArgument("exponent must be finite".into()));
    }
    let distinct: BTreeSet<u64> = s.iter().copied().collect();
    if distinct.len() != s.len() {
        return Err(Error::InvalidArgument("set members must be distinct".into()));
    }
    let (universe, order, function) = match family {
        Family::PowerGcd => (
            close_under(s, |a, b| Ok(a.gcd(&b)))?,
            IntegerOrder::Divisibility,
            NamedFunction::Power(alpha),
        ),
        Family::ReciprocalPowerLcm => {
            (close_under(s, lcm2)?, IntegerOrder::Divisibility, NamedFunction::ReciprocalPower(alpha))
        }
        Family::GcudPower => (
            close_under(s, |a, b| Ok(gcud(a, b)))?,
            IntegerOrder::Unitary,
            NamedFunction::Power(alpha),
        ),
        Family::Min | Family::Max => (s.to_vec(), IntegerOrder::Natural, NamedFunction::Identity),
    };
    let lattice = DivisorLattice::from_universe(&universe, order)?;
    let members: Vec<u64> = {
        let sub = lattice.subset(s)?;
        sub.members().iter().map(|&i| lattice.value(i)).collect()
    };
    let sub = lattice.subset(&members)?;
    let exact = match lattice.exact_function(&function) {
        Some(f) => Some(kind_matrix(&sub, &f, family.kind())?),
        None => None,
    };
    let fvals = lattice.float_function(&function);
    let p = lattice.poset();
    let m = sub.members();
    let float = FloatMatrix::from_fn(m.len(), |i, j| {
        let z = p.bound(m[i], m[j], family.kind()).expect("closure contains every bound");
        fvals[z]
    })?;
    drop(sub);
    Ok(NamedMatrix { family, alpha, lattice, members, function, exact, float })
}
