//! Finite partial orders.
//!
//! A [`FinitePoset`] is stored as a dense `n × n` relation matrix and is
//! always indexed by a linear extension: `x_i ⪯ x_j` implies `i ≤ j`. The
//! extension is chosen deterministically by sorting on (height, input index),
//! and the resulting permutation is kept so callers can map back to their
//! own numbering.
//!
//! Meets and joins are found by scanning common bounds for a unique extremum,
//! so the same code works on lattices, semilattices and arbitrary posets; on
//! the latter the failure is reported per pair.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Which of the two lattice operations a construction refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Meet,
    Join,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Meet => "meet",
            Kind::Join => "join",
        }
    }

    pub fn dual(self) -> Kind {
        match self {
            Kind::Meet => Kind::Join,
            Kind::Join => Kind::Meet,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    n: usize,
    leq: Vec<bool>,
    labels: Vec<String>,
    /// `source[i]` is the input index of element `i`.
    source: Vec<usize>,
}

/// Builds a poset from `n` elements and a list of 0-based `(lower, upper)`
/// pairs. The reflexive-transitive closure is taken, so cover pairs suffice.
pub fn build_poset(
    n: usize,
    relation: &[(usize, usize)],
    labels: Option<Vec<String>>,
) -> Result<FinitePoset> {
    let mut leq = vec![false; n * n];
    for &(a, b) in relation {
        for idx in [a, b] {
            if idx >= n {
                return Err(Error::Index { index: idx, len: n });
            }
        }
        leq[a * n + b] = true;
    }
    FinitePoset::from_relation(n, leq, labels)
}

impl FinitePoset {
    /// Builds a poset from a raw `n × n` relation (row-major, `rel[a*n+b]`
    /// meaning `a ⪯ b`). Closure and re-indexing are applied.
    pub fn from_relation(n: usize, mut rel: Vec<bool>, labels: Option<Vec<String>>) -> Result<Self> {
        if rel.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: rel.len() });
        }
        let labels = match labels {
            Some(l) if l.len() != n => {
                return Err(Error::DimensionMismatch { expected: n, found: l.len() })
            }
            Some(l) => l,
            None => (1..=n).map(|i| format!("{i}")).collect(),
        };
        for i in 0..n {
            rel[i * n + i] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if rel[i * n + k] {
                    for j in 0..n {
                        if rel[k * n + j] {
                            rel[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in (a + 1)..n {
                if rel[a * n + b] && rel[b * n + a] {
                    return Err(Error::Cycle { a, b });
                }
            }
        }
        let order = linear_extension(n, &rel);
        let mut leq = vec![false; n * n];
        for (new_i, &old_i) in order.iter().enumerate() {
            for (new_j, &old_j) in order.iter().enumerate() {
                leq[new_i * n + new_j] = rel[old_i * n + old_j];
            }
        }
        let labels = order.iter().map(|&o| labels[o].clone()).collect();
        Ok(FinitePoset { n, leq, labels, source: order })
    }

    /// Builds a poset on `n` elements from an order predicate.
    pub fn from_fn(
        n: usize,
        leq: impl Fn(usize, usize) -> bool,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let mut rel = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                rel[a * n + b] = leq(a, b);
            }
        }
        Self::from_relation(n, rel, labels)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.n + j]
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Input index of element `i` before re-indexing.
    pub fn source_index(&self, i: usize) -> usize {
        self.source[i]
    }

    /// Position of the element that had input index `input`.
    pub fn position_of_source(&self, input: usize) -> Option<usize> {
        self.source.iter().position(|&s| s == input)
    }

    pub fn permutation(&self) -> &[usize] {
        &self.source
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.n {
            Ok(())
        } else {
            Err(Error::Index { index: i, len: self.n })
        }
    }

    /// The order dual. Element `i` of `self` becomes element `n - 1 - i` of the
    /// dual, which keeps the indexing a linear extension.
    pub fn dual(&self) -> FinitePoset {
        let n = self.n;
        let flip = |i: usize| n - 1 - i;
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[flip(i) * n + flip(j)] = self.leq(j, i);
            }
        }
        FinitePoset {
            n,
            leq,
            labels: (0..n).map(|i| self.labels[flip(i)].clone()).collect(),
            source: (0..n).map(|i| self.source[flip(i)]).collect(),
        }
    }

    /// The sub-poset on `elements`, re-indexed by a linear extension. Returns
    /// the poset and the map from its indices back to indices of `self`.
    pub fn induced(&self, elements: &[usize]) -> Result<(FinitePoset, Vec<usize>)> {
        let mut sorted = elements.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for &e in &sorted {
            self.check_index(e)?;
        }
        let m = sorted.len();
        let labels = sorted.iter().map(|&e| self.labels[e].clone()).collect();
        let sub = FinitePoset::from_fn(m, |a, b| self.leq(sorted[a], sorted[b]), Some(labels))?;
        let map = (0..m).map(|i| sorted[sub.source_index(i)]).collect();
        Ok((sub, map))
    }

    fn common_bounds(&self, i: usize, j: usize, kind: Kind) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&z| match kind {
            Kind::Meet => self.leq(z, i) && self.leq(z, j),
            Kind::Join => self.leq(i, z) && self.leq(j, z),
        })
    }

    /// Unique maximum of the common lower bounds of `i` and `j`.
    pub fn meet(&self, i: usize, j: usize) -> Result<usize> {
        self.bound(i, j, Kind::Meet)
    }

    /// Unique minimum of the common upper bounds of `i` and `j`.
    pub fn join(&self, i: usize, j: usize) -> Result<usize> {
        self.bound(i, j, Kind::Join)
    }

    pub fn bound(&self, i: usize, j: usize, kind: Kind) -> Result<usize> {
        self.check_index(i)?;
        self.check_index(j)?;
        if self.leq(i, j) {
            return Ok(match kind {
                Kind::Meet => i,
                Kind::Join => j,
            });
        }
        if self.leq(j, i) {
            return Ok(match kind {
                Kind::Meet => j,
                Kind::Join => i,
            });
        }
        let bounds: Vec<usize> = self.common_bounds(i, j, kind).collect();
        let extremal = bounds.iter().copied().find(|&c| {
            bounds.iter().all(|&z| match kind {
                Kind::Meet => self.leq(z, c),
                Kind::Join => self.leq(c, z),
            })
        });
        extremal.ok_or(match kind {
            Kind::Meet => Error::NoMeet { i, j },
            Kind::Join => Error::NoJoin { i, j },
        })
    }

    /// Elements with nothing strictly below them.
    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| (0..i).all(|j| !self.lt(j, i))).collect()
    }

    /// The least element, if one exists.
    pub fn minimum(&self) -> Option<usize> {
        (self.n > 0 && (0..self.n).all(|j| self.leq(0, j))).then_some(0)
    }

    pub fn maximum(&self) -> Option<usize> {
        let last = self.n.checked_sub(1)?;
        (0..self.n).all(|j| self.leq(j, last)).then_some(last)
    }

    /// `true` if every element lies in a single chain.
    pub fn is_chain(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.leq(i, j)))
    }
}

/// Orders elements by (height, input index). Height is the length of the
/// longest strict chain ending at the element.
fn linear_extension(n: usize, rel: &[bool]) -> Vec<usize> {
    let below = |i: usize| (0..n).filter(|&j| j != i && rel[j * n + i]).count();
    let mut topo: Vec<usize> = (0..n).collect();
    topo.sort_by_key(|&i| below(i));
    let mut height = vec![0usize; n];
    for (pos, &i) in topo.iter().enumerate() {
        height[i] = topo[..pos]
            .iter()
            .filter(|&&j| rel[j * n + i])
            .map(|&j| height[j] + 1)
            .max()
            .unwrap_or(0);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (height[i], i));
    order
}

/// A subset of a poset, listed in an order compatible with the parent order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subset<'a> {
    parent: &'a FinitePoset,
    members: Vec<usize>,
}

impl<'a> Subset<'a> {
    /// Members in the given order. Rejects duplicates, out-of-range indices
    /// and listings where a larger element comes before a smaller one.
    pub fn new(parent: &'a FinitePoset, members: Vec<usize>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &m in &members {
            parent.check_index(m)?;
            if !seen.insert(m) {
                return Err(Error::DuplicateMember { index: m });
            }
        }
        for a in 0..members.len() {
            for b in (a + 1)..members.len() {
                if parent.leq(members[b], members[a]) {
                    return Err(Error::OrderViolation { earlier: members[b], later: members[a] });
                }
            }
        }
        Ok(Subset { parent, members })
    }

    /// Members sorted by parent index.
    pub fn sorted(parent: &'a FinitePoset, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        Self::new(parent, members)
    }

    pub fn all(parent: &'a FinitePoset) -> Self {
        Subset { parent, members: (0..parent.len()).collect() }
    }

    pub fn from_labels(parent: &'a FinitePoset, labels: &[&str]) -> Result<Self> {
        let members = labels
            .iter()
            .map(|l| {
                parent
                    .index_of_label(l)
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown label {l}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::sorted(parent, members)
    }

    pub fn parent(&self) -> &'a FinitePoset {
        self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, element: usize) -> bool {
        self.members.contains(&element)
    }

    /// The same elements viewed in the order dual of the parent.
    pub fn in_dual<'b>(&self, dual: &'b FinitePoset) -> Subset<'b> {
        let n = dual.len();
        let mut members: Vec<usize> = self.members.iter().map(|&m| n - 1 - m).collect();
        members.reverse();
        Subset { parent: dual, members }
    }

    /// The sub-poset induced on the members, with the map back to the parent.
    pub fn induced(&self) -> Result<(FinitePoset, Vec<usize>)> {
        self.parent.induced(&self.members)
    }
}

/// A superset of `S` inside the ambient poset, typically its meet or join
/// closure, re-indexed as a poset in its own right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureResult {
    pub closed: FinitePoset,
    /// `ambient[k]` is the parent index of closed element `k`.
    pub ambient: Vec<usize>,
    /// `embed[i]` is the closed index of the `i`-th member of `S`.
    pub embed: Vec<usize>,
    pub kind: Kind,
}

impl ClosureResult {
    /// Wraps a caller-chosen superset of `s`. The set must contain every
    /// member of `s`; closedness is not required here.
    pub fn from_elements(s: &Subset<'_>, elements: &[usize], kind: Kind) -> Result<Self> {
        let (closed, ambient) = s.parent().induced(elements)?;
        let embed = s
            .members()
            .iter()
            .map(|&m| {
                ambient
                    .iter()
                    .position(|&a| a == m)
                    .ok_or(Error::NotSuperset { element: m })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ClosureResult { closed, ambient, embed, kind })
    }

    pub fn len(&self) -> usize {
        self.ambient.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ambient.is_empty()
    }

    /// Closed index of ambient element `a`, if present.
    pub fn position(&self, a: usize) -> Option<usize> {
        self.ambient.iter().position(|&x| x == a)
    }

    /// Whether the set is closed under the operation named by `kind`.
    pub fn is_closed(&self, parent: &FinitePoset) -> Result<bool> {
        elements_closed(parent, &self.ambient, self.kind)
    }
}

fn elements_closed(p: &FinitePoset, elements: &[usize], kind: Kind) -> Result<bool> {
    for (a, &x) in elements.iter().enumerate() {
        for &y in &elements[a + 1..] {
            if !elements.contains(&p.bound(x, y, kind)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn closure_elements(s: &Subset<'_>, kind: Kind) -> Result<Vec<usize>> {
    let p = s.parent();
    let mut set: BTreeSet<usize> = s.members().iter().copied().collect();
    let mut frontier: Vec<usize> = set.iter().copied().collect();
    while !frontier.is_empty() {
        let current: Vec<usize> = set.iter().copied().collect();
        let mut fresh = Vec::new();
        for &x in &frontier {
            for &y in &current {
                let z = p.bound(x, y, kind)?;
                if !set.contains(&z) && !fresh.contains(&z) {
                    fresh.push(z);
                }
            }
        }
        set.extend(fresh.iter().copied());
        frontier = fresh;
    }
    Ok(set.into_iter().collect())
}

/// Smallest meet-closed superset of `s`, by pairwise meets to a fixed point.
pub fn meet_closure(s: &Subset<'_>) -> Result<ClosureResult> {
    let elements = closure_elements(s, Kind::Meet)?;
    ClosureResult::from_elements(s, &elements, Kind::Meet)
}

/// Smallest join-closed superset of `s`.
pub fn join_closure(s: &Subset<'_>) -> Result<ClosureResult> {
    let elements = closure_elements(s, Kind::Join)?;
    ClosureResult::from_elements(s, &elements, Kind::Join)
}

pub fn closure(s: &Subset<'_>, kind: Kind) -> Result<ClosureResult> {
    match kind {
        Kind::Meet => meet_closure(s),
        Kind::Join => join_closure(s),
    }
}

/// All ambient elements below some member of `s`.
pub fn down_set(s: &Subset<'_>) -> Result<ClosureResult> {
    let p = s.parent();
    let elements: Vec<usize> =
        (0..p.len()).filter(|&z| s.members().iter().any(|&m| p.leq(z, m))).collect();
    ClosureResult::from_elements(s, &elements, Kind::Meet)
}

/// All ambient elements above some member of `s`.
pub fn up_set(s: &Subset<'_>) -> Result<ClosureResult> {
    let p = s.parent();
    let elements: Vec<usize> =
        (0..p.len()).filter(|&z| s.members().iter().any(|&m| p.leq(m, z))).collect();
    ClosureResult::from_elements(s, &elements, Kind::Join)
}

pub fn is_meet_closed(s: &Subset<'_>) -> Result<bool> {
    elements_closed(s.parent(), s.members(), Kind::Meet)
}

pub fn is_join_closed(s: &Subset<'_>) -> Result<bool> {
    elements_closed(s.parent(), s.members(), Kind::Join)
}

pub fn is_closed(s: &Subset<'_>, kind: Kind) -> Result<bool> {
    elements_closed(s.parent(), s.members(), kind)
}

pub fn is_chain(s: &Subset<'_>) -> bool {
    let p = s.parent();
    let m = s.members();
    (0..m.len()).all(|a| (a + 1..m.len()).all(|b| p.comparable(m[a], m[b])))
}

/// Hasse diagram as a list of `(lower, upper)` cover pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverGraph {
    pub edges: Vec<(usize, usize)>,
}

impl CoverGraph {
    /// Whether the diagram on `n` vertices is a tree as an undirected graph.
    pub fn is_tree(&self, n: usize) -> bool {
        if n == 0 || self.edges.len() + 1 != n {
            return false;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    }

    /// Number of elements each element covers.
    pub fn lower_covers(&self, n: usize) -> Vec<usize> {
        let mut count = vec![0; n];
        for &(_, upper) in &self.edges {
            count[upper] += 1;
        }
        count
    }
}

pub fn cover_graph(p: &FinitePoset) -> CoverGraph {
    let n = p.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if p.lt(i, j) && !((i + 1)..j).any(|z| p.lt(i, z) && p.lt(z, j)) {
                edges.push((i, j));
            }
        }
    }
    CoverGraph { edges }
}

/// The four equivalent descriptions of a tree-shaped meet semilattice,
/// evaluated independently on `p`:
/// 0. the Hasse diagram is an undirected tree;
/// 1. every element covers at most one element;
/// 2. every principal down-set is a chain;
/// 3. any two elements with a common upper bound are comparable.
pub fn tree_characterizations(p: &FinitePoset) -> [bool; 4] {
    let n = p.len();
    let graph = cover_graph(p);
    let hasse_tree = graph.is_tree(n);
    let single_cover = graph.lower_covers(n).iter().all(|&c| c <= 1);
    let down_chains = (0..n).all(|x| {
        let down: Vec<usize> = (0..=x).filter(|&y| p.leq(y, x)).collect();
        down.iter().enumerate().all(|(a, &u)| down[a + 1..].iter().all(|&v| p.comparable(u, v)))
    });
    let bounded_comparable = (0..n).all(|z| {
        (0..n).all(|x| (0..n).all(|y| !(p.leq(x, z) && p.leq(y, z)) || p.comparable(x, y)))
    });
    [hasse_tree, single_cover, down_chains, bounded_comparable]
}

fn agreed(verdicts: [bool; 4]) -> Result<bool> {
    if verdicts.iter().all(|&v| v == verdicts[0]) {
        Ok(verdicts[0])
    } else {
        Err(Error::CharacterizationMismatch { verdicts })
    }
}

/// Whether the meet closure of `s` has a tree Hasse diagram.
pub fn is_wedge_tree_set(s: &Subset<'_>) -> Result<bool> {
    let closure = meet_closure(s)?;
    agreed(tree_characterizations(&closure.closed))
}

/// Whether the join closure of `s` has a tree Hasse diagram.
pub fn is_vee_tree_set(s: &Subset<'_>) -> Result<bool> {
    let closure = join_closure(s)?;
    agreed(tree_characterizations(&closure.closed.dual()))
}

pub fn is_tree_set(s: &Subset<'_>, kind: Kind) -> Result<bool> {
    match kind {
        Kind::Meet => is_wedge_tree_set(s),
        Kind::Join => is_vee_tree_set(s),
    }
}

/// Whether the meets of distinct members form a chain.
pub fn is_a_set(s: &Subset<'_>) -> Result<bool> {
    let p = s.parent();
    let m = s.members();
    let mut meets = BTreeSet::new();
    for a in 0..m.len() {
        for b in (a + 1)..m.len() {
            meets.insert(p.meet(m[a], m[b])?);
        }
    }
    let meets: Vec<usize> = meets.into_iter().collect();
    Ok(meets.iter().enumerate().all(|(a, &u)| meets[a + 1..].iter().all(|&v| p.comparable(u, v))))
}

/// `x ≺ y ⇒ values[x] < values[y]` (or `≤` when not strict) over `elements`.
pub fn is_order_preserving<T: PartialOrd>(
    p: &FinitePoset,
    elements: &[usize],
    values: &[T],
    strict: bool,
) -> bool {
    order_violation(p, elements, values, strict, false).is_none()
}

/// `x ≺ y ⇒ values[y] < values[x]` (or `≤`) over `elements`.
pub fn is_order_reversing<T: PartialOrd>(
    p: &FinitePoset,
    elements: &[usize],
    values: &[T],
    strict: bool,
) -> bool {
    order_violation(p, elements, values, strict, true).is_none()
}

/// First pair `(lower, upper)` of ambient indices breaking the property.
/// `values` is indexed by ambient element.
pub fn order_violation<T: PartialOrd>(
    p: &FinitePoset,
    elements: &[usize],
    values: &[T],
    strict: bool,
    reversing: bool,
) -> Option<(usize, usize)> {
    for &x in elements {
        for &y in elements {
            if !p.lt(x, y) {
                continue;
            }
            let (small, large) = if reversing { (&values[y], &values[x]) } else { (&values[x], &values[y]) };
            let ok = if strict { small < large } else { small <= large };
            if !ok {
                return Some((x, y));
            }
        }
    }
    None
}
