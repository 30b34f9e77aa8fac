//! Partial orders, atomic scenarios and Partially Ordered Time instances.

mod width;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{InstanceError, OrderError};

pub use width::{
    effective_width_at_most, effective_width_certificate_check, find_waist_decomposition,
    WaistDecomposition, WidthChecker, DEFAULT_WIDTH_CAP,
};

/// The relation induced between two points of a partial order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rel4 {
    Lt,
    Gt,
    Eq,
    Inc,
}

impl Rel4 {
    pub const ALL: [Rel4; 4] = [Rel4::Lt, Rel4::Gt, Rel4::Eq, Rel4::Inc];

    pub fn converse(self) -> Rel4 {
        match self {
            Rel4::Lt => Rel4::Gt,
            Rel4::Gt => Rel4::Lt,
            r => r,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Rel4 {
        Self::ALL[i]
    }

    pub fn token(self) -> &'static str {
        match self {
            Rel4::Lt => "lt",
            Rel4::Gt => "gt",
            Rel4::Eq => "eq",
            Rel4::Inc => "inc",
        }
    }

    pub fn from_token(s: &str) -> Option<Rel4> {
        Self::ALL.into_iter().find(|r| r.token() == s)
    }
}

impl fmt::Display for Rel4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// A subset of [`Rel4`], stored as a 4-bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RelSet4(u8);

impl RelSet4 {
    pub const EMPTY: RelSet4 = RelSet4(0);
    pub const ALL: RelSet4 = RelSet4(0b1111);

    pub fn from_bits(bits: u8) -> RelSet4 {
        RelSet4(bits & 0b1111)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn single(r: Rel4) -> RelSet4 {
        RelSet4(1 << r.index())
    }

    pub fn contains(self, r: Rel4) -> bool {
        self.0 & (1 << r.index()) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn intersect(self, other: RelSet4) -> RelSet4 {
        RelSet4(self.0 & other.0)
    }

    pub fn union(self, other: RelSet4) -> RelSet4 {
        RelSet4(self.0 | other.0)
    }

    pub fn converse(self) -> RelSet4 {
        self.iter().map(Rel4::converse).collect()
    }

    pub fn iter(self) -> impl Iterator<Item = Rel4> {
        Rel4::ALL.into_iter().filter(move |&r| self.contains(r))
    }
}

impl FromIterator<Rel4> for RelSet4 {
    fn from_iter<I: IntoIterator<Item = Rel4>>(iter: I) -> Self {
        iter.into_iter()
            .fold(RelSet4::EMPTY, |acc, r| acc.union(RelSet4::single(r)))
    }
}

/// A finite partial order on the elements `0..len`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialOrder {
    n: usize,
    le: Vec<bool>,
}

/// Builds the reflexive-transitive closure of `pairs` over `0..n`.
pub fn make_partial_order(n: usize, pairs: &[(usize, usize)]) -> Result<PartialOrder, OrderError> {
    let mut le = vec![false; n * n];
    for a in 0..n {
        le[a * n + a] = true;
    }
    for &(a, b) in pairs {
        for x in [a, b] {
            if x >= n {
                return Err(OrderError::UnknownElement(x));
            }
        }
        le[a * n + b] = true;
    }
    for m in 0..n {
        for a in 0..n {
            if le[a * n + m] {
                for b in 0..n {
                    if le[m * n + b] {
                        le[a * n + b] = true;
                    }
                }
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            if le[a * n + b] && le[b * n + a] {
                return Err(OrderError::Cycle { a, b });
            }
        }
    }
    Ok(PartialOrder { n, le })
}

impl PartialOrder {
    pub fn antichain(n: usize) -> PartialOrder {
        make_partial_order(n, &[]).expect("empty relation is a partial order")
    }

    pub fn chain(n: usize) -> PartialOrder {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        make_partial_order(n, &pairs).expect("a path is acyclic")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.le[a * self.n + b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.le(a, b)
    }

    /// Relation of `a` to `b`; panics on elements out of range.
    pub fn relation(&self, a: usize, b: usize) -> Rel4 {
        match (self.le(a, b), self.le(b, a)) {
            (true, true) => Rel4::Eq,
            (true, false) => Rel4::Lt,
            (false, true) => Rel4::Gt,
            (false, false) => Rel4::Inc,
        }
    }

    pub fn induced_relation(&self, a: usize, b: usize) -> Result<Rel4, OrderError> {
        for x in [a, b] {
            if x >= self.n {
                return Err(OrderError::UnknownElement(x));
            }
        }
        Ok(self.relation(a, b))
    }

    /// All pairs `(a, b)` with `a < b` in the order, sorted.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if self.lt(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// The sub-order induced on `subset`, re-indexed in ascending element order.
    pub fn restrict(&self, subset: &[usize]) -> PartialOrder {
        let mut keep = subset.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let m = keep.len();
        let mut le = vec![false; m * m];
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate() {
                le[i * m + j] = self.le(a, b);
            }
        }
        PartialOrder { n: m, le }
    }
}

pub fn restrict_order(p: &PartialOrder, subset: &[usize]) -> PartialOrder {
    p.restrict(subset)
}

/// Position of the pair `(i, j)`, `i < j`, in the lexicographic pair order.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// One [`Rel4`] per unordered pair, stored on `(i, j)` with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomicScenario {
    n: usize,
    rels: Vec<Rel4>,
}

impl AtomicScenario {
    pub fn uniform(n: usize, rel: Rel4) -> Self {
        Self {
            n,
            rels: vec![rel; pair_count(n)],
        }
    }

    /// Builds a scenario from relations listed in lexicographic pair order.
    pub fn from_pair_relations(n: usize, rels: Vec<Rel4>) -> Self {
        assert_eq!(rels.len(), pair_count(n), "one relation per pair");
        Self { n, rels }
    }

    /// The scenario induced by mapping variable `v` to element `f[v]` of `p`.
    pub fn from_order(p: &PartialOrder, f: &[usize]) -> Self {
        let n = f.len();
        let mut rels = Vec::with_capacity(pair_count(n));
        for i in 0..n {
            for j in i + 1..n {
                rels.push(p.relation(f[i], f[j]));
            }
        }
        Self { n, rels }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn pair_relations(&self) -> &[Rel4] {
        &self.rels
    }

    /// Relation of `i` to `j` in either orientation; `get(i, i)` is `Eq`.
    pub fn get(&self, i: usize, j: usize) -> Rel4 {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.rels[pair_index(self.n, i, j)],
            std::cmp::Ordering::Greater => self.rels[pair_index(self.n, j, i)].converse(),
            std::cmp::Ordering::Equal => Rel4::Eq,
        }
    }

    pub fn set(&mut self, i: usize, j: usize, rel: Rel4) {
        assert_ne!(i, j);
        if i < j {
            self.rels[pair_index(self.n, i, j)] = rel;
        } else {
            self.rels[pair_index(self.n, j, i)] = rel.converse();
        }
    }

    /// Representative (smallest member) of each variable's `Eq` class, or
    /// `None` if `Eq` is not an equivalence with congruent relations.
    fn eq_classes(&self) -> Option<Vec<usize>> {
        let n = self.n;
        let rep = (0..n)
            .map(|i| (0..=i).find(|&j| self.get(j, i) == Rel4::Eq))
            .collect::<Option<Vec<usize>>>()?;
        for a in 0..n {
            for b in 0..n {
                if a != b && self.get(a, b) == Rel4::Eq {
                    for c in 0..n {
                        if self.get(a, c) != self.get(b, c) {
                            return None;
                        }
                    }
                }
            }
        }
        Some(rep)
    }

    pub fn is_realizable(&self) -> bool {
        let Some(rep) = self.eq_classes() else {
            return false;
        };
        let n = self.n;
        for a in (0..n).filter(|&a| rep[a] == a) {
            for b in (0..n).filter(|&b| rep[b] == b) {
                if self.get(a, b) != Rel4::Lt {
                    continue;
                }
                for c in (0..n).filter(|&c| rep[c] == c) {
                    if self.get(b, c) == Rel4::Lt && self.get(a, c) != Rel4::Lt {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The partial order on `Eq` classes together with each variable's class.
    /// Classes are numbered by their smallest member. `None` if unrealizable.
    pub fn quotient(&self) -> Option<(PartialOrder, Vec<usize>)> {
        if !self.is_realizable() {
            return None;
        }
        let rep = self.eq_classes()?;
        let reps: Vec<usize> = (0..self.n).filter(|&v| rep[v] == v).collect();
        let class_of: Vec<usize> = rep
            .iter()
            .map(|r| reps.binary_search(r).expect("representative is listed"))
            .collect();
        let mut pairs = Vec::new();
        for (ca, &a) in reps.iter().enumerate() {
            for (cb, &b) in reps.iter().enumerate() {
                if self.get(a, b) == Rel4::Lt {
                    pairs.push((ca, cb));
                }
            }
        }
        let p = make_partial_order(reps.len(), &pairs).ok()?;
        Some((p, class_of))
    }
}

pub fn scenario_realizable(s: &AtomicScenario) -> bool {
    s.is_realizable()
}

impl fmt::Display for AtomicScenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            for j in i + 1..self.n {
                writeln!(f, "rel {i} {j} {}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}

/// Variables `0..n` with pairwise [`RelSet4`] constraints.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PotInstance {
    n: usize,
    constraints: BTreeMap<(usize, usize), RelSet4>,
}

impl PotInstance {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            constraints: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Intersects the constraint on `(i, j)` with `rels`, read as relations of `i` to `j`.
    pub fn constrain(&mut self, i: usize, j: usize, rels: RelSet4) -> Result<(), InstanceError> {
        for v in [i, j] {
            if v >= self.n {
                return Err(InstanceError::VariableOutOfRange { var: v, n: self.n });
            }
        }
        if i == j {
            return Err(InstanceError::SelfLoop(i));
        }
        let (key, rels) = if i < j {
            ((i, j), rels)
        } else {
            ((j, i), rels.converse())
        };
        let slot = self.constraints.entry(key).or_insert(RelSet4::ALL);
        *slot = slot.intersect(rels);
        Ok(())
    }

    /// Allowed relations of `i` to `j`; unconstrained pairs allow everything.
    pub fn allowed(&self, i: usize, j: usize) -> RelSet4 {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self
                .constraints
                .get(&(i, j))
                .copied()
                .unwrap_or(RelSet4::ALL),
            std::cmp::Ordering::Greater => self.allowed(j, i).converse(),
            std::cmp::Ordering::Equal => RelSet4::single(Rel4::Eq),
        }
    }

    /// Constrained pairs `(i, j)`, `i < j`, in ascending order.
    pub fn constraints(&self) -> impl Iterator<Item = ((usize, usize), RelSet4)> + '_ {
        self.constraints.iter().map(|(&k, &v)| (k, v))
    }

    pub fn has_empty_constraint(&self) -> bool {
        self.constraints.values().any(|r| r.is_empty())
    }

    pub fn sub_instance(&self, vars: &[usize]) -> PotInstance {
        let mut keep = vars.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut out = PotInstance::new(keep.len());
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate().skip(a + 1) {
                if let Some(&r) = self.constraints.get(&(i, j)) {
                    out.constraints.insert((a, b), r);
                }
            }
        }
        out
    }
}

pub fn sub_instance(inst: &PotInstance, vars: &[usize]) -> PotInstance {
    inst.sub_instance(vars)
}

pub fn satisfies_pot(s: &AtomicScenario, inst: &PotInstance) -> bool {
    s.len() == inst.len()
        && inst
            .constraints()
            .all(|((i, j), r)| r.contains(s.get(i, j)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_cycles() {
        let p = make_partial_order(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(p.le(0, 2));
        assert_eq!(p.relation(0, 2), Rel4::Lt);
        assert_eq!(
            make_partial_order(2, &[(0, 1), (1, 0)]),
            Err(OrderError::Cycle { a: 0, b: 1 })
        );
        assert_eq!(
            make_partial_order(2, &[(0, 2)]),
            Err(OrderError::UnknownElement(2))
        );
        assert_eq!(make_partial_order(1, &[]).unwrap().len(), 1);
    }

    #[test]
    fn induced_relations() {
        let p = PartialOrder::chain(2);
        assert_eq!(p.induced_relation(0, 1), Ok(Rel4::Lt));
        assert_eq!(p.induced_relation(1, 1), Ok(Rel4::Eq));
        assert_eq!(
            PartialOrder::antichain(2).induced_relation(0, 1),
            Ok(Rel4::Inc)
        );
        assert_eq!(p.induced_relation(0, 5), Err(OrderError::UnknownElement(5)));
    }

    #[test]
    fn restriction_keeps_transitivity() {
        let p = PartialOrder::chain(3);
        let q = p.restrict(&[2, 0]);
        assert_eq!(q, PartialOrder::chain(2));
    }

    #[test]
    fn pair_indices_are_lexicographic() {
        let n = 5;
        let mut expect = 0;
        for i in 0..n {
            for j in i + 1..n {
                assert_eq!(pair_index(n, i, j), expect);
                expect += 1;
            }
        }
        assert_eq!(expect, pair_count(n));
    }

    #[test]
    fn realizability_examples() {
        let chain = AtomicScenario::uniform(3, Rel4::Lt);
        assert!(chain.is_realizable());
        let mut broken = chain.clone();
        broken.set(0, 2, Rel4::Inc);
        assert!(!broken.is_realizable());
        assert!(AtomicScenario::uniform(2, Rel4::Eq).is_realizable());
        let mut non_congruent = AtomicScenario::uniform(3, Rel4::Eq);
        non_congruent.set(1, 2, Rel4::Lt);
        assert!(!non_congruent.is_realizable());
    }

    #[test]
    fn quotient_merges_equal_variables() {
        let mut s = AtomicScenario::uniform(3, Rel4::Lt);
        s.set(0, 1, Rel4::Eq);
        let (p, class_of) = s.quotient().unwrap();
        assert_eq!(class_of, vec![0, 0, 1]);
        assert_eq!(p, PartialOrder::chain(2));
    }

    #[test]
    fn constraints_intersect_and_orient() {
        let mut inst = PotInstance::new(2);
        inst.constrain(
            1,
            0,
            RelSet4::single(Rel4::Gt).union(RelSet4::single(Rel4::Inc)),
        )
        .unwrap();
        assert_eq!(
            inst.allowed(0, 1),
            [Rel4::Lt, Rel4::Inc].into_iter().collect()
        );
        inst.constrain(0, 1, RelSet4::single(Rel4::Lt)).unwrap();
        assert_eq!(inst.allowed(0, 1), RelSet4::single(Rel4::Lt));
        assert_eq!(
            inst.constrain(0, 0, RelSet4::ALL),
            Err(InstanceError::SelfLoop(0))
        );

        let mut s = AtomicScenario::uniform(2, Rel4::Lt);
        assert!(satisfies_pot(&s, &inst));
        s.set(0, 1, Rel4::Gt);
        assert!(!satisfies_pot(&s, &inst));
        assert!(satisfies_pot(&s, &PotInstance::new(2)));
    }

    #[test]
    fn sub_instance_remaps() {
        let mut inst = PotInstance::new(3);
        inst.constrain(0, 2, RelSet4::single(Rel4::Lt)).unwrap();
        let sub = inst.sub_instance(&[2, 0]);
        assert_eq!(sub.len(), 2);
        assert_eq!(sub.allowed(0, 1), RelSet4::single(Rel4::Lt));
        assert!(inst.sub_instance(&[]).is_empty());
        assert_eq!(inst.sub_instance(&[0, 1, 2]), inst);
    }
}
