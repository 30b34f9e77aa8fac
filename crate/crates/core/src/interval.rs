//! Allen's basic relations, interval instances and ordered partitions of endpoints.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::InstanceError;

/// The 13 basic relations of interval `x` to interval `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasicRel {
    /// precedes
    P,
    Pi,
    /// meets
    M,
    Mi,
    /// overlaps
    O,
    Oi,
    /// starts
    S,
    Si,
    /// during
    D,
    Di,
    /// finishes
    F,
    Fi,
    /// equals
    E,
}

impl BasicRel {
    pub const ALL: [BasicRel; 13] = [
        BasicRel::P,
        BasicRel::Pi,
        BasicRel::M,
        BasicRel::Mi,
        BasicRel::O,
        BasicRel::Oi,
        BasicRel::S,
        BasicRel::Si,
        BasicRel::D,
        BasicRel::Di,
        BasicRel::F,
        BasicRel::Fi,
        BasicRel::E,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn converse(self) -> BasicRel {
        use BasicRel::*;
        match self {
            P => Pi,
            Pi => P,
            M => Mi,
            Mi => M,
            O => Oi,
            Oi => O,
            S => Si,
            Si => S,
            D => Di,
            Di => D,
            F => Fi,
            Fi => F,
            E => E,
        }
    }

    pub fn token(self) -> &'static str {
        use BasicRel::*;
        match self {
            P => "p",
            Pi => "pi",
            M => "m",
            Mi => "mi",
            O => "o",
            Oi => "oi",
            S => "s",
            Si => "si",
            D => "d",
            Di => "di",
            F => "f",
            Fi => "fi",
            E => "e",
        }
    }

    pub fn from_token(s: &str) -> Option<BasicRel> {
        Self::ALL.into_iter().find(|r| r.token() == s)
    }

    /// The relation of `[xs, xe]` to `[ys, ye]`; requires `xs < xe` and `ys < ye`.
    pub fn from_endpoints<T: Ord>(xs: T, xe: T, ys: T, ye: T) -> BasicRel {
        use std::cmp::Ordering::*;
        use BasicRel::*;
        debug_assert!(xs < xe && ys < ye);
        match (xe.cmp(&ys), ye.cmp(&xs)) {
            (Less, _) => return P,
            (_, Less) => return Pi,
            (Equal, _) => return M,
            (_, Equal) => return Mi,
            _ => {}
        }
        match (xs.cmp(&ys), xe.cmp(&ye)) {
            (Equal, Equal) => E,
            (Equal, Less) => S,
            (Equal, Greater) => Si,
            (Greater, Equal) => F,
            (Less, Equal) => Fi,
            (Less, Less) => O,
            (Greater, Greater) => Oi,
            (Greater, Less) => D,
            (Less, Greater) => Di,
        }
    }
}

impl fmt::Display for BasicRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// A subset of [`BasicRel`], stored as a 13-bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RelSet13(u16);

impl RelSet13 {
    pub const EMPTY: RelSet13 = RelSet13(0);
    pub const ALL: RelSet13 = RelSet13((1 << 13) - 1);

    pub fn from_bits(bits: u16) -> RelSet13 {
        RelSet13(bits & Self::ALL.0)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn single(r: BasicRel) -> RelSet13 {
        RelSet13(1 << r.index())
    }

    pub fn contains(self, r: BasicRel) -> bool {
        self.0 & (1 << r.index()) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn intersect(self, other: RelSet13) -> RelSet13 {
        RelSet13(self.0 & other.0)
    }

    pub fn union(self, other: RelSet13) -> RelSet13 {
        RelSet13(self.0 | other.0)
    }

    pub fn converse(self) -> RelSet13 {
        self.iter().map(BasicRel::converse).collect()
    }

    pub fn iter(self) -> impl Iterator<Item = BasicRel> {
        BasicRel::ALL.into_iter().filter(move |&r| self.contains(r))
    }
}

impl FromIterator<BasicRel> for RelSet13 {
    fn from_iter<I: IntoIterator<Item = BasicRel>>(iter: I) -> Self {
        iter.into_iter()
            .fold(RelSet13::EMPTY, |acc, r| acc.union(RelSet13::single(r)))
    }
}

/// Intervals `0..n` with pairwise [`RelSet13`] constraints.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IaInstance {
    n: usize,
    constraints: BTreeMap<(usize, usize), RelSet13>,
}

impl IaInstance {
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
    pub fn constrain(&mut self, i: usize, j: usize, rels: RelSet13) -> Result<(), InstanceError> {
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
        let slot = self.constraints.entry(key).or_insert(RelSet13::ALL);
        *slot = slot.intersect(rels);
        Ok(())
    }

    /// Allowed relations of `i` to `j`; unconstrained pairs allow all 13.
    pub fn allowed(&self, i: usize, j: usize) -> RelSet13 {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self
                .constraints
                .get(&(i, j))
                .copied()
                .unwrap_or(RelSet13::ALL),
            std::cmp::Ordering::Greater => self.allowed(j, i).converse(),
            std::cmp::Ordering::Equal => RelSet13::single(BasicRel::E),
        }
    }

    pub fn constraints(&self) -> impl Iterator<Item = ((usize, usize), RelSet13)> + '_ {
        self.constraints.iter().map(|(&k, &v)| (k, v))
    }

    pub fn has_empty_constraint(&self) -> bool {
        self.constraints.values().any(|r| r.is_empty())
    }
}

/// The start (`x⁻`) or end (`x⁺`) of an interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Endpoint {
    pub interval: usize,
    pub end: bool,
}

impl Endpoint {
    pub fn start(interval: usize) -> Self {
        Self {
            interval,
            end: false,
        }
    }

    pub fn end(interval: usize) -> Self {
        Self {
            interval,
            end: true,
        }
    }

    /// Dense index: `2i` for the start of `i`, `2i + 1` for its end.
    pub fn index(self) -> usize {
        2 * self.interval + self.end as usize
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.interval, if self.end { '+' } else { '-' })
    }
}

/// A sequence of nonempty endpoint cells; the rank of an endpoint is the
/// 1-based index of its cell.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderedPartition {
    n: usize,
    rank: Vec<usize>,
}

impl OrderedPartition {
    /// Builds the partition for `n` intervals from 1-based ranks indexed by
    /// [`Endpoint::index`]. Returns `None` unless the ranks cover `1..=max`
    /// and every interval starts strictly before it ends.
    pub fn from_ranks(n: usize, rank: Vec<usize>) -> Option<Self> {
        if rank.len() != 2 * n {
            return None;
        }
        let max = rank.iter().copied().max().unwrap_or(0);
        let mut hit = vec![false; max + 1];
        for &r in &rank {
            if r == 0 {
                return None;
            }
            hit[r] = true;
        }
        if !hit[1..].iter().all(|&h| h) {
            return None;
        }
        if (0..n).any(|i| rank[2 * i] >= rank[2 * i + 1]) {
            return None;
        }
        Some(Self { n, rank })
    }

    pub fn from_cells(n: usize, cells: &[Vec<Endpoint>]) -> Option<Self> {
        let mut rank = vec![0; 2 * n];
        for (c, cell) in cells.iter().enumerate() {
            if cell.is_empty() {
                return None;
            }
            for e in cell {
                if e.interval >= n || rank[e.index()] != 0 {
                    return None;
                }
                rank[e.index()] = c + 1;
            }
        }
        Self::from_ranks(n, rank)
    }

    pub fn intervals(&self) -> usize {
        self.n
    }

    pub fn rank(&self, e: Endpoint) -> usize {
        self.rank[e.index()]
    }

    pub fn cells(&self) -> Vec<Vec<Endpoint>> {
        let len = self.rank.iter().copied().max().unwrap_or(0);
        let mut cells = vec![Vec::new(); len];
        for i in 0..self.n {
            for e in [Endpoint::start(i), Endpoint::end(i)] {
                cells[self.rank(e) - 1].push(e);
            }
        }
        cells
    }

    pub fn overlaps(&self, i: usize, j: usize) -> bool {
        let lo = self
            .rank(Endpoint::start(i))
            .max(self.rank(Endpoint::start(j)));
        let hi = self.rank(Endpoint::end(i)).min(self.rank(Endpoint::end(j)));
        lo < hi
    }

    /// Number of other intervals overlapping interval `i`.
    pub fn overlap_count(&self, i: usize) -> usize {
        (0..self.n)
            .filter(|&j| j != i && self.overlaps(i, j))
            .count()
    }

    pub fn basic_relation(&self, i: usize, j: usize) -> BasicRel {
        BasicRel::from_endpoints(
            self.rank(Endpoint::start(i)),
            self.rank(Endpoint::end(i)),
            self.rank(Endpoint::start(j)),
            self.rank(Endpoint::end(j)),
        )
    }

    pub fn satisfies(&self, inst: &IaInstance) -> bool {
        self.n == inst.len()
            && inst
                .constraints()
                .all(|((i, j), r)| r.contains(self.basic_relation(i, j)))
    }
}

pub fn overlaps(r: &OrderedPartition, i: usize, j: usize) -> bool {
    r.overlaps(i, j)
}

pub fn basic_relation_of(r: &OrderedPartition, i: usize, j: usize) -> BasicRel {
    r.basic_relation(i, j)
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (c, cell) in self.cells().iter().enumerate() {
            write!(f, "cell {} :", c + 1)?;
            for e in cell {
                write!(f, " {e}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two(ranks: [usize; 4]) -> OrderedPartition {
        OrderedPartition::from_ranks(2, ranks.to_vec()).unwrap()
    }

    #[test]
    fn table_one_examples() {
        // ranks are (i-, i+, j-, j+)
        assert_eq!(two([1, 2, 2, 3]).basic_relation(0, 1), BasicRel::M);
        assert_eq!(two([1, 2, 1, 2]).basic_relation(0, 1), BasicRel::E);
        assert_eq!(two([1, 3, 2, 4]).basic_relation(0, 1), BasicRel::O);
    }

    #[test]
    fn each_two_interval_ordering_has_its_own_relation() {
        let mut seen = Vec::new();
        for a in 1..=4 {
            for b in 1..=4 {
                for c in 1..=4 {
                    for d in 1..=4 {
                        if let Some(r) = OrderedPartition::from_ranks(2, vec![a, b, c, d]) {
                            seen.push(r.basic_relation(0, 1));
                            assert_eq!(r.basic_relation(1, 0), r.basic_relation(0, 1).converse());
                        }
                    }
                }
            }
        }
        seen.sort();
        assert_eq!(seen, BasicRel::ALL.to_vec());
    }

    #[test]
    fn meets_is_not_an_overlap() {
        assert!(!two([1, 2, 2, 3]).overlaps(0, 1));
        assert!(two([1, 3, 2, 4]).overlaps(0, 1));
        assert!(!two([1, 2, 3, 4]).overlaps(0, 1));
    }

    #[test]
    fn rejects_gapped_or_inverted_ranks() {
        assert!(OrderedPartition::from_ranks(1, vec![1, 3]).is_none());
        assert!(OrderedPartition::from_ranks(1, vec![2, 1]).is_none());
        assert!(OrderedPartition::from_ranks(1, vec![1, 1]).is_none());
    }

    #[test]
    fn display_lists_cells() {
        let r = two([1, 2, 2, 3]);
        assert_eq!(r.to_string(), "cell 1 : 0-\ncell 2 : 0+ 1-\ncell 3 : 1+\n");
        assert_eq!(OrderedPartition::from_cells(2, &r.cells()), Some(r));
    }

    #[test]
    fn tokens_round_trip() {
        for r in BasicRel::ALL {
            assert_eq!(BasicRel::from_token(r.token()), Some(r));
            assert_eq!(r.converse().converse(), r);
        }
        let set: RelSet13 = [BasicRel::P, BasicRel::O].into_iter().collect();
        assert_eq!(
            set.converse(),
            [BasicRel::Pi, BasicRel::Oi].into_iter().collect()
        );
    }
}
