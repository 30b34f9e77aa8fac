//! Bounded-overlap interval algebra by a left-to-right sweep over endpoint cells.
//!
//! Each step materializes the next cell of an ordered partition: the ends of
//! some open intervals (`x_minus`, named by their starts) and the starts of
//! some unopened intervals (`y`). Intervals opened in the same cell form a
//! group; the groups of open intervals are kept in opening order, so start
//! comparisons between open intervals are group comparisons.
//!
//! A pair's basic relation is checked once, at the step that fixes it: when
//! the first of the two closes, or when one closes before the other opens.
//! Steps also prune on relations that are only partly fixed (equal starts,
//! start inside an open interval, start before an unopened one); those checks
//! never remove a completable branch.
//!
//! Overlap bookkeeping counts, per group, the other intervals its members
//! have overlapped so far. Opening `y` charges every surviving group `|y|`
//! and starts the new group at `|surviving| + |y| - 1`; closing charges
//! nothing, since meeting is not overlapping. A step is rejected once a count
//! exceeds the limit (`k - 1` for "fewer than `k` overlaps").

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::interval::{BasicRel, Endpoint, IaInstance, OrderedPartition, RelSet13};

/// How the width parameter bounds overlaps per interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OverlapBound {
    /// Every interval overlaps fewer than `k` others.
    #[default]
    FewerThan,
    /// Every interval overlaps at most `k` others.
    AtMost,
}

impl OverlapBound {
    pub fn limit(self, k: usize) -> usize {
        match self {
            OverlapBound::FewerThan => k.checked_sub(1).expect("k >= 1"),
            OverlapBound::AtMost => k,
        }
    }
}

/// Intervals opened in one cell and still open, with their remaining overlap
/// allowance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OpenGroup {
    pub members: u64,
    pub budget: i64,
}

/// Memo key of the sweep: closed intervals and open groups in opening order.
/// Unopened intervals are everything else.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SweepState {
    pub closed: u64,
    pub groups: Vec<OpenGroup>,
}

impl SweepState {
    pub fn initial() -> Self {
        Self::default()
    }

    pub fn open(&self) -> u64 {
        self.groups.iter().fold(0, |m, g| m | g.members)
    }

    pub fn unopened(&self, n: usize) -> u64 {
        full_mask(n) & !self.closed & !self.open()
    }

    fn group_of(&self, v: usize) -> usize {
        self.groups
            .iter()
            .position(|g| g.members >> v & 1 == 1)
            .expect("interval is open")
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| mask >> i & 1 == 1)
}

fn rels(list: &[BasicRel]) -> RelSet13 {
    list.iter().copied().collect()
}

/// One instance, one overlap limit, and the memo tables of its sweep.
pub struct IaSolver<'a> {
    inst: &'a IaInstance,
    n: usize,
    limit: usize,
    allowed: Vec<RelSet13>,
    counts: HashMap<SweepState, BigUint>,
    decisions: HashMap<SweepState, Option<(u64, u64)>>,
}

impl<'a> IaSolver<'a> {
    pub fn new(inst: &'a IaInstance, k: usize) -> Self {
        Self::with_bound(inst, k, OverlapBound::default())
    }

    pub fn with_bound(inst: &'a IaInstance, k: usize, bound: OverlapBound) -> Self {
        assert!(k >= 1, "k must be at least 1");
        let n = inst.len();
        assert!(n <= 64, "at most 64 intervals");
        let mut allowed = vec![RelSet13::ALL; n * n];
        for i in 0..n {
            for j in 0..n {
                allowed[i * n + j] = inst.allowed(i, j);
            }
        }
        Self {
            inst,
            n,
            limit: bound.limit(k),
            allowed,
            counts: HashMap::new(),
            decisions: HashMap::new(),
        }
    }

    fn allows(&self, x: usize, y: usize, r: BasicRel) -> bool {
        self.allowed[x * self.n + y].contains(r)
    }

    fn meets_any(&self, x: usize, y: usize, set: RelSet13) -> bool {
        !self.allowed[x * self.n + y].intersect(set).is_empty()
    }

    /// The state after materializing a cell with the ends of `x_minus` and the
    /// starts of `y`, or `None` if a constraint or the overlap limit rejects it.
    pub fn sweep_step(&self, state: &SweepState, x_minus: u64, y: u64) -> Option<SweepState> {
        let open = state.open();
        let unopened = state.unopened(self.n);
        assert!(x_minus & !open == 0, "only open intervals can close");
        assert!(y & !unopened == 0, "only unopened intervals can open");
        assert!(x_minus | y != 0, "a cell is nonempty");
        let surviving = open & !x_minus;
        let later = unopened & !y;
        let opened = y.count_ones() as i64;

        let new_budget = self.limit as i64 - (surviving.count_ones() as i64 + opened - 1);
        if y != 0 && new_budget < 0 {
            return None;
        }
        let mut groups = Vec::with_capacity(state.groups.len() + 1);
        for g in &state.groups {
            let members = g.members & !x_minus;
            if members != 0 {
                let budget = g.budget - opened;
                if budget < 0 {
                    return None;
                }
                groups.push(OpenGroup { members, budget });
            }
        }

        for u in bits(x_minus) {
            let gu = state.group_of(u);
            for w in bits(x_minus).filter(|&w| w > u) {
                let r = match gu.cmp(&state.group_of(w)) {
                    std::cmp::Ordering::Less => BasicRel::Fi,
                    std::cmp::Ordering::Equal => BasicRel::E,
                    std::cmp::Ordering::Greater => BasicRel::F,
                };
                if !self.allows(u, w, r) {
                    return None;
                }
            }
            for w in bits(surviving) {
                let r = match gu.cmp(&state.group_of(w)) {
                    std::cmp::Ordering::Less => BasicRel::O,
                    std::cmp::Ordering::Equal => BasicRel::S,
                    std::cmp::Ordering::Greater => BasicRel::D,
                };
                if !self.allows(u, w, r) {
                    return None;
                }
            }
            if bits(y).any(|w| !self.allows(u, w, BasicRel::M)) {
                return None;
            }
            if bits(later).any(|w| !self.allows(u, w, BasicRel::P)) {
                return None;
            }
        }

        let same_start = rels(&[BasicRel::S, BasicRel::Si, BasicRel::E]);
        let inside = rels(&[BasicRel::O, BasicRel::Fi, BasicRel::Di]);
        let before = rels(&[
            BasicRel::P,
            BasicRel::M,
            BasicRel::O,
            BasicRel::Fi,
            BasicRel::Di,
        ]);
        for w in bits(y) {
            if bits(y).any(|v| v > w && !self.meets_any(w, v, same_start))
                || bits(surviving).any(|u| !self.meets_any(u, w, inside))
                || bits(later).any(|v| !self.meets_any(w, v, before))
            {
                return None;
            }
        }

        if y != 0 {
            groups.push(OpenGroup {
                members: y,
                budget: new_budget,
            });
        }
        Some(SweepState {
            closed: state.closed | x_minus,
            groups,
        })
    }

    /// Candidate `(x_minus, y)` pairs for one step, skipping openings that
    /// overflow the new group's budget outright.
    fn moves(&self, state: &SweepState) -> Vec<(u64, u64)> {
        let open = state.open();
        let unopened: Vec<usize> = bits(state.unopened(self.n)).collect();
        let mut out = Vec::new();
        let mut x = open;
        loop {
            let surviving = (open & !x).count_ones() as usize;
            let max_y = (self.limit + 1)
                .saturating_sub(surviving)
                .min(unopened.len());
            for_each_subset(&unopened, max_y, &mut |y| {
                if x | y != 0 {
                    out.push((x, y));
                }
            });
            if x == 0 {
                break;
            }
            x = (x - 1) & open;
        }
        out
    }

    fn is_done(&self, state: &SweepState) -> bool {
        state.closed == full_mask(self.n)
    }

    pub fn count_from(&mut self, state: &SweepState) -> BigUint {
        if self.is_done(state) {
            return BigUint::one();
        }
        if let Some(c) = self.counts.get(state) {
            return c.clone();
        }
        let mut total = BigUint::zero();
        for (x, y) in self.moves(state) {
            if let Some(next) = self.sweep_step(state, x, y) {
                total += self.count_from(&next);
            }
        }
        self.counts.insert(state.clone(), total.clone());
        total
    }

    pub fn decide_from(&mut self, state: &SweepState) -> bool {
        if self.is_done(state) {
            return true;
        }
        if let Some(d) = self.decisions.get(state) {
            return d.is_some();
        }
        let mut found = None;
        for (x, y) in self.moves(state) {
            if let Some(next) = self.sweep_step(state, x, y) {
                if self.decide_from(&next) {
                    found = Some((x, y));
                    break;
                }
            }
        }
        self.decisions.insert(state.clone(), found);
        found.is_some()
    }

    pub fn decide(&mut self) -> bool {
        self.decide_from(&SweepState::initial())
    }

    pub fn count(&mut self) -> BigUint {
        self.count_from(&SweepState::initial())
    }

    /// An accepted ordered partition, rebuilt from the decision back-pointers.
    pub fn witness(&mut self) -> Option<OrderedPartition> {
        if !self.decide() {
            return None;
        }
        let mut state = SweepState::initial();
        let mut cells = Vec::new();
        while !self.is_done(&state) {
            let (x, y) = self.decisions[&state].expect("accepted state has a move");
            let cell: Vec<Endpoint> = bits(x)
                .map(Endpoint::end)
                .chain(bits(y).map(Endpoint::start))
                .collect();
            cells.push(cell);
            state = self
                .sweep_step(&state, x, y)
                .expect("recorded move is valid");
        }
        OrderedPartition::from_cells(self.n, &cells)
    }

    pub fn memo_len(&self) -> usize {
        self.counts.len() + self.decisions.len()
    }

    pub fn clear_memo(&mut self) {
        self.counts.clear();
        self.decisions.clear();
    }

    pub fn instance(&self) -> &IaInstance {
        self.inst
    }
}

/// Calls `f` with the mask of every subset of `items` of size at most `max`.
fn for_each_subset(items: &[usize], max: usize, f: &mut impl FnMut(u64)) {
    fn go(items: &[usize], start: usize, left: usize, acc: u64, f: &mut impl FnMut(u64)) {
        f(acc);
        if left == 0 {
            return;
        }
        for i in start..items.len() {
            go(items, i + 1, left - 1, acc | 1 << items[i], f);
        }
    }
    go(items, 0, max, 0, f);
}

pub fn sweep_step(
    inst: &IaInstance,
    k: usize,
    state: &SweepState,
    x_minus: u64,
    y: u64,
) -> Option<SweepState> {
    IaSolver::new(inst, k).sweep_step(state, x_minus, y)
}

pub fn ia_decide(inst: &IaInstance, k: usize) -> bool {
    IaSolver::new(inst, k).decide()
}

pub fn ia_count(inst: &IaInstance, k: usize) -> BigUint {
    IaSolver::new(inst, k).count()
}

pub fn ia_witness(inst: &IaInstance, k: usize) -> Option<OrderedPartition> {
    IaSolver::new(inst, k).witness()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(r: BasicRel) -> IaInstance {
        let mut inst = IaInstance::new(2);
        inst.constrain(0, 1, RelSet13::single(r)).unwrap();
        inst
    }

    #[test]
    fn fixed_cases() {
        assert!(ia_decide(&pair(BasicRel::M), 1));
        assert_eq!(ia_count(&pair(BasicRel::M), 1), BigUint::one());
        assert!(!ia_decide(&pair(BasicRel::O), 1));
        assert_eq!(ia_count(&pair(BasicRel::O), 2), BigUint::one());
        assert_eq!(ia_count(&IaInstance::new(1), 1), BigUint::one());
        assert_eq!(ia_count(&IaInstance::new(0), 1), BigUint::one());
    }

    #[test]
    fn unconstrained_pairs() {
        assert_eq!(ia_count(&IaInstance::new(2), 1), BigUint::from(4u32));
        assert_eq!(ia_count(&IaInstance::new(2), 2), BigUint::from(13u32));
        assert_eq!(ia_count(&IaInstance::new(3), 1), BigUint::from(24u32));
        assert_eq!(ia_count(&IaInstance::new(3), 2), BigUint::from(132u32));
        assert_eq!(ia_count(&IaInstance::new(3), 3), BigUint::from(409u32));
    }

    #[test]
    fn step_examples() {
        let inst = IaInstance::new(2);
        let first = sweep_step(&inst, 2, &SweepState::initial(), 0, 0b01).unwrap();
        assert_eq!(
            first.groups,
            vec![OpenGroup {
                members: 1,
                budget: 1
            }]
        );
        let both = sweep_step(&inst, 2, &first, 0, 0b10).unwrap();
        assert_eq!(
            both.groups.iter().map(|g| g.budget).collect::<Vec<_>>(),
            vec![0, 0]
        );
        assert!(sweep_step(&inst, 1, &first, 0, 0b10).is_none());
        let met = sweep_step(&inst, 1, &first, 0b01, 0b10).unwrap();
        assert_eq!(met.closed, 1);
        assert_eq!(
            met.groups,
            vec![OpenGroup {
                members: 2,
                budget: 0
            }]
        );
    }

    #[test]
    fn witness_satisfies() {
        let mut inst = IaInstance::new(3);
        inst.constrain(0, 1, RelSet13::single(BasicRel::O)).unwrap();
        inst.constrain(1, 2, RelSet13::single(BasicRel::D)).unwrap();
        let w = ia_witness(&inst, 3).unwrap();
        assert!(w.satisfies(&inst));
        assert!((0..3).all(|i| w.overlap_count(i) < 3));
    }

    #[test]
    fn at_most_bound_is_one_step_looser() {
        let inst = pair(BasicRel::O);
        assert!(IaSolver::with_bound(&inst, 1, OverlapBound::AtMost).decide());
    }
}
