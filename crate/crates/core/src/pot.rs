//! Partially Ordered Time of bounded effective width.
//!
//! A sub-call receives variables sorted into positions. A position code has
//! `2k` bits; for waist index `i` (0-based), bit `2i` says the variables lie
//! strictly above the temporary lower waist `T<_i`, and bit `2i + 1` says they
//! lie strictly below the temporary upper waist `T>_i`. The root places every
//! variable at code 0: there are no temporary waists yet.
//!
//! Each call either accepts the all-equal assignment (single position) or
//! splits its variables into a new waist `W_1..W_k`, a lower part and an upper
//! part. Every waist block sits inside one position and blocks are mutually
//! incomparable. A lower variable `x` names the nonempty set `A` of blocks it
//! lies below; it must sit at or below the position of those blocks
//! (`lo(x) ⊆ lo(W_j)`), and its relation to the upper temporary waist is
//! derived from them (`hi(x) = ∪ hi(W_j)`). Upper variables are symmetric.
//! Lower and upper variables compare `Lt` exactly when they share a block.
//!
//! Sub-calls: each waist block at code 0, the lower part at codes
//! `(lo(x), A)` and the upper part at codes `(B, hi(y))`.
//!
//! Different splits can produce the same scenario (a 3-chain splits around any
//! of its elements), so counting collects the set of scenarios rather than
//! summing split counts.

use std::collections::{HashMap, HashSet};
use std::rc::Rc;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::order::{pair_count, pair_index, AtomicScenario, PotInstance, Rel4, RelSet4};

/// The `i`-th bit of `n`, counting from 1 at the least significant end.
pub fn bit(n: u64, i: u32) -> u8 {
    assert!(i >= 1, "bits are numbered from 1");
    if i > 64 {
        return 0;
    }
    (n >> (i - 1) & 1) as u8
}

fn interleave(lo: u64, hi: u64, k: usize) -> u64 {
    (0..k).fold(0, |c, i| {
        c | (lo >> i & 1) << (2 * i) | (hi >> i & 1) << (2 * i + 1)
    })
}

fn lo_bits(code: u64, k: usize) -> u64 {
    (0..k).fold(0, |m, i| m | (code >> (2 * i) & 1) << i)
}

fn hi_bits(code: u64, k: usize) -> u64 {
    (0..k).fold(0, |m, i| m | (code >> (2 * i + 1) & 1) << i)
}

/// Variables of one sub-call, grouped by position code.
///
/// Only nonempty positions are stored, keyed by their code; the dense tuple of
/// `4^k` subsets is available through [`WaistCallKey::subsets`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WaistCallKey {
    entries: Vec<(u64, u64)>,
}

impl WaistCallKey {
    /// Builds a key from `(position code, variable mask)` pairs.
    pub fn new(positions: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut merged: Vec<(u64, u64)> = Vec::new();
        for (code, mask) in positions {
            if mask == 0 {
                continue;
            }
            match merged.iter_mut().find(|(c, _)| *c == code) {
                Some((_, m)) => {
                    assert_eq!(*m & mask, 0, "positional sets must be disjoint");
                    *m |= mask;
                }
                None => merged.push((code, mask)),
            }
        }
        merged.sort_unstable();
        Self { entries: merged }
    }

    pub fn root(n: usize) -> Self {
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Self::new([(0, all)])
    }

    pub fn variables(&self) -> u64 {
        self.entries.iter().fold(0, |m, &(_, v)| m | v)
    }

    /// Dense view: entry `j` holds the variables at code `j`, i.e. `S_{j+1}`.
    pub fn subsets(&self, k: usize) -> Vec<u64> {
        let mut out = vec![0; 1 << (2 * k)];
        for &(code, mask) in &self.entries {
            out[code as usize] = mask;
        }
        out
    }

    fn position_of(&self, var: usize) -> u64 {
        self.entries
            .iter()
            .find(|(_, m)| m >> var & 1 == 1)
            .map(|&(c, _)| c)
            .expect("variable belongs to the key")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Target {
    Waist(usize),
    Lower(u64),
    Upper(u64),
}

/// Relation of a variable with target `a` to one with target `b`, if the
/// split fixes it.
fn fixed_relation(a: Target, b: Target) -> Option<Rel4> {
    use Target::*;
    let r = match (a, b) {
        (Waist(i), Waist(j)) if i == j => return None,
        (Waist(_), Waist(_)) => Rel4::Inc,
        (Lower(s), Waist(j)) if s >> j & 1 == 1 => Rel4::Lt,
        (Upper(s), Waist(j)) if s >> j & 1 == 1 => Rel4::Gt,
        (Lower(_) | Upper(_), Waist(_)) => Rel4::Inc,
        (Waist(_), _) => return fixed_relation(b, a).map(Rel4::converse),
        (Lower(s), Upper(t)) if s & t != 0 => Rel4::Lt,
        (Upper(s), Lower(t)) if s & t != 0 => Rel4::Gt,
        (Lower(_), Upper(_)) | (Upper(_), Lower(_)) => Rel4::Inc,
        (Lower(_), Lower(_)) | (Upper(_), Upper(_)) => return None,
    };
    Some(r)
}

#[derive(Debug, Clone)]
enum Choice {
    Empty,
    AllEqual,
    Split(Vec<Target>),
}

/// Value domain of the recursion.
trait Algebra {
    type V: Clone;
    const NEEDS_CROSS: bool;
    fn zero(&self) -> Self::V;
    fn is_zero(&self, v: &Self::V) -> bool;
    fn empty(&self) -> Self::V;
    fn all_equal(&self, vars: &[usize]) -> Self::V;
    fn split(&self, cross: &[(usize, usize, Rel4)], children: Vec<Self::V>) -> Self::V;
    fn add(&self, acc: &mut Self::V, v: Self::V);
    fn saturated(&self, _acc: &Self::V) -> bool {
        false
    }
}

struct Decide;

impl Algebra for Decide {
    type V = bool;
    const NEEDS_CROSS: bool = false;
    fn zero(&self) -> bool {
        false
    }
    fn is_zero(&self, v: &bool) -> bool {
        !v
    }
    fn empty(&self) -> bool {
        true
    }
    fn all_equal(&self, _: &[usize]) -> bool {
        true
    }
    fn split(&self, _: &[(usize, usize, Rel4)], children: Vec<bool>) -> bool {
        children.into_iter().all(|c| c)
    }
    fn add(&self, acc: &mut bool, v: bool) {
        *acc |= v;
    }
    fn saturated(&self, acc: &bool) -> bool {
        *acc
    }
}

/// Number of accepting decomposition trees; overcounts scenarios.
struct Decompositions;

impl Algebra for Decompositions {
    type V = BigUint;
    const NEEDS_CROSS: bool = false;
    fn zero(&self) -> BigUint {
        BigUint::zero()
    }
    fn is_zero(&self, v: &BigUint) -> bool {
        v.is_zero()
    }
    fn empty(&self) -> BigUint {
        BigUint::one()
    }
    fn all_equal(&self, _: &[usize]) -> BigUint {
        BigUint::one()
    }
    fn split(&self, _: &[(usize, usize, Rel4)], children: Vec<BigUint>) -> BigUint {
        children.into_iter().product()
    }
    fn add(&self, acc: &mut BigUint, v: BigUint) {
        *acc += v;
    }
}

/// Partial scenarios as 2-bit relation codes over all pairs of the instance.
type Code = Box<[u64]>;

struct Scenarios {
    n: usize,
    words: usize,
}

impl Scenarios {
    fn new(n: usize) -> Self {
        Self {
            n,
            words: (2 * pair_count(n)).div_ceil(64).max(1),
        }
    }

    fn encode(&self, rels: &[(usize, usize, Rel4)]) -> Code {
        let mut code = vec![0u64; self.words].into_boxed_slice();
        for &(a, b, r) in rels {
            let (i, j, r) = if a < b {
                (a, b, r)
            } else {
                (b, a, r.converse())
            };
            let at = 2 * pair_index(self.n, i, j);
            code[at / 64] |= (r.index() as u64) << (at % 64);
        }
        code
    }
}

impl Algebra for Scenarios {
    type V = Rc<HashSet<Code>>;
    const NEEDS_CROSS: bool = true;
    fn zero(&self) -> Self::V {
        Rc::new(HashSet::new())
    }
    fn is_zero(&self, v: &Self::V) -> bool {
        v.is_empty()
    }
    fn empty(&self) -> Self::V {
        Rc::new(HashSet::from([self.encode(&[])]))
    }
    fn all_equal(&self, vars: &[usize]) -> Self::V {
        let mut rels = Vec::new();
        for (a, &x) in vars.iter().enumerate() {
            for &y in &vars[a + 1..] {
                rels.push((x, y, Rel4::Eq));
            }
        }
        Rc::new(HashSet::from([self.encode(&rels)]))
    }
    fn split(&self, cross: &[(usize, usize, Rel4)], children: Vec<Self::V>) -> Self::V {
        let mut acc: Vec<Code> = vec![self.encode(cross)];
        for child in children {
            let mut next = Vec::with_capacity(acc.len() * child.len());
            for a in &acc {
                for b in child.iter() {
                    next.push(a.iter().zip(b.iter()).map(|(x, y)| x | y).collect());
                }
            }
            acc = next;
        }
        Rc::new(acc.into_iter().collect())
    }
    fn add(&self, acc: &mut Self::V, v: Self::V) {
        let set = Rc::make_mut(acc);
        set.extend(v.iter().cloned());
    }
}

/// Per-split bookkeeping during enumeration.
struct SplitState {
    vars: Vec<usize>,
    pos: Vec<u64>,
    targets: Vec<Target>,
    block_pos: Vec<u64>,
}

struct Engine<'a, A: Algebra> {
    inst: &'a PotInstance,
    n: usize,
    k: usize,
    allowed: Vec<RelSet4>,
    alg: A,
    memo: HashMap<WaistCallKey, A::V>,
    choices: HashMap<WaistCallKey, Choice>,
}

impl<'a, A: Algebra> Engine<'a, A> {
    fn new(inst: &'a PotInstance, k: usize, alg: A) -> Self {
        assert!(k >= 1, "effective width is defined for k >= 1");
        let n = inst.len();
        assert!(n <= 64, "at most 64 variables");
        let mut allowed = vec![RelSet4::ALL; n * n];
        for i in 0..n {
            for j in 0..n {
                allowed[i * n + j] = inst.allowed(i, j);
            }
        }
        // A level never holds more than n nonempty blocks.
        let k = k.min(n.max(1));
        assert!(k <= 31, "position codes hold at most 31 waists");
        Self {
            inst,
            n,
            k,
            allowed,
            alg,
            memo: HashMap::new(),
            choices: HashMap::new(),
        }
    }

    fn allows(&self, x: usize, y: usize, r: Rel4) -> bool {
        self.allowed[x * self.n + y].contains(r)
    }

    fn eval(&mut self, key: &WaistCallKey) -> A::V {
        if let Some(v) = self.memo.get(key) {
            return v.clone();
        }
        let vars: Vec<usize> = (0..self.n)
            .filter(|&v| key.variables() >> v & 1 == 1)
            .collect();
        let mut acc = self.alg.zero();
        if vars.is_empty() {
            acc = self.alg.empty();
            self.choices.insert(key.clone(), Choice::Empty);
        } else {
            if key.entries.len() == 1 && self.all_equal_allowed(&vars) {
                acc = self.alg.all_equal(&vars);
                self.choices.insert(key.clone(), Choice::AllEqual);
            }
            if vars.len() >= 2 && !self.alg.saturated(&acc) {
                let pos = vars.iter().map(|&v| key.position_of(v)).collect();
                let mut st = SplitState {
                    vars,
                    pos,
                    targets: Vec::new(),
                    block_pos: Vec::new(),
                };
                self.extend(key, &mut st, &mut acc);
            }
        }
        self.memo.insert(key.clone(), acc.clone());
        acc
    }

    fn all_equal_allowed(&self, vars: &[usize]) -> bool {
        vars.iter()
            .enumerate()
            .all(|(a, &x)| vars[a + 1..].iter().all(|&y| self.allows(x, y, Rel4::Eq)))
    }

    /// Assigns a target to the next variable in index order.
    fn extend(&mut self, key: &WaistCallKey, st: &mut SplitState, acc: &mut A::V) {
        let d = st.targets.len();
        if d == st.vars.len() {
            self.finish(key, st, acc);
            return;
        }
        let used = st.block_pos.len();
        let full = (1u64 << self.k) - 1;
        let mut options: Vec<Target> = (0..=used.min(self.k - 1)).map(Target::Waist).collect();
        options.extend((1..=full).map(Target::Lower));
        options.extend((1..=full).map(Target::Upper));
        for t in options {
            if !self.admissible(st, t) {
                continue;
            }
            let opened = matches!(t, Target::Waist(j) if j == used);
            if opened {
                st.block_pos.push(st.pos[d]);
            }
            st.targets.push(t);
            self.extend(key, st, acc);
            st.targets.pop();
            if opened {
                st.block_pos.pop();
            }
            if self.alg.saturated(acc) {
                return;
            }
        }
    }

    fn admissible(&self, st: &SplitState, t: Target) -> bool {
        let d = st.targets.len();
        let (x, px) = (st.vars[d], st.pos[d]);
        match t {
            Target::Waist(j) if j < st.block_pos.len() && st.block_pos[j] != px => return false,
            Target::Lower(a) => {
                let lo = lo_bits(px, self.k);
                if (0..st.block_pos.len())
                    .any(|j| a >> j & 1 == 1 && lo & !lo_bits(st.block_pos[j], self.k) != 0)
                {
                    return false;
                }
            }
            Target::Upper(b) => {
                let hi = hi_bits(px, self.k);
                if (0..st.block_pos.len())
                    .any(|j| b >> j & 1 == 1 && hi & !hi_bits(st.block_pos[j], self.k) != 0)
                {
                    return false;
                }
            }
            Target::Waist(_) => {}
        }
        (0..d).all(|e| match fixed_relation(t, st.targets[e]) {
            Some(r) => self.allows(x, st.vars[e], r),
            None => true,
        })
    }

    fn finish(&mut self, key: &WaistCallKey, st: &SplitState, acc: &mut A::V) {
        let Some(children) = self.children(st) else {
            return;
        };
        let mut values = Vec::with_capacity(children.len());
        for child in &children {
            let v = self.eval(child);
            if self.alg.is_zero(&v) {
                return;
            }
            values.push(v);
        }
        let cross = if A::NEEDS_CROSS {
            cross_relations(&st.vars, &st.targets)
        } else {
            Vec::new()
        };
        let v = self.alg.split(&cross, values);
        if self.alg.is_zero(acc) {
            self.choices
                .insert(key.clone(), Choice::Split(st.targets.clone()));
        }
        self.alg.add(acc, v);
    }

    /// Final context checks and the child keys of a complete assignment.
    fn children(&self, st: &SplitState) -> Option<Vec<WaistCallKey>> {
        let k = self.k;
        let used = st.block_pos.len();
        let used_mask = (1u64 << used) - 1;
        let has_lower = st.targets.iter().any(|t| matches!(t, Target::Lower(_)));
        let has_upper = st.targets.iter().any(|t| matches!(t, Target::Upper(_)));
        if used + usize::from(has_lower) + usize::from(has_upper) < 2 {
            return None;
        }
        let hi_of = |s: u64| {
            (0..used)
                .filter(|&j| s >> j & 1 == 1)
                .fold(0, |m, j| m | hi_bits(st.block_pos[j], k))
        };
        let lo_of = |s: u64| {
            (0..used)
                .filter(|&j| s >> j & 1 == 1)
                .fold(0, |m, j| m | lo_bits(st.block_pos[j], k))
        };
        let lo_meet = |s: u64| {
            (0..used)
                .filter(|&j| s >> j & 1 == 1)
                .fold(u64::MAX, |m, j| m & lo_bits(st.block_pos[j], k))
        };
        let hi_meet = |s: u64| {
            (0..used)
                .filter(|&j| s >> j & 1 == 1)
                .fold(u64::MAX, |m, j| m & hi_bits(st.block_pos[j], k))
        };
        let mut waist = vec![0u64; used];
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        for (d, &t) in st.targets.iter().enumerate() {
            let (x, px) = (st.vars[d], st.pos[d]);
            match t {
                Target::Waist(j) => waist[j] |= 1 << x,
                Target::Lower(a) => {
                    let lo = lo_bits(px, k);
                    if a & !used_mask != 0 || lo & !lo_meet(a) != 0 || hi_bits(px, k) != hi_of(a) {
                        return None;
                    }
                    lower.push((interleave(lo_bits(px, k), a, k), 1u64 << x));
                }
                Target::Upper(b) => {
                    let hi = hi_bits(px, k);
                    if b & !used_mask != 0 || hi & !hi_meet(b) != 0 || lo_bits(px, k) != lo_of(b) {
                        return None;
                    }
                    upper.push((interleave(b, hi_bits(px, k), k), 1u64 << x));
                }
            }
        }
        let mut out: Vec<WaistCallKey> = waist
            .into_iter()
            .map(|m| WaistCallKey::new([(0, m)]))
            .collect();
        for part in [lower, upper] {
            if !part.is_empty() {
                out.push(WaistCallKey::new(part));
            }
        }
        Some(out)
    }

    fn witness_into(&self, key: &WaistCallKey, s: &mut AtomicScenario) {
        let vars: Vec<usize> = (0..self.n)
            .filter(|&v| key.variables() >> v & 1 == 1)
            .collect();
        match self.choices.get(key).expect("accepted key has a choice") {
            Choice::Empty => {}
            Choice::AllEqual => {
                for (a, &x) in vars.iter().enumerate() {
                    for &y in &vars[a + 1..] {
                        s.set(x, y, Rel4::Eq);
                    }
                }
            }
            Choice::Split(targets) => {
                for (x, y, r) in cross_relations(&vars, targets) {
                    s.set(x, y, r);
                }
                let st = SplitState {
                    pos: vars.iter().map(|&v| key.position_of(v)).collect(),
                    block_pos: block_positions(&vars, targets, key),
                    vars,
                    targets: targets.clone(),
                };
                for child in self.children(&st).expect("recorded split is valid") {
                    self.witness_into(&child, s);
                }
            }
        }
    }
}

fn block_positions(vars: &[usize], targets: &[Target], key: &WaistCallKey) -> Vec<u64> {
    let mut out = Vec::new();
    for (&v, &t) in vars.iter().zip(targets) {
        if let Target::Waist(j) = t {
            if j == out.len() {
                out.push(key.position_of(v));
            }
        }
    }
    out
}

fn cross_relations(vars: &[usize], targets: &[Target]) -> Vec<(usize, usize, Rel4)> {
    let mut out = Vec::new();
    for a in 0..vars.len() {
        for b in a + 1..vars.len() {
            if let Some(r) = fixed_relation(targets[a], targets[b]) {
                out.push((vars[a], vars[b], r));
            }
        }
    }
    out
}

/// Owns the memo tables of one instance and width bound.
pub struct PotSolver<'a> {
    decide: Engine<'a, Decide>,
    scenarios: Engine<'a, Scenarios>,
}

impl<'a> PotSolver<'a> {
    pub fn new(inst: &'a PotInstance, k: usize) -> Self {
        Self {
            decide: Engine::new(inst, k, Decide),
            scenarios: Engine::new(inst, k, Scenarios::new(inst.len())),
        }
    }

    /// The waist bound actually used: `k` capped at the variable count.
    pub fn effective_k(&self) -> usize {
        self.decide.k
    }

    pub fn decide(&mut self) -> bool {
        if self.decide.inst.has_empty_constraint() {
            return false;
        }
        let root = WaistCallKey::root(self.decide.n);
        self.decide.eval(&root)
    }

    /// Number of distinct scenarios.
    pub fn count(&mut self) -> u64 {
        if self.scenarios.inst.has_empty_constraint() {
            return 0;
        }
        let root = WaistCallKey::root(self.scenarios.n);
        self.scenarios.eval(&root).len() as u64
    }

    pub fn witness(&mut self) -> Option<AtomicScenario> {
        if !self.decide() {
            return None;
        }
        let mut s = AtomicScenario::uniform(self.decide.n, Rel4::Inc);
        self.decide
            .witness_into(&WaistCallKey::root(self.decide.n), &mut s);
        Some(s)
    }

    /// One memoized sub-call in decision mode.
    pub fn waist_step(&mut self, key: &WaistCallKey) -> bool {
        self.decide.eval(key)
    }

    /// One memoized sub-call in counting mode.
    pub fn waist_step_count(&mut self, key: &WaistCallKey) -> u64 {
        self.scenarios.eval(key).len() as u64
    }

    pub fn memo_len(&self) -> usize {
        self.decide.memo.len() + self.scenarios.memo.len()
    }

    pub fn clear_memo(&mut self) {
        for e in [&mut self.decide.choices, &mut self.scenarios.choices] {
            e.clear();
        }
        self.decide.memo.clear();
        self.scenarios.memo.clear();
    }
}

pub fn pot_decide(inst: &PotInstance, k: usize) -> bool {
    PotSolver::new(inst, k).decide()
}

pub fn pot_count(inst: &PotInstance, k: usize) -> u64 {
    PotSolver::new(inst, k).count()
}

pub fn pot_witness(inst: &PotInstance, k: usize) -> Option<AtomicScenario> {
    PotSolver::new(inst, k).witness()
}

/// Sum over splits of the product of sub-call counts, without deduplication.
pub fn pot_count_decompositions(inst: &PotInstance, k: usize) -> BigUint {
    if inst.has_empty_constraint() {
        return BigUint::zero();
    }
    Engine::new(inst, k, Decompositions).eval(&WaistCallKey::root(inst.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(rels: &[Rel4]) -> PotInstance {
        let mut inst = PotInstance::new(2);
        inst.constrain(0, 1, rels.iter().copied().collect())
            .unwrap();
        inst
    }

    #[test]
    fn bits_are_lsb_first() {
        assert_eq!(bit(1, 1), 1);
        assert_eq!(bit(4, 3), 1);
        assert_eq!(bit(4, 1), 0);
    }

    #[test]
    fn position_codes_round_trip() {
        let k = 3;
        for lo in 0..8 {
            for hi in 0..8 {
                let c = interleave(lo, hi, k);
                assert_eq!((lo_bits(c, k), hi_bits(c, k)), (lo, hi));
                for i in 0..k as u32 {
                    assert_eq!(bit(c, 2 * i + 1) as u64, lo >> i & 1);
                    assert_eq!(bit(c, 2 * i + 2) as u64, hi >> i & 1);
                }
            }
        }
    }

    #[test]
    fn two_variable_examples() {
        assert!(pot_decide(&pair(&[Rel4::Lt]), 1));
        assert!(!pot_decide(&pair(&[Rel4::Inc]), 1));
        assert!(pot_decide(&pair(&[Rel4::Inc]), 2));
        assert_eq!(pot_count(&pair(&[Rel4::Lt, Rel4::Gt]), 1), 2);
        assert_eq!(pot_count(&pair(&[Rel4::Eq]), 1), 1);
        assert_eq!(pot_count(&PotInstance::new(0), 1), 1);
        assert!(pot_decide(&PotInstance::new(1), 3));
    }

    #[test]
    fn step_examples() {
        let eq = pair(&[Rel4::Eq]);
        let mut solver = PotSolver::new(&eq, 1);
        assert!(solver.waist_step(&WaistCallKey::new([])));
        assert!(solver.waist_step(&WaistCallKey::root(2)));

        let lt = pair(&[Rel4::Lt]);
        let mut solver = PotSolver::new(&lt, 1);
        assert!(solver.waist_step(&WaistCallKey::root(2)));
        let w = solver.witness().unwrap();
        assert_eq!(w.get(0, 1), Rel4::Lt);
    }

    #[test]
    fn naive_sum_overcounts_chains() {
        let mut chain = PotInstance::new(3);
        chain.constrain(0, 1, RelSet4::single(Rel4::Lt)).unwrap();
        chain.constrain(1, 2, RelSet4::single(Rel4::Lt)).unwrap();
        assert_eq!(pot_count(&chain, 1), 1);
        assert!(pot_count_decompositions(&chain, 1) > BigUint::one());
    }

    #[test]
    fn unconstrained_counts_small() {
        // Weak orders (Fubini numbers) for k = 1, preorders for k = 2.
        let fubini = [1u64, 1, 3, 13, 75];
        let preorders = [1u64, 1, 4, 29, 355];
        for n in 0..5 {
            let inst = PotInstance::new(n);
            assert_eq!(pot_count(&inst, 1), fubini[n], "k=1 n={n}");
            assert_eq!(pot_count(&inst, 2), preorders[n], "k=2 n={n}");
        }
    }

    #[test]
    fn dense_subsets_view() {
        let key = WaistCallKey::new([(0b10, 0b1), (0, 0b110)]);
        let dense = key.subsets(1);
        assert_eq!(dense, vec![0b110, 0, 0b1, 0]);
    }
}
