//! Finite-domain CSPs given by explicit tuple lists.

use std::collections::BTreeSet;

use crate::error::{InstanceError, SizeLimitExceeded};
use crate::oracle::OracleReport;
use crate::rng::SplitMix64;

/// A relation over `scope`, stored as a sorted, duplicate-free tuple list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    scope: Vec<usize>,
    tuples: Vec<Vec<i64>>,
}

impl Constraint {
    pub fn new(scope: Vec<usize>, mut tuples: Vec<Vec<i64>>) -> Result<Self, InstanceError> {
        if let Some(t) = tuples.iter().find(|t| t.len() != scope.len()) {
            return Err(InstanceError::ArityMismatch {
                expected: scope.len(),
                found: t.len(),
            });
        }
        tuples.sort();
        tuples.dedup();
        Ok(Self { scope, tuples })
    }

    pub fn scope(&self) -> &[usize] {
        &self.scope
    }

    pub fn tuples(&self) -> &[Vec<i64>] {
        &self.tuples
    }

    pub fn arity(&self) -> usize {
        self.scope.len()
    }

    fn admits(&self, assignment: &[Option<i64>]) -> bool {
        self.tuples
            .iter()
            .any(|t| consistent(&self.scope, t, assignment))
    }
}

fn consistent(scope: &[usize], tuple: &[i64], assignment: &[Option<i64>]) -> bool {
    scope
        .iter()
        .zip(tuple)
        .all(|(&v, &x)| assignment[v].is_none_or(|a| a == x))
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CspInstance {
    n: usize,
    constraints: Vec<Constraint>,
    declared_domain: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CspParams {
    pub dom: usize,
    pub max_arity: usize,
    pub max_degree: usize,
    pub max_cardinality: usize,
}

impl CspInstance {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            ..Default::default()
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn add(&mut self, c: Constraint) -> Result<(), InstanceError> {
        if let Some(&v) = c.scope.iter().find(|&&v| v >= self.n) {
            return Err(InstanceError::VariableOutOfRange { var: v, n: self.n });
        }
        if let Some(size) = self.declared_domain {
            check_domain(&c, size)?;
        }
        self.constraints.push(c);
        Ok(())
    }

    /// Declares the domain `0..size`; every value in a constraint must lie inside it.
    pub fn declare_domain(&mut self, size: usize) -> Result<(), InstanceError> {
        for c in &self.constraints {
            check_domain(c, size)?;
        }
        self.declared_domain = Some(size);
        Ok(())
    }

    pub fn declared_domain(&self) -> Option<usize> {
        self.declared_domain
    }

    /// Sorted values occurring in any constraint tuple.
    pub fn domain(&self) -> Vec<i64> {
        let set: BTreeSet<i64> = self
            .constraints
            .iter()
            .flat_map(|c| c.tuples.iter().flatten().copied())
            .collect();
        set.into_iter().collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.constraints
            .iter()
            .filter(|c| c.scope.contains(&v))
            .count()
    }

    pub fn params(&self) -> CspParams {
        CspParams {
            dom: self.domain().len(),
            max_arity: self
                .constraints
                .iter()
                .map(Constraint::arity)
                .max()
                .unwrap_or(0),
            max_degree: (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0),
            max_cardinality: self
                .constraints
                .iter()
                .map(|c| c.tuples.len())
                .max()
                .unwrap_or(0),
        }
    }

    pub fn is_model(&self, assignment: &[i64]) -> bool {
        let full: Vec<Option<i64>> = assignment.iter().copied().map(Some).collect();
        self.constraints.iter().all(|c| c.admits(&full))
    }
}

fn check_domain(c: &Constraint, size: usize) -> Result<(), InstanceError> {
    match c
        .tuples
        .iter()
        .flatten()
        .find(|&&x| x < 0 || x as u64 >= size as u64)
    {
        Some(&value) => Err(InstanceError::OutsideDomain { value, size }),
        None => Ok(()),
    }
}

pub fn params(inst: &CspInstance) -> CspParams {
    inst.params()
}

pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 20;

/// Decision and model count over all `dom^n` assignments, `dom` being the
/// values occurring in constraints. With no values at all the single empty
/// assignment is checked.
pub fn csp_enumerate(inst: &CspInstance) -> Result<OracleReport<Vec<i64>>, SizeLimitExceeded> {
    csp_enumerate_capped(inst, DEFAULT_ENUMERATION_CAP, 100)
}

pub fn csp_enumerate_capped(
    inst: &CspInstance,
    cap: u64,
    max_witnesses: usize,
) -> Result<OracleReport<Vec<i64>>, SizeLimitExceeded> {
    let dom = inst.domain();
    let mut report = OracleReport {
        decision: false,
        count: 0,
        witnesses: Vec::new(),
    };
    if dom.is_empty() {
        let empty: Vec<Option<i64>> = vec![None; inst.n];
        if inst.constraints.iter().all(|c| c.admits(&empty)) {
            report.decision = true;
            report.count = 1;
        }
        return Ok(report);
    }
    let too_big = SizeLimitExceeded {
        what: "assignment space",
        size: usize::MAX,
        cap: cap as usize,
    };
    let total = (dom.len() as u64)
        .checked_pow(inst.n as u32)
        .filter(|&t| t <= cap)
        .ok_or(too_big)?;
    let mut assignment = vec![dom[0]; inst.n];
    for mut code in 0..total {
        for slot in assignment.iter_mut() {
            *slot = dom[(code % dom.len() as u64) as usize];
            code /= dom.len() as u64;
        }
        if inst.is_model(&assignment) {
            report.decision = true;
            report.count += 1;
            if report.witnesses.len() < max_witnesses {
                report.witnesses.push(assignment.clone());
            }
        }
    }
    Ok(report)
}

/// Counters from one branching run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BranchStats {
    pub nodes: u64,
    pub max_branching: usize,
}

/// Branches on the tuples of the constraint with the fewest surviving tuples
/// (ties by index), assigning its whole scope at once.
pub fn csp_branch_solve(inst: &CspInstance) -> bool {
    csp_branch_solve_with_stats(inst).0
}

pub fn csp_branch_solve_with_stats(inst: &CspInstance) -> (bool, BranchStats) {
    let mut search = Branching::new(inst, false);
    let found = search.run();
    (found.is_some(), search.stats)
}

pub fn csp_branch_witness(inst: &CspInstance) -> Option<Vec<i64>> {
    let mut search = Branching::new(inst, false);
    search.run().map(|a| {
        let fill = inst.domain().first().copied().unwrap_or(0);
        a.into_iter().map(|v| v.unwrap_or(fill)).collect()
    })
}

/// Model count over `dom^n` by the same branching; unconstrained variables
/// contribute a factor of `dom` each.
pub fn csp_branch_count(inst: &CspInstance) -> u128 {
    let mut search = Branching::new(inst, true);
    search.run();
    let free = (0..inst.n).filter(|&v| inst.degree(v) == 0).count() as u32;
    let dom = inst.domain().len() as u128;
    if dom == 0 {
        return search.models;
    }
    search.models * dom.pow(free)
}

struct Branching<'a> {
    inst: &'a CspInstance,
    assignment: Vec<Option<i64>>,
    counting: bool,
    models: u128,
    stats: BranchStats,
}

impl<'a> Branching<'a> {
    fn new(inst: &'a CspInstance, counting: bool) -> Self {
        Self {
            inst,
            assignment: vec![None; inst.n],
            counting,
            models: 0,
            stats: BranchStats::default(),
        }
    }

    fn run(&mut self) -> Option<Vec<Option<i64>>> {
        self.node()
    }

    fn node(&mut self) -> Option<Vec<Option<i64>>> {
        self.stats.nodes += 1;
        let mut pick: Option<(usize, Vec<&Vec<i64>>)> = None;
        for (ci, c) in self.inst.constraints.iter().enumerate() {
            let live: Vec<&Vec<i64>> = c
                .tuples
                .iter()
                .filter(|t| consistent(&c.scope, t, &self.assignment))
                .collect();
            if live.is_empty() {
                return None;
            }
            let open = c.scope.iter().any(|&v| self.assignment[v].is_none());
            if open
                && pick
                    .as_ref()
                    .is_none_or(|(_, best)| live.len() < best.len())
            {
                pick = Some((ci, live));
            }
        }
        let Some((ci, live)) = pick else {
            self.models += 1;
            return Some(self.assignment.clone());
        };
        self.stats.max_branching = self.stats.max_branching.max(live.len());
        let scope = &self.inst.constraints[ci].scope;
        let saved = self.assignment.clone();
        let mut found = None;
        for t in live {
            for (&v, &x) in scope.iter().zip(t) {
                self.assignment[v] = Some(x);
            }
            if let Some(a) = self.node() {
                found.get_or_insert(a);
                if !self.counting {
                    self.assignment = saved;
                    return found;
                }
            }
            self.assignment.clone_from(&saved);
        }
        found
    }
}

/// A seeded binary CSP over `0..d` in which every variable has degree at
/// most `3d²`.
///
/// Draws `n` constraints. Each picks a random pair of distinct variables
/// (redrawn while either endpoint is saturated) and keeps each of the `d²`
/// tuples with probability 1/2, forcing at least one.
pub fn gen_sparse_bincsp(d: usize, n: usize, seed: u64) -> CspInstance {
    assert!(d >= 2 && n >= 1, "needs d >= 2 and n >= 1");
    let mut rng = SplitMix64::new(seed);
    let mut inst = CspInstance::new(n);
    inst.declare_domain(d).expect("no constraints yet");
    if n < 2 {
        return inst;
    }
    let cap = 3 * d * d;
    let mut degree = vec![0usize; n];
    for _ in 0..n {
        let (a, b) = loop {
            let a = rng.index(n);
            let b = rng.index(n);
            if a != b && degree[a] < cap && degree[b] < cap {
                break (a, b);
            }
        };
        degree[a] += 1;
        degree[b] += 1;
        let mut tuples = Vec::new();
        for x in 0..d as i64 {
            for y in 0..d as i64 {
                if rng.chance(1, 2) {
                    tuples.push(vec![x, y]);
                }
            }
        }
        if tuples.is_empty() {
            tuples.push(vec![rng.index(d) as i64, rng.index(d) as i64]);
        }
        let c = Constraint::new(vec![a, b], tuples).expect("binary tuples");
        inst.add(c).expect("values lie in 0..d");
    }
    inst
}

#[cfg(test)]
mod tests {
    use super::*;

    fn neq(a: usize, b: usize) -> Constraint {
        Constraint::new(vec![a, b], vec![vec![0, 1], vec![1, 0]]).unwrap()
    }

    #[test]
    fn params_examples() {
        let mut one = CspInstance::new(2);
        one.add(neq(0, 1)).unwrap();
        let p = one.params();
        assert_eq!(
            (p.dom, p.max_arity, p.max_degree, p.max_cardinality),
            (2, 2, 1, 2)
        );
        let e = CspInstance::new(3).params();
        assert_eq!(
            (e.dom, e.max_arity, e.max_degree, e.max_cardinality),
            (0, 0, 0, 0)
        );
        one.add(neq(0, 1)).unwrap();
        assert_eq!(one.degree(0), 2);
    }

    #[test]
    fn triangle_and_path() {
        let mut tri = CspInstance::new(3);
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            tri.add(neq(a, b)).unwrap();
        }
        let r = csp_enumerate(&tri).unwrap();
        assert_eq!((r.decision, r.count), (false, 0));
        assert!(!csp_branch_solve(&tri));

        let mut path = CspInstance::new(3);
        path.add(neq(0, 1)).unwrap();
        path.add(neq(1, 2)).unwrap();
        assert!(csp_branch_solve(&path));
        assert_eq!(csp_branch_count(&path), 2);
        assert!(path.is_model(&csp_branch_witness(&path).unwrap()));
    }

    #[test]
    fn enumeration_conventions() {
        let mut unary = CspInstance::new(1);
        unary
            .add(Constraint::new(vec![0], vec![vec![0]]).unwrap())
            .unwrap();
        let r = csp_enumerate(&unary).unwrap();
        assert_eq!((r.decision, r.count), (true, 1));
        let r = csp_enumerate(&CspInstance::new(2)).unwrap();
        assert_eq!((r.decision, r.count), (true, 1));
        let mut dead = CspInstance::new(2);
        dead.add(Constraint::new(vec![0, 1], vec![]).unwrap())
            .unwrap();
        assert!(!csp_enumerate(&dead).unwrap().decision);
        assert!(!csp_branch_solve(&dead));
    }

    #[test]
    fn declared_domain_must_cover_values() {
        let mut inst = CspInstance::new(2);
        inst.add(neq(0, 1)).unwrap();
        assert!(inst.declare_domain(1).is_err());
        assert!(inst.declare_domain(2).is_ok());
        let bad = Constraint::new(vec![0], vec![vec![5]]).unwrap();
        assert_eq!(
            inst.add(bad),
            Err(InstanceError::OutsideDomain { value: 5, size: 2 })
        );
    }

    #[test]
    fn generator_shape() {
        assert_eq!(gen_sparse_bincsp(2, 5, 7), gen_sparse_bincsp(2, 5, 7));
        for seed in 0..20 {
            for d in 2..4 {
                let p = gen_sparse_bincsp(d, 6, seed).params();
                assert_eq!(p.max_arity, 2);
                assert!(p.max_degree <= 3 * d * d);
                assert!(p.dom <= d);
            }
        }
    }
}
