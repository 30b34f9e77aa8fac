//! Seeded benchmark instances with a planted solution.
//!
//! Constraints are drawn around a hidden ground truth: each pair is
//! constrained with probability 1/2, and a constrained pair allows the planted
//! relation plus random extras. With `unsat_mix`, half of the seeds also get
//! a cyclic precedence triple (or an empty constraint when `n = 2`), which no
//! solution can satisfy.

use crate::interval::{BasicRel, Endpoint, IaInstance, OrderedPartition, RelSet13};
use crate::order::{make_partial_order, AtomicScenario, PotInstance, Rel4, RelSet4};
use crate::rng::SplitMix64;

/// A POT instance satisfied by a planted scenario of effective width at most `k`.
///
/// The planted order is a random linear order for `k = 1` and a random
/// series-parallel order otherwise; variables map onto its elements by a
/// random surjection.
pub fn gen_pot(n: usize, k: usize, seed: u64, unsat_mix: bool) -> PotInstance {
    let mut rng = SplitMix64::new(seed);
    let truth = planted_scenario(&mut rng, n, k);
    let mut inst = PotInstance::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if !rng.chance(1, 2) {
                continue;
            }
            let mut set = RelSet4::single(truth.get(i, j));
            for r in Rel4::ALL {
                if rng.chance(1, 3) {
                    set = set.union(RelSet4::single(r));
                }
            }
            inst.constrain(i, j, set).expect("distinct in-range pair");
        }
    }
    if unsat_mix && rng.chance(1, 2) {
        let lt = RelSet4::single(Rel4::Lt);
        match conflict(&mut rng, n) {
            Some(Some([a, b, c])) => {
                for (x, y) in [(a, b), (b, c), (c, a)] {
                    inst.constrain(x, y, lt).expect("distinct in-range pair");
                }
            }
            Some(None) => inst.constrain(0, 1, RelSet4::EMPTY).expect("pair exists"),
            None => {}
        }
    }
    inst
}

/// `Some(Some(triple))` for a cycle, `Some(None)` for an emptied pair.
fn conflict(rng: &mut SplitMix64, n: usize) -> Option<Option<[usize; 3]>> {
    match n {
        0 | 1 => None,
        2 => Some(None),
        _ => {
            let mut vars: Vec<usize> = (0..n).collect();
            rng.shuffle(&mut vars);
            Some(Some([vars[0], vars[1], vars[2]]))
        }
    }
}

fn planted_scenario(rng: &mut SplitMix64, n: usize, k: usize) -> AtomicScenario {
    if n == 0 {
        return AtomicScenario::uniform(0, Rel4::Eq);
    }
    let atoms = 1 + rng.index(n);
    let mut order: Vec<usize> = (0..atoms).collect();
    rng.shuffle(&mut order);
    let mut pairs = Vec::new();
    if k == 1 {
        pairs.extend(order.windows(2).map(|w| (w[0], w[1])));
    } else {
        series_parallel(rng, &order, &mut pairs);
    }
    let p = make_partial_order(atoms, &pairs).expect("series-parallel orders are acyclic");
    let mut vars: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut vars);
    let mut f = vec![0; n];
    for (slot, &v) in vars.iter().enumerate() {
        f[v] = if slot < atoms { slot } else { rng.index(atoms) };
    }
    AtomicScenario::from_order(&p, &f)
}

fn series_parallel(rng: &mut SplitMix64, atoms: &[usize], pairs: &mut Vec<(usize, usize)>) {
    if atoms.len() < 2 {
        return;
    }
    let cut = 1 + rng.index(atoms.len() - 1);
    let (left, right) = atoms.split_at(cut);
    series_parallel(rng, left, pairs);
    series_parallel(rng, right, pairs);
    if rng.chance(1, 2) {
        for &a in left {
            for &b in right {
                pairs.push((a, b));
            }
        }
    }
}

/// An IA instance satisfied by a planted ordered partition in which every
/// interval overlaps fewer than `k` others.
pub fn gen_ia(n: usize, k: usize, seed: u64, unsat_mix: bool) -> IaInstance {
    assert!(k >= 1, "k must be at least 1");
    let mut rng = SplitMix64::new(seed);
    let truth = planted_partition(&mut rng, n, k - 1);
    let mut inst = IaInstance::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if !rng.chance(1, 2) {
                continue;
            }
            let mut set = RelSet13::single(truth.basic_relation(i, j));
            for r in BasicRel::ALL {
                if rng.chance(1, 4) {
                    set = set.union(RelSet13::single(r));
                }
            }
            inst.constrain(i, j, set).expect("distinct in-range pair");
        }
    }
    if unsat_mix && rng.chance(1, 2) {
        let p = RelSet13::single(BasicRel::P);
        match conflict(&mut rng, n) {
            Some(Some([a, b, c])) => {
                for (x, y) in [(a, b), (b, c), (c, a)] {
                    inst.constrain(x, y, p).expect("distinct in-range pair");
                }
            }
            Some(None) => inst.constrain(0, 1, RelSet13::EMPTY).expect("pair exists"),
            None => {}
        }
    }
    inst
}

/// Random sweep: each cell closes a random subset of open intervals and opens
/// as many new ones as the overlap limit allows.
fn planted_partition(rng: &mut SplitMix64, n: usize, limit: usize) -> OrderedPartition {
    let mut unopened: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut unopened);
    // (members, overlaps so far)
    let mut groups: Vec<(Vec<usize>, usize)> = Vec::new();
    let mut cells = Vec::new();
    while !unopened.is_empty() || !groups.is_empty() {
        let mut closing = Vec::new();
        for (members, _) in groups.iter_mut() {
            members.retain(|&v| {
                let close = rng.chance(1, 2);
                if close {
                    closing.push(v);
                }
                !close
            });
        }
        groups.retain(|(m, _)| !m.is_empty());
        let surviving: usize = groups.iter().map(|(m, _)| m.len()).sum();
        let room = groups
            .iter()
            .map(|&(_, c)| limit - c)
            .min()
            .unwrap_or(usize::MAX)
            .min((limit + 1).saturating_sub(surviving))
            .min(unopened.len());
        let mut opening = rng.index(room + 1);
        if closing.is_empty() && opening == 0 {
            if room > 0 {
                opening = 1;
            } else {
                let g = rng.index(groups.len());
                let v = groups[g].0.pop().expect("groups are nonempty");
                closing.push(v);
                groups.retain(|(m, _)| !m.is_empty());
            }
        }
        let y: Vec<usize> = unopened.drain(..opening).collect();
        for (_, c) in groups.iter_mut() {
            *c += y.len();
        }
        if !y.is_empty() {
            let surviving: usize = groups.iter().map(|(m, _)| m.len()).sum();
            groups.push((y.clone(), surviving + y.len() - 1));
        }
        let cell: Vec<Endpoint> = closing
            .into_iter()
            .map(Endpoint::end)
            .chain(y.into_iter().map(Endpoint::start))
            .collect();
        cells.push(cell);
    }
    OrderedPartition::from_cells(n, &cells).expect("sweep yields a valid partition")
}

/// The scenario planted by [`gen_pot`] for the same arguments.
pub fn planted_pot_scenario(n: usize, k: usize, seed: u64) -> AtomicScenario {
    planted_scenario(&mut SplitMix64::new(seed), n, k)
}

/// The ordered partition planted by [`gen_ia`] for the same arguments.
pub fn planted_ia_partition(n: usize, k: usize, seed: u64) -> OrderedPartition {
    planted_partition(&mut SplitMix64::new(seed), n, k - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::satisfies_pot;

    #[test]
    fn planted_solutions_satisfy() {
        for seed in 0..50 {
            for k in 1..=3 {
                let n = 1 + (seed as usize % 7);
                let s = planted_pot_scenario(n, k, seed);
                assert!(s.is_realizable());
                assert!(satisfies_pot(&s, &gen_pot(n, k, seed, false)));
                let r = planted_ia_partition(n, k, seed);
                assert!(r.satisfies(&gen_ia(n, k, seed, false)));
                assert!((0..n).all(|i| r.overlap_count(i) < k));
            }
        }
    }

    #[test]
    fn deterministic() {
        assert_eq!(gen_pot(6, 2, 9, true), gen_pot(6, 2, 9, true));
        assert_eq!(gen_ia(6, 2, 9, true), gen_ia(6, 2, 9, true));
    }

    #[test]
    fn weak_orders_for_k_one() {
        for seed in 0..30 {
            let s = planted_pot_scenario(5, 1, seed);
            assert!(s.pair_relations().iter().all(|&r| r != Rel4::Inc));
        }
    }
}
