//! Brute-force reference implementations.
//!
//! Everything here enumerates the full search space without pruning and uses
//! only the data model in [`crate::order`] and [`crate::interval`].

use num_bigint::BigUint;
use num_traits::One;

use crate::error::SizeLimitExceeded;
use crate::interval::{IaInstance, OrderedPartition};
use crate::order::{
    effective_width_at_most, pair_count, satisfies_pot, AtomicScenario, PotInstance, Rel4,
};

/// Decision, exact count and up to `max_witnesses` solutions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport<W> {
    pub decision: bool,
    pub count: u64,
    pub witnesses: Vec<W>,
}

impl<W> OracleReport<W> {
    fn empty() -> Self {
        Self {
            decision: false,
            count: 0,
            witnesses: Vec::new(),
        }
    }

    fn record(&mut self, w: W, limit: usize) {
        self.decision = true;
        self.count += 1;
        if self.witnesses.len() < limit {
            self.witnesses.push(w);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_scenario_vars: usize,
    pub max_partition_points: usize,
    pub max_witnesses: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            max_scenario_vars: 5,
            max_partition_points: 8,
            max_witnesses: 100,
        }
    }
}

/// All `4^(n(n-1)/2)` relation assignments, first pair most significant,
/// relations ordered `lt < gt < eq < inc`.
pub fn enumerate_scenarios(
    n: usize,
) -> Result<impl Iterator<Item = AtomicScenario>, SizeLimitExceeded> {
    enumerate_scenarios_capped(n, OracleLimits::default().max_scenario_vars)
}

pub fn enumerate_scenarios_capped(
    n: usize,
    cap: usize,
) -> Result<impl Iterator<Item = AtomicScenario>, SizeLimitExceeded> {
    if n > cap {
        return Err(SizeLimitExceeded {
            what: "scenario variable count",
            size: n,
            cap,
        });
    }
    let pairs = pair_count(n);
    let total = 1u64 << (2 * pairs);
    Ok((0..total).map(move |code| {
        let rels = (0..pairs)
            .map(|p| Rel4::from_index((code >> (2 * (pairs - 1 - p)) & 3) as usize))
            .collect();
        AtomicScenario::from_pair_relations(n, rels)
    }))
}

pub fn pot_oracle(
    inst: &PotInstance,
    k: usize,
) -> Result<OracleReport<AtomicScenario>, SizeLimitExceeded> {
    pot_oracle_with(inst, k, OracleLimits::default())
}

pub fn pot_oracle_with(
    inst: &PotInstance,
    k: usize,
    limits: OracleLimits,
) -> Result<OracleReport<AtomicScenario>, SizeLimitExceeded> {
    let mut report = OracleReport::empty();
    for s in enumerate_scenarios_capped(inst.len(), limits.max_scenario_vars)? {
        if !s.is_realizable() || !satisfies_pot(&s, inst) {
            continue;
        }
        let (q, _) = s.quotient().expect("realizable scenario has a quotient");
        let fits = effective_width_at_most(&q, k).expect("quotient is within the width cap");
        if fits {
            report.record(s, limits.max_witnesses);
        }
    }
    Ok(report)
}

/// All ordered set partitions of `m` points, as 1-based rank vectors.
///
/// Walks every map `0..m -> 1..=m` and keeps those whose image is an initial
/// segment `1..=l`.
pub fn enumerate_ordered_partitions(
    m: usize,
) -> Result<impl Iterator<Item = Vec<usize>>, SizeLimitExceeded> {
    enumerate_ordered_partitions_capped(m, OracleLimits::default().max_partition_points)
}

pub fn enumerate_ordered_partitions_capped(
    m: usize,
    cap: usize,
) -> Result<impl Iterator<Item = Vec<usize>>, SizeLimitExceeded> {
    if m > cap {
        return Err(SizeLimitExceeded {
            what: "ordered partition point count",
            size: m,
            cap,
        });
    }
    let total = (m as u64).pow(m as u32);
    Ok((0..total).filter_map(move |mut code| {
        let mut ranks = vec![0; m];
        for r in ranks.iter_mut() {
            *r = (code % m as u64) as usize + 1;
            code /= m as u64;
        }
        let max = ranks.iter().copied().max().unwrap_or(0);
        (1..=max).all(|c| ranks.contains(&c)).then_some(ranks)
    }))
}

/// Ordered Bell number: `obn(m) = sum_{i=1..m} C(m, i) * obn(m - i)`.
pub fn obn(m: usize) -> BigUint {
    let mut table: Vec<BigUint> = vec![BigUint::one()];
    for size in 1..=m {
        let mut total = BigUint::default();
        let mut binom = BigUint::one();
        for i in 1..=size {
            binom = binom * (size + 1 - i) / i;
            total += &binom * &table[size - i];
        }
        table.push(total);
    }
    table.swap_remove(m)
}

pub fn ia_oracle(
    inst: &IaInstance,
    k: usize,
) -> Result<OracleReport<OrderedPartition>, SizeLimitExceeded> {
    ia_oracle_with(inst, k, OracleLimits::default())
}

pub fn ia_oracle_with(
    inst: &IaInstance,
    k: usize,
    limits: OracleLimits,
) -> Result<OracleReport<OrderedPartition>, SizeLimitExceeded> {
    let n = inst.len();
    let mut report = OracleReport::empty();
    for ranks in enumerate_ordered_partitions_capped(2 * n, limits.max_partition_points)? {
        let Some(r) = OrderedPartition::from_ranks(n, ranks) else {
            continue;
        };
        let sat = inst
            .constraints()
            .all(|((i, j), rels)| rels.contains(r.basic_relation(i, j)));
        if sat && (0..n).all(|i| r.overlap_count(i) < k) {
            report.record(r, limits.max_witnesses);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::{BasicRel, RelSet13};
    use crate::order::RelSet4;

    #[test]
    fn scenario_counts() {
        assert_eq!(enumerate_scenarios(0).unwrap().count(), 1);
        assert_eq!(enumerate_scenarios(2).unwrap().count(), 4);
        assert_eq!(enumerate_scenarios(3).unwrap().count(), 64);
        assert!(enumerate_scenarios(6).is_err());
    }

    #[test]
    fn scenarios_are_lexicographic() {
        let all: Vec<_> = enumerate_scenarios(3).unwrap().collect();
        assert!(all
            .windows(2)
            .all(|w| w[0].pair_relations() < w[1].pair_relations()));
    }

    #[test]
    fn ordered_bell_numbers() {
        let expect = [1u32, 1, 3, 13, 75, 541, 4683];
        for (m, &e) in expect.iter().enumerate() {
            assert_eq!(obn(m), BigUint::from(e));
            assert_eq!(enumerate_ordered_partitions(m).unwrap().count(), e as usize);
        }
        assert!(enumerate_ordered_partitions(9).is_err());
    }

    #[test]
    fn pot_examples() {
        let mut lt = PotInstance::new(2);
        lt.constrain(0, 1, RelSet4::single(Rel4::Lt)).unwrap();
        let r = pot_oracle(&lt, 1).unwrap();
        assert_eq!((r.decision, r.count), (true, 1));

        let mut inc = PotInstance::new(2);
        inc.constrain(0, 1, RelSet4::single(Rel4::Inc)).unwrap();
        assert_eq!(pot_oracle(&inc, 1).unwrap().count, 0);
        assert_eq!(pot_oracle(&inc, 2).unwrap().count, 1);

        let mut none = PotInstance::new(2);
        none.constrain(0, 1, RelSet4::EMPTY).unwrap();
        assert!(!pot_oracle(&none, 3).unwrap().decision);
    }

    #[test]
    fn ia_examples() {
        assert_eq!(ia_oracle(&IaInstance::new(1), 1).unwrap().count, 1);
        let mut e = IaInstance::new(2);
        e.constrain(0, 1, RelSet13::single(BasicRel::E)).unwrap();
        assert_eq!(ia_oracle(&e, 1).unwrap().count, 0);
        assert_eq!(ia_oracle(&e, 2).unwrap().count, 1);
        let mut p = IaInstance::new(2);
        p.constrain(0, 1, RelSet13::single(BasicRel::P)).unwrap();
        assert_eq!(ia_oracle(&p, 1).unwrap().count, 1);
        assert_eq!(ia_oracle(&IaInstance::new(2), 4).unwrap().count, 13);
    }
}
