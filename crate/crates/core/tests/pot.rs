use qualsolve::generate::gen_pot;
use qualsolve::oracle::pot_oracle;
use qualsolve::order::{
    effective_width_at_most, make_partial_order, satisfies_pot, AtomicScenario, PotInstance, Rel4,
    RelSet4,
};
use qualsolve::pot::{pot_count, pot_decide, PotSolver};

/// All 16^3 ways to constrain the three pairs of a 3-variable instance.
fn corpus3() -> impl Iterator<Item = PotInstance> {
    (0u16..4096).map(|code| {
        let mut inst = PotInstance::new(3);
        for (slot, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
            let bits = (code >> (4 * slot) & 0xf) as u8;
            inst.constrain(i, j, RelSet4::from_bits(bits)).unwrap();
        }
        inst
    })
}

#[test]
fn corpus_witnesses_and_monotonicity() {
    for inst in corpus3() {
        let mut prev = 0;
        for k in 1..=3 {
            let mut solver = PotSolver::new(&inst, k);
            let count = solver.count();
            assert!(count >= prev, "count drops at k={k}");
            prev = count;
            match solver.witness() {
                Some(s) => {
                    assert!(count > 0);
                    assert!(s.is_realizable());
                    assert!(satisfies_pot(&s, &inst));
                    let (q, _) = s.quotient().unwrap();
                    assert!(effective_width_at_most(&q, k).unwrap());
                }
                None => assert_eq!(count, 0),
            }
        }
    }
}

#[test]
fn memo_does_not_change_answers() {
    for (idx, inst) in corpus3().enumerate().step_by(37) {
        let mut solver = PotSolver::new(&inst, 2);
        let first = (solver.decide(), solver.count());
        assert_eq!(
            solver.memo_len() > 0,
            !inst.has_empty_constraint(),
            "instance {idx}"
        );
        let again = (solver.decide(), solver.count());
        solver.clear_memo();
        assert_eq!(solver.memo_len(), 0);
        let fresh = (solver.decide(), solver.count());
        assert_eq!(first, again);
        assert_eq!(first, fresh);
        assert_eq!(first, (pot_decide(&inst, 2), pot_count(&inst, 2)));
    }
}

#[test]
fn random_four_variable_instances_match_oracle() {
    for seed in 0..60 {
        for k in 1..=3 {
            let inst = gen_pot(4, k, seed, seed % 3 == 0);
            let truth = pot_oracle(&inst, k).unwrap();
            assert_eq!(pot_decide(&inst, k), truth.decision, "seed {seed} k {k}");
            assert_eq!(pot_count(&inst, k), truth.count, "seed {seed} k {k}");
        }
    }
}

#[test]
fn planted_instances_are_satisfiable() {
    for seed in 0..40 {
        for k in 1..=3 {
            let n = 2 + seed as usize % 5;
            assert!(
                pot_decide(&gen_pot(n, k, seed, false), k),
                "n {n} seed {seed}"
            );
        }
    }
}

#[test]
fn k_above_n_behaves_like_n() {
    let inst = gen_pot(3, 2, 11, false);
    for k in 3..8 {
        assert_eq!(PotSolver::new(&inst, k).effective_k(), 3);
        assert_eq!(pot_count(&inst, k), pot_count(&inst, 3));
    }
}

/// Pins every pair of `p` to the relation it induces.
fn pinned(p: &qualsolve::order::PartialOrder) -> PotInstance {
    let n = p.len();
    let s = AtomicScenario::from_order(p, &(0..n).collect::<Vec<_>>());
    let mut inst = PotInstance::new(n);
    for i in 0..n {
        for j in i + 1..n {
            inst.constrain(i, j, RelSet4::single(s.get(i, j))).unwrap();
        }
    }
    inst
}

// The waist-per-position recursion cannot place this order at k = 2 even
// though it decomposes with two waist blocks: its two minimal-below pairs
// need a waist block spanning two positions of the parent call.
#[test]
fn five_element_gap_at_k_two() {
    let p = make_partial_order(5, &[(0, 1), (0, 2), (3, 1), (4, 2)]).unwrap();
    assert!(effective_width_at_most(&p, 2).unwrap());
    let inst = pinned(&p);
    assert!(pot_oracle(&inst, 2).unwrap().decision);
    assert!(!pot_decide(&inst, 2));
    assert!(pot_decide(&inst, 3));
}

#[test]
fn unconstrained_counts() {
    // k = 1: weak orders; k = 2 on up to four variables: all preorders
    let weak = [1u64, 1, 3, 13, 75, 541];
    for (n, &c) in weak.iter().enumerate() {
        assert_eq!(pot_count(&PotInstance::new(n), 1), c);
    }
    let preorders = [1u64, 1, 4, 29, 355];
    for (n, &c) in preorders.iter().enumerate() {
        assert_eq!(pot_count(&PotInstance::new(n), 2), c);
    }
}

#[test]
fn empty_constraint_is_unsat() {
    let mut inst = PotInstance::new(3);
    inst.constrain(0, 2, RelSet4::EMPTY).unwrap();
    assert!(inst.has_empty_constraint());
    for k in 1..=3 {
        assert!(!pot_decide(&inst, k));
        assert_eq!(pot_count(&inst, k), 0);
    }
    let mut two = PotInstance::new(2);
    two.constrain(
        0,
        1,
        RelSet4::single(Rel4::Lt).union(RelSet4::single(Rel4::Gt)),
    )
    .unwrap();
    assert_eq!(pot_count(&two, 1), 2);
}
