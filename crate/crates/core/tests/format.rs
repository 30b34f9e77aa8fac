use proptest::prelude::*;
use qualsolve::csp::gen_sparse_bincsp;
use qualsolve::format::{parse, write, Instance, ParseError};
use qualsolve::interval::{IaInstance, RelSet13};
use qualsolve::order::{make_partial_order, PotInstance, RelSet4};
use qualsolve::InstanceError;

fn round_trip(inst: Instance) -> Result<(), TestCaseError> {
    let text = write(&inst);
    let back = parse(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
    prop_assert_eq!(&back, &inst);
    prop_assert_eq!(write(&back), text);
    Ok(())
}

proptest! {
    #[test]
    fn pot_round_trip(n in 2usize..7, cs in prop::collection::vec((0usize..7, 0usize..7, 0u8..16), 0..12)) {
        let mut inst = PotInstance::new(n);
        for (i, j, bits) in cs {
            let (i, j) = (i % n, j % n);
            if i != j {
                inst.constrain(i, j, RelSet4::from_bits(bits)).unwrap();
            }
        }
        round_trip(Instance::Pot(inst))?;
    }

    #[test]
    fn ia_round_trip(n in 2usize..7, cs in prop::collection::vec((0usize..7, 0usize..7, 0u16..8192), 0..12)) {
        let mut inst = IaInstance::new(n);
        for (i, j, bits) in cs {
            let (i, j) = (i % n, j % n);
            if i != j {
                inst.constrain(i, j, RelSet13::from_bits(bits)).unwrap();
            }
        }
        round_trip(Instance::Ia(inst))?;
    }

    #[test]
    fn csp_round_trip(d in 2usize..5, n in 1usize..10, seed in any::<u64>()) {
        round_trip(Instance::Csp(gen_sparse_bincsp(d, n, seed)))?;
    }

    #[test]
    fn poset_round_trip(n in 1usize..7, raw in prop::collection::vec((0usize..7, 0usize..7), 0..10)) {
        let pairs: Vec<(usize, usize)> = raw
            .into_iter()
            .map(|(a, b)| (a % n, b % n))
            .filter(|(a, b)| a < b)
            .collect();
        round_trip(Instance::Poset(make_partial_order(n, &pairs).unwrap()))?;
    }
}

#[test]
fn parse_examples() {
    let Instance::Pot(p) = parse("pot 2\nc 0 1 lt|inc\n").unwrap() else {
        panic!("expected pot");
    };
    assert_eq!(p.constraints().count(), 1);
    assert!(matches!(parse("ia 2\nc 0 1 m\n").unwrap(), Instance::Ia(_)));
    assert!(matches!(
        parse("pot 2\nc 0 0 lt\n"),
        Err(ParseError::Instance {
            line: 2,
            source: InstanceError::SelfLoop(0)
        })
    ));
}

#[test]
fn comments_and_blank_lines_are_ignored() {
    let text = "# two intervals\n\nia 2\n  # meets\nc 1 0 mi\n";
    let Instance::Ia(inst) = parse(text).unwrap() else {
        panic!("expected ia");
    };
    assert_eq!(
        inst.allowed(0, 1),
        RelSet13::single(qualsolve::interval::BasicRel::M)
    );
}
