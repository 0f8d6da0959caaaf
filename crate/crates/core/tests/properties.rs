use proptest::prelude::*;
use revbcd_core::bcd::{decode, encode, BcdAdder, DigitVector};
use revbcd_core::ledger::{sum_ledger, LedgerRecord};
use revbcd_core::metrics::{quantum_cost, ArrivalProfile};
use revbcd_core::sim;
use revbcd_core::{AdderKind, GateKind, LineRole, Netlist};

const WIDTH: usize = 6;

fn random_netlist() -> impl Strategy<Value = Netlist> {
    let pins = proptest::sample::subsequence((0..WIDTH).collect::<Vec<_>>(), 4).prop_shuffle();
    let gate = (0..GateKind::ALL.len(), pins).prop_map(|(k, pins)| (GateKind::ALL[k], pins));
    proptest::collection::vec(gate, 0..12).prop_map(|gates| {
        let mut n = Netlist::new(WIDTH, vec![LineRole::Constant(false); WIDTH]).unwrap();
        for (kind, pins) in gates {
            n.append_gate(kind, &pins[..kind.arity()]).unwrap();
        }
        n
    })
}

proptest! {
    #[test]
    fn codec_round_trip(x in 0u128..10u128.pow(12)) {
        let v = encode(x, 12).unwrap();
        prop_assert_eq!(decode(&v).unwrap(), x);
        prop_assert_eq!(DigitVector::parse(&v.to_decimal(), 12).unwrap(), v);
    }

    #[test]
    fn bcd_add_is_native_addition(a in 0u128..10u128.pow(10), b in 0u128..10u128.pow(10), csk in any::<bool>()) {
        let kind = if csk { AdderKind::DecCsk } else { AdderKind::DecRca };
        let adder = BcdAdder::new(kind, 10).unwrap();
        let (s, c) = adder.add(&encode(a, 10).unwrap(), &encode(b, 10).unwrap()).unwrap();
        let m = 10u128.pow(10);
        prop_assert_eq!(decode(&s).unwrap(), (a + b) % m);
        prop_assert_eq!(c, a + b >= m);
    }

    #[test]
    fn adding_zero_is_identity(a in 0u128..10u128.pow(8)) {
        let adder = BcdAdder::new(AdderKind::DecCsk, 8).unwrap();
        let (s, c) = adder.add(&encode(a, 8).unwrap(), &DigitVector::zero(8)).unwrap();
        prop_assert_eq!(decode(&s).unwrap(), a);
        prop_assert!(!c);
    }

    #[test]
    fn ledger_total_ignores_record_order(
        amounts in proptest::collection::vec((0u8..3, 0u64..100_000), 1..40),
        seed in any::<u64>(),
    ) {
        let records: Vec<LedgerRecord> = amounts
            .iter()
            .map(|&(g, a)| LedgerRecord::new(format!("g{g}"), a))
            .collect();
        let mut shuffled = records.clone();
        let len = shuffled.len();
        for i in (1..len).rev() {
            shuffled.swap(i, (seed.wrapping_mul(i as u64 + 7) % (i as u64 + 1)) as usize);
        }
        let a = sum_ledger(&records, AdderKind::DecRca, 10).unwrap();
        let b = sum_ledger(&shuffled, AdderKind::DecCsk, 10).unwrap();
        prop_assert_eq!(a.mismatches, 0);
        prop_assert_eq!(&a, &b);
    }

    #[test]
    fn random_netlists_are_permutations(n in random_netlist()) {
        prop_assert!(n.validate().is_ok());
        prop_assert!(sim::check_permutation(&n).unwrap());
    }

    #[test]
    fn arrivals_never_decrease(n in random_netlist()) {
        let p = ArrivalProfile::compute(&n);
        for line in 0..n.width() {
            let h = p.history(line);
            prop_assert!(h.windows(2).all(|w| w[0].1 <= w[1].1));
        }
        let total: u64 = n.gates().iter().map(|g| u64::from(g.kind().quantum_cost())).sum();
        prop_assert_eq!(quantum_cost(&n), total);
    }
}
