//! Seeded operand generation and order-stable parallel simulation.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use revbcd_core::adders::{AdderKind, AdderOutput, DecimalAdder};
use revbcd_core::bcd::BcdAdder;
use revbcd_core::ledger::{group_records, sum_group, LedgerRecord, LedgerReport};
use revbcd_core::LedgerError;

/// One addition: little-endian digits of both operands and the carry-in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vector {
    pub a: Vec<u8>,
    pub b: Vec<u8>,
    pub cin: bool,
}

impl Vector {
    /// `a + b + cin` as native integers (operands up to 38 digits).
    pub fn native_sum(&self) -> u128 {
        let value = |d: &[u8]| d.iter().rev().fold(0u128, |acc, &x| acc * 10 + u128::from(x));
        value(&self.a) + value(&self.b) + u128::from(self.cin)
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `count` uniformly random BCD vectors of `digits` digits.
pub fn random_vectors(seed: u64, digits: usize, count: usize) -> Vec<Vector> {
    let mut rng = rng(seed);
    let digit_vec = |rng: &mut ChaCha8Rng| (0..digits).map(|_| rng.random_range(0..10u8)).collect();
    (0..count)
        .map(|_| Vector {
            a: digit_vec(&mut rng),
            b: digit_vec(&mut rng),
            cin: rng.random_bool(0.5),
        })
        .collect()
}

/// Simulates every vector concurrently; results keep input order.
pub fn par_add(adder: &DecimalAdder, vectors: &[Vector]) -> Vec<AdderOutput> {
    vectors
        .par_iter()
        .map(|v| adder.add_digits(&v.a, &v.b, v.cin))
        .collect()
}

/// Like [`revbcd_core::ledger::sum_ledger`], with groups summed concurrently.
pub fn par_sum_ledger(
    records: &[LedgerRecord],
    kind: AdderKind,
    width: usize,
) -> Result<LedgerReport, LedgerError> {
    let adder = BcdAdder::new(kind, width)?;
    let groups: Vec<(&str, Vec<u64>)> = group_records(records).into_iter().collect();
    let totals = groups
        .par_iter()
        .map(|(g, amounts)| sum_group(&adder, g, amounts))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LedgerReport::from_groups(totals))
}

/// Fisher-Yates shuffle with a seeded generator.
pub fn shuffled<T: Clone>(items: &[T], seed: u64) -> Vec<T> {
    let mut out = items.to_vec();
    out.shuffle(&mut rng(seed));
    out
}
