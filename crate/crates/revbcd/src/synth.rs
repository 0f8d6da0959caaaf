//! Synthetic transaction ledgers for demos and tests.

use rand::Rng;

use crate::batch::{rng, shuffled};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SynthConfig {
    pub rows: usize,
    /// Distinct users; each appears at least once when `rows >= groups`.
    pub groups: usize,
    pub seed: u64,
    /// Largest absolute amount, in cents.
    pub max_cents: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            rows: 2000,
            groups: 820,
            seed: 7,
            max_cents: 500_000,
        }
    }
}

fn money(cents: u64, negative: bool) -> String {
    let sign = if negative { "-" } else { "" };
    format!("{sign}${}.{:02}", cents / 100, cents % 100)
}

/// CSV text with header `user,card,date,amount`; about a third of the rows are
/// negative debits.
pub fn synthetic_csv(config: &SynthConfig) -> String {
    let mut r = rng(config.seed);
    let groups = config.groups.max(1);
    let mut users: Vec<usize> = (0..config.rows)
        .map(|i| if i < groups { i } else { r.random_range(0..groups) })
        .collect();
    users = shuffled(&users, config.seed.wrapping_add(1));
    let mut out = String::from("user,card,date,amount\n");
    for user in users {
        let cents = r.random_range(1..=config.max_cents.max(1));
        let negative = r.random_range(0..3) == 0;
        let card = r.random_range(0..3);
        let day = r.random_range(1..=28);
        out.push_str(&format!(
            "u{user:04},c{user:04}-{card},2024-03-{day:02},{}\n",
            money(cents, negative)
        ));
    }
    out
}
