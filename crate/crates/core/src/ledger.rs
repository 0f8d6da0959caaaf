//! Per-group ledger totals computed through a simulated BCD adder and checked
//! against native integer sums.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::adders::AdderKind;
use crate::bcd::{decode, encode, BcdAdder};
use crate::error::LedgerError;

/// One transaction in minor units (cents).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LedgerRecord {
    pub group: String,
    pub amount: u64,
}

impl LedgerRecord {
    pub fn new(group: impl Into<String>, amount: u64) -> Self {
        LedgerRecord {
            group: group.into(),
            amount,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTotal {
    pub group: String,
    pub records: usize,
    /// Total read back from the simulated adder.
    pub bcd_total: u128,
    pub native_total: u128,
    /// Adder invocations spent on this group (`records - 1`).
    pub additions: u64,
}

impl GroupTotal {
    pub fn matches(&self) -> bool {
        self.bcd_total == self.native_total
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LedgerReport {
    /// Sorted by group key.
    pub groups: Vec<GroupTotal>,
    pub additions: u64,
    pub mismatches: usize,
}

impl LedgerReport {
    pub fn from_groups(groups: Vec<GroupTotal>) -> Self {
        let additions = groups.iter().map(|g| g.additions).sum();
        let mismatches = groups.iter().filter(|g| !g.matches()).count();
        LedgerReport {
            groups,
            additions,
            mismatches,
        }
    }
}

/// Amounts per group, in record order, keyed and sorted by group.
pub fn group_records(records: &[LedgerRecord]) -> BTreeMap<&str, Vec<u64>> {
    let mut groups: BTreeMap<&str, Vec<u64>> = BTreeMap::new();
    for r in records {
        groups.entry(r.group.as_str()).or_default().push(r.amount);
    }
    groups
}

/// Left fold of the group's amounts through `adder`, starting from the first amount.
pub fn sum_group(adder: &BcdAdder, group: &str, amounts: &[u64]) -> Result<GroupTotal, LedgerError> {
    let width = adder.width();
    let to_digits = |amount: u64| {
        encode(u128::from(amount), width).map_err(|_| LedgerError::AmountTooWide {
            group: group.into(),
            amount,
            width,
        })
    };
    let mut native: u128 = 0;
    let mut acc = None;
    let mut additions = 0;
    for &amount in amounts {
        native += u128::from(amount);
        let digits = to_digits(amount)?;
        acc = Some(match acc {
            None => digits,
            Some(sum) => {
                let (next, carry) = adder.add(&sum, &digits)?;
                additions += 1;
                if carry {
                    return Err(LedgerError::Overflow {
                        group: group.into(),
                        width,
                    });
                }
                next
            }
        });
    }
    let bcd_total = match &acc {
        Some(v) => decode(v)?,
        None => 0,
    };
    Ok(GroupTotal {
        group: group.into(),
        records: amounts.len(),
        bcd_total,
        native_total: native,
        additions,
    })
}

/// Sums every group sequentially.
pub fn sum_ledger(
    records: &[LedgerRecord],
    kind: AdderKind,
    width: usize,
) -> Result<LedgerReport, LedgerError> {
    let adder = BcdAdder::new(kind, width)?;
    let groups = group_records(records)
        .into_iter()
        .map(|(g, amounts)| sum_group(&adder, g, &amounts))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LedgerReport::from_groups(groups))
}
