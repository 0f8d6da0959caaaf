//! Self-checks run by `revbcd verify`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use revbcd_core::adders::{self, AdderKind, DecimalAdder};
use revbcd_core::metrics::{metric_decomposition, structural_metrics};
use revbcd_core::{sim, GateKind, MetricReport};

use crate::batch::{par_add, random_vectors};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    Gates,
    Pdfa,
    Adders,
    All,
}

impl FromStr for Scope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "gates" => Ok(Scope::Gates),
            "pdfa" => Ok(Scope::Pdfa),
            "adders" => Ok(Scope::Adders),
            "all" => Ok(Scope::All),
            _ => Err(format!("unknown scope `{s}` (gates, pdfa, adders, all)")),
        }
    }
}

/// `passed` out of `total` cases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: u64,
    pub total: u64,
}

impl Check {
    fn new(name: impl Into<String>, passed: u64, total: u64) -> Self {
        Check {
            name: name.into(),
            passed,
            total,
        }
    }

    fn single(name: impl Into<String>, ok: bool) -> Self {
        Check::new(name, ok as u64, 1)
    }

    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.ok() { "PASS" } else { "FAIL" };
        write!(f, "{status} {}: {}/{}", self.name, self.passed, self.total)
    }
}

pub fn run(scope: Scope, seed: u64, samples: usize) -> Vec<Check> {
    let mut checks = Vec::new();
    if matches!(scope, Scope::Gates | Scope::All) {
        checks.extend(gates());
    }
    if matches!(scope, Scope::Pdfa | Scope::All) {
        checks.extend(pdfa());
    }
    if matches!(scope, Scope::Adders | Scope::All) {
        checks.extend(adder_checks(seed, samples));
    }
    checks
}

fn gates() -> Vec<Check> {
    let bijective = GateKind::ALL
        .iter()
        .filter(|k| {
            let mut outs: Vec<u8> = k.truth_table().iter().map(|(_, o)| o.packed()).collect();
            outs.sort_unstable();
            outs.dedup();
            outs.len() == 1 << k.arity()
        })
        .count() as u64;
    vec![Check::new(
        "gate bijectivity",
        bijective,
        GateKind::ALL.len() as u64,
    )]
}

fn pdfa() -> Vec<Check> {
    let adder = DecimalAdder::new(AdderKind::DecRca, 1).expect("one digit");
    let mut passed = 0;
    for a in 0..10u8 {
        for b in 0..10u8 {
            for cin in [false, true] {
                let out = adder.add_digits(&[a], &[b], cin);
                let total = a + b + cin as u8;
                passed +=
                    (out.digits == [total % 10] && out.carry == (total >= 10) && out.restored_ok) as u64;
            }
        }
    }
    let m = structural_metrics(adder.netlist()).expect("outputs designated");
    let stages: Vec<(u64, u64)> = metric_decomposition(adder.netlist())
        .expect("tagged")
        .iter()
        .map(|s| (s.report.qc, s.report.delay))
        .collect();
    vec![
        Check::new("pdfa decimal oracle", passed, 200),
        Check::single(
            "pdfa permutation",
            sim::check_permutation(adder.netlist()).unwrap_or(false),
        ),
        Check::single(
            "pdfa metrics gc 10 ci 8 go 4 qc 45 delay 35",
            m == MetricReport {
                gc: 10,
                ci: 8,
                go: 4,
                qc: 45,
                delay: 35,
            },
        ),
        Check::single(
            "pdfa stages qc 24/10/11 delay 20/5/10",
            stages == [(24, 20), (10, 5), (11, 10)],
        ),
    ]
}

fn adder_checks(seed: u64, samples: usize) -> Vec<Check> {
    let mut checks = Vec::new();
    let propagate = (0..100u8)
        .filter(|&x| adders::decimal_propagate(x / 10, x % 10) == Ok(x / 10 + x % 10 == 9))
        .count() as u64;
    checks.push(Check::new("decimal propagate iff sum 9", propagate, 100));

    let formula = (1..=8u64)
        .into_par_iter()
        .filter(|&n| {
            let m = structural_metrics(&adders::build_dec_rca(n as usize).expect("n >= 1")).expect("outputs");
            (m.ci, m.go, m.qc, m.delay) == (8 * n, 4 * n, 45 * n, 25 * n + 10)
        })
        .count() as u64;
    checks.push(Check::new("dec-rca metrics 8N/4N/45N/25N+10", formula, 8));

    for (i, digits) in [2usize, 4, 8, 16].into_iter().enumerate() {
        let vectors = random_vectors(seed.wrapping_add(i as u64), digits, samples);
        let modulus = 10u128.pow(digits as u32);
        let rca = DecimalAdder::new(AdderKind::DecRca, digits).expect("digits >= 1");
        let csk = DecimalAdder::new(AdderKind::DecCsk, digits).expect("digits >= 1");
        let (r, c) = (par_add(&rca, &vectors), par_add(&csk, &vectors));
        let decode = |d: &[u8]| d.iter().rev().fold(0u128, |acc, &x| acc * 10 + u128::from(x));
        let native = |out: &adders::AdderOutput, total: u128| {
            decode(&out.digits) == total % modulus && out.carry == (total >= modulus) && out.restored_ok
        };
        let (mut rca_ok, mut csk_ok, mut same) = (0, 0, 0);
        for ((v, x), y) in vectors.iter().zip(&r).zip(&c) {
            let total = v.native_sum();
            rca_ok += native(x, total) as u64;
            csk_ok += native(y, total) as u64;
            same += (x.digits == y.digits && x.carry == y.carry && x.carries == y.carries) as u64;
        }
        let n = vectors.len() as u64;
        checks.push(Check::new(
            format!("dec-rca N={digits} decimal oracle"),
            rca_ok,
            n,
        ));
        checks.push(Check::new(
            format!("dec-csk N={digits} decimal oracle"),
            csk_ok,
            n,
        ));
        checks.push(Check::new(
            format!("dec-csk N={digits} carries equal dec-rca"),
            same,
            n,
        ));
    }
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scopes_pass() {
        let checks = run(Scope::All, 7, 200);
        for c in &checks {
            assert!(c.ok(), "{c}");
        }
        assert_eq!(checks[0].to_string(), "PASS gate bijectivity: 7/7");
        assert_eq!(run(Scope::Pdfa, 0, 0)[0].total, 200);
    }

    #[test]
    fn scope_names() {
        assert_eq!("adders".parse::<Scope>(), Ok(Scope::Adders));
        assert!("x".parse::<Scope>().is_err());
    }
}
