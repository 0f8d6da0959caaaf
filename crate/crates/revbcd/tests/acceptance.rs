//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the report always shows. The
//! process fails if any criterion outside `EXPECTED_FAILURES` fails, or if an
//! expected failure starts passing.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use revbcd::batch::{par_add, par_sum_ledger, random_vectors};
use revbcd::ledger_csv::{ingest_reader, IngestConfig};
use revbcd::netlist_file::{from_json, to_json};
use revbcd::synth::{synthetic_csv, SynthConfig};
use revbcd_core::adders::{self, AdderKind, DecimalAdder, Design};
use revbcd_core::cost::{self, comparison_points, hundredths, pareto_front, Metric, TABLE_SIZES};
use revbcd_core::metrics::{metric_decomposition, structural_metrics, ArrivalProfile};
use revbcd_core::netlist::Stage;
use revbcd_core::{sim, GateKind, MetricReport};

/// Criteria that fail for documented reasons: the reference per-size delay
/// improvements of Dec-RCA at N = 16, 128 and 256 disagree with the reference
/// delay cells they are computed from.
const EXPECTED_FAILURES: &[u32] = &[7];

struct Outcome {
    id: u32,
    name: &'static str,
    passed: bool,
    detail: String,
    elapsed: Duration,
    budget: Option<Duration>,
}

fn criterion(
    id: u32,
    name: &'static str,
    budget: Option<Duration>,
    f: impl FnOnce() -> (bool, String),
) -> Outcome {
    let start = Instant::now();
    let (passed, detail) = f();
    let elapsed = start.elapsed();
    let in_time = budget.is_none_or(|b| elapsed <= b);
    Outcome {
        id,
        name,
        passed: passed && in_time,
        detail: if in_time {
            detail
        } else {
            format!("{detail}; over the time budget")
        },
        elapsed,
        budget,
    }
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn value(digits: &[u8]) -> u128 {
    digits.iter().rev().fold(0, |acc, &d| acc * 10 + u128::from(d))
}

fn digits_of(mut v: u128, n: usize) -> Vec<u8> {
    (0..n)
        .map(|_| {
            let d = (v % 10) as u8;
            v /= 10;
            d
        })
        .collect()
}

// Gate formulas written out independently of the gate module.
fn formula_gate(kind: GateKind, x: &[bool]) -> Vec<bool> {
    match kind {
        GateKind::Not => vec![!x[0]],
        GateKind::Fg => vec![x[0], x[0] ^ x[1]],
        GateKind::Pg => vec![x[0], x[0] ^ x[1], (x[0] && x[1]) ^ x[2]],
        GateKind::Mf => vec![
            x[0],
            (!x[0] && x[1]) ^ (x[0] && !x[2]),
            (x[0] && x[1]) ^ (!x[0] && x[2]),
        ],
        GateKind::Hng => {
            let (a, b, c, d) = (x[0], x[1], x[2], x[3]);
            vec![a, b, a ^ b ^ c, ((a ^ b) && c) ^ (a && b) ^ d]
        }
        GateKind::Bjn => vec![x[0], x[1], (x[0] || x[1]) ^ x[2]],
        GateKind::Dfg => vec![x[0], x[0] ^ x[1], x[0] ^ x[2]],
    }
}

fn c1_gates() -> (bool, String) {
    let mut rows = 0;
    let mut bad = Vec::new();
    for kind in GateKind::ALL {
        let table = kind.truth_table();
        let mut seen = vec![false; table.len()];
        for (input, output) in &table {
            let x: Vec<bool> = (0..kind.arity()).map(|i| input.get(i)).collect();
            let got: Vec<bool> = (0..kind.arity()).map(|i| output.get(i)).collect();
            rows += 1;
            if got != formula_gate(kind, &x) || std::mem::replace(&mut seen[output.packed() as usize], true) {
                bad.push(kind.name());
            }
        }
    }
    bad.dedup();
    (
        bad.is_empty(),
        format!("7 gates, {rows} rows, mismatched or non-bijective: {bad:?}"),
    )
}

fn c2_pdfa() -> (bool, String) {
    let adder = DecimalAdder::new(AdderKind::DecRca, 1).expect("one digit");
    let mut ok = 0;
    for a in 0..10u8 {
        for b in 0..10u8 {
            for cin in [false, true] {
                let out = adder.add_digits(&[a], &[b], cin);
                let t = a + b + u8::from(cin);
                ok += u32::from(out.digits == [t % 10] && out.carry == (t >= 10) && out.restored_ok);
            }
        }
    }
    let out = adder.add_digits(&[9], &[9], false);
    let word = format!("{}{:04b}", u8::from(out.carry), out.digits[0]);
    (
        ok == 200 && word == "11000",
        format!("{ok}/200 exact, 9+9+0 -> {word}"),
    )
}

fn c3_pdfa_metrics() -> (bool, String) {
    let n = adders::build_pdfa().expect("pdfa");
    let m = structural_metrics(&n).expect("outputs");
    let stages = metric_decomposition(&n).expect("stages");
    let qc: Vec<u64> = stages.iter().map(|s| s.report.qc).collect();
    let delay: Vec<u64> = stages.iter().map(|s| s.report.delay).collect();
    let names: Vec<Stage> = stages.iter().map(|s| s.stage).collect();
    let want = MetricReport {
        gc: 10,
        ci: 8,
        go: 4,
        qc: 45,
        delay: 35,
    };
    let ok = m == want && qc == [24, 10, 11] && delay == [20, 5, 10] && names == Stage::ALL;
    (ok, format!("{m:?}, stage qc {qc:?}, stage delay {delay:?}"))
}

fn c4_dec_rca() -> (bool, String) {
    let mut bad = Vec::new();
    for n in 1..=8u64 {
        let adder = DecimalAdder::new(AdderKind::DecRca, n as usize).expect("n >= 1");
        let m = structural_metrics(adder.netlist()).expect("outputs");
        if (m.qc, m.ci, m.go, m.delay) != (45 * n, 8 * n, 4 * n, 25 * n + 10) {
            bad.push(format!("N={n} formula {m:?}"));
        }
        let profile = ArrivalProfile::compute(adder.netlist());
        let arrivals: Vec<u64> = adder
            .ports()
            .handoff
            .iter()
            .map(|&l| profile.history(l)[0].1)
            .collect();
        if arrivals != (1..=n).map(|j| 25 * j).collect::<Vec<_>>() {
            bad.push(format!("N={n} carry arrivals {arrivals:?}"));
        }
    }
    (
        bad.is_empty(),
        format!("N=1..8, qc 45N ci 8N go 4N delay 25N+10, carries at 25j; {bad:?}"),
    )
}

fn c5_dec_csk() -> (bool, String) {
    let mut parts = Vec::new();
    let mut all = true;
    for (i, n) in [2usize, 4, 8, 16].into_iter().enumerate() {
        let vectors = random_vectors(1000 + i as u64, n, 10_000);
        let rca = DecimalAdder::new(AdderKind::DecRca, n).expect("n >= 1");
        let csk = DecimalAdder::new(AdderKind::DecCsk, n).expect("n >= 1");
        let (r, c) = (par_add(&rca, &vectors), par_add(&csk, &vectors));
        let modulus = 10u128.pow(n as u32);
        let ok = vectors
            .iter()
            .zip(r.iter().zip(&c))
            .filter(|(v, (x, y))| {
                let t = value(&v.a) + value(&v.b) + u128::from(v.cin);
                value(&y.digits) == t % modulus
                    && y.carry == (t >= modulus)
                    && y.restored_ok
                    && x.digits == y.digits
                    && x.carry == y.carry
                    && x.carries == y.carries
            })
            .count();
        all &= ok == vectors.len();
        parts.push(format!("N={n} {ok}/{}", vectors.len()));
    }
    let csk = DecimalAdder::new(AdderKind::DecCsk, 8).expect("8 digits");
    for (a, b, want) in [
        (88888889u128, 88888889u128, 177777778u128),
        (88888889, 11111111, 100000000),
    ] {
        let out = csk.add_digits(&digits_of(a, 8), &digits_of(b, 8), false);
        let got = value(&out.digits) + if out.carry { 100_000_000 } else { 0 };
        all &= got == want;
        parts.push(format!("{a}+{b}={got}"));
    }
    (all, parts.join(", "))
}

fn c6_skip() -> (bool, String) {
    let mut bad = Vec::new();
    let mut short_misses = 0;
    for a in 0..10u8 {
        for b in 0..10u8 {
            if adders::decimal_propagate(a, b) != Ok(a + b == 9) {
                bad.push((a, b));
            }
            short_misses += u32::from(adders::propagate_short_form(a, b) != (a + b == 9));
        }
    }
    let rows = (0..8u8)
        .filter(|&r| {
            let (p, c, g) = (r & 4 != 0, r & 2 != 0, r & 1 != 0);
            adders::skip_carry(p, c, g) == ((p && c) || (!p && g))
        })
        .count();
    let ok = bad.is_empty() && rows == 8;
    (
        ok,
        format!(
            "propagate exact on {}/100 pairs, skip carry {rows}/8 rows; note: the short propagate form disagrees on {short_misses} pairs",
            100 - bad.len()
        ),
    )
}

// Reference comparison tables: size, eight cells, then the two % columns.
const QC_TABLE: [(u64, [i64; 8], [&str; 2]); 6] = [
    (8, [464, 560, 648, 704, 448, 416, 360, 520], ["30.75", "-0.02"]),
    (
        16,
        [928, 1120, 1296, 1408, 896, 832, 720, 1040],
        ["30.75", "-0.02"],
    ),
    (
        32,
        [1856, 2240, 2592, 2816, 1792, 1664, 1440, 2080],
        ["30.75", "-0.02"],
    ),
    (
        64,
        [3712, 4480, 5184, 5632, 3584, 3328, 2880, 4160],
        ["30.75", "-0.02"],
    ),
    (
        128,
        [7424, 8960, 10368, 11264, 7168, 6656, 5760, 8320],
        ["30.75", "-0.02"],
    ),
    (
        256,
        [14848, 17920, 20736, 22528, 14336, 13312, 11520, 16640],
        ["30.75", "-0.02"],
    ),
];
const DELAY_TABLE: [(u64, [i64; 8], [&str; 2]); 6] = [
    (8, [320, 456, 432, 496, 320, 248, 210, 80], ["41.18", "77.59"]),
    (16, [640, 912, 864, 992, 640, 496, 410, 120], ["42.55", "83.19"]),
    (
        32,
        [1280, 1824, 1728, 1984, 1280, 992, 810, 200],
        ["43.28", "85.99"],
    ),
    (
        64,
        [2560, 3648, 3456, 3968, 2560, 1984, 1610, 360],
        ["43.63", "87.40"],
    ),
    (
        128,
        [5120, 7296, 6912, 7936, 5120, 3968, 3210, 680],
        ["43.89", "88.10"],
    ),
    (
        256,
        [10240, 14592, 13824, 15872, 10240, 7936, 6410, 1320],
        ["43.92", "88.45"],
    ),
];
const AVERAGES: [(Metric, &str, &str); 4] = [
    (Metric::Qc, "dec-rca", "30.75"),
    (Metric::Qc, "dec-csk", "-0.02"),
    (Metric::Delay, "dec-rca", "43.07"),
    (Metric::Delay, "dec-csk", "85.12"),
];

fn reference_hundredths(s: &str) -> i128 {
    let v: f64 = s.parse().expect("reference percentage");
    (v * 100.0).round() as i128
}

// Improvement as plain floating point, for cross-checking the exact values.
fn float_improvement(cells: &[i64; 8], proposed: usize) -> f64 {
    let p = cells[proposed] as f64;
    cells[..6]
        .iter()
        .map(|&b| 100.0 * (b as f64 - p) / b as f64)
        .sum::<f64>()
        / 6.0
}

fn c7_tables() -> (bool, String) {
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for (metric, reference) in [(Metric::Qc, &QC_TABLE), (Metric::Delay, &DELAY_TABLE)] {
        let table = cost::comparison_table(metric, &TABLE_SIZES).expect("table");
        for (k, design) in ["dec-rca", "dec-csk"].into_iter().enumerate() {
            let imp = cost::improvement(design, &cost::COMPARISON_BASELINES, &TABLE_SIZES, metric)
                .expect("improvement");
            for ((n, cells, pct), (m, exact)) in reference.iter().zip(&imp.per_n) {
                assert_eq!(n, m);
                let got = hundredths(*exact);
                let float = float_improvement(cells, 6 + k);
                assert!(
                    (float - got as f64 / 100.0).abs() <= 0.005 + 1e-9,
                    "{design} N={n}"
                );
                checked += 1;
                if (got - reference_hundredths(pct[k])).abs() > 1 {
                    mismatches.push(format!(
                        "{} {design} N={n}: {} vs reference {}",
                        metric.name(),
                        cost::format_hundredths(got),
                        pct[k]
                    ));
                }
            }
        }
        for (n, cells, _) in reference.iter() {
            for (col, &want) in cells.iter().enumerate() {
                checked += 1;
                let got = table.rows.iter().find(|(k, _)| k == n).map(|(_, r)| r[col]);
                if got != Some(want) {
                    mismatches.push(format!("{} N={n} column {col}: {got:?} vs {want}", metric.name()));
                }
            }
        }
    }
    let mut averages = Vec::new();
    for (metric, design, expected) in AVERAGES {
        let imp = cost::improvement(design, &cost::COMPARISON_BASELINES, &TABLE_SIZES, metric)
            .expect("improvement");
        let got = hundredths(imp.average);
        checked += 1;
        averages.push(cost::format_hundredths(got));
        if (got - reference_hundredths(expected)).abs() > 1 {
            mismatches.push(format!("{} {design} average {got} vs {expected}", metric.name()));
        }
    }
    (
        mismatches.is_empty(),
        format!(
            "{checked} values, averages {} (reference 30.75 -0.02 43.07 85.12), mismatches: {mismatches:?}",
            averages.join(" ")
        ),
    )
}

fn c8_pareto() -> (bool, String) {
    let mut parts = Vec::new();
    let mut ok = true;
    for n in [16u64, 32, 64] {
        let points = comparison_points(n).expect("points");
        let front = pareto_front(&points);
        let mut brute: Vec<(i64, i64, String)> = points
            .iter()
            .filter(|p| {
                !points
                    .iter()
                    .any(|q| q.qc <= p.qc && q.delay <= p.delay && (q.qc, q.delay) != (p.qc, p.delay))
            })
            .map(|p| (p.qc, p.delay, p.design.clone()))
            .collect();
        brute.sort();
        let got: Vec<(i64, i64, String)> = front.iter().map(|p| (p.qc, p.delay, p.design.clone())).collect();
        let names: Vec<&str> = got.iter().map(|p| p.2.as_str()).collect();
        ok &= points.len() == 8 && got == brute && names.contains(&"Dec-RCA") && names.contains(&"Dec-CSK");
        parts.push(format!("N={n} {names:?}"));
    }
    (ok, parts.join(", "))
}

fn c9_csk_delay() -> (bool, String) {
    let delays: Vec<u64> = (1..=9)
        .map(|n| {
            structural_metrics(&adders::build_dec_csk(n).expect("n >= 1"))
                .expect("outputs")
                .delay
        })
        .collect();
    let slopes: Vec<i64> = delays.windows(2).map(|w| w[1] as i64 - w[0] as i64).collect();
    let steady = slopes[1..].iter().all(|&s| s == 5);
    let intercept = delays[7] as i64 - 5 * 8;
    (
        steady,
        format!(
            "delay N=1..9 {delays:?}, slope 5 for N >= 2: {steady}, intercept {intercept} (reference 40, delta {:+})",
            intercept - 40
        ),
    )
}

fn c10_csk_qc() -> (bool, String) {
    let mut parts = Vec::new();
    let mut ok = true;
    for n in [1usize, 8] {
        let netlist = adders::build_dec_csk(n).expect("n >= 1");
        let m = structural_metrics(&netlist).expect("outputs");
        let detection = metric_decomposition(&netlist)
            .expect("stages")
            .iter()
            .find(|s| s.stage == Stage::Detection)
            .map_or(0, |s| s.report.qc);
        let per_digit = detection as f64 / n as f64;
        ok &= per_digit <= 30.0;
        parts.push(format!(
            "N={n} detection qc {detection} ({per_digit:.3}/digit, budget 30), total qc {} vs 65N = {} (delta {:+})",
            m.qc,
            65 * n,
            m.qc as i64 - 65 * n as i64
        ));
    }
    (ok, parts.join("; "))
}

fn c11_ledger() -> (bool, String) {
    let text = synthetic_csv(&SynthConfig::default());
    let ingested = ingest_reader(text.as_bytes(), &IngestConfig::default()).expect("synthetic CSV parses");
    let report = par_sum_ledger(&ingested.records, AdderKind::DecCsk, 16).expect("fits 16 digits");
    let mut native = std::collections::BTreeMap::<&str, u128>::new();
    for r in &ingested.records {
        *native.entry(r.group.as_str()).or_default() += u128::from(r.amount);
    }
    let matching = report
        .groups
        .iter()
        .filter(|g| native.get(g.group.as_str()) == Some(&g.bcd_total))
        .count();
    let ok =
        ingested.records.len() == 2000 && matching == native.len() && report.groups.len() == native.len();
    (
        ok,
        format!(
            "{} rows, {matching}/{} groups equal the native sums, {} additions",
            ingested.records.len(),
            native.len(),
            report.additions
        ),
    )
}

fn c12_round_trip() -> (bool, String) {
    let mut count = 0;
    let mut bad = Vec::new();
    for design in Design::ALL {
        for n in [1usize, 8] {
            let netlist = design.build(n).expect("design builds");
            count += 1;
            match from_json(&to_json(&netlist)) {
                Ok(back) if back == netlist => {}
                _ => bad.push(format!("{} N={n}", design.name())),
            }
        }
    }
    (bad.is_empty(), format!("{count} netlists, failures: {bad:?}"))
}

fn main() -> ExitCode {
    // Seeded spot check that the simulator agrees with packed evaluation.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pdfa = adders::build_pdfa().expect("pdfa");
    for _ in 0..64 {
        let state = rng.random_range(0..1u64 << pdfa.width());
        let mut bits = sim::BitState((0..pdfa.width()).map(|i| state >> i & 1 == 1).collect());
        sim::evaluate(&pdfa, &mut bits).expect("width matches");
        assert_eq!(bits.to_u64(), sim::evaluate_packed(&pdfa, state));
    }

    let outcomes = vec![
        criterion(1, "gate fidelity", secs(1), c1_gates),
        criterion(2, "pdfa functional", secs(1), c2_pdfa),
        criterion(3, "pdfa metrics", None, c3_pdfa_metrics),
        criterion(4, "dec-rca formula", None, c4_dec_rca),
        criterion(5, "dec-csk functional", secs(30), c5_dec_csk),
        criterion(6, "skip condition", None, c6_skip),
        criterion(7, "table reproduction", secs(1), c7_tables),
        criterion(8, "pareto front", None, c8_pareto),
        criterion(9, "dec-csk delay slope", None, c9_csk_delay),
        criterion(10, "dec-csk quantum cost", None, c10_csk_qc),
        criterion(11, "ledger oracle", secs(60), c11_ledger),
        criterion(12, "netlist round trip", None, c12_round_trip),
    ];

    let mut unexpected = Vec::new();
    for o in &outcomes {
        let status = if o.passed { "PASS" } else { "FAIL" };
        let budget = o
            .budget
            .map(|b| format!(" / {}s", b.as_secs()))
            .unwrap_or_default();
        println!(
            "{status} [{:>2}] {} ({:.2?}{budget}): {}",
            o.id, o.name, o.elapsed, o.detail
        );
        if o.passed == EXPECTED_FAILURES.contains(&o.id) {
            unexpected.push(o.id);
        }
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    println!(
        "{passed}/{} criteria passed; expected failures {EXPECTED_FAILURES:?}",
        outcomes.len()
    );
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
