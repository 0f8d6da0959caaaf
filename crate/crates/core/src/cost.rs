//! Closed-form cost models of published reversible BCD adders, comparison
//! tables, improvement percentages and the (qc, delay) Pareto front.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
pub use num_rational::Ratio;

use crate::error::CostError;

/// `slope * N + intercept`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Affine {
    pub slope: i64,
    pub intercept: i64,
}

impl Affine {
    pub const fn new(slope: i64, intercept: i64) -> Self {
        Affine { slope, intercept }
    }

    pub const fn eval(self, n: u64) -> i64 {
        self.slope * n as i64 + self.intercept
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.slope, self.intercept) {
            (1, 0) => write!(f, "N"),
            (s, 0) => write!(f, "{s}N"),
            (1, c) if c < 0 => write!(f, "N{c}"),
            (1, c) => write!(f, "N+{c}"),
            (s, c) if c < 0 => write!(f, "{s}N{c}"),
            (s, c) => write!(f, "{s}N+{c}"),
        }
    }
}

/// Affine-in-N cost model of one design.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BaselineModel {
    /// Identifier used on the command line.
    pub name: &'static str,
    /// Column heading for tables.
    pub label: &'static str,
    pub ci: Affine,
    pub go: Affine,
    pub qc: Affine,
    pub delay: Affine,
}

const fn model(
    name: &'static str,
    label: &'static str,
    ci: (i64, i64),
    go: (i64, i64),
    qc: (i64, i64),
    delay: (i64, i64),
) -> BaselineModel {
    BaselineModel {
        name,
        label,
        ci: Affine::new(ci.0, ci.1),
        go: Affine::new(go.0, go.1),
        qc: Affine::new(qc.0, qc.1),
        delay: Affine::new(delay.0, delay.1),
    }
}

pub const MODELS: [BaselineModel; 10] = [
    model("ref10-d1", "[10]", (11, 0), (16, 0), (58, 0), (40, 0)),
    model("ref10-d2", "[10]-d2", (12, 0), (17, 0), (75, 0), (40, 0)),
    model("ref11-d1", "[11]-d1", (2, 0), (2, -1), (88, 0), (73, 0)),
    model("ref11-d2", "[11]", (1, 0), (1, -1), (70, 0), (57, 0)),
    model("ref12", "[12]", (17, 0), (22, 0), (81, 0), (54, 0)),
    model("ref13", "[13]", (19, 0), (24, 0), (88, 0), (62, 0)),
    model("ref14", "[14]", (7, 0), (7, 0), (56, 0), (40, 0)),
    model("ref15", "[15]", (10, 0), (14, 0), (52, 0), (31, 0)),
    model("dec-rca", "Dec-RCA", (8, 0), (4, 0), (45, 0), (25, 10)),
    model("dec-csk", "Dec-CSK", (10, 0), (12, 0), (65, 0), (5, 40)),
];

/// The six prior designs used as comparison columns.
pub const COMPARISON_BASELINES: [&str; 6] = ["ref10-d1", "ref11-d2", "ref12", "ref13", "ref14", "ref15"];

/// Designs proposed here, in column order.
pub const PROPOSED: [&str; 2] = ["dec-rca", "dec-csk"];

/// Sizes of the published comparison.
pub const TABLE_SIZES: [u64; 6] = [8, 16, 32, 64, 128, 256];

pub fn find_model(name: &str) -> Result<&'static BaselineModel, CostError> {
    MODELS
        .iter()
        .find(|m| m.name == name)
        .ok_or_else(|| CostError::UnknownDesign(name.into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Metric {
    Qc,
    Delay,
}

impl Metric {
    pub const fn name(self) -> &'static str {
        match self {
            Metric::Qc => "qc",
            Metric::Delay => "delay",
        }
    }

    pub fn of(self, model: &BaselineModel) -> Affine {
        match self {
            Metric::Qc => model.qc,
            Metric::Delay => model.delay,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModelValues {
    pub ci: i64,
    pub go: i64,
    pub qc: i64,
    pub delay: i64,
}

pub fn evaluate_model(model: &BaselineModel, n: u64) -> Result<ModelValues, CostError> {
    if n == 0 {
        return Err(CostError::ZeroDigits);
    }
    Ok(ModelValues {
        ci: model.ci.eval(n),
        go: model.go.eval(n),
        qc: model.qc.eval(n),
        delay: model.delay.eval(n),
    })
}

/// Values of one metric for several designs over several sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CostTable {
    pub metric: Metric,
    pub designs: Vec<&'static BaselineModel>,
    /// `(N, one cell per design)`.
    pub rows: Vec<(u64, Vec<i64>)>,
}

impl CostTable {
    pub fn cell(&self, n: u64, design: &str) -> Option<i64> {
        let col = self.designs.iter().position(|m| m.name == design)?;
        self.rows.iter().find(|(k, _)| *k == n).map(|(_, r)| r[col])
    }
}

pub fn cost_table(metric: Metric, designs: &[&str], ns: &[u64]) -> Result<CostTable, CostError> {
    if ns.is_empty() {
        return Err(CostError::NoSizes);
    }
    let designs = designs
        .iter()
        .map(|d| find_model(d))
        .collect::<Result<Vec<_>, _>>()?;
    let rows = ns
        .iter()
        .map(|&n| {
            let cells = designs
                .iter()
                .map(|m| evaluate_model(m, n).map(|_| metric.of(m).eval(n)))
                .collect::<Result<Vec<_>, _>>()?;
            Ok((n, cells))
        })
        .collect::<Result<Vec<_>, CostError>>()?;
    Ok(CostTable {
        metric,
        designs,
        rows,
    })
}

/// The published layout: six baselines followed by the two proposed designs.
pub fn comparison_table(metric: Metric, ns: &[u64]) -> Result<CostTable, CostError> {
    let designs: Vec<&str> = COMPARISON_BASELINES.iter().chain(&PROPOSED).copied().collect();
    cost_table(metric, &designs, ns)
}

/// Exact percentage reductions of a proposed design against baselines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Improvement {
    /// `(N, mean over baselines)`.
    pub per_n: Vec<(u64, Ratio<i128>)>,
    /// Mean of the per-N values.
    pub average: Ratio<i128>,
}

pub fn improvement(
    proposed: &str,
    baselines: &[&str],
    ns: &[u64],
    metric: Metric,
) -> Result<Improvement, CostError> {
    if ns.is_empty() || baselines.is_empty() {
        return Err(CostError::NoSizes);
    }
    let target = find_model(proposed)?;
    let bases = baselines
        .iter()
        .map(|b| find_model(b))
        .collect::<Result<Vec<_>, _>>()?;
    let mut per_n = Vec::with_capacity(ns.len());
    for &n in ns {
        evaluate_model(target, n)?;
        let p = i128::from(metric.of(target).eval(n));
        let mut sum = Ratio::from_integer(0);
        for base in &bases {
            let b = i128::from(metric.of(base).eval(n));
            if b == 0 {
                return Err(CostError::ZeroBaseline(base.name.into()));
            }
            sum += Ratio::new(100 * (b - p), b);
        }
        per_n.push((n, sum / bases.len() as i128));
    }
    let average = per_n.iter().map(|(_, r)| *r).sum::<Ratio<i128>>() / per_n.len() as i128;
    Ok(Improvement { per_n, average })
}

/// Rounds to hundredths, halves away from negative infinity: `floor(100 x + 1/2)`.
pub fn hundredths(x: Ratio<i128>) -> i128 {
    let scaled = x * 100 + Ratio::new(1, 2);
    scaled.numer().div_floor(scaled.denom())
}

/// Formats a hundredths count as a fixed two-decimal string (`-2` → `-0.02`).
pub fn format_hundredths(h: i128) -> String {
    let sign = if h < 0 { "-" } else { "" };
    let a = h.unsigned_abs();
    alloc::format!("{sign}{}.{:02}", a / 100, a % 100)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CostPoint {
    pub design: String,
    pub n: u64,
    pub qc: i64,
    pub delay: i64,
}

impl CostPoint {
    pub fn from_model(model: &BaselineModel, n: u64) -> Result<Self, CostError> {
        let v = evaluate_model(model, n)?;
        Ok(CostPoint {
            design: model.label.into(),
            n,
            qc: v.qc,
            delay: v.delay,
        })
    }

    /// `self` is no worse in both objectives and strictly better in one.
    pub fn dominates(&self, other: &CostPoint) -> bool {
        self.qc <= other.qc && self.delay <= other.delay && (self.qc < other.qc || self.delay < other.delay)
    }
}

/// The eight published comparison points at size `n`.
pub fn comparison_points(n: u64) -> Result<Vec<CostPoint>, CostError> {
    COMPARISON_BASELINES
        .iter()
        .chain(&PROPOSED)
        .map(|d| CostPoint::from_model(find_model(d)?, n))
        .collect()
}

/// Non-dominated points, ascending by qc (then delay). Equal points are all kept.
pub fn pareto_front(points: &[CostPoint]) -> Vec<CostPoint> {
    let mut front: Vec<CostPoint> = points
        .iter()
        .filter(|x| !points.iter().any(|y| y.dominates(x)))
        .cloned()
        .collect();
    front.sort_by_key(|p| (p.qc, p.delay));
    front
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn model_evaluation() {
        let rca = find_model("dec-rca").unwrap();
        let v = evaluate_model(rca, 8).unwrap();
        assert_eq!((v.qc, v.delay), (360, 210));
        assert_eq!(
            evaluate_model(find_model("ref13").unwrap(), 256).unwrap().qc,
            22528
        );
        assert_eq!(
            evaluate_model(find_model("dec-csk").unwrap(), 1).unwrap().delay,
            45
        );
        assert_eq!(evaluate_model(rca, 0), Err(CostError::ZeroDigits));
        assert!(matches!(find_model("nope"), Err(CostError::UnknownDesign(_))));
    }

    #[test]
    fn affine_display() {
        assert_eq!(alloc::format!("{}", Affine::new(25, 10)), "25N+10");
        assert_eq!(alloc::format!("{}", Affine::new(1, -1)), "N-1");
        assert_eq!(alloc::format!("{}", Affine::new(58, 0)), "58N");
    }

    #[test]
    fn tables() {
        let t = comparison_table(Metric::Delay, &[8]).unwrap();
        assert_eq!(t.rows[0].1, vec![320, 456, 432, 496, 320, 248, 210, 80]);
        let q = comparison_table(Metric::Qc, &[16]).unwrap();
        assert_eq!(q.cell(16, "dec-csk"), Some(1040));
        let one = cost_table(Metric::Qc, &["ref14"], &[3]).unwrap();
        assert_eq!(one.rows, vec![(3, vec![168])]);
        assert_eq!(cost_table(Metric::Qc, &["ref14"], &[]), Err(CostError::NoSizes));
    }

    #[test]
    fn rounding() {
        assert_eq!(hundredths(Ratio::new(30757, 1000)), 3076);
        assert_eq!(hundredths(Ratio::new(-187, 10000)), -2);
        assert_eq!(hundredths(Ratio::new(1, 200)), 1);
        assert_eq!(hundredths(Ratio::new(-1, 200)), 0);
        assert_eq!(format_hundredths(-2), "-0.02");
        assert_eq!(format_hundredths(8512), "85.12");
        assert_eq!(format_hundredths(0), "0.00");
    }

    #[test]
    fn self_improvement_is_zero() {
        let imp = improvement("ref14", &["ref14"], &[8, 16], Metric::Qc).unwrap();
        assert_eq!(hundredths(imp.average), 0);
    }

    #[test]
    fn pareto_ties_and_singletons() {
        let p = |d: &str, qc, delay| CostPoint {
            design: d.into(),
            n: 1,
            qc,
            delay,
        };
        assert!(pareto_front(&[]).is_empty());
        assert_eq!(pareto_front(&[p("a", 1, 1)]), vec![p("a", 1, 1)]);
        assert_eq!(pareto_front(&[p("a", 1, 1), p("b", 1, 1)]).len(), 2);
        assert_eq!(pareto_front(&[p("a", 1, 1), p("b", 1, 2)]), vec![p("a", 1, 1)]);
        let front = pareto_front(&comparison_points(16).unwrap());
        let names: Vec<&str> = front.iter().map(|c| c.design.as_str()).collect();
        assert_eq!(names, ["Dec-RCA", "Dec-CSK"]);
    }
}
