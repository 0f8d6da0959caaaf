//! Markdown, CSV, TSV and SVG renderings. All numbers are printed with a dot
//! decimal separator and no grouping.

use std::fmt::Write as _;
use std::str::FromStr;

use revbcd_core::adders;
use revbcd_core::cost::{
    self, comparison_points, comparison_table, format_hundredths, hundredths, CostPoint, CostTable,
    Improvement, Metric, COMPARISON_BASELINES,
};
use revbcd_core::ledger::LedgerReport;
use revbcd_core::metrics::{structural_metrics, StageMetrics};
use revbcd_core::{CostError, DesignError, MetricReport};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TableFormat {
    #[default]
    Markdown,
    Csv,
}

impl FromStr for TableFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "md" | "markdown" => Ok(TableFormat::Markdown),
            "csv" => Ok(TableFormat::Csv),
            _ => Err(format!("unknown format `{s}` (md, csv)")),
        }
    }
}

/// Row-oriented table rendered to either format.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<S: Into<String>>(&mut self, row: impl IntoIterator<Item = S>) {
        self.rows.push(row.into_iter().map(Into::into).collect());
    }

    pub fn render(&self, format: TableFormat) -> String {
        match format {
            TableFormat::Markdown => self.markdown(),
            TableFormat::Csv => self.csv(),
        }
    }

    fn markdown(&self) -> String {
        let line = |cells: &[String]| format!("| {} |\n", cells.join(" | "));
        let mut out = line(&self.header);
        out.push_str(&line(&vec!["---".to_string(); self.header.len()]));
        for r in &self.rows {
            out.push_str(&line(r));
        }
        out
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
    }
}

pub fn metrics_line(m: &MetricReport) -> String {
    format!(
        "gc={} ci={} go={} qc={} delay={}",
        m.gc, m.ci, m.go, m.qc, m.delay
    )
}

pub fn metrics_table(m: &MetricReport, stages: Option<&[StageMetrics]>) -> Table {
    let mut t = Table::new(["scope", "gc", "ci", "go", "qc", "delay"]);
    let row = |name: &str, m: &MetricReport| {
        [
            name.to_string(),
            m.gc.to_string(),
            m.ci.to_string(),
            m.go.to_string(),
            m.qc.to_string(),
            m.delay.to_string(),
        ]
    };
    for s in stages.unwrap_or_default() {
        t.push(row(s.stage.name(), &s.report));
    }
    t.push(row("total", m));
    t
}

/// A cost table plus improvement columns for both proposed designs.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub table: CostTable,
    pub rca: Improvement,
    pub csk: Improvement,
}

pub fn comparison(metric: Metric, ns: &[u64]) -> Result<Comparison, CostError> {
    Ok(Comparison {
        table: comparison_table(metric, ns)?,
        rca: cost::improvement("dec-rca", &COMPARISON_BASELINES, ns, metric)?,
        csk: cost::improvement("dec-csk", &COMPARISON_BASELINES, ns, metric)?,
    })
}

fn pct(r: &revbcd_core::cost::Ratio<i128>) -> String {
    format_hundredths(hundredths(*r))
}

impl Comparison {
    /// One row per N; a total-average row follows when several sizes are given.
    pub fn to_table(&self) -> Table {
        let mut header = vec!["digit".to_string()];
        header.extend(self.table.designs.iter().map(|m| m.label.to_string()));
        header.push("% Impr Dec-RCA".into());
        header.push("% Impr Dec-CSK".into());
        let mut t = Table::new(header);
        for (i, (n, cells)) in self.table.rows.iter().enumerate() {
            let mut row = vec![n.to_string()];
            row.extend(cells.iter().map(|c| c.to_string()));
            row.push(pct(&self.rca.per_n[i].1));
            row.push(pct(&self.csk.per_n[i].1));
            t.push(row);
        }
        if self.table.rows.len() > 1 {
            let mut row = vec!["average".to_string()];
            row.extend(self.table.designs.iter().map(|_| String::new()));
            row.push(pct(&self.rca.average));
            row.push(pct(&self.csk.average));
            t.push(row);
        }
        t
    }

    pub fn footer(&self) -> Option<String> {
        let csk = hundredths(self.csk.average);
        (self.table.metric == Metric::Qc && csk < 0 && self.table.rows.len() > 1).then(|| {
            format!(
                "Dec-CSK changes the average quantum cost by {}%: a slight increase over the baselines, not a reduction.",
                format_hundredths(csk)
            )
        })
    }

    pub fn render(&self, format: TableFormat) -> String {
        let mut out = String::new();
        if format == TableFormat::Markdown {
            let title = match self.table.metric {
                Metric::Qc => "Quantum cost",
                Metric::Delay => "Delay (Δ)",
            };
            let _ = writeln!(out, "### {title}\n");
        }
        out.push_str(&self.to_table().render(format));
        if let (TableFormat::Markdown, Some(f)) = (format, self.footer()) {
            let _ = writeln!(out, "\n{f}");
        }
        out
    }
}

/// Structural metrics of the built adders beside their closed-form models.
pub fn structural_deltas(ns: &[u64]) -> Result<Table, DesignError> {
    let mut t = Table::new(["design", "digit", "metric", "formula", "structural", "delta"]);
    for name in cost::PROPOSED {
        let model = cost::find_model(name).expect("proposed models exist");
        let design: adders::Design = name.parse().expect("proposed designs are buildable");
        for &n in ns {
            let m = structural_metrics(&design.build(n as usize)?).expect("adders designate outputs");
            let rows = [
                ("ci", model.ci, m.ci),
                ("go", model.go, m.go),
                ("qc", model.qc, m.qc),
                ("delay", model.delay, m.delay),
            ];
            for (metric, f, s) in rows {
                let f = f.eval(n);
                let d = s as i64 - f;
                t.push([
                    model.label.to_string(),
                    n.to_string(),
                    metric.to_string(),
                    f.to_string(),
                    s.to_string(),
                    format!("{d:+}"),
                ]);
            }
        }
    }
    Ok(t)
}

/// All comparison points at each size with their front membership.
pub fn pareto_rows(ns: &[u64]) -> Result<Vec<(CostPoint, bool)>, CostError> {
    let mut out = Vec::new();
    for &n in ns {
        let points = comparison_points(n)?;
        let front = cost::pareto_front(&points);
        let mut tagged: Vec<(CostPoint, bool)> = points
            .into_iter()
            .map(|p| {
                let on = front.contains(&p);
                (p, on)
            })
            .collect();
        tagged.sort_by_key(|(p, _)| (p.qc, p.delay));
        out.extend(tagged);
    }
    Ok(out)
}

/// `n, qc, delay, name, on_front`, tab separated.
pub fn pareto_tsv(rows: &[(CostPoint, bool)]) -> String {
    let mut out = String::from("n\tqc\tdelay\tname\ton_front\n");
    for (p, on) in rows {
        let _ = writeln!(out, "{}\t{}\t{}\t{}\t{}", p.n, p.qc, p.delay, p.design, *on as u8);
    }
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Scatter of one size's points with the front drawn as a poly-line.
pub fn pareto_svg(n: u64, rows: &[(CostPoint, bool)]) -> String {
    let pts: Vec<&(CostPoint, bool)> = rows.iter().filter(|(p, _)| p.n == n).collect();
    let (w, h, m) = (640.0, 420.0, 60.0);
    let max_qc = pts.iter().map(|(p, _)| p.qc).max().unwrap_or(1).max(1) as f64 * 1.1;
    let max_d = pts.iter().map(|(p, _)| p.delay).max().unwrap_or(1).max(1) as f64 * 1.1;
    let x = |qc: i64| m + qc as f64 / max_qc * (w - 2.0 * m);
    let y = |d: i64| h - m - d as f64 / max_d * (h - 2.0 * m);
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\" font-family=\"sans-serif\" font-size=\"11\">"
    );
    let _ = writeln!(s, "<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>");
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">N = {n}</text>",
        w / 2.0
    );
    let _ = writeln!(
        s,
        "<line x1=\"{m}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/><line x1=\"{m}\" y1=\"{m}\" x2=\"{m}\" y2=\"{b}\" stroke=\"black\"/>",
        b = h - m,
        r = w - m
    );
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">quantum cost</text>",
        w / 2.0,
        h - 20.0
    );
    let _ = writeln!(
        s,
        "<text x=\"18\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {})\">delay</text>",
        h / 2.0,
        h / 2.0
    );
    let front: Vec<String> = pts
        .iter()
        .filter(|(_, on)| *on)
        .map(|(p, _)| format!("{:.1},{:.1}", x(p.qc), y(p.delay)))
        .collect();
    if front.len() > 1 {
        let _ = writeln!(
            s,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\"/>",
            front.join(" ")
        );
    }
    for (p, on) in &pts {
        let color = if *on { "#c0392b" } else { "#34495e" };
        let (cx, cy) = (x(p.qc), y(p.delay));
        let _ = writeln!(
            s,
            "<circle cx=\"{cx:.1}\" cy=\"{cy:.1}\" r=\"4\" fill=\"{color}\"/>"
        );
        let _ = writeln!(
            s,
            "<text x=\"{:.1}\" y=\"{:.1}\">{} ({}, {})</text>",
            cx + 6.0,
            cy - 6.0,
            escape(&p.design),
            p.qc,
            p.delay
        );
    }
    s.push_str("</svg>\n");
    s
}

pub fn ledger_table(report: &LedgerReport) -> Table {
    let mut t = Table::new(["group", "records", "bcd_total", "native_total", "match"]);
    for g in &report.groups {
        t.push([
            g.group.clone(),
            g.records.to_string(),
            g.bcd_total.to_string(),
            g.native_total.to_string(),
            g.matches().to_string(),
        ]);
    }
    t
}

/// `{"groups": .., "additions": .., "mismatches": ..}` on one line.
pub fn ledger_summary(report: &LedgerReport) -> String {
    serde_json::json!({
        "groups": report.groups.len(),
        "additions": report.additions,
        "mismatches": report.mismatches,
    })
    .to_string()
}
