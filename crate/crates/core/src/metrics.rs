//! Gate count, ancillae, garbage, quantum cost and critical-path delay.
//!
//! Delay follows a pure longest-path model: every line starts at 0Δ, and a
//! gate sets all of its pins to `max(pin arrivals) + gate delay`, including
//! pass-through outputs. Circuit delay is the latest arrival over the named
//! outputs; garbage lines do not count.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::MetricError;
use crate::netlist::{Netlist, Stage};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct MetricReport {
    pub gc: u64,
    pub ci: u64,
    pub go: u64,
    pub qc: u64,
    pub delay: u64,
}

/// Arrival times of every line as the gates are applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrivalProfile {
    gate_finish: Vec<u64>,
    terminal: Vec<u64>,
    touches: Vec<Vec<usize>>,
}

impl ArrivalProfile {
    pub fn compute(netlist: &Netlist) -> Self {
        let mut arrival = vec![0u64; netlist.width()];
        let mut touches = vec![Vec::new(); netlist.width()];
        let gate_finish = netlist
            .gates()
            .iter()
            .enumerate()
            .map(|(g, gate)| {
                let start = gate.pins().iter().map(|&l| arrival[l]).max().unwrap_or(0);
                let finish = start + u64::from(gate.kind().delay());
                for &l in gate.pins() {
                    arrival[l] = finish;
                    touches[l].push(g);
                }
                finish
            })
            .collect();
        ArrivalProfile {
            gate_finish,
            terminal: arrival,
            touches,
        }
    }

    /// Finish time of each gate, in list order.
    pub fn gate_finish(&self) -> &[u64] {
        &self.gate_finish
    }

    /// Arrival on every line after the last gate.
    pub fn terminal(&self) -> &[u64] {
        &self.terminal
    }

    /// `(gate index, arrival after that gate)` for each gate touching `line`.
    pub fn history(&self, line: usize) -> Vec<(usize, u64)> {
        self.touches[line]
            .iter()
            .map(|&g| (g, self.gate_finish[g]))
            .collect()
    }

    /// Arrival on `line` once the first `gates` gates have been applied.
    pub fn arrival_after(&self, line: usize, gates: usize) -> u64 {
        self.touches[line]
            .iter()
            .take_while(|&&g| g < gates)
            .last()
            .map_or(0, |&g| self.gate_finish[g])
    }

    fn last_gate(&self, line: usize) -> Option<usize> {
        self.touches[line].last().copied()
    }
}

/// Either a raw line or a named output.
#[derive(Clone, Copy, Debug)]
pub enum Probe<'a> {
    Line(usize),
    Output(&'a str),
}

pub fn structural_metrics(netlist: &Netlist) -> Result<MetricReport, MetricError> {
    let named = netlist.outputs().named();
    if named.is_empty() {
        return Err(MetricError::NoOutputs);
    }
    let profile = ArrivalProfile::compute(netlist);
    let delay = named.iter().map(|&(_, l)| profile.terminal[l]).max().unwrap_or(0);
    Ok(MetricReport {
        gc: netlist.gates().len() as u64,
        ci: netlist.constant_count() as u64,
        go: netlist.garbage_lines().len() as u64,
        qc: quantum_cost(netlist),
        delay,
    })
}

pub fn quantum_cost(netlist: &Netlist) -> u64 {
    netlist
        .gates()
        .iter()
        .map(|g| u64::from(g.kind().quantum_cost()))
        .sum()
}

/// Terminal arrival of a line or named output.
pub fn arrival_of(netlist: &Netlist, probe: Probe<'_>) -> Result<u64, MetricError> {
    let line = resolve(netlist, probe)?;
    Ok(ArrivalProfile::compute(netlist).terminal[line])
}

fn resolve(netlist: &Netlist, probe: Probe<'_>) -> Result<usize, MetricError> {
    match probe {
        Probe::Line(l) if l < netlist.width() => Ok(l),
        Probe::Line(l) => Err(MetricError::UnknownLine(l)),
        Probe::Output(name) => netlist
            .outputs()
            .line_of(name)
            .ok_or_else(|| MetricError::UnknownOutput(name.into())),
    }
}

/// Metrics attributed to one stage.
///
/// Constants belong to the stage of the first gate that reads them, garbage to
/// the stage of the last gate that writes the line. `delay` is the stage's
/// contribution: how far its last gate finishes past every earlier stage.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StageMetrics {
    pub stage: Stage,
    pub report: MetricReport,
    pub completion: u64,
}

/// Per-stage breakdown over the stages present, in addition, detection,
/// correction order.
pub fn metric_decomposition(netlist: &Netlist) -> Result<Vec<StageMetrics>, MetricError> {
    let stage_of = |g: usize| -> Result<Stage, MetricError> {
        netlist.gates()[g].stage().ok_or(MetricError::Untagged(g))
    };
    let mut present = [false; Stage::ALL.len()];
    for g in 0..netlist.gates().len() {
        present[stage_of(g)? as usize] = true;
    }
    let order: Vec<Stage> = Stage::ALL.into_iter().filter(|&s| present[s as usize]).collect();
    let profile = ArrivalProfile::compute(netlist);
    let mut rows: Vec<StageMetrics> = order
        .iter()
        .map(|&stage| StageMetrics {
            stage,
            report: MetricReport::default(),
            completion: 0,
        })
        .collect();
    let slot = |s: Stage| order.iter().position(|&o| o == s).unwrap_or(0);

    for (g, gate) in netlist.gates().iter().enumerate() {
        let row = &mut rows[slot(stage_of(g)?)];
        row.report.gc += 1;
        row.report.qc += u64::from(gate.kind().quantum_cost());
        row.completion = row.completion.max(profile.gate_finish[g]);
    }
    for (line, role) in netlist.roles().iter().enumerate() {
        if role.is_constant() {
            if let Some(&g) = profile.touches[line].first() {
                rows[slot(stage_of(g)?)].report.ci += 1;
            }
        }
    }
    for line in netlist.garbage_lines() {
        if let Some(g) = profile.last_gate(line) {
            rows[slot(stage_of(g)?)].report.go += 1;
        }
    }
    let mut reached = 0;
    for row in &mut rows {
        row.report.delay = row.completion.saturating_sub(reached);
        reached = reached.max(row.completion);
    }
    Ok(rows)
}
