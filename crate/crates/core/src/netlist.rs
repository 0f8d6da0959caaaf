//! Line-based reversible netlists.
//!
//! A netlist is a fixed set of lines and an ordered list of gates. Each gate
//! reads and overwrites the lines it touches, so a value can only ever be
//! consumed by the next gate on its line: fan-out is impossible by
//! construction and gates apply strictly in list order.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::NetlistError;
use crate::gate::GateKind;

/// What a line carries at time zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LineRole {
    Input(String),
    Constant(bool),
}

impl LineRole {
    pub fn input(label: impl Into<String>) -> Self {
        LineRole::Input(label.into())
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, LineRole::Constant(_))
    }

    pub fn label(&self) -> Option<&str> {
        match self {
            LineRole::Input(l) => Some(l),
            LineRole::Constant(_) => None,
        }
    }
}

/// Functional stage a gate belongs to, used for per-stage cost breakdowns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stage {
    /// Binary addition of the operand digits.
    Addition,
    /// Invalid-result detection, decimal carry and skip logic.
    Detection,
    /// Add-six correction of the sum digit.
    Correction,
}

impl Stage {
    pub const ALL: [Stage; 3] = [Stage::Addition, Stage::Detection, Stage::Correction];

    pub const fn name(self) -> &'static str {
        match self {
            Stage::Addition => "addition",
            Stage::Detection => "detection",
            Stage::Correction => "correction",
        }
    }

    pub fn from_name(name: &str) -> Option<Stage> {
        Stage::ALL.into_iter().find(|s| s.name() == name)
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One placed gate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GateInstance {
    kind: GateKind,
    pins: [usize; 4],
    stage: Option<Stage>,
}

impl GateInstance {
    pub fn kind(&self) -> GateKind {
        self.kind
    }

    /// Line indices in pin order; length equals the gate's arity.
    pub fn pins(&self) -> &[usize] {
        &self.pins[..self.kind.arity()]
    }

    pub fn stage(&self) -> Option<Stage> {
        self.stage
    }
}

/// Named results plus the lines that hand back their primary input unchanged.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OutputDesignation {
    named: Vec<(String, usize)>,
    restored: BTreeSet<usize>,
}

impl OutputDesignation {
    pub fn named(&self) -> &[(String, usize)] {
        &self.named
    }

    pub fn restored(&self) -> &BTreeSet<usize> {
        &self.restored
    }

    pub fn line_of(&self, name: &str) -> Option<usize> {
        self.named.iter().find(|(n, _)| n == name).map(|&(_, l)| l)
    }

    pub fn is_empty(&self) -> bool {
        self.named.is_empty() && self.restored.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Netlist {
    roles: Vec<LineRole>,
    gates: Vec<GateInstance>,
    outputs: OutputDesignation,
}

impl Netlist {
    /// Creates an empty netlist over `width` lines.
    pub fn new(width: usize, roles: Vec<LineRole>) -> Result<Self, NetlistError> {
        if width == 0 {
            return Err(NetlistError::ZeroWidth);
        }
        if roles.len() != width {
            return Err(NetlistError::RoleCount {
                width,
                roles: roles.len(),
            });
        }
        let netlist = Netlist {
            roles,
            gates: Vec::new(),
            outputs: OutputDesignation::default(),
        };
        netlist.check_labels()?;
        Ok(netlist)
    }

    /// Starts a netlist with no lines; lines are added with [`Netlist::push_line`].
    pub(crate) fn empty() -> Self {
        Netlist {
            roles: Vec::new(),
            gates: Vec::new(),
            outputs: OutputDesignation::default(),
        }
    }

    pub(crate) fn push_line(&mut self, role: LineRole) -> usize {
        self.roles.push(role);
        self.roles.len() - 1
    }

    pub fn width(&self) -> usize {
        self.roles.len()
    }

    pub fn roles(&self) -> &[LineRole] {
        &self.roles
    }

    pub fn gates(&self) -> &[GateInstance] {
        &self.gates
    }

    pub fn outputs(&self) -> &OutputDesignation {
        &self.outputs
    }

    /// Appends an untagged gate.
    pub fn append_gate(&mut self, kind: GateKind, pins: &[usize]) -> Result<(), NetlistError> {
        self.push_gate(kind, pins, None)
    }

    /// Appends a gate tagged with the stage it implements.
    pub fn append_staged(
        &mut self,
        kind: GateKind,
        pins: &[usize],
        stage: Stage,
    ) -> Result<(), NetlistError> {
        self.push_gate(kind, pins, Some(stage))
    }

    fn push_gate(
        &mut self,
        kind: GateKind,
        pins: &[usize],
        stage: Option<Stage>,
    ) -> Result<(), NetlistError> {
        check_pins(kind, pins, self.width())?;
        let mut packed = [0usize; 4];
        packed[..pins.len()].copy_from_slice(pins);
        self.gates.push(GateInstance {
            kind,
            pins: packed,
            stage,
        });
        Ok(())
    }

    /// Records named outputs and restored inputs, replacing any earlier designation.
    ///
    /// Every terminal line that ends up neither named nor restored is garbage.
    pub fn designate_outputs<I, S>(
        &mut self,
        names: I,
        restored: impl IntoIterator<Item = usize>,
    ) -> Result<(), NetlistError>
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        let named: Vec<(String, usize)> = names.into_iter().map(|(n, l)| (n.into(), l)).collect();
        let restored: BTreeSet<usize> = restored.into_iter().collect();
        let designation = OutputDesignation { named, restored };
        check_designation(&designation, &self.roles)?;
        self.outputs = designation;
        Ok(())
    }

    /// Full structural re-validation.
    pub fn validate(&self) -> Result<(), NetlistError> {
        if self.roles.is_empty() {
            return Err(NetlistError::ZeroWidth);
        }
        self.check_labels()?;
        for gate in &self.gates {
            check_pins(gate.kind, gate.pins(), self.width())?;
        }
        check_designation(&self.outputs, &self.roles)
    }

    fn check_labels(&self) -> Result<(), NetlistError> {
        let mut seen = BTreeSet::new();
        for label in self.roles.iter().filter_map(LineRole::label) {
            if !seen.insert(label) {
                return Err(NetlistError::DuplicateLabel(label.into()));
            }
        }
        Ok(())
    }

    pub fn input_lines(&self) -> impl Iterator<Item = (usize, &str)> + '_ {
        self.roles
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.label().map(|l| (i, l)))
    }

    pub fn input_line(&self, label: &str) -> Option<usize> {
        self.input_lines().find(|&(_, l)| l == label).map(|(i, _)| i)
    }

    pub fn constant_count(&self) -> usize {
        self.roles.iter().filter(|r| r.is_constant()).count()
    }

    /// Terminal lines that are neither named outputs nor restored inputs.
    pub fn garbage_lines(&self) -> Vec<usize> {
        let named: BTreeSet<usize> = self.outputs.named.iter().map(|&(_, l)| l).collect();
        (0..self.width())
            .filter(|l| !named.contains(l) && !self.outputs.restored.contains(l))
            .collect()
    }
}

fn check_pins(kind: GateKind, pins: &[usize], width: usize) -> Result<(), NetlistError> {
    if pins.len() != kind.arity() {
        return Err(NetlistError::PinCount {
            kind,
            expected: kind.arity(),
            got: pins.len(),
        });
    }
    for (i, &line) in pins.iter().enumerate() {
        if line >= width {
            return Err(NetlistError::LineOutOfRange { line, width });
        }
        if pins[..i].contains(&line) {
            return Err(NetlistError::DuplicatePin { kind, line });
        }
    }
    Ok(())
}

fn check_designation(outputs: &OutputDesignation, roles: &[LineRole]) -> Result<(), NetlistError> {
    let width = roles.len();
    let mut names = BTreeSet::new();
    let mut lines = BTreeSet::new();
    for (name, line) in &outputs.named {
        if *line >= width {
            return Err(NetlistError::LineOutOfRange { line: *line, width });
        }
        if !names.insert(name.as_str()) {
            return Err(NetlistError::DuplicateOutputName(name.clone()));
        }
        if !lines.insert(*line) {
            return Err(NetlistError::DuplicateOutputLine(*line));
        }
    }
    for &line in &outputs.restored {
        if line >= width {
            return Err(NetlistError::LineOutOfRange { line, width });
        }
        if lines.contains(&line) {
            return Err(NetlistError::NamedAndRestored(line));
        }
        if roles[line].is_constant() {
            return Err(NetlistError::RestoredNotInput(line));
        }
    }
    Ok(())
}
