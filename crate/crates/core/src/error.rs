use alloc::string::String;

use crate::gate::GateKind;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GateError {
    #[error("{kind} takes {expected} inputs, got {got}")]
    ArityMismatch {
        kind: GateKind,
        expected: usize,
        got: usize,
    },
    #[error("unknown gate kind")]
    UnknownKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NetlistError {
    #[error("netlist width must be positive")]
    ZeroWidth,
    #[error("{roles} line roles given for a netlist of width {width}")]
    RoleCount { width: usize, roles: usize },
    #[error("{kind} needs {expected} pins, got {got}")]
    PinCount {
        kind: GateKind,
        expected: usize,
        got: usize,
    },
    #[error("line {line} is out of range for width {width}")]
    LineOutOfRange { line: usize, width: usize },
    #[error("{kind} touches line {line} more than once (fan-in violation)")]
    DuplicatePin { kind: GateKind, line: usize },
    #[error("output name `{0}` is designated twice")]
    DuplicateOutputName(String),
    #[error("line {0} is designated as more than one output")]
    DuplicateOutputLine(usize),
    #[error("line {0} cannot be both a named output and a restored input")]
    NamedAndRestored(usize),
    #[error("line {0} is restored but is not a primary input")]
    RestoredNotInput(usize),
    #[error("input label `{0}` is used by more than one line")]
    DuplicateLabel(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimError {
    #[error("no value assigned to input `{0}`")]
    MissingInput(String),
    #[error("`{0}` is not a primary input of this netlist")]
    UnknownInput(String),
    #[error(
        "exhaustive evaluation is limited to {limit} lines, netlist has {width}; use sampled verification"
    )]
    Capacity { width: usize, limit: usize },
    #[error("batch element {index}: {source}")]
    Batch {
        index: usize,
        #[source]
        source: alloc::boxed::Box<SimError>,
    },
    #[error("state has {got} lines, netlist has {width}")]
    StateWidth { width: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MetricError {
    #[error("no named outputs are designated, delay is undefined")]
    NoOutputs,
    #[error("no output named `{0}`")]
    UnknownOutput(String),
    #[error("line {0} does not exist")]
    UnknownLine(usize),
    #[error("gate {0} has no stage tag")]
    Untagged(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DesignError {
    #[error("digit count must be at least 1")]
    ZeroDigits,
    #[error("digit {0} is not a valid BCD digit")]
    InvalidDigit(u8),
    #[error(transparent)]
    Netlist(#[from] NetlistError),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BcdError {
    #[error("{value} does not fit in {width} decimal digits")]
    Capacity { value: u128, width: usize },
    #[error("digit value {0} is not valid BCD")]
    InvalidDigit(u8),
    #[error("operand widths differ ({0} vs {1})")]
    WidthMismatch(usize, usize),
    #[error("`{0}` is not a decimal number")]
    NotDecimal(String),
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error(transparent)]
    Sim(#[from] SimError),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CostError {
    #[error("digit count must be at least 1")]
    ZeroDigits,
    #[error("no cost model named `{0}`")]
    UnknownDesign(String),
    #[error("at least one digit size is required")]
    NoSizes,
    #[error("baseline `{0}` evaluates to zero")]
    ZeroBaseline(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LedgerError {
    #[error("group `{group}` overflows {width} digits")]
    Overflow { group: String, width: usize },
    #[error("amount {amount} in group `{group}` does not fit {width} digits")]
    AmountTooWide {
        group: String,
        amount: u64,
        width: usize,
    },
    #[error(transparent)]
    Bcd(#[from] BcdError),
}
