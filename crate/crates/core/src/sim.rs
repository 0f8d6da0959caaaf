//! Bit-exact evaluation of netlists.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::SimError;
use crate::netlist::{LineRole, Netlist};

/// Exhaustive modes refuse netlists wider than this many lines.
pub const EXHAUSTIVE_LIMIT: usize = 20;

/// Primary-input assignment keyed by line label.
pub type Assignment = BTreeMap<String, bool>;

/// One value per netlist line.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitState(pub Vec<bool>);

impl BitState {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, line: usize) -> bool {
        self.0[line]
    }

    /// Packs the state into an integer, line 0 in bit 0. Widths above 64 are truncated.
    pub fn to_u64(&self) -> u64 {
        self.0
            .iter()
            .take(64)
            .enumerate()
            .fold(0, |acc, (i, &b)| acc | (b as u64) << i)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimulationResult {
    pub terminal: BitState,
    /// Named outputs in designation order.
    pub named: Vec<(String, bool)>,
    /// Every restored line ends with its initial value.
    pub restored_ok: bool,
}

impl SimulationResult {
    pub fn output(&self, name: &str) -> Option<bool> {
        self.named.iter().find(|(n, _)| n == name).map(|&(_, v)| v)
    }
}

/// Builds the time-zero state from an input assignment.
pub fn initial_state(netlist: &Netlist, inputs: &Assignment) -> Result<BitState, SimError> {
    for label in inputs.keys() {
        if netlist.input_line(label).is_none() {
            return Err(SimError::UnknownInput(label.clone()));
        }
    }
    netlist
        .roles()
        .iter()
        .map(|role| match role {
            LineRole::Constant(bit) => Ok(*bit),
            LineRole::Input(label) => inputs
                .get(label)
                .copied()
                .ok_or_else(|| SimError::MissingInput(label.clone())),
        })
        .collect::<Result<Vec<_>, _>>()
        .map(BitState)
}

/// Applies every gate, in order, to a raw line state.
pub fn evaluate(netlist: &Netlist, state: &mut BitState) -> Result<(), SimError> {
    if state.len() != netlist.width() {
        return Err(SimError::StateWidth {
            width: netlist.width(),
            got: state.len(),
        });
    }
    let lines = &mut state.0;
    for gate in netlist.gates() {
        let pins = gate.pins();
        let packed = pins
            .iter()
            .enumerate()
            .fold(0u8, |acc, (i, &l)| acc | (lines[l] as u8) << i);
        let out = gate.kind().apply_packed(packed);
        for (i, &l) in pins.iter().enumerate() {
            lines[l] = (out >> i) & 1 == 1;
        }
    }
    Ok(())
}

/// Applies every gate to a state packed into a `u64` (line `i` in bit `i`).
pub fn evaluate_packed(netlist: &Netlist, mut state: u64) -> u64 {
    for gate in netlist.gates() {
        let pins = gate.pins();
        let packed = pins
            .iter()
            .enumerate()
            .fold(0u8, |acc, (i, &l)| acc | (((state >> l) & 1) as u8) << i);
        let out = gate.kind().apply_packed(packed);
        for (i, &l) in pins.iter().enumerate() {
            let bit = ((out >> i) & 1) as u64;
            state = (state & !(1 << l)) | bit << l;
        }
    }
    state
}

fn collect(netlist: &Netlist, initial: &BitState, terminal: BitState) -> SimulationResult {
    let outputs = netlist.outputs();
    let named = outputs
        .named()
        .iter()
        .map(|(name, line)| (name.clone(), terminal.get(*line)))
        .collect();
    let restored_ok = outputs
        .restored()
        .iter()
        .all(|&l| terminal.get(l) == initial.get(l));
    SimulationResult {
        terminal,
        named,
        restored_ok,
    }
}

/// Simulates one input assignment.
pub fn run(netlist: &Netlist, inputs: &Assignment) -> Result<SimulationResult, SimError> {
    let initial = initial_state(netlist, inputs)?;
    run_state(netlist, &initial)
}

/// Simulates from an explicit time-zero state (constants are taken from `initial` as given).
pub fn run_state(netlist: &Netlist, initial: &BitState) -> Result<SimulationResult, SimError> {
    let mut terminal = initial.clone();
    evaluate(netlist, &mut terminal)?;
    Ok(collect(netlist, initial, terminal))
}

/// Element-wise [`run`], order preserved.
pub fn run_batch(netlist: &Netlist, inputs: &[Assignment]) -> Result<Vec<SimulationResult>, SimError> {
    inputs
        .iter()
        .enumerate()
        .map(|(index, a)| {
            run(netlist, a).map_err(|e| SimError::Batch {
                index,
                source: Box::new(e),
            })
        })
        .collect()
}

fn check_capacity(netlist: &Netlist) -> Result<(), SimError> {
    if netlist.width() > EXHAUSTIVE_LIMIT {
        return Err(SimError::Capacity {
            width: netlist.width(),
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    Ok(())
}

/// Every assignment of the primary inputs with constants fixed at their roles.
///
/// Row `k` sets the `i`-th primary input (in line order) to bit `i` of `k`.
pub fn truth_table(netlist: &Netlist) -> Result<Vec<(BitState, BitState)>, SimError> {
    check_capacity(netlist)?;
    let input_lines: Vec<usize> = netlist.input_lines().map(|(l, _)| l).collect();
    let base = netlist
        .roles()
        .iter()
        .enumerate()
        .fold(0u64, |acc, (i, r)| match r {
            LineRole::Constant(true) => acc | 1 << i,
            _ => acc,
        });
    let width = netlist.width();
    let unpack = |s: u64| BitState((0..width).map(|i| (s >> i) & 1 == 1).collect());
    Ok((0u64..1 << input_lines.len())
        .map(|k| {
            let start = input_lines
                .iter()
                .enumerate()
                .fold(base, |acc, (bit, &l)| acc | ((k >> bit) & 1) << l);
            (unpack(start), unpack(evaluate_packed(netlist, start)))
        })
        .collect())
}

/// Checks that the raw circuit map over all `2^width` line states is one-to-one.
///
/// Constant lines are varied too, so this tests the permutation itself rather
/// than the function used with fixed ancillae.
pub fn check_permutation(netlist: &Netlist) -> Result<bool, SimError> {
    check_capacity(netlist)?;
    let states = 1usize << netlist.width();
    let mut seen = vec![0u64; states.div_ceil(64)];
    for start in 0..states as u64 {
        let end = evaluate_packed(netlist, start) as usize;
        let (word, bit) = (end / 64, end % 64);
        if seen[word] >> bit & 1 == 1 {
            return Ok(false);
        }
        seen[word] |= 1 << bit;
    }
    Ok(true)
}
