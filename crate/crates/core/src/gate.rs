//! Reversible primitive gates.
//!
//! Every gate is a permutation of `{0,1}^arity`. Pin 0 is the `A` input and
//! the `P` output, pin 1 is `B`/`Q`, and so on. Bits are packed into a `u8`
//! with bit `i` holding pin `i`.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::GateError;

/// The seven reversible gates used by the adder designs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    /// Inverter, `P = !A`.
    Not,
    /// Feynman (CNOT), `P = A`, `Q = A ^ B`.
    Fg,
    /// Peres, `P = A`, `Q = A ^ B`, `R = AB ^ C`.
    Pg,
    /// Modified Fredkin, `P = A`, `Q = !A B ^ A !C`, `R = AB ^ !A C`.
    Mf,
    /// HNG, a reversible full adder when `D = 0`.
    Hng,
    /// BJN, `R = (A + B) ^ C`.
    Bjn,
    /// Double Feynman, `P = A`, `Q = A ^ B`, `R = A ^ C`.
    Dfg,
}

impl GateKind {
    pub const ALL: [GateKind; 7] = [
        GateKind::Not,
        GateKind::Fg,
        GateKind::Pg,
        GateKind::Mf,
        GateKind::Hng,
        GateKind::Bjn,
        GateKind::Dfg,
    ];

    pub const fn arity(self) -> usize {
        match self {
            GateKind::Not => 1,
            GateKind::Fg => 2,
            GateKind::Pg | GateKind::Mf | GateKind::Bjn | GateKind::Dfg => 3,
            GateKind::Hng => 4,
        }
    }

    /// Quantum cost in elementary operations. 1x1 gates are free.
    pub const fn quantum_cost(self) -> u32 {
        match self {
            GateKind::Not => 0,
            GateKind::Fg => 1,
            GateKind::Pg => 4,
            GateKind::Mf => 4,
            GateKind::Hng => 6,
            GateKind::Bjn => 5,
            GateKind::Dfg => 2,
        }
    }

    /// Gate delay in Δ units.
    pub const fn delay(self) -> u32 {
        match self {
            GateKind::Not => 1,
            GateKind::Fg => 1,
            GateKind::Pg => 4,
            GateKind::Mf => 3,
            GateKind::Hng => 5,
            GateKind::Bjn => 4,
            GateKind::Dfg => 2,
        }
    }

    /// `(quantum cost, delay)`.
    pub const fn cost(self) -> (u32, u32) {
        (self.quantum_cost(), self.delay())
    }

    pub const fn name(self) -> &'static str {
        match self {
            GateKind::Not => "NOT",
            GateKind::Fg => "FG",
            GateKind::Pg => "PG",
            GateKind::Mf => "MF",
            GateKind::Hng => "HNG",
            GateKind::Bjn => "BJN",
            GateKind::Dfg => "DFG",
        }
    }

    /// Applies the gate to packed pin values. Bits above `arity` are ignored.
    #[inline]
    pub fn apply_packed(self, bits: u8) -> u8 {
        let a = bits & 1;
        let b = (bits >> 1) & 1;
        let c = (bits >> 2) & 1;
        let d = (bits >> 3) & 1;
        match self {
            GateKind::Not => a ^ 1,
            GateKind::Fg => a | (a ^ b) << 1,
            GateKind::Pg => a | (a ^ b) << 1 | ((a & b) ^ c) << 2,
            GateKind::Mf => {
                let na = a ^ 1;
                let q = (na & b) ^ (a & (c ^ 1));
                let r = (a & b) ^ (na & c);
                a | q << 1 | r << 2
            }
            GateKind::Hng => {
                let r = a ^ b ^ c;
                let s = ((a ^ b) & c) ^ (a & b) ^ d;
                a | b << 1 | r << 2 | s << 3
            }
            GateKind::Bjn => a | b << 1 | ((a | b) ^ c) << 2,
            GateKind::Dfg => a | (a ^ b) << 1 | (a ^ c) << 2,
        }
    }

    /// Evaluates the gate on a tuple of pin values.
    pub fn apply(self, input: GateIo) -> Result<GateIo, GateError> {
        if input.arity() != self.arity() {
            return Err(GateError::ArityMismatch {
                kind: self,
                expected: self.arity(),
                got: input.arity(),
            });
        }
        Ok(GateIo {
            packed: self.apply_packed(input.packed),
            arity: input.arity,
        })
    }

    /// All `2^arity` rows of the gate, inputs in ascending packed order.
    pub fn truth_table(self) -> Vec<(GateIo, GateIo)> {
        let arity = self.arity() as u8;
        (0..1u8 << arity)
            .map(|bits| {
                let input = GateIo { packed: bits, arity };
                let output = GateIo {
                    packed: self.apply_packed(bits),
                    arity,
                };
                (input, output)
            })
            .collect()
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GateKind {
    type Err = GateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GateKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or(GateError::UnknownKind)
    }
}

/// Pin values presented to, or produced by, a single gate.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct GateIo {
    packed: u8,
    arity: u8,
}

impl GateIo {
    /// Builds a tuple from bits in pin order (`A`, `B`, ...). At most four pins.
    pub fn new(bits: &[bool]) -> Self {
        assert!(bits.len() <= 4, "gates have at most four pins");
        let packed = bits
            .iter()
            .enumerate()
            .fold(0u8, |acc, (i, &b)| acc | (b as u8) << i);
        GateIo {
            packed,
            arity: bits.len() as u8,
        }
    }

    /// Builds a tuple from `0`/`1` values in pin order.
    pub fn from_bits(bits: &[u8]) -> Self {
        assert!(bits.len() <= 4, "gates have at most four pins");
        let packed = bits
            .iter()
            .enumerate()
            .fold(0u8, |acc, (i, &b)| acc | (b & 1) << i);
        GateIo {
            packed,
            arity: bits.len() as u8,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    pub fn get(&self, pin: usize) -> bool {
        pin < self.arity() && (self.packed >> pin) & 1 == 1
    }

    pub fn packed(&self) -> u8 {
        self.packed
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.arity()).map(|i| self.get(i) as u8).collect()
    }
}

impl fmt::Debug for GateIo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for i in 0..self.arity() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", self.get(i) as u8)?;
        }
        f.write_str(")")
    }
}
