//! Reversible BCD adders: gate library, line netlists, bit-exact simulation,
//! structural metrics, published cost models and a BCD ledger.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod adders;
pub mod bcd;
pub mod cost;
pub mod error;
pub mod gate;
pub mod ledger;
pub mod metrics;
pub mod netlist;
pub mod sim;

pub use adders::{AdderKind, DecimalAdder, Design};
pub use error::{
    BcdError, CostError, DesignError, GateError, LedgerError, MetricError, NetlistError, SimError,
};
pub use gate::{GateIo, GateKind};
pub use metrics::{structural_metrics, MetricReport};
pub use netlist::{LineRole, Netlist, Stage};
pub use sim::BitState;
