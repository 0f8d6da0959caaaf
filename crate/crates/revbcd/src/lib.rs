//! File formats, CSV ledgers, reports and the command-line front end built
//! on `revbcd-core`.

pub mod batch;
pub mod cli;
pub mod ledger_csv;
pub mod netlist_file;
pub mod report;
pub mod synth;
pub mod verify;
