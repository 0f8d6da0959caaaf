//! Builders for the reversible BCD adder circuits and direct evaluators of
//! the Boolean functions they realize.
//!
//! Line conventions: operand bit `i` of digit `j` is labeled `a{j}_{i}` /
//! `b{j}_{i}` (little-endian), the decimal carry-in is `cin`, sum bits are
//! named `s{j}_{i}` and the final decimal carry `cout`. Constant lines are
//! allocated where they are first consumed.
//!
//! Two multi-digit adders are provided:
//!
//! * Dec-RCA chains PDFA blocks (4-HNG ripple adder, SCL and add-six
//!   correction); each block's carry copy becomes the next block's carry-in.
//! * Dec-CSK adds each digit pair with carry-in 0, derives the decimal
//!   propagate `P = [dA + dB = 9]` and generate `G = [dA + dB >= 10]` from that
//!   carry-free sum, and selects the outgoing carry with an MF multiplexer
//!   followed by a DFG fan-out. The incoming and outgoing carries are then
//!   folded into the sum digit by the correction stage. Because neither `P`
//!   nor `G` depends on the incoming carry, the carry chain costs only MF + DFG
//!   (5Δ) per digit.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::DesignError;
use crate::gate::GateKind;
use crate::netlist::{LineRole, Netlist, Stage};
use crate::sim::{self, BitState};

/// `dC = C4 ^ S3 (S2 + S1)`: the decimal carry of a 5-bit binary digit sum.
pub fn scl_carry(s1: bool, s2: bool, s3: bool, c4: bool) -> bool {
    c4 ^ (s3 & (s2 | s1))
}

/// Decimal generate; the same function as [`scl_carry`] with the arguments in
/// `C4, S3, S2, S1` order.
pub fn decimal_generate(c4: bool, s3: bool, s2: bool, s1: bool) -> bool {
    scl_carry(s1, s2, s3, c4)
}

/// Decimal propagate of two BCD digits: 1 exactly when `dA + dB = 9`.
///
/// Computed from the bit propagate/generate signals as
/// `p0 !p1 !(p2 ^ g1) (p3 ^ g2 ^ g1 p2)`: with `a0 != b0`, the upper three
/// bits must add to `100`.
pub fn decimal_propagate(da: u8, db: u8) -> Result<bool, DesignError> {
    for d in [da, db] {
        if d > 9 {
            return Err(DesignError::InvalidDigit(d));
        }
    }
    Ok(propagate_bits(da, db))
}

fn pg(a: u8, b: u8) -> (impl Fn(u8) -> bool, impl Fn(u8) -> bool) {
    (move |i| ((a ^ b) >> i) & 1 == 1, move |i| ((a & b) >> i) & 1 == 1)
}

/// The propagate expression evaluated on raw 4-bit operands.
pub fn propagate_bits(a: u8, b: u8) -> bool {
    let (p, g) = pg(a, b);
    p(0) & !p(1) & !(p(2) ^ g(1)) & (p(3) ^ g(2) ^ (g(1) & p(2)))
}

/// The shorter form `p0 (p3 ^ g1 p2 ^ g2 !(g1 ^ p1))`. It lacks the `!p1` and
/// `!(p2 ^ g1)` factors and also fires on twelve digit pairs whose sum is
/// not 9 (for example 2 + 9), so no adder here uses it.
pub fn propagate_short_form(a: u8, b: u8) -> bool {
    let (p, g) = pg(a, b);
    p(0) & (p(3) ^ (g(1) & p(2)) ^ (g(2) & !(g(1) ^ p(1))))
}

/// `dC_out = P ? dC_in : G`.
pub fn skip_carry(p: bool, dc_in: bool, g: bool) -> bool {
    if p {
        dc_in
    } else {
        g
    }
}

/// Low four bits of `raw + 6 dC`.
pub fn six_correction(raw: u8, dc: bool) -> u8 {
    (raw + if dc { 6 } else { 0 }) & 0xF
}

/// Incremental netlist construction with stage tags.
#[derive(Debug)]
pub struct Builder {
    netlist: Netlist,
}

impl Default for Builder {
    fn default() -> Self {
        Builder::new()
    }
}

impl Builder {
    pub fn new() -> Self {
        Builder {
            netlist: Netlist::empty(),
        }
    }

    pub fn input(&mut self, label: impl Into<String>) -> usize {
        self.netlist.push_line(LineRole::Input(label.into()))
    }

    pub fn zero(&mut self) -> usize {
        self.netlist.push_line(LineRole::Constant(false))
    }

    pub fn one(&mut self) -> usize {
        self.netlist.push_line(LineRole::Constant(true))
    }

    pub fn gate(&mut self, kind: GateKind, pins: &[usize], stage: Stage) -> Result<(), DesignError> {
        Ok(self.netlist.append_staged(kind, pins, stage)?)
    }

    pub fn finish<S: Into<String>>(
        mut self,
        named: impl IntoIterator<Item = (S, usize)>,
        restored: impl IntoIterator<Item = usize>,
    ) -> Result<Netlist, DesignError> {
        if self.netlist.width() == 0 {
            return Err(crate::error::NetlistError::ZeroWidth.into());
        }
        self.netlist.designate_outputs(named, restored)?;
        self.netlist.validate()?;
        Ok(self.netlist)
    }
}

/// Result lines of a four-bit ripple adder.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RcaLines {
    pub sum: [usize; 4],
    pub carry: usize,
}

/// Four HNG full adders; the carry-in line ends up holding `S0`.
pub fn append_binary_rca(
    b: &mut Builder,
    a: [usize; 4],
    bb: [usize; 4],
    cin: usize,
) -> Result<RcaLines, DesignError> {
    let mut carry = cin;
    let mut sum = [0; 4];
    for i in 0..4 {
        let next = b.zero();
        b.gate(GateKind::Hng, &[a[i], bb[i], carry, next], Stage::Addition)?;
        sum[i] = carry;
        carry = next;
    }
    Ok(RcaLines { sum, carry })
}

/// Lines produced by the six-correction logic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SclLines {
    /// Fresh copy of the decimal carry, for the next digit.
    pub carry: usize,
    /// The `C4` line, now holding the decimal carry for the correction stage.
    pub carry_corr: usize,
}

/// BJN(S1, S2, 0) forms `S1 + S2`, PG(S3, ·, C4) forms the decimal carry on
/// the `C4` line, and an FG copies it.
pub fn append_scl(
    b: &mut Builder,
    s1: usize,
    s2: usize,
    s3: usize,
    c4: usize,
) -> Result<SclLines, DesignError> {
    let or = b.zero();
    b.gate(GateKind::Bjn, &[s1, s2, or], Stage::Detection)?;
    b.gate(GateKind::Pg, &[s3, or, c4], Stage::Detection)?;
    let copy = b.zero();
    b.gate(GateKind::Fg, &[c4, copy], Stage::Detection)?;
    Ok(SclLines {
        carry: copy,
        carry_corr: c4,
    })
}

/// Adds `0110 * dC` to `S3 S2 S1` (S0 is unaffected). Returns the lines holding
/// the corrected `S1, S2, S3`.
pub fn append_six_correction(
    b: &mut Builder,
    s1: usize,
    s2: usize,
    s3: usize,
    dc: usize,
) -> Result<[usize; 3], DesignError> {
    let c2 = b.zero();
    b.gate(GateKind::Pg, &[dc, s1, c2], Stage::Correction)?;
    let c3 = b.zero();
    b.gate(GateKind::Hng, &[s2, dc, c2, c3], Stage::Correction)?;
    b.gate(GateKind::Fg, &[c3, s3], Stage::Correction)?;
    Ok([s1, c2, s3])
}

/// One PDFA block's result lines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DigitLines {
    pub sum: [usize; 4],
    /// Line handed to the next digit as its carry.
    pub carry_out: usize,
    /// Line whose terminal value is this digit's decimal carry.
    pub carry_trace: usize,
}

pub fn append_pdfa(
    b: &mut Builder,
    a: [usize; 4],
    bb: [usize; 4],
    cin: usize,
) -> Result<DigitLines, DesignError> {
    let rca = append_binary_rca(b, a, bb, cin)?;
    let [s0, s1, s2, s3] = rca.sum;
    let scl = append_scl(b, s1, s2, s3, rca.carry)?;
    let [c1, c2, c3] = append_six_correction(b, s1, s2, s3, scl.carry_corr)?;
    Ok(DigitLines {
        sum: [s0, c1, c2, c3],
        carry_out: scl.carry,
        carry_trace: scl.carry_corr,
    })
}

/// MF multiplexer on the `G` line followed by a DFG. Returns three lines
/// carrying the selected carry.
pub fn append_skip_block(
    b: &mut Builder,
    p: usize,
    dc_in: usize,
    g: usize,
) -> Result<[usize; 3], DesignError> {
    b.gate(GateKind::Mf, &[p, dc_in, g], Stage::Detection)?;
    let x = b.zero();
    let y = b.zero();
    b.gate(GateKind::Dfg, &[g, x, y], Stage::Detection)?;
    Ok([g, x, y])
}

/// Propagate generator built from the bit propagate/generate signals. The `b`
/// lines are consumed; `a` is restored. Returns the line holding `P`.
pub fn append_skip_generator(b: &mut Builder, a: [usize; 4], bb: [usize; 4]) -> Result<usize, DesignError> {
    b.gate(GateKind::Fg, &[a[0], bb[0]], Stage::Detection)?;
    b.gate(GateKind::Fg, &[a[3], bb[3]], Stage::Detection)?;
    let g1 = b.zero();
    b.gate(GateKind::Pg, &[a[1], bb[1], g1], Stage::Detection)?;
    let g2 = b.zero();
    b.gate(GateKind::Pg, &[a[2], bb[2], g2], Stage::Detection)?;
    // bb[2] <- p2 ^ g1, bb[3] <- p3 ^ g1 p2 ^ g2
    b.gate(GateKind::Pg, &[g1, bb[2], bb[3]], Stage::Detection)?;
    b.gate(GateKind::Fg, &[g2, bb[3]], Stage::Detection)?;
    // NOR of p1 and p2 ^ g1 on a constant-one line
    let nor = b.one();
    b.gate(GateKind::Bjn, &[bb[1], bb[2], nor], Stage::Detection)?;
    let t = b.zero();
    b.gate(GateKind::Pg, &[nor, bb[0], t], Stage::Detection)?;
    let p = b.zero();
    b.gate(GateKind::Mf, &[t, bb[3], p], Stage::Detection)?;
    Ok(p)
}

/// One carry-skip digit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SkipDigitLines {
    pub sum: [usize; 4],
    /// Selected carry for the next digit's multiplexer.
    pub carry_mux: usize,
    /// Selected carry for the next digit's correction.
    pub carry_corr: usize,
    pub carry_trace: usize,
    /// Line whose terminal value is `P` for this digit.
    pub propagate: usize,
}

/// Carry-skip digit. `c_mux` and `c_corr` both carry the incoming decimal carry.
pub fn append_skip_digit(
    b: &mut Builder,
    a: [usize; 4],
    bb: [usize; 4],
    c_mux: usize,
    c_corr: usize,
) -> Result<SkipDigitLines, DesignError> {
    let cin = b.zero();
    let rca = append_binary_rca(b, a, bb, cin)?;
    let [s0, s1, s2, s3] = rca.sum;
    let c4 = rca.carry;

    // G on the C4 line; the OR line keeps S3 ^ (S1 + S2).
    let or = b.zero();
    b.gate(GateKind::Bjn, &[s1, s2, or], Stage::Detection)?;
    b.gate(GateKind::Pg, &[s3, or, c4], Stage::Detection)?;
    // P = S0 S3 !(S1 + S2), i.e. the carry-free sum is exactly 1001.
    let t = b.zero();
    b.gate(GateKind::Pg, &[s3, or, t], Stage::Detection)?;
    let p = b.zero();
    b.gate(GateKind::Mf, &[s0, t, p], Stage::Detection)?;
    let [next_mux, next_corr, own] = append_skip_block(b, p, c_mux, c4)?;

    // Add dC_in at bit 0 and 6 dC_out at bits 1-2.
    let e1 = b.zero();
    b.gate(GateKind::Pg, &[c_corr, s0, e1], Stage::Correction)?;
    let e2 = b.zero();
    b.gate(GateKind::Hng, &[s1, own, e1, e2], Stage::Correction)?;
    let e3 = b.zero();
    b.gate(GateKind::Hng, &[s2, own, e2, e3], Stage::Correction)?;
    b.gate(GateKind::Fg, &[e3, s3], Stage::Correction)?;

    Ok(SkipDigitLines {
        sum: [s0, e1, e2, s3],
        carry_mux: next_mux,
        carry_corr: next_corr,
        carry_trace: own,
        propagate: p,
    })
}

/// Which multi-digit adder to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AdderKind {
    DecRca,
    DecCsk,
}

impl AdderKind {
    pub const fn name(self) -> &'static str {
        match self {
            AdderKind::DecRca => "dec-rca",
            AdderKind::DecCsk => "dec-csk",
        }
    }
}

impl fmt::Display for AdderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Every buildable circuit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Design {
    BinaryRca,
    Scl,
    Correction,
    Pdfa,
    SkipGenerator,
    SkipBlock,
    DecRca,
    DecCsk,
}

impl Design {
    pub const ALL: [Design; 8] = [
        Design::BinaryRca,
        Design::Scl,
        Design::Correction,
        Design::Pdfa,
        Design::SkipGenerator,
        Design::SkipBlock,
        Design::DecRca,
        Design::DecCsk,
    ];

    pub const fn name(self) -> &'static str {
        match self {
            Design::BinaryRca => "rca4",
            Design::Scl => "scl",
            Design::Correction => "correction",
            Design::Pdfa => "pdfa",
            Design::SkipGenerator => "skip-gen",
            Design::SkipBlock => "skip-block",
            Design::DecRca => "dec-rca",
            Design::DecCsk => "dec-csk",
        }
    }

    /// True for the designs whose size follows the digit count.
    pub const fn is_multi_digit(self) -> bool {
        matches!(self, Design::DecRca | Design::DecCsk)
    }

    /// Builds the design; `digits` is ignored for fixed-size blocks.
    pub fn build(self, digits: usize) -> Result<Netlist, DesignError> {
        match self {
            Design::BinaryRca => build_binary_rca(),
            Design::Scl => build_scl(),
            Design::Correction => build_correction(),
            Design::Pdfa => build_pdfa(),
            Design::SkipGenerator => build_skip_generator(),
            Design::SkipBlock => build_skip_block(),
            Design::DecRca => build_dec_rca(digits),
            Design::DecCsk => build_dec_csk(digits),
        }
    }
}

impl fmt::Display for Design {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Design {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Design::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| format!("unknown design `{s}`"))
    }
}

fn operand_inputs(b: &mut Builder, op: char, digit: usize) -> [usize; 4] {
    core::array::from_fn(|i| b.input(format!("{op}{digit}_{i}")))
}

fn four_inputs(b: &mut Builder, prefix: &str) -> [usize; 4] {
    core::array::from_fn(|i| b.input(format!("{prefix}{i}")))
}

/// Four-bit HNG ripple adder.
pub fn build_binary_rca() -> Result<Netlist, DesignError> {
    let mut b = Builder::new();
    let a = four_inputs(&mut b, "a");
    let bb = four_inputs(&mut b, "b");
    let cin = b.input("cin");
    let rca = append_binary_rca(&mut b, a, bb, cin)?;
    let mut named: Vec<(String, usize)> = (0..4).map(|i| (format!("s{i}"), rca.sum[i])).collect();
    named.push(("c4".into(), rca.carry));
    b.finish(named, a.into_iter().chain(bb))
}

/// Stand-alone SCL block over inputs `s1, s2, s3, c4`.
///
/// `S1..S3` pass through unchanged and are marked restored; `dc` is the carry
/// copy and `dc_corr` the continuation consumed by a correction stage.
pub fn build_scl() -> Result<Netlist, DesignError> {
    let mut b = Builder::new();
    let s1 = b.input("s1");
    let s2 = b.input("s2");
    let s3 = b.input("s3");
    let c4 = b.input("c4");
    let scl = append_scl(&mut b, s1, s2, s3, c4)?;
    b.finish([("dc", scl.carry), ("dc_corr", scl.carry_corr)], [s1, s2, s3])
}

/// Stand-alone add-six correction over inputs `s1, s2, s3, dc`.
///
/// Nothing is marked restored: inside an adder the `S2` and `dC` lines that
/// pass through are spent.
pub fn build_correction() -> Result<Netlist, DesignError> {
    let mut b = Builder::new();
    let s1 = b.input("s1");
    let s2 = b.input("s2");
    let s3 = b.input("s3");
    let dc = b.input("dc");
    let [c1, c2, c3] = append_six_correction(&mut b, s1, s2, s3, dc)?;
    b.finish([("s1c", c1), ("s2c", c2), ("s3c", c3)], [])
}

/// Single-digit PDFA; identical to a one-digit Dec-RCA.
pub fn build_pdfa() -> Result<Netlist, DesignError> {
    build_dec_rca(1)
}

/// Stand-alone propagate generator over `a0..a3, b0..b3`, output `p`.
pub fn build_skip_generator() -> Result<Netlist, DesignError> {
    let mut b = Builder::new();
    let a = four_inputs(&mut b, "a");
    let bb = four_inputs(&mut b, "b");
    let p = append_skip_generator(&mut b, a, bb)?;
    b.finish([("p", p)], a)
}

/// Stand-alone skip block over `p, dc_in, g`.
pub fn build_skip_block() -> Result<Netlist, DesignError> {
    let mut b = Builder::new();
    let p = b.input("p");
    let dc_in = b.input("dc_in");
    let g = b.input("g");
    let [next, skip, corr] = append_skip_block(&mut b, p, dc_in, g)?;
    b.finish([("dc_next", next), ("dc_skip", skip), ("dc_corr", corr)], [p])
}

pub fn build_dec_rca(digits: usize) -> Result<Netlist, DesignError> {
    Ok(DecimalAdder::new(AdderKind::DecRca, digits)?.netlist)
}

pub fn build_dec_csk(digits: usize) -> Result<Netlist, DesignError> {
    Ok(DecimalAdder::new(AdderKind::DecCsk, digits)?.netlist)
}

/// Where the operands, results and internal carries of an adder live.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdderPorts {
    pub a: Vec<[usize; 4]>,
    pub b: Vec<[usize; 4]>,
    pub cin: usize,
    pub sum: Vec<[usize; 4]>,
    pub cout: usize,
    /// Lines whose terminal values are the per-digit decimal carries
    /// `dC_1 ..= dC_n`; empty when recovered from a file.
    pub carries: Vec<usize>,
    /// Lines that hand each digit's carry to the next digit (the last one is
    /// `cout`); their first gate is the one that produces the carry.
    pub handoff: Vec<usize>,
    /// Per-digit propagate lines (carry-skip adders only).
    pub propagate: Vec<usize>,
}

impl AdderPorts {
    pub fn digits(&self) -> usize {
        self.a.len()
    }

    /// Recovers the ports of an adder netlist from its labels.
    pub fn from_netlist(netlist: &Netlist) -> Option<AdderPorts> {
        let cin = netlist.input_line("cin")?;
        let cout = netlist.outputs().line_of("cout")?;
        let mut a = Vec::new();
        let mut b = Vec::new();
        let mut sum = Vec::new();
        for j in 0.. {
            let Some(a0) = netlist.input_line(&format!("a{j}_0")) else {
                break;
            };
            let mut da = [a0; 4];
            let mut db = [0; 4];
            let mut ds = [0; 4];
            for i in 0..4 {
                da[i] = netlist.input_line(&format!("a{j}_{i}"))?;
                db[i] = netlist.input_line(&format!("b{j}_{i}"))?;
                ds[i] = netlist.outputs().line_of(&format!("s{j}_{i}"))?;
            }
            a.push(da);
            b.push(db);
            sum.push(ds);
        }
        if a.is_empty() {
            return None;
        }
        Some(AdderPorts {
            a,
            b,
            cin,
            sum,
            cout,
            carries: Vec::new(),
            handoff: Vec::new(),
            propagate: Vec::new(),
        })
    }
}

/// Decoded result of one simulated addition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdderOutput {
    /// Little-endian raw 4-bit sum digits.
    pub digits: Vec<u8>,
    pub carry: bool,
    /// Per-digit decimal carries, when the adder records them.
    pub carries: Vec<bool>,
    pub restored_ok: bool,
    pub terminal: BitState,
}

/// A built multi-digit adder plus its port map.
#[derive(Clone, Debug)]
pub struct DecimalAdder {
    kind: Option<AdderKind>,
    netlist: Netlist,
    ports: AdderPorts,
    template: BitState,
}

impl DecimalAdder {
    pub fn new(kind: AdderKind, digits: usize) -> Result<Self, DesignError> {
        if digits == 0 {
            return Err(DesignError::ZeroDigits);
        }
        let (netlist, ports) = match kind {
            AdderKind::DecRca => assemble_rca(digits)?,
            AdderKind::DecCsk => assemble_csk(digits)?,
        };
        Ok(Self::with_ports(Some(kind), netlist, ports))
    }

    /// Wraps an arbitrary adder-shaped netlist, e.g. one loaded from a file.
    pub fn from_netlist(netlist: Netlist) -> Option<Self> {
        let ports = AdderPorts::from_netlist(&netlist)?;
        Some(Self::with_ports(None, netlist, ports))
    }

    fn with_ports(kind: Option<AdderKind>, netlist: Netlist, ports: AdderPorts) -> Self {
        let template = BitState(
            netlist
                .roles()
                .iter()
                .map(|r| matches!(r, LineRole::Constant(true)))
                .collect(),
        );
        DecimalAdder {
            kind,
            netlist,
            ports,
            template,
        }
    }

    pub fn kind(&self) -> Option<AdderKind> {
        self.kind
    }

    pub fn netlist(&self) -> &Netlist {
        &self.netlist
    }

    pub fn ports(&self) -> &AdderPorts {
        &self.ports
    }

    pub fn into_netlist(self) -> Netlist {
        self.netlist
    }

    pub fn digits(&self) -> usize {
        self.ports.digits()
    }

    /// Simulates the adder on little-endian operand digits. Digits are taken
    /// as raw 4-bit values; callers validate BCD.
    pub fn add_digits(&self, a: &[u8], b: &[u8], cin: bool) -> AdderOutput {
        assert_eq!(a.len(), self.digits(), "operand a width");
        assert_eq!(b.len(), self.digits(), "operand b width");
        let mut state = self.template.clone();
        for (lines, digit) in self.ports.a.iter().zip(a).chain(self.ports.b.iter().zip(b)) {
            for (i, &l) in lines.iter().enumerate() {
                state.0[l] = (digit >> i) & 1 == 1;
            }
        }
        state.0[self.ports.cin] = cin;
        let initial = state.clone();
        sim::evaluate(&self.netlist, &mut state).expect("template matches netlist width");
        let restored_ok = self
            .netlist
            .outputs()
            .restored()
            .iter()
            .all(|&l| state.get(l) == initial.get(l));
        let digits = self
            .ports
            .sum
            .iter()
            .map(|lines| {
                lines
                    .iter()
                    .enumerate()
                    .fold(0u8, |acc, (i, &l)| acc | (state.get(l) as u8) << i)
            })
            .collect();
        AdderOutput {
            digits,
            carry: state.get(self.ports.cout),
            carries: self.ports.carries.iter().map(|&l| state.get(l)).collect(),
            restored_ok,
            terminal: state,
        }
    }
}

fn adder_outputs(ports: &AdderPorts) -> Vec<(String, usize)> {
    let mut named: Vec<(String, usize)> = ports
        .sum
        .iter()
        .enumerate()
        .flat_map(|(j, lines)| (0..4).map(move |i| (format!("s{j}_{i}"), lines[i])))
        .collect();
    named.push(("cout".into(), ports.cout));
    named
}

fn restored_inputs(ports: &AdderPorts) -> Vec<usize> {
    ports.a.iter().chain(&ports.b).flatten().copied().collect()
}

fn assemble_rca(digits: usize) -> Result<(Netlist, AdderPorts), DesignError> {
    let mut b = Builder::new();
    let cin = b.input("cin");
    let mut ports = AdderPorts {
        a: Vec::new(),
        b: Vec::new(),
        cin,
        sum: Vec::new(),
        cout: cin,
        carries: Vec::new(),
        handoff: Vec::new(),
        propagate: Vec::new(),
    };
    let mut carry = cin;
    for j in 0..digits {
        let a = operand_inputs(&mut b, 'a', j);
        let bb = operand_inputs(&mut b, 'b', j);
        let d = append_pdfa(&mut b, a, bb, carry)?;
        ports.a.push(a);
        ports.b.push(bb);
        ports.sum.push(d.sum);
        ports.carries.push(d.carry_trace);
        ports.handoff.push(d.carry_out);
        carry = d.carry_out;
    }
    ports.cout = carry;
    let netlist = b.finish(adder_outputs(&ports), restored_inputs(&ports))?;
    Ok((netlist, ports))
}

fn assemble_csk(digits: usize) -> Result<(Netlist, AdderPorts), DesignError> {
    let mut b = Builder::new();
    let cin = b.input("cin");
    let mut ports = AdderPorts {
        a: Vec::new(),
        b: Vec::new(),
        cin,
        sum: Vec::new(),
        cout: cin,
        carries: Vec::new(),
        handoff: Vec::new(),
        propagate: Vec::new(),
    };
    // The primary carry-in feeds both the first multiplexer and the first correction.
    let cin_copy = b.zero();
    b.gate(GateKind::Fg, &[cin, cin_copy], Stage::Detection)?;
    let (mut c_mux, mut c_corr) = (cin, cin_copy);
    for j in 0..digits {
        let a = operand_inputs(&mut b, 'a', j);
        let bb = operand_inputs(&mut b, 'b', j);
        let d = append_skip_digit(&mut b, a, bb, c_mux, c_corr)?;
        ports.a.push(a);
        ports.b.push(bb);
        ports.sum.push(d.sum);
        ports.carries.push(d.carry_trace);
        ports.propagate.push(d.propagate);
        ports.handoff.push(d.carry_mux);
        c_mux = d.carry_mux;
        c_corr = d.carry_corr;
    }
    ports.cout = c_mux;
    let netlist = b.finish(adder_outputs(&ports), restored_inputs(&ports))?;
    Ok((netlist, ports))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::{structural_metrics, MetricReport};

    fn metrics(n: &Netlist) -> (u64, u64, u64, u64, u64) {
        let MetricReport {
            gc,
            ci,
            go,
            qc,
            delay,
        } = structural_metrics(n).unwrap();
        (gc, ci, go, qc, delay)
    }

    #[test]
    fn evaluator_examples() {
        assert!(scl_carry(false, false, false, true));
        assert!(!scl_carry(false, false, false, false));
        assert!(scl_carry(true, false, true, false));

        assert_eq!(decimal_propagate(4, 5), Ok(true));
        assert_eq!(decimal_propagate(5, 5), Ok(false));
        assert_eq!(decimal_propagate(0, 0), Ok(false));
        assert_eq!(decimal_propagate(9, 0), Ok(true));
        assert_eq!(decimal_propagate(10, 0), Err(DesignError::InvalidDigit(10)));
        assert_eq!(decimal_propagate(2, 9), Ok(false));
        assert!(propagate_short_form(2, 9));
        assert!(propagate_short_form(4, 5));

        assert!(decimal_generate(true, false, false, false));
        assert!(decimal_generate(false, true, true, false));
        assert!(!decimal_generate(false, true, false, false));

        assert!(skip_carry(true, true, false));
        for x in [false, true] {
            for g in [false, true] {
                assert_eq!(skip_carry(false, x, g), g);
            }
        }

        assert_eq!(six_correction(0b1000, false), 0b1000);
        assert_eq!(six_correction(0b0010, true), 0b1000);
        assert_eq!(six_correction(0b1100, true), 0b0010);
    }

    #[test]
    fn block_metrics() {
        assert_eq!(metrics(&build_binary_rca().unwrap()), (4, 4, 0, 24, 20));
        let scl = build_scl().unwrap();
        let (gc, ci, go, qc, _) = metrics(&scl);
        assert_eq!((gc, ci, go, qc), (3, 2, 1, 10));
        let corr = build_correction().unwrap();
        let (gc, ci, go, qc, _) = metrics(&corr);
        assert_eq!((gc, ci, go, qc), (3, 2, 3, 11));
        assert_eq!(metrics(&build_pdfa().unwrap()), (10, 8, 4, 45, 35));
        assert_eq!(metrics(&build_skip_block().unwrap()), (2, 2, 1, 6, 5));
    }

    #[test]
    fn zero_digits_rejected() {
        assert_eq!(build_dec_rca(0).unwrap_err(), DesignError::ZeroDigits);
        assert_eq!(build_dec_csk(0).unwrap_err(), DesignError::ZeroDigits);
    }

    #[test]
    fn pdfa_nine_plus_nine() {
        let adder = DecimalAdder::new(AdderKind::DecRca, 1).unwrap();
        let out = adder.add_digits(&[9], &[9], false);
        assert_eq!(out.digits, [8]);
        assert!(out.carry);
        assert!(out.restored_ok);
    }

    #[test]
    fn ports_recovered_from_labels() {
        for kind in [AdderKind::DecRca, AdderKind::DecCsk] {
            let adder = DecimalAdder::new(kind, 3).unwrap();
            let mut ports = AdderPorts::from_netlist(adder.netlist()).unwrap();
            ports.carries = adder.ports().carries.clone();
            ports.handoff = adder.ports().handoff.clone();
            ports.propagate = adder.ports().propagate.clone();
            assert_eq!(&ports, adder.ports());
        }
    }

    #[test]
    fn design_names_parse() {
        for d in Design::ALL {
            assert_eq!(d.name().parse::<Design>(), Ok(d));
        }
        assert!("foo".parse::<Design>().is_err());
    }
}
