//! Little-endian BCD digit vectors and simulated BCD addition.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::adders::{AdderKind, DecimalAdder};
use crate::error::BcdError;

/// Fixed-width decimal number, least significant digit first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DigitVector {
    digits: Vec<u8>,
}

impl DigitVector {
    pub fn new(digits: Vec<u8>) -> Result<Self, BcdError> {
        if let Some(&d) = digits.iter().find(|&&d| d > 9) {
            return Err(BcdError::InvalidDigit(d));
        }
        Ok(DigitVector { digits })
    }

    pub fn zero(width: usize) -> Self {
        DigitVector {
            digits: vec![0; width],
        }
    }

    /// Parses a decimal string (most significant digit first) into `width` digits.
    pub fn parse(text: &str, width: usize) -> Result<Self, BcdError> {
        let text = text.trim();
        if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
            return Err(BcdError::NotDecimal(text.into()));
        }
        let significant = text.trim_start_matches('0');
        if significant.len() > width {
            return Err(BcdError::Capacity {
                value: significant.parse().unwrap_or(u128::MAX),
                width,
            });
        }
        let mut digits: Vec<u8> = significant.bytes().rev().map(|b| b - b'0').collect();
        digits.resize(width, 0);
        Ok(DigitVector { digits })
    }

    pub fn width(&self) -> usize {
        self.digits.len()
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    /// Decimal text without leading zeros.
    pub fn to_decimal(&self) -> String {
        let s: String = self
            .digits
            .iter()
            .rev()
            .skip_while(|&&d| d == 0)
            .map(|&d| char::from(b'0' + d))
            .collect();
        if s.is_empty() {
            "0".into()
        } else {
            s
        }
    }
}

impl fmt::Display for DigitVector {
    /// All digits, zero padded to the full width.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &d in self.digits.iter().rev() {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

pub fn encode(amount: u128, width: usize) -> Result<DigitVector, BcdError> {
    let mut digits = Vec::with_capacity(width);
    let mut rest = amount;
    for _ in 0..width {
        digits.push((rest % 10) as u8);
        rest /= 10;
    }
    if rest != 0 {
        return Err(BcdError::Capacity { value: amount, width });
    }
    Ok(DigitVector { digits })
}

/// Decodes raw digits; fails on a nibble above 9 or when the value exceeds `u128`.
pub fn decode_digits(digits: &[u8]) -> Result<u128, BcdError> {
    digits.iter().rev().try_fold(0u128, |acc, &d| {
        if d > 9 {
            return Err(BcdError::InvalidDigit(d));
        }
        acc.checked_mul(10)
            .and_then(|v| v.checked_add(u128::from(d)))
            .ok_or(BcdError::Capacity {
                value: u128::MAX,
                width: digits.len(),
            })
    })
}

pub fn decode(v: &DigitVector) -> Result<u128, BcdError> {
    decode_digits(&v.digits)
}

/// A built adder of fixed width, reused across additions.
#[derive(Clone, Debug)]
pub struct BcdAdder {
    adder: DecimalAdder,
}

impl BcdAdder {
    pub fn new(kind: AdderKind, width: usize) -> Result<Self, BcdError> {
        Ok(BcdAdder {
            adder: DecimalAdder::new(kind, width)?,
        })
    }

    pub fn from_adder(adder: DecimalAdder) -> Self {
        BcdAdder { adder }
    }

    pub fn width(&self) -> usize {
        self.adder.digits()
    }

    pub fn adder(&self) -> &DecimalAdder {
        &self.adder
    }

    /// `a + b + cin` by simulating the netlist; returns the sum digits and carry-out.
    pub fn add_with_carry(
        &self,
        a: &DigitVector,
        b: &DigitVector,
        cin: bool,
    ) -> Result<(DigitVector, bool), BcdError> {
        let w = self.width();
        for v in [a, b] {
            if v.width() != w {
                return Err(BcdError::WidthMismatch(v.width(), w));
            }
        }
        let out = self.adder.add_digits(&a.digits, &b.digits, cin);
        Ok((DigitVector::new(out.digits)?, out.carry))
    }

    pub fn add(&self, a: &DigitVector, b: &DigitVector) -> Result<(DigitVector, bool), BcdError> {
        self.add_with_carry(a, b, false)
    }
}

/// One-shot simulated addition; builds an adder of the operands' width.
pub fn bcd_add(a: &DigitVector, b: &DigitVector, kind: AdderKind) -> Result<(DigitVector, bool), BcdError> {
    if a.width() != b.width() {
        return Err(BcdError::WidthMismatch(a.width(), b.width()));
    }
    BcdAdder::new(kind, a.width())?.add(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_examples() {
        assert_eq!(encode(19, 2).unwrap().digits(), [9, 1]);
        assert_eq!(encode(0, 8).unwrap().digits(), [0; 8]);
        assert_eq!(encode(88888889, 8).unwrap().digits(), [9, 8, 8, 8, 8, 8, 8, 8]);
        assert!(matches!(
            encode(100, 2),
            Err(BcdError::Capacity { value: 100, width: 2 })
        ));
    }

    #[test]
    fn decode_rejects_bad_nibbles() {
        assert_eq!(decode_digits(&[3, 12]), Err(BcdError::InvalidDigit(12)));
        assert_eq!(DigitVector::new(vec![10]), Err(BcdError::InvalidDigit(10)));
        assert_eq!(decode_digits(&[]), Ok(0));
    }

    #[test]
    fn parse_and_print() {
        let v = DigitVector::parse("0042", 3).unwrap();
        assert_eq!(v.digits(), [2, 4, 0]);
        assert_eq!(alloc::format!("{v}"), "042");
        assert_eq!(v.to_decimal(), "42");
        assert_eq!(DigitVector::zero(2).to_decimal(), "0");
        assert!(matches!(
            DigitVector::parse("1000", 3),
            Err(BcdError::Capacity { .. })
        ));
        assert!(matches!(
            DigitVector::parse("12a", 3),
            Err(BcdError::NotDecimal(_))
        ));
        assert!(matches!(DigitVector::parse("", 3), Err(BcdError::NotDecimal(_))));
    }

    #[test]
    fn simulated_addition() {
        for kind in [AdderKind::DecRca, AdderKind::DecCsk] {
            let a = encode(88888889, 8).unwrap();
            let (s, c) = bcd_add(&a, &a, kind).unwrap();
            assert_eq!((decode(&s).unwrap(), c), (77777778, true));
            let b = encode(11111111, 8).unwrap();
            let (s, c) = bcd_add(&a, &b, kind).unwrap();
            assert_eq!((decode(&s).unwrap(), c), (0, true));
        }
        let e = bcd_add(&encode(1, 2).unwrap(), &encode(1, 3).unwrap(), AdderKind::DecRca);
        assert_eq!(e, Err(BcdError::WidthMismatch(2, 3)));
    }
}
