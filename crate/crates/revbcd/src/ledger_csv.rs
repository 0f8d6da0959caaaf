//! CSV transaction ingestion with per-row diagnostics.

use std::fmt;
use std::fs::File;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use revbcd_core::ledger::LedgerRecord;

/// How rows with a negative amount are treated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SignPolicy {
    /// Keep the magnitude; the sign only marks a debit.
    #[default]
    DebitMagnitude,
    /// Drop negative rows silently.
    SkipNegative,
    /// Treat negative rows as malformed.
    RejectNegative,
}

impl SignPolicy {
    pub const NAMES: [&'static str; 3] = ["debit-magnitude", "skip-negative", "reject-negative"];
}

impl FromStr for SignPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "debit-magnitude" => Ok(SignPolicy::DebitMagnitude),
            "skip-negative" => Ok(SignPolicy::SkipNegative),
            "reject-negative" => Ok(SignPolicy::RejectNegative),
            _ => Err(format!("unknown sign policy `{s}`")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct IngestConfig {
    pub group_column: String,
    pub amount_column: String,
    pub delimiter: u8,
    pub sign: SignPolicy,
    /// Abort on the first bad row instead of skipping it.
    pub strict: bool,
}

impl Default for IngestConfig {
    fn default() -> Self {
        IngestConfig {
            group_column: "user".into(),
            amount_column: "amount".into(),
            delimiter: b',',
            sign: SignPolicy::default(),
            strict: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AmountError {
    #[error("empty amount")]
    Empty,
    #[error("`{0}` is not a monetary amount")]
    Malformed(String),
    #[error("`{0}` has more than two decimal places")]
    Precision(String),
    #[error("`{0}` is too large")]
    TooLarge(String),
}

/// Parses `12.34`, `$12.34`, `-5.00`, `-$5`, `$-5` and bare integers into
/// signed cents.
pub fn parse_amount(text: &str) -> Result<i64, AmountError> {
    let t = text.trim();
    if t.is_empty() {
        return Err(AmountError::Empty);
    }
    let malformed = || AmountError::Malformed(t.to_string());
    let (negative, rest) = match t.strip_prefix('-') {
        Some(r) => (true, r.strip_prefix('$').unwrap_or(r)),
        None => match t.strip_prefix('$') {
            Some(r) => match r.strip_prefix('-') {
                Some(r) => (true, r),
                None => (false, r),
            },
            None => (false, t),
        },
    };
    let (whole, frac) = match rest.split_once('.') {
        Some((w, f)) => (w, f),
        None => (rest, ""),
    };
    let digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if whole.is_empty() || !digits(whole) || !digits(frac) || (rest.contains('.') && frac.is_empty()) {
        return Err(malformed());
    }
    if frac.len() > 2 {
        return Err(AmountError::Precision(t.to_string()));
    }
    let too_large = || AmountError::TooLarge(t.to_string());
    let whole: i64 = whole.parse().map_err(|_| too_large())?;
    let cents: i64 = format!("{frac:0<2}").parse().map_err(|_| malformed())?;
    let value = whole
        .checked_mul(100)
        .and_then(|v| v.checked_add(cents))
        .ok_or_else(too_large)?;
    Ok(if negative { -value } else { value })
}

/// A rejected row; `row` counts data rows from 1, excluding the header.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowIssue {
    pub row: usize,
    pub message: String,
}

impl fmt::Display for RowIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "row {}: {}", self.row, self.message)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("header has no column `{0}`")]
    MissingColumn(String),
    #[error("malformed header: {0}")]
    Header(String),
    #[error("{0}")]
    Row(RowIssue),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ingested {
    pub records: Vec<LedgerRecord>,
    /// Rows skipped in lenient mode.
    pub issues: Vec<RowIssue>,
    /// Negative rows dropped by [`SignPolicy::SkipNegative`].
    pub skipped_negative: usize,
}

pub fn ingest_reader<R: Read>(reader: R, config: &IngestConfig) -> Result<Ingested, IngestError> {
    let mut csv = csv::ReaderBuilder::new()
        .delimiter(config.delimiter)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(reader);
    let headers = match csv.headers() {
        Ok(h) => h.clone(),
        Err(e) => return Err(IngestError::Header(e.to_string())),
    };
    if headers.is_empty() {
        return Ok(Ingested::default());
    }
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| IngestError::MissingColumn(name.to_string()))
    };
    let group_at = column(&config.group_column)?;
    let amount_at = column(&config.amount_column)?;

    let mut out = Ingested::default();
    for (i, row) in csv.records().enumerate() {
        let row_no = i + 1;
        let parsed = row.map_err(|e| e.to_string()).and_then(|r| {
            let group = r.get(group_at).ok_or("missing group field")?.to_string();
            let raw = r.get(amount_at).ok_or("missing amount field")?;
            let cents = parse_amount(raw).map_err(|e| e.to_string())?;
            Ok((group, cents))
        });
        let accepted = parsed.and_then(|(group, cents)| match (cents < 0, config.sign) {
            (true, SignPolicy::SkipNegative) => Ok(None),
            (true, SignPolicy::RejectNegative) => Err(format!("negative amount {cents} cents")),
            _ => Ok(Some(LedgerRecord::new(group, cents.unsigned_abs()))),
        });
        match accepted {
            Ok(Some(record)) => out.records.push(record),
            Ok(None) => out.skipped_negative += 1,
            Err(message) => {
                let issue = RowIssue { row: row_no, message };
                if config.strict {
                    return Err(IngestError::Row(issue));
                }
                out.issues.push(issue);
            }
        }
    }
    Ok(out)
}

pub fn ingest_csv(path: &Path, config: &IngestConfig) -> Result<Ingested, IngestError> {
    let file = File::open(path).map_err(|source| IngestError::Io {
        path: path.display().to_string(),
        source,
    })?;
    ingest_reader(file, config)
}
