//! Report rows shared by every verification pass.

use num_rational::BigRational;
use serde::Serialize;
use std::fmt;

use crate::decimal::to_decimal_string;

/// Sound three-way outcome of an inequality check.
///
/// `Undecided` is a first-class outcome: it means the enclosures overlap at
/// the working precision, not that anything went wrong.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Verified,
    Failed,
    Undecided,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Verified => write!(f, "Verified"),
            Status::Failed => write!(f, "Failed"),
            Status::Undecided => write!(f, "Undecided"),
        }
    }
}

/// Which arithmetic tier decided a row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Tier {
    /// Exact big-integer / big-rational comparison.
    Exact,
    /// Rigorous log10-interval comparison.
    Log,
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tier::Exact => write!(f, "Exact"),
            Tier::Log => write!(f, "Log"),
        }
    }
}

/// What a row's `index` column refers to.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum IndexRef {
    /// No index (a one-off check).
    None,
    /// A plain index n.
    N(usize),
    /// A (n_j, k_j) pair.
    Pair(usize, u32),
}

impl fmt::Display for IndexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexRef::None => write!(f, "-"),
            IndexRef::N(n) => write!(f, "{n}"),
            IndexRef::Pair(n, k) => write!(f, "({n},{k})"),
        }
    }
}

/// One audited inequality at one index.
#[derive(Debug, Clone)]
pub struct AuditRow {
    pub check_id: String,
    pub index: IndexRef,
    pub status: Status,
    /// Certified log10 slack of the inequality at the decided bounds,
    /// rounded to 12 decimal places. Absent when one side is exactly zero
    /// or the row is undecided.
    pub margin_log10: Option<BigRational>,
    pub tier: Tier,
    pub note: Option<String>,
}

impl AuditRow {
    pub fn new(check_id: &str, index: IndexRef, status: Status, tier: Tier) -> Self {
        AuditRow {
            check_id: check_id.to_string(),
            index,
            status,
            margin_log10: None,
            tier,
            note: None,
        }
    }

    pub fn with_margin(mut self, margin: Option<BigRational>) -> Self {
        self.margin_log10 = margin;
        self
    }

    pub fn with_note(mut self, note: &str) -> Self {
        self.note = Some(note.to_string());
        self
    }
}

#[derive(Serialize)]
struct RowJson {
    check_id: String,
    index: serde_json::Value,
    status: Status,
    margin_log10: Option<String>,
    tier: Tier,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

/// A deterministic, sorted collection of audit rows.
#[derive(Debug, Clone, Default)]
pub struct AuditReport {
    rows: Vec<AuditRow>,
}

impl AuditReport {
    pub fn new() -> Self {
        AuditReport { rows: Vec::new() }
    }

    pub fn push(&mut self, row: AuditRow) {
        self.rows.push(row);
    }

    pub fn extend(&mut self, other: AuditReport) {
        self.rows.extend(other.rows);
    }

    /// Sorts rows by (check id, index); merged reports are ordered the same
    /// way regardless of how the parts were produced.
    pub fn sort(&mut self) {
        self.rows
            .sort_by(|a, b| (a.check_id.as_str(), &a.index).cmp(&(b.check_id.as_str(), &b.index)));
    }

    /// Drops duplicate (check id, index) rows after sorting; overlapping
    /// windows can legitimately produce the same check twice.
    pub fn dedupe(&mut self) {
        self.rows
            .dedup_by(|a, b| a.check_id == b.check_id && a.index == b.index);
    }

    pub fn rows(&self) -> &[AuditRow] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn any_failed(&self) -> bool {
        self.rows.iter().any(|r| r.status == Status::Failed)
    }

    pub fn any_undecided(&self) -> bool {
        self.rows.iter().any(|r| r.status == Status::Undecided)
    }

    /// Process exit code contract: 0 all verified, 1 any failed,
    /// 3 undecided rows but no failures.
    pub fn exit_code(&self) -> i32 {
        if self.any_failed() {
            1
        } else if self.any_undecided() {
            3
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<RowJson> = self
            .rows
            .iter()
            .map(|r| RowJson {
                check_id: r.check_id.clone(),
                index: match &r.index {
                    IndexRef::None => serde_json::Value::Null,
                    IndexRef::N(n) => serde_json::json!(n),
                    IndexRef::Pair(n, k) => serde_json::json!([n, k]),
                },
                status: r.status,
                margin_log10: r.margin_log10.as_ref().map(|m| to_decimal_string(m, 12)),
                tier: r.tier,
                note: r.note.clone(),
            })
            .collect();
        serde_json::to_string_pretty(&rows).expect("report serialization cannot fail")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let header = format!(
            "{:<18} {:>8} {:<10} {:<5} {:>24}  {}",
            "CHECK", "INDEX", "STATUS", "TIER", "MARGIN(log10)", "NOTE"
        );
        out.push_str(&header);
        out.push('\n');
        out.push_str(&"-".repeat(header.len().max(72)));
        out.push('\n');
        for r in &self.rows {
            let margin = r
                .margin_log10
                .as_ref()
                .map(|m| to_decimal_string(m, 12))
                .unwrap_or_else(|| "-".to_string());
            out.push_str(&format!(
                "{:<18} {:>8} {:<10} {:<5} {:>24}  {}\n",
                r.check_id,
                r.index.to_string(),
                r.status.to_string(),
                r.tier.to_string(),
                margin,
                r.note.as_deref().unwrap_or("")
            ));
        }
        out
    }
}
