//! Expected discriminant tables and the multiset matcher used for regression runs.

use super::{discriminant, Discriminant};
use crate::error::{Error, Result};
use crate::spec::parse_group_in;
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureEntry {
    pub group: String,
    pub class_size: usize,
    pub sign: i32,
    pub factors: Vec<(i64, usize)>,
    /// "1", "2" or "prop81".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Sign as printed, when the source prints one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign_printed: Option<i32>,
    #[serde(default = "default_true", skip_serializing_if = "is_true")]
    pub compare_sign: bool,
}

fn default_true() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

impl FixtureEntry {
    pub fn factors_big(&self) -> Vec<(BigInt, usize)> {
        self.factors.iter().map(|&(r, k)| (BigInt::from(r), k)).collect()
    }

    fn factors_match(&self, d: &Discriminant) -> bool {
        d.splits() && d.degree() == self.class_size && d.factors == self.factors_big()
    }
}

pub const FIXTURE_FILE: &str = "tables.json";

pub fn shipped_fixture_json() -> &'static str {
    include_str!("../../data/tables.json")
}

pub fn parse_fixture(text: &str) -> Result<Vec<FixtureEntry>> {
    let entries: Vec<FixtureEntry> =
        serde_json::from_str(text).map_err(|e| Error::Fixture(e.to_string()))?;
    for e in &entries {
        if e.sign != 1 && e.sign != -1 {
            return Err(Error::Fixture(format!("{}: sign must be 1 or -1", e.group)));
        }
        let deg: usize = e.factors.iter().map(|f| f.1).sum();
        if deg != e.class_size {
            return Err(Error::Fixture(format!(
                "{}: factor degrees sum to {} but class size is {}",
                e.group, deg, e.class_size
            )));
        }
    }
    Ok(entries)
}

/// Reads `path` if given, otherwise the shipped table.
pub fn load_fixture(path: Option<&Path>) -> Result<Vec<FixtureEntry>> {
    match path {
        Some(p) => parse_fixture(&std::fs::read_to_string(p)?),
        None => parse_fixture(shipped_fixture_json()),
    }
}

pub fn entries_for<'a>(entries: &'a [FixtureEntry], table: &str) -> Vec<&'a FixtureEntry> {
    entries
        .iter()
        .filter(|e| e.table.as_deref() == Some(table))
        .collect()
}

/// Distinct group strings in first-appearance order.
pub fn groups_in(entries: &[&FixtureEntry]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for e in entries {
        if !out.contains(&e.group) {
            out.push(e.group.clone());
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowStatus {
    Match,
    /// Factors agree, sign differs (only when the entry compares signs).
    SignMismatch { computed: i32 },
    Mismatch,
}

#[derive(Clone, Debug)]
pub struct RowOutcome {
    pub entry: FixtureEntry,
    pub status: RowStatus,
    pub computed: Option<Discriminant>,
}

#[derive(Clone, Debug, Default)]
pub struct GroupMatch {
    pub rows: Vec<RowOutcome>,
    /// Computed classes not claimed by any row.
    pub unclaimed: Vec<Discriminant>,
}

impl GroupMatch {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.status == RowStatus::Match)
    }
}

/// Pairs rows with computed class discriminants as multisets.
pub fn match_group(rows: &[&FixtureEntry], computed: &[Discriminant]) -> GroupMatch {
    let mut used = vec![false; computed.len()];
    let mut status: Vec<Option<(RowStatus, usize)>> = vec![None; rows.len()];
    for (i, row) in rows.iter().enumerate() {
        let hit = (0..computed.len()).find(|&j| {
            !used[j]
                && row.factors_match(&computed[j])
                && (!row.compare_sign || computed[j].sign == row.sign)
        });
        if let Some(j) = hit {
            used[j] = true;
            status[i] = Some((RowStatus::Match, j));
        }
    }
    for (i, row) in rows.iter().enumerate() {
        if status[i].is_some() {
            continue;
        }
        if let Some(j) = (0..computed.len()).find(|&j| !used[j] && row.factors_match(&computed[j])) {
            used[j] = true;
            status[i] = Some((
                RowStatus::SignMismatch {
                    computed: computed[j].sign,
                },
                j,
            ));
        }
    }
    let mut out = GroupMatch::default();
    for (i, row) in rows.iter().enumerate() {
        let (st, comp) = match &status[i] {
            Some((s, j)) => (s.clone(), Some(computed[*j].clone())),
            None => (RowStatus::Mismatch, None),
        };
        out.rows.push(RowOutcome {
            entry: (*row).clone(),
            status: st,
            computed: comp,
        });
    }
    out.unclaimed = (0..computed.len())
        .filter(|&j| !used[j])
        .map(|j| computed[j].clone())
        .collect();
    out
}

#[derive(Clone, Debug)]
pub struct TableRun {
    pub table: String,
    pub groups: Vec<(String, GroupMatch)>,
}

impl TableRun {
    pub fn all_match(&self) -> bool {
        self.groups.iter().all(|g| g.1.all_match())
    }

    pub fn row_count(&self) -> usize {
        self.groups.iter().map(|g| g.1.rows.len()).sum()
    }

    pub fn matched_rows(&self) -> usize {
        self.groups
            .iter()
            .flat_map(|g| &g.1.rows)
            .filter(|r| r.status == RowStatus::Match)
            .count()
    }
}

/// Recomputes every group of one table and matches it against the entries.
pub fn run_table(entries: &[FixtureEntry], table: &str, data_dir: Option<&Path>) -> Result<TableRun> {
    let rows = entries_for(entries, table);
    if rows.is_empty() {
        return Err(Error::Fixture(format!("no entries for table {}", table)));
    }
    let groups = groups_in(&rows);
    let matched: Result<Vec<(String, GroupMatch)>> = groups
        .par_iter()
        .map(|name| {
            let g = parse_group_in(name, data_dir)?.build(data_dir)?;
            let computed = (0..g.classes.len())
                .map(|c| discriminant(&g, c))
                .collect::<Result<Vec<_>>>()?;
            let mine: Vec<&FixtureEntry> = rows.iter().copied().filter(|e| &e.group == name).collect();
            Ok((name.clone(), match_group(&mine, &computed)))
        })
        .collect();
    Ok(TableRun {
        table: table.to_string(),
        groups: matched?,
    })
}
