//! Comparison of recomputed branching matrices against the tables printed in
//! the published appendix (n = 2), stored verbatim in
//! `data/appendix.json`.

use std::collections::BTreeMap;

use crate::branching::{Family, IntMatrix, MatrixSpec};
use crate::error::{Error, Result};

const APPENDIX: &str = include_str!("../data/appendix.json");

/// One printed table entry that disagrees with the recomputed matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub row: String,
    pub col: String,
    pub printed: u64,
    pub computed: u64,
}

/// Result of checking one printed matrix.
#[derive(Clone, Debug)]
pub struct TableCheck {
    pub spec: MatrixSpec,
    pub printed: IntMatrix,
    pub computed: IntMatrix,
    pub mismatches: Vec<Mismatch>,
}

impl TableCheck {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.printed.len() == self.computed.len()
    }

    pub fn name(&self) -> String {
        let params: Vec<String> = self.spec.params().iter().map(ToString::to_string).collect();
        format!("{}^{}_{}", self.spec.family(), self.spec.n(), params.join(","))
    }
}

#[derive(Debug, Clone)]
pub struct AppendixReport {
    pub tables: Vec<TableCheck>,
}

impl AppendixReport {
    pub fn passed(&self) -> bool {
        self.tables.iter().all(TableCheck::passed)
    }

    pub fn entry_count(&self) -> usize {
        self.tables
            .iter()
            .map(|t| t.printed.iter().map(Vec::len).sum::<usize>())
            .sum()
    }

    pub fn mismatch_count(&self) -> usize {
        self.tables.iter().map(|t| t.mismatches.len()).sum()
    }
}

/// The printed tables in the order they appear: family, parameters, entries.
pub fn printed_tables() -> Result<Vec<(MatrixSpec, IntMatrix)>> {
    let raw: BTreeMap<String, BTreeMap<String, IntMatrix>> =
        serde_json::from_str(APPENDIX).map_err(|e| Error::Golden(e.to_string()))?;
    let order = [
        (Family::A, vec!["0", "1", "2", "3", "4", "5"]),
        (Family::C, vec!["0,0", "1,1", "2,2", "1,0", "2,1", "3,1", "4,1"]),
        (Family::D, vec!["0", "1", "2", "3", "4"]),
        (Family::E, vec!["0", "1", "2", "3", "4"]),
    ];
    let mut out = Vec::new();
    for (family, keys) in order {
        let tables = raw
            .get(&family.to_string())
            .ok_or_else(|| Error::Golden(format!("family {family} missing")))?;
        for key in keys {
            let params = key
                .split(',')
                .map(|s| s.parse::<usize>().map_err(|e| Error::Golden(e.to_string())))
                .collect::<Result<Vec<_>>>()?;
            let entries = tables
                .get(key)
                .ok_or_else(|| Error::Golden(format!("{family}_{key} missing")))?;
            out.push((MatrixSpec::new(family, 2, &params)?, entries.clone()));
        }
    }
    Ok(out)
}

/// Recomputes every printed table and records each disagreeing entry.
pub fn verify_appendix() -> Result<AppendixReport> {
    let mut tables = Vec::new();
    for (spec, printed) in printed_tables()? {
        let m = spec.build()?;
        let mut mismatches = Vec::new();
        if printed.len() != m.size() || printed.iter().any(|r| r.len() != m.size()) {
            return Err(Error::Golden(format!("printed table for {spec:?} has the wrong shape")));
        }
        for (i, row) in printed.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if x != m.entries[i][j] {
                    mismatches.push(Mismatch {
                        row: m.labels[i].to_string(),
                        col: m.labels[j].to_string(),
                        printed: x,
                        computed: m.entries[i][j],
                    });
                }
            }
        }
        tables.push(TableCheck {
            spec,
            printed,
            computed: m.entries,
            mismatches,
        });
    }
    Ok(AppendixReport { tables })
}
