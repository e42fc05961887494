//! Kissing-number bookkeeping and the one-sided kissing average
//! K̄(n) = (k(n−1) + k(n))/2.

use super::BoundsError;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::io::{BufRead, Write};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Proven exact value.
    Exact,
    /// Best known bound, user-supplied.
    Bound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KissingEntry {
    pub n: u32,
    pub k: u64,
    pub provenance: Provenance,
}

/// Table of kissing numbers k(n). Ships with only the proven exact entries
/// k(1) = 2, k(2) = 6, k(3) = 12, k(4) = 24; anything else must be supplied
/// by the user, so unattested constants never masquerade as ground truth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KissingTable {
    entries: BTreeMap<u32, KissingEntry>,
}

impl Default for KissingTable {
    fn default() -> Self {
        let mut entries = BTreeMap::new();
        for (n, k) in [(1u32, 2u64), (2, 6), (3, 12), (4, 24)] {
            entries.insert(
                n,
                KissingEntry {
                    n,
                    k,
                    provenance: Provenance::Exact,
                },
            );
        }
        KissingTable { entries }
    }
}

impl KissingTable {
    pub fn get(&self, n: u32) -> Option<&KissingEntry> {
        self.entries.get(&n)
    }

    pub fn insert(&mut self, entry: KissingEntry) {
        self.entries.insert(entry.n, entry);
    }

    pub fn entries(&self) -> impl Iterator<Item = &KissingEntry> {
        self.entries.values()
    }

    /// Read line-delimited records `{"n":…,"k":…,"provenance":…}` and merge
    /// them over the built-in entries.
    pub fn load_records<R: BufRead>(&mut self, reader: R) -> Result<usize, BoundsError> {
        let mut added = 0;
        for (lineno, line) in reader.lines().enumerate() {
            let line = line.map_err(|e| BoundsError::Domain(format!("read error: {e}")))?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let entry: KissingEntry = serde_json::from_str(line).map_err(|e| {
                BoundsError::Domain(format!("bad kissing record on line {}: {e}", lineno + 1))
            })?;
            self.insert(entry);
            added += 1;
        }
        Ok(added)
    }

    pub fn write_records<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for e in self.entries.values() {
            writeln!(w, "{}", serde_json::to_string(e).expect("entries serialize"))?;
        }
        Ok(())
    }
}

/// K̄(n) = (k(n−1) + k(n))/2, the conjectured value of the one-sided kissing
/// number B(n). Exact identities hold for n = 2, 3, 4.
pub fn kbar(table: &KissingTable, n: u32) -> Result<f64, BoundsError> {
    if n < 2 {
        return Err(BoundsError::Domain(format!("kbar needs n >= 2, got {n}")));
    }
    let lo = table
        .get(n - 1)
        .ok_or(BoundsError::MissingTableEntry(n - 1))?;
    let hi = table.get(n).ok_or(BoundsError::MissingTableEntry(n))?;
    Ok((lo.k as f64 + hi.k as f64) / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_identities() {
        let t = KissingTable::default();
        assert_eq!(kbar(&t, 2).unwrap(), 4.0);
        assert_eq!(kbar(&t, 3).unwrap(), 9.0);
        assert_eq!(kbar(&t, 4).unwrap(), 18.0);
    }

    #[test]
    fn missing_entries_are_reported() {
        let t = KissingTable::default();
        assert_eq!(
            kbar(&t, 5).unwrap_err(),
            BoundsError::MissingTableEntry(5)
        );
    }

    #[test]
    fn user_records_roundtrip() {
        let mut t = KissingTable::default();
        let text = "{\"n\":5,\"k\":40,\"provenance\":\"bound\"}\n# comment\n";
        let added = t.load_records(std::io::Cursor::new(text)).unwrap();
        assert_eq!(added, 1);
        assert_eq!(kbar(&t, 5).unwrap(), 32.0);

        let mut out = Vec::new();
        t.write_records(&mut out).unwrap();
        let mut back = KissingTable {
            entries: Default::default(),
        };
        back.load_records(std::io::Cursor::new(out)).unwrap();
        assert_eq!(back, t);
    }
}
