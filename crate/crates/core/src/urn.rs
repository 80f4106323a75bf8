//! Finite multisets of values ("urns").

use std::collections::BTreeMap;

use num::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Result, UrnError};
use crate::proportion::ExactProportion;
use crate::value::Value;

#[derive(Debug, Clone)]
struct Entry {
    count: u64,
    label: Option<String>,
}

/// A nonempty multiset of exact values, each with a positive count.
///
/// Entries are kept in ascending value order; that order is the alignment
/// used by every [`Composition`](crate::sample_space::Composition) drawn
/// from the urn. Labels are display metadata and take no part in equality.
#[derive(Debug, Clone)]
pub struct Urn {
    entries: BTreeMap<Value, Entry>,
    total: u64,
}

impl PartialEq for Urn {
    fn eq(&self, other: &Self) -> bool {
        self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|((va, ea), (vb, eb))| va == vb && ea.count == eb.count)
    }
}

impl Eq for Urn {}

impl Urn {
    /// Builds an urn from `(value, count)` pairs.
    pub fn new<I>(pairs: I) -> Result<Urn>
    where
        I: IntoIterator<Item = (Value, u64)>,
    {
        Urn::labeled(pairs.into_iter().map(|(v, c)| (v, c, None)))
    }

    /// Builds an urn from `(value, count, label)` triples.
    pub fn labeled<I>(triples: I) -> Result<Urn>
    where
        I: IntoIterator<Item = (Value, u64, Option<String>)>,
    {
        let mut entries = BTreeMap::new();
        let mut total: u64 = 0;
        for (value, count, label) in triples {
            if count == 0 {
                return Err(UrnError::ZeroCount {
                    value: value.to_string(),
                });
            }
            total = total.checked_add(count).ok_or(UrnError::CountOverflow)?;
            let key = value.to_string();
            if entries.insert(value, Entry { count, label }).is_some() {
                return Err(UrnError::DuplicateValue { value: key });
            }
        }
        if entries.is_empty() {
            return Err(UrnError::EmptyUrn);
        }
        Ok(Urn { entries, total })
    }

    /// Builds an urn from counts aligned with `values`, skipping zero counts.
    pub(crate) fn from_aligned(values: &[Value], counts: &[u64]) -> Result<Urn> {
        Urn::new(
            values
                .iter()
                .zip(counts)
                .filter(|(_, &c)| c > 0)
                .map(|(v, &c)| (v.clone(), c)),
        )
    }

    /// Total number of balls, N.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// Number of distinct values.
    pub fn distinct(&self) -> usize {
        self.entries.len()
    }

    /// Distinct values in ascending order.
    pub fn values(&self) -> Vec<Value> {
        self.entries.keys().cloned().collect()
    }

    /// Counts aligned with [`Urn::values`].
    pub fn counts(&self) -> Vec<u64> {
        self.entries.values().map(|e| e.count).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Value, u64)> + '_ {
        self.entries.iter().map(|(v, e)| (v, e.count))
    }

    pub fn count_of(&self, value: &Value) -> u64 {
        self.entries.get(value).map_or(0, |e| e.count)
    }

    pub fn label_of(&self, value: &Value) -> Option<&str> {
        self.entries.get(value).and_then(|e| e.label.as_deref())
    }

    pub fn value_for_label(&self, label: &str) -> Option<&Value> {
        self.entries
            .iter()
            .find(|(_, e)| e.label.as_deref() == Some(label))
            .map(|(v, _)| v)
    }

    /// Multiset union: counts add. Labels from `self` win on conflict.
    pub fn union(&self, other: &Urn) -> Urn {
        let mut entries = self.entries.clone();
        for (value, entry) in &other.entries {
            entries
                .entry(value.clone())
                .and_modify(|e| {
                    e.count += entry.count;
                    if e.label.is_none() {
                        e.label = entry.label.clone();
                    }
                })
                .or_insert_with(|| entry.clone());
        }
        Urn {
            entries,
            total: self.total + other.total,
        }
    }

    /// Proportion of balls whose value satisfies `predicate`.
    pub fn event_proportion<P>(&self, predicate: P) -> ExactProportion
    where
        P: Fn(&Value) -> bool,
    {
        let hits: u64 = self
            .entries
            .iter()
            .filter(|(v, _)| predicate(v))
            .map(|(_, e)| e.count)
            .sum();
        ExactProportion::from_counts(&BigUint::from(hits), &BigUint::from(self.total))
            .expect("hits never exceed the urn total")
    }

    /// The urn left after removing the balls in `removed`.
    ///
    /// Repeated values in `removed` accumulate. Removing nothing returns the
    /// urn unchanged.
    pub fn condition(&self, removed: &[(Value, u64)]) -> Result<Urn> {
        let mut entries = self.entries.clone();
        let mut total = self.total;
        for (value, n) in removed {
            if *n == 0 {
                continue;
            }
            let available = entries.get(value).map_or(0, |e| e.count);
            if *n > available {
                return Err(UrnError::NotSubMultiset {
                    value: value.to_string(),
                    removed: *n,
                    available,
                });
            }
            total -= n;
            if *n == available {
                entries.remove(value);
            } else if let Some(e) = entries.get_mut(value) {
                e.count -= n;
            }
        }
        if entries.is_empty() {
            return Err(UrnError::EmptyUrn);
        }
        Ok(Urn { entries, total })
    }

    /// Same as [`Urn::condition`] with another urn as the removed balls.
    pub fn condition_urn(&self, removed: &Urn) -> Result<Urn> {
        let pairs: Vec<(Value, u64)> = removed.iter().map(|(v, c)| (v.clone(), c)).collect();
        self.condition(&pairs)
    }

    pub fn from_json_str(text: &str) -> Result<Urn> {
        let doc: UrnDoc = serde_json::from_str(text).map_err(|e| UrnError::from_json(&e))?;
        doc.try_into()
    }

    pub fn to_doc(&self) -> UrnDoc {
        UrnDoc {
            entries: self
                .entries
                .iter()
                .map(|(v, e)| UrnDocEntry {
                    value: v.clone(),
                    count: e.count,
                    label: e.label.clone(),
                })
                .collect(),
        }
    }
}

/// Serialized urn: `{"entries": [{"value": "1", "count": 42, "label": "favorable"}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UrnDoc {
    pub entries: Vec<UrnDocEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UrnDocEntry {
    pub value: Value,
    pub count: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl TryFrom<UrnDoc> for Urn {
    type Error = UrnError;

    fn try_from(doc: UrnDoc) -> Result<Urn> {
        Urn::labeled(doc.entries.into_iter().map(|e| (e.value, e.count, e.label)))
    }
}
