//! Test statistics: order-free functions of a sample's composition.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::rational::BigRational;
use serde::Deserialize;

use crate::error::{Result, UrnError};
use crate::family::ModelFamily;
use crate::sample_space::Composition;
use crate::value::Value;

/// Canonical key for a sample: its nonzero `(value, count)` pairs in value order.
pub type SampleKey = Vec<(Value, u64)>;

/// Caller-supplied statistic values per sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatTable {
    rows: BTreeMap<SampleKey, Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableDoc {
    rows: Vec<TableRow>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableRow {
    sample: BTreeMap<String, u64>,
    value: Value,
}

impl StatTable {
    pub fn new(rows: BTreeMap<SampleKey, Value>) -> Self {
        StatTable { rows }
    }

    /// Parses `{"rows": [{"sample": {"0": 1, "1": 1}, "value": "2"}, ...]}`.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let doc: TableDoc = serde_json::from_str(text).map_err(|e| UrnError::from_json(&e))?;
        let mut rows = BTreeMap::new();
        for row in doc.rows {
            let mut key = Vec::with_capacity(row.sample.len());
            for (value, count) in row.sample {
                if count > 0 {
                    key.push((value.parse::<Value>()?, count));
                }
            }
            key.sort();
            if key.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(UrnError::InvalidStatistic(
                    "table sample repeats a value".into(),
                ));
            }
            if rows.insert(key, row.value).is_some() {
                return Err(UrnError::InvalidStatistic(
                    "table lists the same sample twice".into(),
                ));
            }
        }
        Ok(StatTable { rows })
    }

    fn lookup(&self, key: &SampleKey) -> Result<Value> {
        self.rows
            .get(key)
            .cloned()
            .ok_or_else(|| UrnError::MissingTableEntry {
                sample: key
                    .iter()
                    .map(|(v, c)| format!("{v}x{c}"))
                    .collect::<Vec<_>>()
                    .join(","),
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StatisticKind {
    Sum,
    Mean,
    /// Number of sampled balls carrying the given value.
    CountOf(Value),
    /// `|sum - center|`.
    AbsDeviation {
        center: Value,
    },
    Table(StatTable),
}

/// A named, real-valued statistic evaluated exactly on compositions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestStatistic {
    name: String,
    kind: StatisticKind,
}

impl TestStatistic {
    pub fn new(name: impl Into<String>, kind: StatisticKind) -> Self {
        TestStatistic {
            name: name.into(),
            kind,
        }
    }

    pub fn sum() -> Self {
        Self::new("sum", StatisticKind::Sum)
    }

    pub fn mean() -> Self {
        Self::new("mean", StatisticKind::Mean)
    }

    pub fn count_of(value: Value) -> Self {
        Self::new(format!("count:{value}"), StatisticKind::CountOf(value))
    }

    pub fn abs_deviation(center: Value) -> Self {
        Self::new(
            format!("absdev:{center}"),
            StatisticKind::AbsDeviation { center },
        )
    }

    pub fn table(name: impl Into<String>, table: StatTable) -> Self {
        Self::new(name, StatisticKind::Table(table))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &StatisticKind {
        &self.kind
    }

    /// Evaluates the statistic on `sample`, whose counts align with `values`.
    pub fn evaluate(&self, sample: &Composition, values: &[Value]) -> Result<Value> {
        if sample.len() != values.len() {
            return Err(UrnError::Misaligned {
                expected: values.len(),
                got: sample.len(),
            });
        }
        self.evaluate_pairs(values.iter().zip(sample.counts().iter().copied()))
    }

    /// Evaluates the statistic on a sample given as `(value, count)` pairs.
    pub fn evaluate_pairs<'a, I>(&self, pairs: I) -> Result<Value>
    where
        I: IntoIterator<Item = (&'a Value, u64)>,
    {
        let pairs: Vec<(&Value, u64)> = pairs.into_iter().filter(|(_, c)| *c > 0).collect();
        let sum = || -> BigRational {
            pairs
                .iter()
                .map(|(v, c)| v.as_rational() * BigRational::from_integer((*c).into()))
                .sum()
        };
        Ok(match &self.kind {
            StatisticKind::Sum => Value::new(sum()),
            StatisticKind::Mean => {
                let n: u64 = pairs.iter().map(|(_, c)| c).sum();
                if n == 0 {
                    return Err(UrnError::InvalidStatistic("mean of an empty sample".into()));
                }
                Value::new(sum() / BigRational::from_integer(n.into()))
            }
            StatisticKind::CountOf(target) => Value::from(
                pairs
                    .iter()
                    .filter(|(v, _)| *v == target)
                    .map(|(_, c)| c)
                    .sum::<u64>(),
            ),
            StatisticKind::AbsDeviation { center } => {
                Value::new(sum() - center.as_rational()).abs()
            }
            StatisticKind::Table(table) => {
                let mut key: SampleKey = pairs.iter().map(|(v, c)| ((*v).clone(), *c)).collect();
                key.sort();
                table.lookup(&key)?
            }
        })
    }
}

impl fmt::Display for TestStatistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl FromStr for TestStatistic {
    type Err = UrnError;

    /// Parses `sum`, `mean`, `count:<value>` and `absdev:<center>`. Table
    /// statistics need file access and are built with [`TestStatistic::table`].
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.split_once(':') {
            None if s == "sum" => Ok(TestStatistic::sum()),
            None if s == "mean" => Ok(TestStatistic::mean()),
            Some(("count", v)) => Ok(TestStatistic::count_of(v.parse()?)),
            Some(("absdev", c)) => Ok(TestStatistic::abs_deviation(c.parse()?)),
            Some(("table", _)) => Err(UrnError::InvalidStatistic(
                "table statistics must be loaded from a file".into(),
            )),
            _ => Err(UrnError::InvalidStatistic(format!(
                "unknown statistic descriptor {s:?}"
            ))),
        }
    }
}

/// The statistic `T_theta` used to test the model at `theta` with samples
/// of size `n`.
pub fn theta_statistic<F: ModelFamily + ?Sized>(
    family: &F,
    theta: &Value,
    n: u64,
) -> Result<TestStatistic> {
    family.theta_statistic(theta, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::BinaryFamily;

    fn v(s: &str) -> Value {
        s.parse().unwrap()
    }

    #[test]
    fn count_of_favorable() {
        let values = [v("0"), v("1")];
        let sample = Composition::new(vec![5, 25]);
        let t = TestStatistic::count_of(v("1"));
        assert_eq!(t.evaluate(&sample, &values).unwrap(), v("25"));
        let d = TestStatistic::abs_deviation(v("21"));
        assert_eq!(d.evaluate(&sample, &values).unwrap(), v("4"));
    }

    #[test]
    fn sum_and_mean() {
        let values = [v("0"), v("1")];
        assert_eq!(
            TestStatistic::sum()
                .evaluate(&Composition::new(vec![2, 0]), &values)
                .unwrap(),
            v("0")
        );
        let values = [v("1"), v("2"), v("3")];
        let sample = Composition::new(vec![1, 1, 1]);
        assert_eq!(
            TestStatistic::sum().evaluate(&sample, &values).unwrap(),
            v("6")
        );
        assert_eq!(
            TestStatistic::mean().evaluate(&sample, &values).unwrap(),
            v("2")
        );
        let sample = Composition::new(vec![2, 0, 1]);
        assert_eq!(
            TestStatistic::mean().evaluate(&sample, &values).unwrap(),
            v("5/3")
        );
    }

    #[test]
    fn misaligned_composition_is_rejected() {
        let err = TestStatistic::sum()
            .evaluate(&Composition::new(vec![1, 1]), &[v("1")])
            .unwrap_err();
        assert!(matches!(err, UrnError::Misaligned { .. }));
    }

    #[test]
    fn descriptors() {
        assert_eq!(
            "sum".parse::<TestStatistic>().unwrap(),
            TestStatistic::sum()
        );
        assert_eq!(
            "mean".parse::<TestStatistic>().unwrap(),
            TestStatistic::mean()
        );
        assert_eq!(
            "count:1".parse::<TestStatistic>().unwrap(),
            TestStatistic::count_of(v("1"))
        );
        assert_eq!(
            "absdev:2.5".parse::<TestStatistic>().unwrap(),
            TestStatistic::abs_deviation(v("5/2"))
        );
        for bad in ["median", "count:", "absdev:x", "table:foo.json", ""] {
            assert!(bad.parse::<TestStatistic>().is_err(), "{bad}");
        }
    }

    #[test]
    fn table_statistic() {
        let table = StatTable::from_json_str(
            r#"{"rows": [
                {"sample": {"0": 2}, "value": "0"},
                {"sample": {"0": 1, "1": 1}, "value": "1/2"},
                {"sample": {"1": 2, "0": 0}, "value": "7"}
            ]}"#,
        )
        .unwrap();
        let t = TestStatistic::table("custom", table);
        let values = [v("0"), v("1")];
        assert_eq!(
            t.evaluate(&Composition::new(vec![1, 1]), &values).unwrap(),
            v("0.5")
        );
        assert_eq!(
            t.evaluate(&Composition::new(vec![0, 2]), &values).unwrap(),
            v("7")
        );
        let missing = t
            .evaluate(&Composition::new(vec![3, 0]), &values)
            .unwrap_err();
        assert!(matches!(missing, UrnError::MissingTableEntry { .. }));
    }

    #[test]
    fn binary_family_centers() {
        let fam = BinaryFamily::new(10).unwrap();
        assert_eq!(
            theta_statistic(&fam, &v("0.5"), 4).unwrap(),
            TestStatistic::abs_deviation(v("2"))
        );
        assert_eq!(
            theta_statistic(&fam, &v("0.7"), 10).unwrap(),
            TestStatistic::abs_deviation(v("7"))
        );
        let at_zero = theta_statistic(&fam, &v("0"), 4).unwrap();
        let values = [v("0"), v("1")];
        for ones in 0..=4 {
            let s = Composition::new(vec![4 - ones, ones]);
            assert_eq!(
                at_zero.evaluate(&s, &values).unwrap(),
                TestStatistic::sum().evaluate(&s, &values).unwrap()
            );
        }
        assert!(theta_statistic(&fam, &v("1.5"), 4).is_err());
    }
}
