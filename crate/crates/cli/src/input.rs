use std::fs;
use std::path::{Path, PathBuf};

use urnstat::{BinaryFamily, StatTable, TestStatistic, Urn, UrnError, Value};

use crate::CliError;

pub fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Loads an urn from a JSON file or an inline JSON string.
pub fn load_urn(file: Option<&PathBuf>, inline: Option<&str>) -> Result<Urn, CliError> {
    match (file, inline) {
        (Some(path), None) => Urn::from_json_str(&read_file(path)?).map_err(|e| CliError::Input {
            origin: path.display().to_string(),
            source: e,
        }),
        (None, Some(text)) => Urn::from_json_str(text).map_err(|e| CliError::Input {
            origin: "inline urn".into(),
            source: e,
        }),
        _ => Err(CliError::Usage(
            "give exactly one of --urn or --urn-json".into(),
        )),
    }
}

/// Parses `sum | mean | count:<v> | absdev:<c> | table:<file.json>`.
pub fn parse_statistic(descriptor: &str) -> Result<TestStatistic, CliError> {
    if let Some(path) = descriptor.strip_prefix("table:") {
        let path = Path::new(path);
        let table = StatTable::from_json_str(&read_file(path)?).map_err(|e| CliError::Input {
            origin: path.display().to_string(),
            source: e,
        })?;
        return Ok(TestStatistic::table(descriptor, table));
    }
    Ok(descriptor.parse()?)
}

pub fn parse_value(s: &str) -> Result<Value, CliError> {
    Ok(s.parse()?)
}

/// `binary` (urn size 100) or `binary:<size>`.
pub fn parse_family(s: &str) -> Result<BinaryFamily, CliError> {
    match s.split_once(':') {
        None if s == "binary" => Ok(BinaryFamily::new(100)?),
        Some(("binary", d)) => {
            let d: u64 = d
                .parse()
                .map_err(|_| CliError::Usage(format!("bad urn size in family {s:?}")))?;
            Ok(BinaryFamily::new(d)?)
        }
        _ => Err(CliError::Usage(format!(
            "unknown family {s:?}; expected binary or binary:<size>"
        ))),
    }
}

/// `step:<h>` keeps the multiples of h that the family can represent,
/// `lattice` is every representable theta, and a comma list is taken as
/// given (unrepresentable points are errors).
pub fn parse_grid(s: &str, family: &BinaryFamily) -> Result<Vec<Value>, CliError> {
    if s == "lattice" {
        return Ok(family.lattice());
    }
    if let Some(step) = s.strip_prefix("step:") {
        return Ok(family.stepped_grid(&parse_value(step)?)?);
    }
    let grid = s
        .split(',')
        .map(|t| parse_value(t.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    for theta in &grid {
        family.ones_at(theta)?;
    }
    Ok(grid)
}

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct TrialCounts {
    pub n_a: u64,
    pub n_b: u64,
    pub fav_a: u64,
    pub fav_b: u64,
}

/// Reads a `group,outcome` CSV with groups `A`/`B` and outcomes
/// `favorable`/`unfavorable`.
pub fn read_trial_table(path: &Path) -> Result<TrialCounts, CliError> {
    let text = read_file(path)?;
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let bad = |msg: String| CliError::Input {
        origin: path.display().to_string(),
        source: UrnError::InconsistentCounts(msg),
    };
    let headers = reader.headers().map_err(|e| bad(e.to_string()))?.clone();
    if headers.iter().collect::<Vec<_>>() != ["group", "outcome"] {
        return Err(bad(format!(
            "expected header group,outcome, found {}",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut counts = TrialCounts::default();
    for (i, record) in reader.records().enumerate() {
        let row = i + 2;
        let record = record.map_err(|e| bad(format!("line {row}: {e}")))?;
        let favorable = match &record[1] {
            "favorable" => true,
            "unfavorable" => false,
            other => return Err(bad(format!("line {row}: unknown outcome {other:?}"))),
        };
        match &record[0] {
            "A" => {
                counts.n_a += 1;
                counts.fav_a += u64::from(favorable);
            }
            "B" => {
                counts.n_b += 1;
                counts.fav_b += u64::from(favorable);
            }
            other => return Err(bad(format!("line {row}: unknown group {other:?}"))),
        }
    }
    Ok(counts)
}
