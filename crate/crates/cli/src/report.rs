use serde_json::{json, Map, Value as Json};
use urnstat::{
    ConfidenceSet, CoverageReport, ExactProportion, PValueResult, PowerReport, ProportionJson,
    Tally,
};

pub fn proportion(p: &ExactProportion, places: usize) -> Json {
    serde_json::to_value(ProportionJson::new(p, places)).expect("plain strings")
}

pub fn p_value(r: &PValueResult, places: usize) -> Map<String, Json> {
    let mut m = Map::new();
    m.insert("p".into(), proportion(&r.p, places));
    m.insert("t_obs".into(), json!(r.t_obs.to_string()));
    m.insert("method".into(), json!(r.method.as_str()));
    m.insert("space_size".into(), json!(r.space_size.to_string()));
    match &r.tally {
        Tally::Exact { tail_count } => {
            m.insert("tail_count".into(), json!(tail_count.to_string()));
        }
        Tally::MonteCarlo { draws, hits, seed } => {
            m.insert("draws".into(), json!(draws));
            m.insert("hits".into(), json!(hits));
            m.insert("seed".into(), json!(seed));
        }
    }
    m
}

fn bounds(set: &ConfidenceSet) -> (Json, Json) {
    match set.bounds() {
        Some((lo, hi)) => (json!(lo.to_string()), json!(hi.to_string())),
        None => (Json::Null, Json::Null),
    }
}

pub fn confidence_set(set: &ConfidenceSet, places: usize) -> Map<String, Json> {
    let (lower, upper) = bounds(set);
    let profile: Vec<Json> = set
        .points
        .iter()
        .map(|pt| {
            json!({
                "theta": pt.theta.to_string(),
                "t_obs": pt.t_obs.to_string(),
                "p": proportion(&pt.p, places),
                "tail_count": pt.tail_count.to_string(),
                "space_size": pt.space_size.to_string(),
                "included": pt.included,
            })
        })
        .collect();
    let mut m = Map::new();
    m.insert("alpha".into(), json!(set.alpha.to_string()));
    m.insert(
        "members".into(),
        json!(set.members().map(|t| t.to_string()).collect::<Vec<_>>()),
    );
    m.insert("lower".into(), lower);
    m.insert("upper".into(), upper);
    m.insert("profile".into(), Json::Array(profile));
    m
}

pub fn coverage(report: &CoverageReport, places: usize) -> Map<String, Json> {
    // coverage >= 1 - alpha, i.e. coverage + alpha reaches 1.
    let alpha = ExactProportion::try_from(&report.alpha).expect("alpha lies in (0, 1)");
    let at_least_nominal = report
        .coverage
        .checked_add(&alpha)
        .is_none_or(|sum| sum == ExactProportion::one());
    let ledger: Vec<Json> = report
        .ledger
        .iter()
        .map(|row| {
            let (lower, upper) = bounds(&row.set);
            let p_truth = row
                .set
                .points
                .iter()
                .find(|pt| pt.theta == report.theta_star)
                .map(|pt| proportion(&pt.p, places))
                .unwrap_or(Json::Null);
            json!({
                "composition": row.composition.counts(),
                "weight": row.weight.to_string(),
                "contains_truth": row.contains_truth,
                "p_at_truth": p_truth,
                "lower": lower,
                "upper": upper,
            })
        })
        .collect();
    let mut m = Map::new();
    m.insert("theta_star".into(), json!(report.theta_star.to_string()));
    m.insert("alpha".into(), json!(report.alpha.to_string()));
    m.insert("coverage".into(), proportion(&report.coverage, places));
    m.insert("n_samples".into(), json!(report.n_samples.to_string()));
    m.insert("at_least_nominal".into(), json!(at_least_nominal));
    m.insert("ledger".into(), Json::Array(ledger));
    m
}

pub fn power(r: &PowerReport, places: usize) -> Map<String, Json> {
    let mut m = Map::new();
    m.insert("t_star".into(), json!(r.t_star.to_string()));
    m.insert(
        "achieved_alpha".into(),
        proportion(&r.achieved_alpha, places),
    );
    m.insert("beta".into(), proportion(&r.beta, places));
    m.insert(
        "requested_alpha".into(),
        json!(r.requested_alpha.to_string()),
    );
    m
}

/// Flattens a JSON report into `dotted.key: value` lines.
pub fn to_text(report: &Json) -> String {
    fn walk(prefix: &str, v: &Json, out: &mut String) {
        match v {
            Json::Object(m) => {
                // A rendered proportion prints on one line.
                if let (Some(Json::String(num)), Some(Json::String(den)), Some(Json::String(dec))) =
                    (m.get("num"), m.get("den"), m.get("decimal"))
                {
                    out.push_str(&format!("{prefix}: {num}/{den} ({dec})\n"));
                    return;
                }
                for (k, child) in m {
                    let key = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(&key, child, out);
                }
            }
            Json::Array(items) if items.iter().all(|i| !i.is_object()) => {
                let parts: Vec<String> = items.iter().map(scalar).collect();
                out.push_str(&format!("{prefix}: [{}]\n", parts.join(", ")));
            }
            Json::Array(items) => {
                for (i, child) in items.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), child, out);
                }
            }
            other => out.push_str(&format!("{prefix}: {}\n", scalar(other))),
        }
    }
    fn scalar(v: &Json) -> String {
        match v {
            Json::String(s) => s.clone(),
            other => other.to_string(),
        }
    }
    let mut out = String::new();
    walk("", report, &mut out);
    out
}
