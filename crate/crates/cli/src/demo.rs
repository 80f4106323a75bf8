//! Worked examples with their exact numbers.

use clap::ValueEnum;
use serde_json::{json, Map, Value as Json};
use urnstat::{
    mc_p_value, randomization_p_value, sharp_null_urn, Sided, TestStatistic, Urn, Value,
};

use crate::report;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DemoName {
    /// 50 envelopes, one holding the winning ticket.
    Envelopes,
    /// Six outs among 44 unseen cards.
    Poker,
    /// Pick-3: ten numbered balls per box.
    Lottery,
    /// 999 white balls and 1 black ball.
    Ess,
    /// Two-arm trial, 25 of 30 vs 17 of 30 favorable.
    Trial,
}

#[derive(Debug, Clone)]
pub struct DemoOptions {
    pub open: u64,
    pub opened_wins: bool,
    pub seed: u64,
    pub draws: u64,
}

fn single_event(urn: &Urn, target: &Value, places: usize) -> Map<String, Json> {
    let p = urn.event_proportion(|v| v == target);
    let mut m = Map::new();
    m.insert("hits".into(), json!(urn.count_of(target)));
    m.insert("total".into(), json!(urn.total()));
    m.insert("method".into(), json!("counting"));
    m.insert("space_size".into(), json!(urn.total().to_string()));
    m.insert("p".into(), report::proportion(&p, places));
    m
}

pub fn run(
    name: DemoName,
    opts: &DemoOptions,
    places: usize,
) -> Result<Map<String, Json>, CliError> {
    let mut out = Map::new();
    match name {
        DemoName::Ess => {
            let urn = Urn::labeled([
                (Value::from(0i64), 1, Some("black".to_string())),
                (Value::from(1i64), 999, Some("white".to_string())),
            ])?;
            out.insert("event".into(), json!("white"));
            out.extend(single_event(&urn, &Value::from(1i64), places));
        }
        DemoName::Poker => {
            let urn = Urn::labeled([
                (Value::from(0i64), 38, Some("other".to_string())),
                (Value::from(1i64), 6, Some("out".to_string())),
            ])?;
            out.insert("event".into(), json!("out"));
            out.extend(single_event(&urn, &Value::from(1i64), places));
        }
        DemoName::Lottery => {
            let balls = Urn::new((0..10i64).map(|d| (Value::from(d), 1)))?;
            let digit = single_event(&balls, &Value::from(7i64), places);
            let tickets = Urn::new((0..1000i64).map(|t| (Value::from(t), 1)))?;
            let ticket = single_event(&tickets, &Value::from(123i64), places);
            out.insert("per_digit".into(), Json::Object(digit));
            out.insert("per_ticket".into(), Json::Object(ticket));
        }
        DemoName::Envelopes => {
            const ENVELOPES: u64 = 50;
            const TICKETS_PER_ENVELOPE: u64 = 20;
            if opts.open >= ENVELOPES {
                return Err(CliError::Usage(format!(
                    "--open must be below {ENVELOPES} so some envelope stays sealed"
                )));
            }
            if opts.opened_wins && opts.open == 0 {
                return Err(CliError::Usage("--opened-wins needs --open >= 1".into()));
            }
            // Ticket-level view: 1000 tickets, 20 per envelope, one winner.
            let tickets =
                Urn::new((1..=ENVELOPES).map(|e| (Value::from(e), TICKETS_PER_ENVELOPE)))?;
            let bob = Value::from(1u64);
            out.insert(
                "ticket_view".into(),
                Json::Object(single_event(&tickets, &bob, places)),
            );

            // Envelope-level view: which envelope holds the winner.
            let envelopes = Urn::new((1..=ENVELOPES).map(|e| (Value::from(e), 1)))?;
            let winner = Value::from(1u64);
            let before = envelopes.event_proportion(|v| *v == winner);
            // Opened envelopes are taken from the top; the winner is among
            // them only when the opening revealed it.
            let opened: Vec<(Value, u64)> = if opts.opened_wins {
                std::iter::once(winner.clone())
                    .chain((2..=opts.open).map(Value::from))
                    .map(|v| (v, 1))
                    .collect()
            } else {
                (0..opts.open)
                    .map(|i| (Value::from(ENVELOPES - i), 1))
                    .collect()
            };
            let remaining = envelopes.condition(&opened)?;
            let after = remaining.event_proportion(|v| *v == winner);
            out.insert("before".into(), report::proportion(&before, places));
            out.insert("opened".into(), json!(opts.open));
            out.insert("opened_held_winner".into(), json!(opts.opened_wins));
            out.insert("remaining".into(), json!(remaining.total()));
            out.insert("method".into(), json!("counting"));
            out.insert("space_size".into(), json!(remaining.total().to_string()));
            out.insert("after".into(), report::proportion(&after, places));
        }
        DemoName::Trial => {
            let one = randomization_p_value(30, 30, 25, 17, Sided::OneA)?;
            let two = randomization_p_value(30, 30, 25, 17, Sided::Two)?;
            let urn = sharp_null_urn(30, 30, 25, 17)?;
            let mc = mc_p_value(
                &urn,
                30,
                &TestStatistic::count_of(Value::from(1i64)),
                &Value::from(25i64),
                opts.draws,
                opts.seed,
            )?;
            let sigma = (one.p.to_f64() * (1.0 - one.p.to_f64()) / opts.draws as f64).sqrt();
            out.insert(
                "one_sided".into(),
                Json::Object(report::p_value(&one, places)),
            );
            out.insert(
                "two_sided".into(),
                Json::Object(report::p_value(&two, places)),
            );
            let mut cross = report::p_value(&mc, places);
            cross.insert(
                "within_3_sigma".into(),
                json!((mc.p.to_f64() - one.p.to_f64()).abs() <= 3.0 * sigma),
            );
            out.insert("monte_carlo".into(), Json::Object(cross));
        }
    }
    Ok(out)
}
