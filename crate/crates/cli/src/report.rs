//! Reports in two renderings: plain lines and JSON carrying the same
//! verdicts.

use indexmap::IndexMap;
use qdt::preference::Witness;
use qdt::{Capacity, Error, Event};
use serde::Serialize;
use serde_json::Value;

use crate::document::Labels;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Holds = 0,
    Violation = 1,
}

pub struct Report {
    pub lines: Vec<String>,
    pub json: Value,
    pub status: Status,
}

impl Report {
    pub fn new(lines: Vec<String>, json: impl Serialize, status: Status) -> Self {
        Report {
            lines,
            json: serde_json::to_value(json).expect("reports serialize"),
            status,
        }
    }
}

/// Witness fields with acts, outcomes and events written with labels.
pub fn witness_fields(w: &Witness, l: &Labels) -> IndexMap<&'static str, String> {
    let mut m = IndexMap::new();
    let mut put = |k: &'static str, v: String| {
        m.insert(k, v);
    };
    match w {
        Witness::Incomplete { f, g } => {
            put("f", l.act(f));
            put("g", l.act(g));
        }
        Witness::Cycle { acts } => {
            for (k, a) in ["f", "g", "h"].into_iter().zip(acts) {
                put(k, l.act(a));
            }
        }
        Witness::Sav2 { f, g, h, h_alt, event } => {
            put("f", l.act(f));
            put("g", l.act(g));
            put("h", l.act(h));
            put("h'", l.act(h_alt));
            put("A", l.event(*event));
        }
        Witness::Sav3 { x, y, event, h } | Witness::Ws3 { x, y, event, h } => {
            put("x", l.outcome(*x));
            put("y", l.outcome(*y));
            put("A", l.event(*event));
            put("h", l.act(h));
        }
        Witness::Sav4 { x, x_low, y, y_low, a, b } => {
            put("x", l.outcome(*x));
            put("x'", l.outcome(*x_low));
            put("y", l.outcome(*y));
            put("y'", l.outcome(*y_low));
            put("A", l.event(*a));
            put("B", l.event(*b));
        }
        Witness::Sav4Prime { clause, x, x_low, y, y_low, a, b } => {
            put("clause", clause.to_string());
            put("x", l.outcome(*x));
            put("x'", l.outcome(*x_low));
            put("y", l.outcome(*y));
            put("y'", l.outcome(*y_low));
            put("A", l.event(*a));
            put("B", l.event(*b));
        }
        Witness::Sav5 => put("note", "all constant acts are indifferent".into()),
        Witness::Rcd { f, g, y } | Witness::Rdd { f, g, y } => {
            put("f", l.act(f));
            put("g", l.act(g));
            put("y", l.outcome(*y));
        }
        Witness::Cd { f, g, h } | Witness::Dd { f, g, h } => {
            put("f", l.act(f));
            put("g", l.act(g));
            put("h", l.act(h));
        }
        Witness::Cod { clause, f, g } => {
            put("clause", clause.to_string());
            put("f", l.act(f));
            put("g", l.act(g));
        }
        Witness::Optimism { f, g, event } | Witness::Pessimism { f, g, event } => {
            put("f", l.act(f));
            put("g", l.act(g));
            put("A", l.event(*event));
        }
    }
    m
}

pub fn witness_text(w: &Witness, l: &Labels) -> String {
    witness_fields(w, l)
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Capacity validation errors with state labels.
pub fn capacity_error(e: &Error, l: &Labels) -> String {
    match e {
        Error::NotMonotone {
            lower,
            upper,
            lower_level,
            upper_level,
        } => format!(
            "not monotone: sigma({}) = {lower_level} > sigma({}) = {upper_level}",
            l.event(*lower),
            l.event(*upper)
        ),
        Error::Boundary {
            event,
            expected,
            found,
        } => format!(
            "boundary: sigma({}) must be {expected}, found {found}",
            l.event(*event)
        ),
        other => other.to_string(),
    }
}

pub fn capacity_table(c: &Capacity, l: &Labels) -> IndexMap<String, u16> {
    qdt::all_events(c.states())
        .map(|e: Event| (l.event(e), c.get(e).rank()))
        .collect()
}
