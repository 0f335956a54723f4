//! Three-valued check results.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::Error;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Yes,
    No,
    Unknown,
}

/// `Yes` and `No` always carry a witness; `Unknown` always carries the bound
/// that was exhausted and a reason.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    #[serde(skip_serializing_if = "Value::is_null", default)]
    pub witness: Value,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bound: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
}

impl Verdict {
    pub fn yes(witness: Value) -> Self {
        Verdict { status: Status::Yes, witness: non_null(witness), bound: None, reason: None }
    }

    /// A `Yes` that only holds up to the recorded bound.
    pub fn yes_upto(witness: Value, bound: Value) -> Self {
        Verdict { status: Status::Yes, witness: non_null(witness), bound: Some(bound), reason: None }
    }

    pub fn no(witness: Value) -> Self {
        Verdict { status: Status::No, witness: non_null(witness), bound: None, reason: None }
    }

    pub fn unknown(bound: Value, reason: impl Into<String>) -> Self {
        Verdict { status: Status::Unknown, witness: Value::Null, bound: Some(bound), reason: Some(reason.into()) }
    }

    pub fn from_bool(ok: bool, witness: Value) -> Self {
        if ok {
            Verdict::yes(witness)
        } else {
            Verdict::no(witness)
        }
    }

    pub fn is_yes(&self) -> bool {
        self.status == Status::Yes
    }

    pub fn is_no(&self) -> bool {
        self.status == Status::No
    }

    pub fn is_unknown(&self) -> bool {
        self.status == Status::Unknown
    }

    pub fn is_decisive(&self) -> bool {
        self.status != Status::Unknown
    }

    pub fn with_bound(mut self, bound: Value) -> Self {
        self.bound = Some(bound);
        self
    }

    /// Conjunction: any `No` wins, then any `Unknown`, else `Yes`. Witnesses
    /// are collected under their labels.
    pub fn all<I: IntoIterator<Item = (String, Verdict)>>(parts: I) -> Verdict {
        let parts: Vec<(String, Verdict)> = parts.into_iter().collect();
        if let Some((label, v)) = parts.iter().find(|(_, v)| v.is_no()) {
            return Verdict::no(json!({ "failed": label, "detail": v }));
        }
        if let Some((label, v)) = parts.iter().find(|(_, v)| v.is_unknown()) {
            return Verdict::unknown(
                v.bound.clone().unwrap_or(Value::Null),
                format!("{label}: {}", v.reason.clone().unwrap_or_default()),
            );
        }
        let bounds: Vec<Value> = parts.iter().filter_map(|(_, v)| v.bound.clone()).collect();
        let witness = Value::Object(parts.into_iter().map(|(l, v)| (l, v.witness)).collect());
        match bounds.into_iter().next() {
            Some(b) => Verdict::yes_upto(witness, b),
            None => Verdict::yes(witness),
        }
    }
}

fn non_null(v: Value) -> Value {
    if v.is_null() {
        json!({})
    } else {
        v
    }
}

impl From<Error> for Verdict {
    fn from(e: Error) -> Self {
        match e {
            Error::Budget(b) => Verdict::unknown(json!({ "budget": b }), "search budget exhausted"),
            other => Verdict::no(json!({ "error": other.to_string() })),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjunction_precedence() {
        let y = Verdict::yes(json!(1));
        let n = Verdict::no(json!(2));
        let u = Verdict::unknown(json!(3), "bound");
        assert!(Verdict::all([("a".into(), y.clone()), ("b".into(), u.clone())]).is_unknown());
        assert!(Verdict::all([("a".into(), u), ("b".into(), n)]).is_no());
        assert!(Verdict::all([("a".into(), y)]).is_yes());
    }

    #[test]
    fn invariants_hold_by_construction() {
        assert!(!Verdict::yes(Value::Null).witness.is_null());
        let u = Verdict::unknown(json!(5), "x");
        assert!(u.bound.is_some() && u.reason.is_some());
    }
}
