use serde::Serialize;
use serde_json::Value;

use modring_core::HalfWeight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Span,
    Relation,
    Kernel,
    Hilbert,
    Identity,
    Integrality,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Span => "span",
            CheckKind::Relation => "relation",
            CheckKind::Kernel => "kernel",
            CheckKind::Hilbert => "hilbert",
            CheckKind::Identity => "identity",
            CheckKind::Integrality => "integrality",
        }
    }
}

/// Outcome of one check on one case. Serializes to the newline-delimited JSON schema.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub case: String,
    pub check: CheckKind,
    pub k_range: [Value; 2],
    pub precision: usize,
    pub status: Status,
    pub details: Value,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    /// Multi-line human-readable form carrying the same fields as the JSON.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{} {} [{}]  k in [{}, {}]  prec {}  {} ms\n",
            self.case,
            self.check.name(),
            self.status.name().to_uppercase(),
            self.k_range[0],
            self.k_range[1],
            self.precision,
            self.elapsed_ms
        );
        render_value(&self.details, 1, &mut s);
        s
    }
}

fn render_value(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_value(x, depth + 1, out);
                    }
                    Value::Array(items) if items.iter().any(|i| i.is_object()) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        for i in items {
                            out.push_str(&format!("{pad}  - {}\n", compact(i)));
                        }
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", compact(x))),
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", compact(v))),
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Object(map) => map.iter().map(|(k, x)| format!("{k}={}", compact(x))).collect::<Vec<_>>().join(" "),
        _ => v.to_string(),
    }
}

/// Integral weights as JSON integers, half-integral ones as decimals.
pub fn weight_json(w: HalfWeight) -> Value {
    match w.as_integer() {
        Some(k) => Value::from(k),
        None => Value::from(w.doubled() as f64 / 2.0),
    }
}
