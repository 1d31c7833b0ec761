//! Plain-text rendering of reports.

use std::fmt::Write;

use serde_json::Value;

use crate::{Report, TaskResult};

fn row(out: &mut String, label: &str, cells: impl IntoIterator<Item = String>) {
    let _ = write!(out, "  {label:<8}");
    for c in cells {
        let _ = write!(out, "{c:>6}");
    }
    out.push('\n');
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn result(out: &mut String, r: &TaskResult) {
    let inputs: Vec<String> = r.inputs.iter().map(|(k, v)| format!("{k}={}", scalar(v))).collect();
    let _ = writeln!(out, "{}  {}", r.task, inputs.join(" "));
    if let Some(range) = r.certified_range {
        let _ = writeln!(out, "  certified range {range}");
    }
    if let Some(betti) = &r.betti {
        let lo = r.certified_range.map_or(0, |c| c.lo);
        row(out, "degree", (0..betti.len()).map(|k| (lo + k as i64).to_string()));
        row(out, "betti", betti.iter().map(|b| b.to_string()));
    }
    if let Some(dims) = &r.dims {
        row(out, "dims", dims.iter().map(|b| b.to_string()));
    }
    if let Some(v) = r.verdict {
        match r.failing_degree {
            Some(n) => {
                let _ = writeln!(out, "  verdict {} (degree {n})", v.as_str());
            }
            None => {
                let _ = writeln!(out, "  verdict {}", v.as_str());
            }
        }
    }
    if let Value::Object(map) = &r.details {
        for (k, v) in map {
            if r.inputs.contains_key(k) || matches!(k.as_str(), "extension" | "algebra" | "base") {
                continue;
            }
            if matches!(v, Value::Array(_) | Value::Object(_)) && v.to_string().len() > 60 {
                continue;
            }
            let _ = writeln!(out, "  {k}: {}", scalar(v));
        }
    }
    if let Some(reps) = &r.representatives {
        for (n, vs) in reps {
            for v in vs {
                let terms: Vec<String> = v.iter().map(|(i, c)| format!("{c}·e{i}")).collect();
                let _ = writeln!(out, "  rep[{n}] {}", terms.join(" + "));
            }
        }
    }
    if let Some(ms) = r.timings_ms {
        let _ = writeln!(out, "  time {ms:.1} ms");
    }
}

pub fn render(report: &Report) -> String {
    let mut out = String::new();
    for (k, r) in report.results.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        result(&mut out, r);
    }
    out
}
