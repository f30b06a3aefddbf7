//! Canonical JSON and plain-text rendering of outcomes.
//!
//! `serde_json::Map` is a `BTreeMap` here, so object keys come out sorted and
//! equal outcomes render to equal bytes.

use serde_json::{json, Value};

use crate::request::Request;
use crate::run::{Outcome, Status};

/// The report object for one request: the echoed request plus the outcome.
/// Without a request (a bare `selftest`), the `request` key is omitted.
pub fn report_value(req: Option<&Request>, out: &Outcome) -> Value {
    let mut v = json!({
        "command": out.command.as_str(),
        "status": serde_json::to_value(out.status).expect("status serializes"),
        "result": out.result,
    });
    if let Some(req) = req {
        v["request"] = serde_json::to_value(req).expect("requests serialize");
    }
    v
}

/// Pretty-printed canonical JSON with a trailing newline.
pub fn format_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

pub fn format_report(req: &Request, out: &Outcome) -> String {
    format_json(&report_value(Some(req), out))
}

fn poly_str(v: &Value) -> String {
    v.to_string()
}

fn field<'a>(v: &'a Value, key: &str) -> &'a Value {
    v.get(key).unwrap_or(&Value::Null)
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn key_values(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}

fn grid(header: &[String], rows: &[Vec<String>]) -> String {
    let cols = header.len().max(rows.iter().map(Vec::len).max().unwrap_or(0));
    let mut widths = vec![0; cols];
    for row in std::iter::once(header).chain(rows.iter().map(Vec::as_slice)) {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let line = |row: &[String]| {
        let cells: Vec<String> = (0..cols)
            .map(|i| format!("{:>w$}", row.get(i).map_or("", String::as_str), w = widths[i]))
            .collect();
        format!("{}\n", cells.join(" ").trim_end())
    };
    let mut out = line(header);
    for row in rows {
        out.push_str(&line(row));
    }
    out
}

/// Human-readable rendering.
pub fn format_text(out: &Outcome) -> String {
    let r = &out.result;
    if let Some(err) = r.get("error") {
        let path = r.get("path").map(|p| format!(" at {}", scalar(p))).unwrap_or_default();
        return format!("error{path}: {}\n", scalar(err));
    }
    let mut text = match out.command.as_str() {
        "classify" => {
            let mut rows = vec![
                ("decision", scalar(field(r, "decision"))),
                ("citation", scalar(field(r, "citation"))),
                ("notes", scalar(field(r, "notes"))),
            ];
            if let Some(w) = r.get("witness") {
                rows.push(("witness a", poly_str(field(w, "a"))));
                rows.push(("witness b", poly_str(field(w, "b"))));
                rows.push(("mode", scalar(field(w, "mode"))));
                rows.push(("m range", field(w, "m_range").to_string()));
            }
            if let Some(c) = r.get("witness_check") {
                rows.push(("replay", scalar(field(c, "result"))));
            }
            key_values(&rows)
        }
        "member" => {
            let mut rows = vec![
                ("window", scalar(field(r, "window"))),
                ("degree cap", scalar(field(r, "degree_cap"))),
                ("exact span", scalar(field(r, "exact"))),
            ];
            if let Some(e) = r.get("exact_member") {
                rows.push(("exact member", scalar(e)));
            }
            key_values(&rows)
        }
        "basis" => {
            let mut s = key_values(&[
                ("degree cap", scalar(field(r, "degree_cap"))),
                ("dimension", scalar(field(r, "dimension"))),
                ("exact", scalar(field(r, "exact"))),
            ]);
            let basis = field(r, "basis").as_array().cloned().unwrap_or_default();
            let pre = field(r, "preimages").as_array().cloned().unwrap_or_default();
            let rows: Vec<Vec<String>> = basis
                .iter()
                .enumerate()
                .map(|(i, b)| {
                    let mut row = vec![i.to_string(), b.to_string()];
                    if let Some(q) = pre.get(i) {
                        row.push(q.to_string());
                    }
                    row
                })
                .collect();
            let header: Vec<String> = if pre.is_empty() {
                vec!["#".into(), "row".into()]
            } else {
                vec!["#".into(), "row".into(), "preimage".into()]
            };
            s.push_str(&grid(&header, &rows));
            s
        }
        "ln" => {
            let mut rows = vec![
                ("status", scalar(field(r, "status"))),
                ("citation", scalar(field(r, "citation"))),
            ];
            if let Some(i) = r.get("index") {
                rows.push(("index", scalar(i)));
            }
            if let Some(c) = r.get("certificate") {
                rows.push(("certificate", c.to_string()));
            }
            if let Some(c) = r.get("cap") {
                rows.push(("cap", scalar(c)));
            }
            key_values(&rows)
        }
        "lf" => key_values(&[
            ("status", scalar(field(r, "status"))),
            ("citation", scalar(field(r, "citation"))),
        ]),
        "table-thm25" => {
            let p = field(r, "p").as_u64().unwrap_or(2) as usize;
            let entries = field(r, "entries").as_array().cloned().unwrap_or_default();
            let mut header = vec!["k".to_string()];
            header.extend((0..p).map(|i| format!("i={i}")));
            let rows: Vec<Vec<String>> = entries
                .chunks(p)
                .enumerate()
                .map(|(k, chunk)| {
                    let mut row = vec![k.to_string()];
                    row.extend(chunk.iter().map(|e| {
                        if field(e, "member").as_bool() == Some(true) { "in" } else { "." }.to_string()
                    }));
                    row
                })
                .collect();
            let mut s = format!(
                "x^(kp+i) in Im(I - phi), phi = x + {}\n",
                scalar(field(r, "c"))
            );
            s.push_str(&grid(&header, &rows));
            s
        }
        "table-lemma37" => {
            let rows_v = field(r, "rows").as_array().cloned().unwrap_or_default();
            let width = rows_v.last().and_then(Value::as_array).map_or(0, Vec::len);
            let mut header = vec!["k".to_string()];
            header.extend((1..=width).map(|j| format!("a{j}")));
            let rows: Vec<Vec<String>> = rows_v
                .iter()
                .enumerate()
                .map(|(k, row)| {
                    let mut cells = vec![k.to_string()];
                    cells.extend(row.as_array().into_iter().flatten().map(Value::to_string));
                    cells
                })
                .collect();
            grid(&header, &rows)
        }
        "oracle-radical" => {
            let mut s = key_values(&[
                ("scanned", scalar(field(r, "scanned"))),
                ("exact", scalar(field(r, "exact"))),
                ("config", field(r, "config").to_string()),
                ("note", scalar(field(r, "note"))),
            ]);
            let cands = field(r, "candidates").as_array().cloned().unwrap_or_default();
            s.push_str(&format!("candidates ({})\n", cands.len()));
            for c in cands {
                s.push_str(&format!("  {c}\n"));
            }
            s
        }
        "oracle-witness" => {
            let mut rows = vec![("source", scalar(field(r, "source")))];
            if let Some(w) = r.get("witness") {
                rows.push(("witness", w.to_string()));
            }
            if let Some(d) = r.get("decision") {
                rows.push(("decision", scalar(d)));
            }
            let check = field(r, "check");
            let verdict = match check.get("result") {
                Some(res) if check.get("m").is_some() => format!(
                    "{} at m = {} ({})",
                    scalar(res),
                    scalar(field(check, "m")),
                    scalar(field(check, "stage"))
                ),
                Some(res) => scalar(res),
                None => "no witness".into(),
            };
            rows.push(("check", verdict));
            key_values(&rows)
        }
        "selftest" => {
            let mut s = String::new();
            for c in field(r, "criteria").as_array().into_iter().flatten() {
                let ok = field(c, "failed").as_u64() == Some(0);
                s.push_str(&format!(
                    "{} {}  {} ({} checks)\n",
                    scalar(field(c, "id")),
                    if ok { "PASS" } else { "FAIL" },
                    scalar(field(c, "title")),
                    scalar(field(c, "checks")),
                ));
                for f in field(c, "failures").as_array().into_iter().flatten() {
                    s.push_str(&format!("    {}\n", scalar(f)));
                }
            }
            s
        }
        _ => format_json(r),
    };
    if out.status != Status::Ok {
        text.push_str(&format!(
            "status: {}\n",
            serde_json::to_value(out.status).map_or_else(|_| "?".into(), |v| scalar(&v))
        ));
    }
    text
}
