//! Result documents and their human, JSON and CSV renderings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// One named number. Every value carries its unit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Output {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub column: Option<String>,
    pub name: String,
    pub value: f64,
    pub unit: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub published: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel_delta: Option<f64>,
}

impl Output {
    pub fn new(name: impl Into<String>, value: f64, unit: impl Into<String>) -> Self {
        Self { column: None, name: name.into(), value, unit: unit.into(), published: None, rel_delta: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Constant {
    pub name: String,
    pub value: f64,
    pub unit: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub constants: Vec<Constant>,
    /// Free-form facts about how the numbers were produced (radius source, integrator...).
    pub details: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub name: String,
    pub value: f64,
    pub unit: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    /// `table <id>` or `run <operation>`.
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub caption: Option<String>,
    pub inputs: serde_json::Value,
    pub outputs: Vec<Output>,
    pub provenance: Provenance,
    pub tolerances: Vec<Tolerance>,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl ResultDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("result documents always serialize");
        s.push('\n');
        s
    }

    /// `column,name,value,unit,published,rel_delta` with `.` decimals.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        w.write_record(["column", "name", "value", "unit", "published", "rel_delta"]).expect("in-memory write");
        for o in &self.outputs {
            w.write_record([
                o.column.clone().unwrap_or_default(),
                o.name.clone(),
                o.value.to_string(),
                o.unit.clone(),
                opt(o.published),
                opt(o.rel_delta),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.command);
        if let Some(c) = &self.caption {
            out.push_str(" — ");
            out.push_str(c);
        }
        out.push('\n');
        let label = |o: &Output| match &o.column {
            Some(c) => format!("{c}: {}", o.name),
            None => o.name.clone(),
        };
        let width = self.outputs.iter().map(|o| label(o).chars().count()).max().unwrap_or(0);
        for o in &self.outputs {
            let l = label(o);
            let pad = width - l.chars().count();
            out.push_str(&format!("  {l}{:pad$}  {:>22.15e} {}", "", o.value, o.unit));
            if let Some(p) = o.published {
                out.push_str(&format!("   published {p:e}"));
            }
            if let Some(d) = o.rel_delta {
                out.push_str(&format!("   rel. delta {d:+.3e}"));
            }
            out.push('\n');
        }
        if !self.provenance.details.is_empty() {
            out.push_str("provenance:\n");
            for (k, v) in &self.provenance.details {
                out.push_str(&format!("  {k}: {v}\n"));
            }
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ResultDocument {
        ResultDocument {
            command: "run delay".into(),
            caption: None,
            inputs: serde_json::json!({"radius": 1.5e13}),
            outputs: vec![Output::new("delta_t", 0.1557508868470815, "s"), Output::new("weird, name", 1e-300, "cm")],
            provenance: Provenance::default(),
            tolerances: vec![],
            notes: vec![],
        }
    }

    #[test]
    fn json_round_trips() {
        let doc = sample();
        let text = doc.to_json();
        let back: ResultDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn csv_quotes_and_uses_dot_decimals() {
        let csv = sample().to_csv();
        assert!(csv.contains("\"weird, name\""));
        assert!(csv.contains("0.1557508868470815"));
    }
}
