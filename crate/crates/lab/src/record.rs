//! Experiment records and their JSONL / CSV serializations.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Per-trial output. Absent fields are omitted from JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Trial {
    pub trial: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n3: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bad: Option<bool>,
}

/// Wall-clock data, kept apart so that the rest of a record is reproducible.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timing {
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRecord {
    pub experiment: String,
    pub config: BTreeMap<String, Value>,
    pub trials: Vec<Trial>,
    /// `None` when there were no trials.
    pub summary: Option<BTreeMap<String, Value>>,
    pub timing: Option<Timing>,
}

impl ExperimentRecord {
    pub fn new(experiment: &str, config: BTreeMap<String, Value>) -> ExperimentRecord {
        ExperimentRecord { experiment: experiment.to_string(), config, trials: Vec::new(), summary: None, timing: None }
    }

    fn header(&self) -> Value {
        json!({
            "kind": "config",
            "schema_version": SCHEMA_VERSION,
            "tool_version": TOOL_VERSION,
            "experiment": self.experiment,
            "config": self.config,
        })
    }

    /// One JSON object per line: config, trials, summary, then timing if present.
    pub fn write_jsonl<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{}", self.header())?;
        for t in &self.trials {
            let mut v = serde_json::to_value(t).expect("trial serializes");
            v["kind"] = json!("trial");
            writeln!(w, "{v}")?;
        }
        if let Some(s) = &self.summary {
            writeln!(w, "{}", json!({ "kind": "summary", "summary": s }))?;
        }
        if let Some(t) = &self.timing {
            writeln!(w, "{}", json!({ "kind": "timing", "timing": t }))?;
        }
        Ok(())
    }

    /// `key,value` rows: provenance, config, then summary statistics.
    pub fn write_summary_csv<W: Write>(&self, w: W) -> csv::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["key", "value"])?;
        out.write_record(["schema_version", &SCHEMA_VERSION.to_string()])?;
        out.write_record(["tool_version", TOOL_VERSION])?;
        out.write_record(["experiment", &self.experiment])?;
        for (k, v) in &self.config {
            out.write_record([format!("config.{k}"), plain(v)])?;
        }
        out.write_record(["trials_recorded", &self.trials.len().to_string()])?;
        if let Some(s) = &self.summary {
            for (k, v) in s {
                out.write_record([k.clone(), plain(v)])?;
            }
        }
        if let Some(t) = &self.timing {
            out.write_record(["timing.elapsed_ms", &t.elapsed_ms.to_string()])?;
        }
        out.flush()?;
        Ok(())
    }
}

/// JSON scalars without quotes; compound values as compact JSON.
pub fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Builds a config map from `(key, value)` pairs.
pub fn config<I, K>(pairs: I) -> BTreeMap<String, Value>
where
    I: IntoIterator<Item = (K, Value)>,
    K: Into<String>,
{
    pairs.into_iter().map(|(k, v)| (k.into(), v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ExperimentRecord {
        let mut r = ExperimentRecord::new("demo", config([("p", json!(2)), ("seed", json!(7))]));
        r.trials.push(Trial { trial: 0, n3: Some(3), bad: None });
        r.summary = Some(config([("mean", json!(3.0))]));
        r
    }

    #[test]
    fn jsonl_layout() {
        let mut buf = Vec::new();
        sample().write_jsonl(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(
            lines[0],
            format!(
                "{{\"config\":{{\"p\":2,\"seed\":7}},\"experiment\":\"demo\",\"kind\":\"config\",\"schema_version\":1,\"tool_version\":\"{TOOL_VERSION}\"}}"
            )
        );
        assert_eq!(lines[1], "{\"kind\":\"trial\",\"n3\":3,\"trial\":0}");
        assert_eq!(lines[2], "{\"kind\":\"summary\",\"summary\":{\"mean\":3.0}}");
    }

    #[test]
    fn csv_echoes_config() {
        let mut buf = Vec::new();
        sample().write_summary_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("key,value\nschema_version,1\n"));
        assert!(text.contains("config.seed,7\n"));
        assert!(text.contains("mean,3.0\n"));
        assert!(!text.contains("timing"));
    }
}
