use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::args::Format;

/// Tabular result of a command, rendered as CSV or JSON.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
    /// Scalar results that do not fit the rows; JSON only (and the manifest).
    pub summary: Map<String, Value>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), ..Table::default() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn note(&mut self, key: &str, value: impl Serialize) {
        self.summary.insert(key.to_string(), serde_json::to_value(value).expect("serialisable"));
    }

    fn cell(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            Value::Null => String::new(),
            other => other.to_string(),
        }
    }

    pub fn to_csv(&self, manifest: Option<&str>) -> String {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        if let Some(m) = manifest {
            w.write_record([format!("# manifest: {m}")]).expect("in-memory write");
        }
        w.write_record(&self.columns).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r.iter().map(Table::cell)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8")
    }

    pub fn to_json(&self, command: &str, manifest: Option<&str>) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Object(self.columns.iter().cloned().zip(r.iter().cloned()).collect()))
            .collect();
        let mut doc = json!({ "command": command, "columns": self.columns, "rows": rows, "summary": self.summary });
        if let Some(m) = manifest {
            doc["manifest"] = json!(m);
        }
        serde_json::to_string_pretty(&doc).expect("serialisable") + "\n"
    }

    pub fn render(&self, format: Format, command: &str, manifest: Option<&str>) -> String {
        match format {
            Format::Csv => self.to_csv(manifest),
            Format::Json => self.to_json(command, manifest),
        }
    }
}

/// Everything a command produces.
#[derive(Debug, Default)]
pub struct Output {
    pub table: Table,
    pub svg: Option<String>,
    /// Extra files `(suffix, contents)` written next to the table.
    pub extra: Vec<(String, String)>,
    /// Marks runs near the critical point whose chains may not have mixed.
    pub exploratory: bool,
}

#[derive(Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: Value,
    pub seed: u64,
    pub tool_version: String,
    pub wall_time: f64,
    pub budgets: BTreeMap<String, Value>,
    pub threads: usize,
    pub exploratory: bool,
    pub outputs: Vec<String>,
    pub results: Map<String, Value>,
}

/// Writes the table, the extras, the plot and the manifest under `dir`.
/// Returns the written paths, manifest last.
pub fn write_all(
    dir: &Path,
    stem: &str,
    format: Format,
    output: &Output,
    mut manifest: RunManifest,
) -> std::io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let manifest_name = format!("{stem}.manifest.json");
    let mut written = Vec::new();
    let ext = match format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    let main = dir.join(format!("{stem}.{ext}"));
    std::fs::write(&main, output.table.render(format, stem, Some(&manifest_name)))?;
    written.push(main);
    for (suffix, body) in &output.extra {
        let p = dir.join(format!("{stem}.{suffix}"));
        std::fs::write(&p, body)?;
        written.push(p);
    }
    if let Some(svg) = &output.svg {
        let p = dir.join(format!("{stem}.svg"));
        std::fs::write(&p, svg.replacen("<svg ", &format!("<!-- manifest: {manifest_name} -->\n<svg "), 1))?;
        written.push(p);
    }
    manifest.outputs = written.iter().filter_map(|p| p.file_name()).map(|n| n.to_string_lossy().into_owned()).collect();
    let mp = dir.join(&manifest_name);
    std::fs::write(&mp, serde_json::to_string_pretty(&manifest).expect("serialisable") + "\n")?;
    written.push(mp);
    Ok(written)
}
