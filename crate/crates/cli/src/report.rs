//! Benchmark report rows and the two render formats.
//!
//! The markdown table carries exactly four columns — model, parameter
//! count, accuracy (%), and wall-clock time (s) — with the remaining
//! row metadata (dataset descriptor, seed, retained variance) in a
//! footer. JSON serialization keeps a stable key order, so rerunning a
//! suite with the same configs changes bytes only inside the `seconds`
//! fields.

use serde::{Deserialize, Serialize};

/// One finished experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    /// Display name of the model.
    pub model: String,
    /// Trainable-parameter count; `None` renders as "-" (the SVMs have
    /// no fixed parameter vector).
    pub parameters: Option<usize>,
    /// Test accuracy in percent.
    pub accuracy_percent: f64,
    /// Wall-clock training + prediction time.
    pub seconds: f64,
    /// Percent of training variance retained by the PCA step.
    pub explained_variance_percent: f64,
    /// Master seed the experiment ran under.
    pub seed: u64,
    /// Dataset descriptor: file, pipeline kind, rows used, fraction.
    pub dataset: String,
}

/// An ordered collection of experiment rows.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct BenchmarkReport {
    pub rows: Vec<ReportRow>,
}

/// Output encodings for a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Json,
    Markdown,
}

impl BenchmarkReport {
    /// Renders the report; JSON is pretty-printed with struct key
    /// order, markdown is the four-column table plus a metadata footer.
    pub fn render(&self, format: RenderFormat) -> String {
        match format {
            RenderFormat::Json => {
                let mut text =
                    serde_json::to_string_pretty(self).expect("report serialization cannot fail");
                text.push('\n');
                text
            }
            RenderFormat::Markdown => self.render_markdown(),
        }
    }

    fn render_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str("| Model | Parameters | Accuracy (%) | Time (s) |\n");
        out.push_str("|---|---|---|---|\n");
        for row in &self.rows {
            let parameters = row
                .parameters
                .map_or_else(|| "-".to_string(), |p| p.to_string());
            out.push_str(&format!(
                "| {} | {} | {:.2} | {:.2} |\n",
                row.model, parameters, row.accuracy_percent, row.seconds
            ));
        }
        let mut footers: Vec<String> = Vec::new();
        for row in &self.rows {
            let footer = format!(
                "- {} | seed {} | variance retained {:.2}%",
                row.dataset, row.seed, row.explained_variance_percent
            );
            if !footers.contains(&footer) {
                footers.push(footer);
            }
        }
        if !footers.is_empty() {
            out.push('\n');
            for footer in footers {
                out.push_str(&footer);
                out.push('\n');
            }
        }
        out
    }
}
