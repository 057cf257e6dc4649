//! Versioned JSON report emitted by `certify` and consumed by `verify`.

use serde::{Deserialize, Serialize};

use oripath::digraph::{validate_coloring, validate_embedding, Coloring, Digraph, PathEmbedding};
use oripath::{BlockPattern, Certificate};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateReport {
    pub schema: u32,
    pub pattern: [usize; 3],
    pub result: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub colors: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub num_colors: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    pub validated: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl CertificateReport {
    pub fn new(pattern: [usize; 3], cert: &Certificate, timing_ms: Option<f64>) -> Self {
        match cert {
            Certificate::Path(emb) => CertificateReport {
                schema: SCHEMA_VERSION,
                pattern,
                result: "path".into(),
                vertices: Some(emb.vertices.clone()),
                colors: None,
                num_colors: None,
                bound: None,
                validated: true,
                timing_ms,
            },
            Certificate::Colored { coloring, bound } => CertificateReport {
                schema: SCHEMA_VERSION,
                pattern,
                result: "coloring".into(),
                vertices: None,
                colors: Some(coloring.color.clone()),
                num_colors: Some(coloring.num_colors),
                bound: Some(*bound),
                validated: true,
                timing_ms,
            },
        }
    }

    /// Independent re-validation against the digraph the report was made
    /// for. Returns a description of the first problem found.
    pub fn verify_against(&self, d: &Digraph) -> Result<(), String> {
        if self.schema != SCHEMA_VERSION {
            return Err(format!("unsupported schema version {}", self.schema));
        }
        let [k1, k2, k3] = self.pattern;
        match self.result.as_str() {
            "path" => {
                let vertices = self.vertices.clone().ok_or("path report lacks vertices")?;
                let emb = PathEmbedding { pattern: BlockPattern::new(k1, k2, k3), vertices };
                if !validate_embedding(d, &emb) {
                    return Err("embedding does not validate against the digraph".into());
                }
            }
            "coloring" => {
                let color = self.colors.clone().ok_or("coloring report lacks colors")?;
                let num_colors = self.num_colors.ok_or("coloring report lacks num_colors")?;
                let bound = self.bound.ok_or("coloring report lacks bound")?;
                let c = Coloring { color, num_colors };
                if !validate_coloring(d, &c) {
                    return Err("coloring does not validate against the digraph".into());
                }
                if c.num_colors > bound {
                    return Err(format!("coloring uses {} colors, above bound {}", c.num_colors, bound));
                }
            }
            other => return Err(format!("unknown result kind {other:?}")),
        }
        Ok(())
    }
}
