//! The certificate type both certifiers return.

use serde::{Deserialize, Serialize};

use crate::digraph::{validate_coloring, validate_embedding, Coloring, Digraph, PathEmbedding};

/// Either a verified occurrence of the pattern or a verified proper
/// coloring within the stated bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Certificate {
    Path(PathEmbedding),
    Colored { coloring: Coloring, bound: usize },
}

impl Certificate {
    /// Re-checks the certificate against `d` from scratch.
    pub fn validate(&self, d: &Digraph) -> bool {
        match self {
            Certificate::Path(emb) => validate_embedding(d, emb),
            Certificate::Colored { coloring, bound } => {
                validate_coloring(d, coloring) && coloring.num_colors <= *bound
            }
        }
    }

    pub fn is_path(&self) -> bool {
        matches!(self, Certificate::Path(_))
    }
}
