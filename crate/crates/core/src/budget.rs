//! Search caps shared by every exhaustive procedure in the crate.

use serde::Serialize;
use thiserror::Error;

/// A search ran into its configured cap before reaching a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error, Serialize)]
#[error("{resource} budget of {limit} exhausted")]
pub struct BudgetExceeded {
    pub resource: Resource,
    pub limit: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Resource {
    SpanningTrees,
    SearchNodes,
}

impl std::fmt::Display for Resource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Resource::SpanningTrees => "spanning-tree",
            Resource::SearchNodes => "search-node",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of spanning trees a decision procedure may inspect.
    pub spanning_trees: u64,
    /// Maximum number of backtracking nodes a search may expand.
    pub search_nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { spanning_trees: 1_000_000, search_nodes: 10_000_000 }
    }
}

impl Budget {
    pub fn trees_exceeded(&self) -> BudgetExceeded {
        BudgetExceeded { resource: Resource::SpanningTrees, limit: self.spanning_trees }
    }

    pub fn nodes_exceeded(&self) -> BudgetExceeded {
        BudgetExceeded { resource: Resource::SearchNodes, limit: self.search_nodes }
    }
}
