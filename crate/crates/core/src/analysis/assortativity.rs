use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Categorical node attributes, one value per node per column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttributeTable {
    columns: Vec<String>,
    /// `values[column][node]`.
    values: Vec<Vec<String>>,
}

impl AttributeTable {
    /// Builds a table from per-node rows; every row needs one value per column.
    pub fn from_rows(columns: Vec<String>, rows: Vec<Vec<String>>) -> Result<Self> {
        let mut values = vec![Vec::with_capacity(rows.len()); columns.len()];
        for (node, row) in rows.into_iter().enumerate() {
            if row.len() != columns.len() {
                return Err(Error::InvalidInput(format!(
                    "node {node} has {} attribute values, expected {}",
                    row.len(),
                    columns.len()
                )));
            }
            for (col, value) in row.into_iter().enumerate() {
                values[col].push(value);
            }
        }
        Ok(AttributeTable { columns, values })
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn node_count(&self) -> usize {
        self.values.first().map_or(0, Vec::len)
    }

    pub fn column(&self, name: &str) -> Option<&[String]> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(&self.values[idx])
    }
}

/// Categorical assortativity over the symmetric mixing matrix:
/// `r = (sum_i e_ii - sum_i a_i^2) / (1 - sum_i a_i^2)`.
pub fn assortativity(g: &Graph, attrs: &AttributeTable, column: &str) -> Result<f64> {
    let values = attrs
        .column(column)
        .ok_or_else(|| Error::InvalidInput(format!("unknown attribute column {column:?}")))?;
    if values.len() != g.node_count() {
        return Err(Error::InvalidInput(format!(
            "attribute table covers {} nodes, graph has {}",
            values.len(),
            g.node_count()
        )));
    }
    if g.edge_count() == 0 {
        return Err(Error::InvalidInput("assortativity is undefined without edges".into()));
    }

    let mut category: HashMap<&str, usize> = HashMap::new();
    let ids: Vec<usize> = values
        .iter()
        .map(|v| {
            let next = category.len();
            *category.entry(v.as_str()).or_insert(next)
        })
        .collect();
    let k = category.len();
    let mut mixing = vec![0.0f64; k * k];
    for (u, v) in g.edges() {
        let (a, b) = (ids[u], ids[v]);
        mixing[a * k + b] += 1.0;
        mixing[b * k + a] += 1.0;
    }
    let total = 2.0 * g.edge_count() as f64;
    mixing.iter_mut().for_each(|x| *x /= total);

    let trace: f64 = (0..k).map(|i| mixing[i * k + i]).sum();
    let expected: f64 = (0..k)
        .map(|i| {
            let a: f64 = mixing[i * k..(i + 1) * k].iter().sum();
            a * a
        })
        .sum();
    if (1.0 - expected).abs() < 1e-15 {
        return Err(Error::InvalidInput(format!(
            "assortativity is undefined: every edge endpoint shares one {column:?} value"
        )));
    }
    Ok((trace - expected) / (1.0 - expected))
}
