//! Quivers of coherent local systems: one vertex per axis label and
//! `m[λ][μ]` arrows `λ → μ`.

use std::collections::VecDeque;

use num_integer::Integer;
use serde_json::{json, Value};

use crate::branching::{BranchingMatrix, IntMatrix, Label, MatrixSpec};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<Label>,
    pub arrows: IntMatrix,
    /// The matrix the quiver was built from, if any.
    pub descriptor: Option<MatrixSpec>,
}

/// Outcome of the simplicity criterion for the primitive quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Simplicity {
    /// Strongly connected, primitive and symmetric.
    Simple,
    /// The sufficient criterion does not apply.
    Inconclusive,
}

pub fn quiver_of(m: &BranchingMatrix) -> Quiver {
    Quiver {
        vertices: m.labels.clone(),
        arrows: m.entries.clone(),
        descriptor: Some(m.spec),
    }
}

impl Quiver {
    /// A quiver from raw data; the arrow matrix must be square and match the
    /// vertex list.
    pub fn new(vertices: Vec<Label>, arrows: IntMatrix) -> Result<Self> {
        if arrows.len() != vertices.len() || arrows.iter().any(|r| r.len() != vertices.len()) {
            return Err(Error::InvalidParameter(format!(
                "arrow matrix must be {0}x{0}",
                vertices.len()
            )));
        }
        Ok(Quiver {
            vertices,
            arrows,
            descriptor: None,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn index_of(&self, label: &Label) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_count(&self, from: usize, to: usize) -> u64 {
        self.arrows[from][to]
    }

    pub fn has_loop_everywhere(&self) -> bool {
        (0..self.vertex_count()).all(|i| self.arrows[i][i] > 0)
    }

    /// `reach[i][j]`: a directed path (possibly empty) leads from `i` to `j`.
    fn reachability(&self) -> Vec<Vec<bool>> {
        let n = self.vertex_count();
        (0..n)
            .map(|start| {
                let mut seen = vec![false; n];
                seen[start] = true;
                let mut queue = VecDeque::from([start]);
                while let Some(u) = queue.pop_front() {
                    for (v, &count) in self.arrows[u].iter().enumerate() {
                        if count > 0 && !seen[v] {
                            seen[v] = true;
                            queue.push_back(v);
                        }
                    }
                }
                seen
            })
            .collect()
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.reachability().iter().all(|row| row.iter().all(|&r| r))
    }

    /// Greatest common divisor of all directed cycle lengths, or `None` when
    /// the quiver has no cycles.
    pub fn cycle_gcd(&self) -> Option<u64> {
        let n = self.vertex_count();
        let reach = self.reachability();
        let mut done = vec![false; n];
        let mut g: u64 = 0;
        for root in 0..n {
            if done[root] {
                continue;
            }
            let component: Vec<usize> = (0..n).filter(|&v| reach[root][v] && reach[v][root]).collect();
            let inside = |v: usize| reach[root][v] && reach[v][root];
            // BFS levels inside the component; every internal edge u → v
            // contributes level(u) + 1 - level(v) to the period.
            let mut level = vec![None::<i64>; n];
            level[root] = Some(0);
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for v in 0..n {
                    if self.arrows[u][v] > 0 && inside(v) && level[v].is_none() {
                        level[v] = Some(level[u].unwrap() + 1);
                        queue.push_back(v);
                    }
                }
            }
            for &u in &component {
                done[u] = true;
                for &v in &component {
                    if self.arrows[u][v] > 0 {
                        let diff = level[u].unwrap() + 1 - level[v].unwrap();
                        g = g.gcd(&diff.unsigned_abs());
                    }
                }
            }
        }
        (g > 0).then_some(g)
    }

    pub fn is_primitive(&self) -> bool {
        self.cycle_gcd() == Some(1)
    }

    pub fn is_symmetric(&self) -> bool {
        let m = &self.arrows;
        (0..m.len()).all(|i| (0..i).all(|j| m[i][j] == m[j][i]))
    }

    pub fn simplicity_certificate(&self) -> Simplicity {
        if self.is_strongly_connected() && self.is_primitive() && self.is_symmetric() {
            Simplicity::Simple
        } else {
            Simplicity::Inconclusive
        }
    }

    /// GraphViz rendering; parallel arrows appear once with their count.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph Q {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            out.push_str(&format!("  v{i} [label=\"{v}\"];\n"));
        }
        for (i, row) in self.arrows.iter().enumerate() {
            for (j, &count) in row.iter().enumerate() {
                if count > 0 {
                    out.push_str(&format!("  v{i} -> v{j} [label=\"{count}\"];\n"));
                }
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "vertices": self.vertices.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "arrows": self.arrows,
        });
        if let Some(spec) = &self.descriptor {
            v["descriptor"] = json!({
                "family": spec.family().to_string(),
                "n": spec.n(),
                "params": spec.params(),
            });
        }
        v
    }
}
