use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::system::{Constraint, LinearSystem, Membership, Relation};
use crate::error::{Error, Result};

const VERTEX_TOL: f64 = 1e-7;

/// Closed H-representation of a region, optionally boxed for vertex enumeration.
/// `strict` records which constraints were strict in the open region.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polytope {
    pub variables: Vec<String>,
    pub constraints: Vec<Constraint>,
    pub strict: Vec<bool>,
    pub box_cap: Option<f64>,
}

/// Vertices with the indices of the constraints active at each.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexSet {
    pub variables: Vec<String>,
    pub points: Vec<Vec<f64>>,
    pub incidence: Vec<Vec<usize>>,
}

impl VertexSet {
    /// Header with variable names, then one point per row.
    pub fn to_csv(&self) -> String {
        let mut out = self.variables.join(",");
        out.push('\n');
        for p in &self.points {
            out.push_str(&p.iter().map(|x| format!("{x:.12}")).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }
}

impl Polytope {
    /// Closure of `sys`; with `cap`, adds the box 0 ≤ x_i ≤ cap labelled `box:<var>`.
    pub fn from_system(sys: &LinearSystem, cap: Option<f64>) -> Self {
        let mut constraints = Vec::new();
        let mut strict = Vec::new();
        for c in sys.constraints() {
            strict.push(c.rel.is_strict());
            constraints.push(Constraint { rel: Relation::Le, ..c.clone() });
        }
        if let Some(cap) = cap {
            for (i, v) in sys.variables().iter().enumerate() {
                let mut coeffs = vec![0.0; sys.dim()];
                coeffs[i] = 1.0;
                constraints.push(Constraint { coeffs, rel: Relation::Le, bound: cap, label: format!("box:{v}") });
                strict.push(false);
            }
        }
        Polytope { variables: sys.variables().to_vec(), constraints, strict, box_cap: cap }
    }

    pub fn system(&self) -> LinearSystem {
        let mut sys = LinearSystem::new(self.variables.clone()).expect("distinct variables");
        for c in &self.constraints {
            sys.push(c.clone()).expect("validated constraints");
        }
        sys
    }

    pub fn contains(&self, point: &[f64]) -> bool {
        self.system().contains(point, Membership::Closed)
    }

    /// Drops redundant constraints, keeping the strictness flags aligned.
    pub fn remove_redundant(&self) -> Result<Polytope> {
        let keep = self.system().irredundant_indices()?;
        Ok(Polytope {
            variables: self.variables.clone(),
            constraints: keep.iter().map(|&i| self.constraints[i].clone()).collect(),
            strict: keep.iter().map(|&i| self.strict[i]).collect(),
            box_cap: self.box_cap,
        })
    }

    /// All vertices by exhaustive active-set enumeration (bounded polytopes, d ≤ 6).
    pub fn vertices(&self) -> Result<VertexSet> {
        let d = self.variables.len();
        if d == 0 || d > 6 {
            return Err(Error::Precondition(format!("vertex enumeration supports 1..=6 dimensions, got {d}")));
        }
        let m = self.constraints.len();
        let mut points: Vec<Vec<f64>> = Vec::new();
        let mut subset: Vec<usize> = (0..d).collect();
        if m >= d {
            loop {
                if let Some(x) = self.solve_active(&subset) {
                    if self.contains(&x) && !points.iter().any(|p| dist(p, &x) < VERTEX_TOL) {
                        points.push(x);
                    }
                }
                if !next_subset(&mut subset, m) {
                    break;
                }
            }
        }
        points.sort_by(|a, b| {
            a.iter().zip(b).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
        });
        let incidence = points
            .iter()
            .map(|p| {
                (0..m).filter(|&i| (self.constraints[i].value(p) - self.constraints[i].bound).abs() <= VERTEX_TOL).collect()
            })
            .collect();
        Ok(VertexSet { variables: self.variables.clone(), points, incidence })
    }

    fn solve_active(&self, subset: &[usize]) -> Option<Vec<f64>> {
        let d = self.variables.len();
        let a = DMatrix::from_fn(d, d, |r, c| self.constraints[subset[r]].coeffs[c]);
        let b = DVector::from_fn(d, |r, _| self.constraints[subset[r]].bound);
        let lu = a.full_piv_lu();
        if !lu.is_invertible() || lu.determinant().abs() < 1e-12 {
            return None;
        }
        // snapping also turns −0.0 into 0.0
        lu.solve(&b).map(|x| x.iter().map(|&v| if v.abs() < 1e-12 { 0.0 } else { v }).collect())
    }
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn next_subset(s: &mut [usize], m: usize) -> bool {
    let k = s.len();
    for i in (0..k).rev() {
        if s[i] < m - k + i {
            s[i] += 1;
            for j in i + 1..k {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Vertices of the closure of `sys` inside the box [0, cap]^d.
pub fn vertex_enumeration(sys: &LinearSystem, cap: f64) -> Result<VertexSet> {
    Polytope::from_system(sys, Some(cap)).vertices()
}
