use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::lp;
use crate::error::{Error, Result};

/// Comparison tolerance for normalised constraints.
pub const TOL: f64 = 1e-9;

/// Default cap on the number of constraints produced by one elimination.
pub const DEFAULT_BLOWUP_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
}

impl Relation {
    pub fn is_strict(self) -> bool {
        self == Relation::Lt
    }

    fn combine(self, other: Relation) -> Relation {
        if self.is_strict() || other.is_strict() {
            Relation::Lt
        } else {
            Relation::Le
        }
    }
}

/// `coeffs · x  rel  bound`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub rel: Relation,
    pub bound: f64,
    #[serde(default)]
    pub label: String,
}

impl Constraint {
    pub fn value(&self, point: &[f64]) -> f64 {
        self.coeffs.iter().zip(point).map(|(a, x)| a * x).sum()
    }

    /// Closed membership with tolerance [`TOL`].
    pub fn holds_closed(&self, point: &[f64]) -> bool {
        self.value(point) <= self.bound + TOL
    }

    /// Honors strictness: a strict constraint fails within [`TOL`] of its boundary.
    pub fn holds_strict(&self, point: &[f64]) -> bool {
        match self.rel {
            Relation::Le => self.holds_closed(point),
            Relation::Lt => self.value(point) < self.bound - TOL,
        }
    }

    fn is_constant(&self) -> bool {
        self.coeffs.iter().all(|&a| a == 0.0)
    }

    /// Whether a constraint without variables holds.
    fn constant_holds(&self) -> bool {
        match self.rel {
            Relation::Le => self.bound >= -TOL,
            Relation::Lt => self.bound > TOL,
        }
    }

    /// Scales to max |coefficient| = 1 and flushes tiny coefficients to zero.
    fn normalized(mut self) -> Self {
        let scale = self.coeffs.iter().fold(0f64, |m, a| m.max(a.abs()));
        if scale > 0.0 {
            for a in &mut self.coeffs {
                *a /= scale;
                if a.abs() < 1e-12 {
                    *a = 0.0;
                }
            }
            self.bound /= scale;
        }
        self
    }

    fn cmp_shape(&self, other: &Constraint) -> Ordering {
        for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
            if (a - b).abs() > TOL {
                return a.total_cmp(b);
            }
        }
        Ordering::Equal
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    Closed,
    Strict,
}

/// Affine inequality system over named variables.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSystem")]
pub struct LinearSystem {
    variables: Vec<String>,
    constraints: Vec<Constraint>,
}

#[derive(Deserialize)]
struct RawSystem {
    variables: Vec<String>,
    constraints: Vec<Constraint>,
}

impl TryFrom<RawSystem> for LinearSystem {
    type Error = Error;

    fn try_from(raw: RawSystem) -> Result<Self> {
        let mut sys = LinearSystem::new(raw.variables)?;
        for c in raw.constraints {
            sys.push(c)?;
        }
        Ok(sys)
    }
}

impl fmt::Display for LinearSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.constraints {
            let terms: Vec<String> = c
                .coeffs
                .iter()
                .zip(&self.variables)
                .filter(|(a, _)| **a != 0.0)
                .map(|(a, v)| format!("{a:+.6} {v}"))
                .collect();
            let lhs = if terms.is_empty() { "0".to_string() } else { terms.join(" ") };
            let rel = if c.rel.is_strict() { "<" } else { "<=" };
            writeln!(f, "{lhs} {rel} {:.9}    [{}]", c.bound, c.label)?;
        }
        Ok(())
    }
}

impl LinearSystem {
    pub fn new<S: Into<String>>(variables: impl IntoIterator<Item = S>) -> Result<Self> {
        let variables: Vec<String> = variables.into_iter().map(Into::into).collect();
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = variables.iter().find(|v| !seen.insert(v.as_str())) {
            return Err(Error::Parse(format!("duplicate variable `{dup}`")));
        }
        Ok(LinearSystem { variables, constraints: Vec::new() })
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn dim(&self) -> usize {
        self.variables.len()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.variables.iter().position(|v| v == name).ok_or_else(|| Error::UnknownVariable(name.into()))
    }

    pub fn push(&mut self, c: Constraint) -> Result<()> {
        if c.coeffs.len() != self.variables.len() {
            return Err(Error::Parse(format!(
                "constraint `{}` has {} coefficients for {} variables",
                c.label,
                c.coeffs.len(),
                self.variables.len()
            )));
        }
        if c.coeffs.iter().any(|a| !a.is_finite()) || !c.bound.is_finite() {
            return Err(Error::Parse(format!("constraint `{}` has a non-finite entry", c.label)));
        }
        self.constraints.push(c);
        Ok(())
    }

    /// Adds `Σ coef·var  rel  bound` from named terms.
    pub fn add(&mut self, terms: &[(&str, f64)], rel: Relation, bound: f64, label: &str) -> Result<()> {
        let mut coeffs = vec![0.0; self.variables.len()];
        for &(name, a) in terms {
            coeffs[self.index_of(name)?] += a;
        }
        self.push(Constraint { coeffs, rel, bound, label: label.into() })
    }

    pub fn contains(&self, point: &[f64], mode: Membership) -> bool {
        self.constraints.iter().all(|c| match mode {
            Membership::Closed => c.holds_closed(point),
            Membership::Strict => c.holds_strict(point),
        })
    }

    /// Eliminates `var` by pairing each lower bound with each upper bound.
    pub fn fm_eliminate(&self, var: &str) -> Result<LinearSystem> {
        self.fm_eliminate_capped(var, DEFAULT_BLOWUP_CAP)
    }

    pub fn fm_eliminate_capped(&self, var: &str, cap: usize) -> Result<LinearSystem> {
        let k = self.index_of(var)?;
        let normalized: Vec<Constraint> = self.constraints.iter().cloned().map(Constraint::normalized).collect();
        let (mut upper, mut lower, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for c in normalized {
            if c.coeffs[k] > TOL {
                upper.push(c);
            } else if c.coeffs[k] < -TOL {
                lower.push(c);
            } else {
                rest.push(c);
            }
        }
        let count = rest.len() + upper.len() * lower.len();
        if count > cap {
            return Err(Error::ConstraintBlowup { count, cap });
        }
        let mut out = rest;
        for p in &upper {
            for n in &lower {
                let (wp, wn) = (-n.coeffs[k], p.coeffs[k]);
                let coeffs = p.coeffs.iter().zip(&n.coeffs).map(|(a, b)| wp * a + wn * b).collect();
                out.push(Constraint {
                    coeffs,
                    rel: p.rel.combine(n.rel),
                    bound: wp * p.bound + wn * n.bound,
                    label: format!("{} + {}", p.label, n.label),
                });
            }
        }
        let variables: Vec<String> = self.variables.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, v)| v.clone()).collect();
        let constraints = out
            .into_iter()
            .map(|mut c| {
                c.coeffs.remove(k);
                c.normalized()
            })
            .collect();
        Ok(LinearSystem { variables, constraints }.simplified())
    }

    /// Drops satisfied constant constraints and exact duplicates (keeping the tightest,
    /// strict before non-strict), in a deterministic order.
    pub fn simplified(&self) -> LinearSystem {
        let mut cs: Vec<Constraint> = self
            .constraints
            .iter()
            .cloned()
            .map(Constraint::normalized)
            .filter(|c| !(c.is_constant() && c.constant_holds()))
            .collect();
        cs.sort_by(|a, b| {
            a.cmp_shape(b)
                .then(a.bound.total_cmp(&b.bound))
                .then(b.rel.is_strict().cmp(&a.rel.is_strict()))
                .then(a.label.cmp(&b.label))
        });
        cs.dedup_by(|later, kept| later.cmp_shape(kept) == Ordering::Equal);
        LinearSystem { variables: self.variables.clone(), constraints: cs }
    }

    /// Removes every constraint implied by the others (closure level), certified by an LP
    /// per constraint. An infeasible closed system collapses to a single `0 ≤ −1`.
    pub fn remove_redundant(&self) -> Result<LinearSystem> {
        let sys = self.simplified();
        let all: Vec<&Constraint> = sys.constraints.iter().collect();
        if lp::feasible_point(sys.dim(), &all, &[])?.is_none() {
            let mut empty = LinearSystem { variables: sys.variables.clone(), constraints: Vec::new() };
            empty.constraints.push(Constraint {
                coeffs: vec![0.0; sys.dim()],
                rel: Relation::Le,
                bound: -1.0,
                label: "infeasible".into(),
            });
            return Ok(empty);
        }
        let mut keep = vec![true; sys.constraints.len()];
        for i in 0..sys.constraints.len() {
            let c = &sys.constraints[i];
            if c.is_constant() {
                continue;
            }
            let others: Vec<&Constraint> =
                sys.constraints.iter().enumerate().filter(|&(j, _)| j != i && keep[j]).map(|(_, c)| c).collect();
            if let Some(max) = lp::maximize(sys.dim(), &others, &c.coeffs)? {
                if max <= c.bound + TOL {
                    keep[i] = false;
                }
            }
        }
        let constraints = sys.constraints.into_iter().zip(keep).filter(|(_, k)| *k).map(|(c, _)| c).collect();
        Ok(LinearSystem { variables: sys.variables, constraints })
    }

    /// Projection onto `keep` by eliminating every other variable in declaration order.
    pub fn project(&self, keep: &[&str]) -> Result<LinearSystem> {
        for name in keep {
            self.index_of(name)?;
        }
        let mut sys = self.clone();
        for v in self.variables.iter().filter(|v| !keep.contains(&v.as_str())) {
            sys = sys.fm_eliminate(v)?.remove_redundant()?;
        }
        let order: Vec<usize> = keep.iter().map(|k| sys.index_of(k)).collect::<Result<_>>()?;
        Ok(sys.reordered(&order))
    }

    fn reordered(&self, order: &[usize]) -> LinearSystem {
        LinearSystem {
            variables: order.iter().map(|&i| self.variables[i].clone()).collect(),
            constraints: self
                .constraints
                .iter()
                .map(|c| Constraint { coeffs: order.iter().map(|&i| c.coeffs[i]).collect(), ..c.clone() })
                .collect(),
        }
    }

    /// Whether some assignment of the remaining variables extends the fixed values to a
    /// point of the closed system.
    pub fn has_witness(&self, fixed: &[(&str, f64)]) -> Result<bool> {
        let fixed: Vec<(usize, f64)> = fixed.iter().map(|&(n, x)| Ok((self.index_of(n)?, x))).collect::<Result<_>>()?;
        let all: Vec<&Constraint> = self.constraints.iter().collect();
        Ok(lp::feasible_point(self.dim(), &all, &fixed)?.is_some())
    }

    /// Whether the open region (strict constraints honored) has no point.
    pub fn is_empty_strict(&self) -> Result<bool> {
        let all: Vec<&Constraint> = self.constraints.iter().collect();
        Ok(lp::max_strict_slack(self.dim(), &all)? <= TOL)
    }

    /// Whether the closed region is empty.
    pub fn is_empty_closed(&self) -> Result<bool> {
        let all: Vec<&Constraint> = self.constraints.iter().collect();
        Ok(lp::feasible_point(self.dim(), &all, &[])?.is_none())
    }

    /// Indices of constraints whose removal strictly enlarges the closed region.
    pub fn irredundant_indices(&self) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for (i, c) in self.constraints.iter().enumerate() {
            let others: Vec<&Constraint> =
                self.constraints.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, c)| c).collect();
            match lp::maximize(self.dim(), &others, &c.coeffs)? {
                Some(max) if max <= c.bound + TOL => {}
                _ => out.push(i),
            }
        }
        Ok(out)
    }
}
