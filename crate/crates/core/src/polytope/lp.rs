//! Small LP helpers over closed constraint sets.

use minilp::{ComparisonOp, OptimizationDirection, Problem};

use super::system::Constraint;
use crate::error::{Error, Result};

fn build(dim: usize, cs: &[&Constraint], objective: &[f64], dir: OptimizationDirection) -> (Problem, Vec<minilp::Variable>) {
    let mut p = Problem::new(dir);
    let vars: Vec<_> = (0..dim).map(|i| p.add_var(objective.get(i).copied().unwrap_or(0.0), (f64::NEG_INFINITY, f64::INFINITY))).collect();
    for c in cs {
        let terms: Vec<_> = vars.iter().zip(&c.coeffs).filter(|(_, a)| **a != 0.0).map(|(v, a)| (*v, *a)).collect();
        if !terms.is_empty() {
            p.add_constraint(terms.as_slice(), ComparisonOp::Le, c.bound);
        }
    }
    (p, vars)
}

fn constants_hold(cs: &[&Constraint]) -> bool {
    cs.iter().filter(|c| c.coeffs.iter().all(|&a| a == 0.0)).all(|c| c.bound >= -super::system::TOL)
}

/// max objective·x over the closed set; `None` when unbounded. Errors on infeasibility.
pub(crate) fn maximize(dim: usize, cs: &[&Constraint], objective: &[f64]) -> Result<Option<f64>> {
    if !constants_hold(cs) {
        return Err(Error::Lp("infeasible constant constraint".into()));
    }
    let (p, _) = build(dim, cs, objective, OptimizationDirection::Maximize);
    match p.solve() {
        Ok(sol) => Ok(Some(sol.objective())),
        Err(minilp::Error::Unbounded) => Ok(None),
        Err(minilp::Error::Infeasible) => Err(Error::Lp("infeasible system".into())),
    }
}

/// Some point of the closed set with the given coordinates fixed, or `None`.
pub(crate) fn feasible_point(dim: usize, cs: &[&Constraint], fixed: &[(usize, f64)]) -> Result<Option<Vec<f64>>> {
    if !constants_hold(cs) {
        return Ok(None);
    }
    let (mut p, vars) = build(dim, cs, &[], OptimizationDirection::Minimize);
    for &(i, x) in fixed {
        p.add_constraint([(vars[i], 1.0)], ComparisonOp::Eq, x);
    }
    match p.solve() {
        Ok(sol) => Ok(Some(vars.iter().map(|v| sol[*v]).collect())),
        Err(minilp::Error::Infeasible) => Ok(None),
        Err(minilp::Error::Unbounded) => Err(Error::Lp("feasibility problem reported unbounded".into())),
    }
}

/// max s subject to a·x + s ≤ b on strict rows, a·x ≤ b otherwise, s ≤ 1;
/// −∞ when even the closed set is empty.
pub(crate) fn max_strict_slack(dim: usize, cs: &[&Constraint]) -> Result<f64> {
    let mut p = Problem::new(OptimizationDirection::Maximize);
    let vars: Vec<_> = (0..dim).map(|_| p.add_var(0.0, (f64::NEG_INFINITY, f64::INFINITY))).collect();
    let s = p.add_var(1.0, (f64::NEG_INFINITY, 1.0));
    for c in cs {
        let mut terms: Vec<_> = vars.iter().zip(&c.coeffs).filter(|(_, a)| **a != 0.0).map(|(v, a)| (*v, *a)).collect();
        if c.rel.is_strict() {
            terms.push((s, 1.0));
        } else if terms.is_empty() {
            if c.bound < -super::system::TOL {
                return Ok(f64::NEG_INFINITY);
            }
            continue;
        }
        p.add_constraint(terms.as_slice(), ComparisonOp::Le, c.bound);
    }
    match p.solve() {
        Ok(sol) => Ok(sol.objective()),
        Err(minilp::Error::Infeasible) => Ok(f64::NEG_INFINITY),
        Err(minilp::Error::Unbounded) => Err(Error::Lp("slack problem reported unbounded".into())),
    }
}
