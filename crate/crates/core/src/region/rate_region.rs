use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::constraints::{reduced_constraints, REDUCED_FAMILIES};
use super::quantities::{mi_quantities, MIQuantities};
use crate::error::Result;
use crate::exponents::AuxSpec;
use crate::measures::Channel;
use crate::polytope::{Polytope, VertexSet, TOL};

/// Closed rate polytope of one auxiliary structure over (R_M, R_L, R_λ).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuxRegion {
    pub quantities: MIQuantities,
    /// Every constraint of the reduced system, closed, with strictness flags.
    pub polytope: Polytope,
    /// Whether the closure has no point.
    pub empty: bool,
    /// Whether the open region has no point (e.g. a trivial U forces R_M < 0).
    pub open_empty: bool,
    /// Labels of constraints that are facets of the closure.
    pub irredundant: Vec<String>,
}

/// Whether a constraint family is a facet of the closure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyStatus {
    pub label: String,
    pub irredundant: bool,
}

impl AuxRegion {
    pub fn from_quantities(q: MIQuantities) -> Result<Self> {
        let sys = reduced_constraints(&q)?;
        let empty = sys.is_empty_closed()?;
        let open_empty = sys.is_empty_strict()?;
        let polytope = Polytope::from_system(&sys, None);
        let irredundant = if empty {
            Vec::new()
        } else {
            sys.irredundant_indices()?.into_iter().map(|i| sys.constraints()[i].label.clone()).collect()
        };
        Ok(AuxRegion { quantities: q, polytope, empty, open_empty, irredundant })
    }

    /// Membership in the closure.
    pub fn contains(&self, point: &[f64]) -> bool {
        self.polytope.contains(point)
    }

    /// Membership in the open region (strict constraints fail within the tolerance).
    pub fn contains_open(&self, point: &[f64]) -> bool {
        self.polytope.constraints.iter().zip(&self.polytope.strict).all(|(c, &strict)| {
            if strict {
                c.value(point) < c.bound - TOL
            } else {
                c.holds_closed(point)
            }
        })
    }

    /// Status of each of the five rate constraint families.
    pub fn families(&self) -> Vec<FamilyStatus> {
        REDUCED_FAMILIES
            .iter()
            .map(|f| FamilyStatus { label: f.to_string(), irredundant: self.irredundant.iter().any(|l| l == f) })
            .collect()
    }

    pub fn all_families_irredundant(&self) -> bool {
        self.families().iter().all(|f| f.irredundant)
    }

    /// Vertices of the closure (empty when the closure is empty).
    pub fn vertices(&self) -> Result<VertexSet> {
        if self.empty {
            return Ok(VertexSet { variables: self.polytope.variables.clone(), points: Vec::new(), incidence: Vec::new() });
        }
        self.polytope.vertices()
    }

    /// Facet polygons as closed loops of 3-D points separated by blank lines, one
    /// block per facet, for `splot ... with lines`.
    pub fn gnuplot_facets(&self) -> Result<String> {
        let vs = self.vertices()?;
        let mut out = format!("# {}\n", vs.variables.join(" "));
        for (i, c) in self.polytope.constraints.iter().enumerate() {
            if !self.irredundant.contains(&c.label) {
                continue;
            }
            let face: Vec<&Vec<f64>> =
                vs.points.iter().zip(&vs.incidence).filter(|(_, inc)| inc.contains(&i)).map(|(p, _)| p).collect();
            if face.len() < 3 {
                continue;
            }
            out.push_str(&format!("# facet {}\n", c.label));
            for p in order_around(&face, &c.coeffs) {
                out.push_str(&format!("{:.9} {:.9} {:.9}\n", p[0], p[1], p[2]));
            }
            let first = order_around(&face, &c.coeffs)[0];
            out.push_str(&format!("{:.9} {:.9} {:.9}\n\n\n", first[0], first[1], first[2]));
        }
        Ok(out)
    }
}

/// Orders coplanar 3-D points by angle around their centroid in the plane with `normal`.
fn order_around<'a>(face: &[&'a Vec<f64>], normal: &[f64]) -> Vec<&'a Vec<f64>> {
    let k = face.len() as f64;
    let c: Vec<f64> = (0..3).map(|j| face.iter().map(|p| p[j]).sum::<f64>() / k).collect();
    let e1: Vec<f64> = (0..3).map(|j| face[0][j] - c[j]).collect();
    let e2 = [
        normal[1] * e1[2] - normal[2] * e1[1],
        normal[2] * e1[0] - normal[0] * e1[2],
        normal[0] * e1[1] - normal[1] * e1[0],
    ];
    let angle = |p: &Vec<f64>| {
        let d: Vec<f64> = (0..3).map(|j| p[j] - c[j]).collect();
        let x: f64 = d.iter().zip(&e1).map(|(a, b)| a * b).sum();
        let y: f64 = d.iter().zip(&e2).map(|(a, b)| a * b).sum();
        y.atan2(x)
    };
    let mut out = face.to_vec();
    out.sort_by(|a, b| angle(a).total_cmp(&angle(b)));
    out
}

/// Union of per-auxiliary rate polytopes, kept as a list with an any-of membership oracle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateRegion {
    pub regions: Vec<AuxRegion>,
}

impl RateRegion {
    pub fn contains(&self, point: &[f64]) -> bool {
        self.regions.iter().any(|r| r.contains(point))
    }

    pub fn contains_open(&self, point: &[f64]) -> bool {
        self.regions.iter().any(|r| r.contains_open(point))
    }

    pub fn is_empty(&self) -> bool {
        self.regions.iter().all(|r| r.empty)
    }
}

/// One polytope per auxiliary structure; the polytopes are built in parallel.
pub fn rate_region(w_b: &Channel, w_e: &Channel, aux_list: &[AuxSpec]) -> Result<RateRegion> {
    let regions = aux_list
        .par_iter()
        .map(|aux| AuxRegion::from_quantities(mi_quantities(w_b, w_e, aux)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(RateRegion { regions })
}
