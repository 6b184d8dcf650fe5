use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::constraints::{alt_constraints, reduced_constraints};
use super::quantities::{check_chain, mi_quantities, MIQuantities};
use crate::error::{Error, Result};
use crate::exponents::AuxSpec;
use crate::measures::{Alphabet, Channel, Distribution};
use crate::polytope::{LinearSystem, Membership, Polytope, Relation, TOL};

/// Auxiliary U_α that equals (U, X̃) with probability α and U otherwise, with the choice
/// independent of everything else and revealed by the disjoint-union alphabet
/// U ⊔ (U×X̃). The new X̃ is the pair (U, X̃), so U_α → X̃ → X holds.
pub fn mixing_aux(aux: &AuxSpec, alpha: f64) -> Result<AuxSpec> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Precondition(format!("mixing weight {alpha} outside [0, 1]")));
    }
    let (nu, nxt) = (aux.u_alphabet().len(), aux.xt_alphabet().len());
    let pairs = Alphabet::product(aux.u_alphabet(), aux.xt_alphabet());
    let u_new = Alphabet::disjoint_union(aux.u_alphabet(), &pairs);
    let mut q0 = Vec::with_capacity(nu + nu * nxt);
    q0.extend(aux.q0().probs().iter().map(|p| (1.0 - alpha) * p));
    for u in 0..nu {
        q0.extend(aux.q1().row(u).iter().map(|w| alpha * aux.q0().prob(u) * w));
    }
    let mut q1 = Vec::with_capacity(nu + nu * nxt);
    for u in 0..nu {
        let mut row = vec![0.0; nu * nxt];
        row[u * nxt..(u + 1) * nxt].copy_from_slice(aux.q1().row(u));
        q1.push(row);
    }
    for p in 0..nu * nxt {
        let mut row = vec![0.0; nu * nxt];
        row[p] = 1.0;
        q1.push(row);
    }
    AuxSpec::new(
        Distribution::new(u_new.clone(), q0)?,
        Channel::new(u_new, pairs, q1)?,
        aux.prefix().clone(),
    )
}

/// The quantities of [`mixing_aux`] predicted by linear interpolation.
pub fn mixed_quantities(q: &MIQuantities, alpha: f64) -> MIQuantities {
    let i_u_y = (1.0 - alpha) * q.i_u_y + alpha * q.i_uxt_y;
    let i_u_z = (1.0 - alpha) * q.i_u_z + alpha * q.i_uxt_z();
    MIQuantities {
        i_xt_y_given_u: (q.i_uxt_y - i_u_y).max(0.0),
        i_uxt_y: q.i_uxt_y,
        i_u_y,
        i_u_z,
        i_xt_z_given_u: (q.i_uxt_z() - i_u_z).max(0.0),
    }
}

/// Which branch of the containment argument applies to a set of quantities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HullCase {
    /// I(X̃∧Y|U) ≤ I(X̃∧Z|U): both open regions are empty.
    Empty,
    /// I(U∧Z) ≤ I(U∧Y): the two descriptions coincide.
    Coincide,
    /// I(U∧Y) < I(U∧Z) and I(UX̃∧Z) ≤ I(UX̃∧Y).
    Interpolate,
    /// I(UX̃∧Y) < I(UX̃∧Z).
    EveAhead,
}

impl HullCase {
    pub fn classify(q: &MIQuantities) -> HullCase {
        if q.i_xt_y_given_u <= q.i_xt_z_given_u {
            HullCase::Empty
        } else if q.i_u_z <= q.i_u_y {
            HullCase::Coincide
        } else if q.i_uxt_z() <= q.i_uxt_y {
            HullCase::Interpolate
        } else {
            HullCase::EveAhead
        }
    }

    /// Mixing weight α used to build the second polytope of the hull.
    pub fn alpha(self, q: &MIQuantities) -> f64 {
        let a_y = q.i_xt_y_given_u;
        match self {
            HullCase::Empty | HullCase::Coincide => 0.0,
            // I(U_α∧Y) = I(U∧Z)
            HullCase::Interpolate => ((q.i_u_z - q.i_u_y) / a_y).clamp(0.0, 1.0),
            // I(U_α∧Y) = I(UX̃∧Y) − I(X̃∧Z|U); α = 1 is the closure-level limit when I(X̃∧Z|U) = 0
            HullCase::EveAhead => ((a_y - q.i_xt_z_given_u) / a_y).clamp(0.0, 1.0),
        }
    }
}

/// Outcome of the sampled check R₀ ⊆ Hull(R'₀, R'_α).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HullReport {
    pub case: HullCase,
    pub alpha: f64,
    pub quantities: MIQuantities,
    pub mixed: MIQuantities,
    /// Vertices of the closure of R₀ plus random convex combinations of them.
    pub checked_points: usize,
    /// Checked points outside the first polytope alone, i.e. that needed the hull.
    pub outside_first: usize,
    pub counterexamples: Vec<Vec<f64>>,
    pub passed: bool,
}

/// Samples `samples` points of the closed region R₀ of `aux` and checks each lies in the
/// convex hull of the closed alternative regions of `aux` and of its mixture at the
/// case-prescribed α. In the empty case it checks that both open regions are empty.
pub fn hull_containment_check(
    w_b: &Channel,
    w_e: &Channel,
    aux: &AuxSpec,
    samples: usize,
    seed: u64,
) -> Result<HullReport> {
    check_chain(w_b, w_e, aux)?;
    let q = mi_quantities(w_b, w_e, aux)?;
    let case = HullCase::classify(&q);
    let alpha = case.alpha(&q);
    let mixed = mi_quantities(w_b, w_e, &mixing_aux(aux, alpha)?)?;
    let base = HullReport {
        case,
        alpha,
        quantities: q,
        mixed,
        checked_points: 0,
        outside_first: 0,
        counterexamples: Vec::new(),
        passed: true,
    };
    if case == HullCase::Empty {
        let passed =
            reduced_constraints(&q)?.is_empty_strict()? && alt_constraints(&q)?.is_empty_strict()?;
        return Ok(HullReport { passed, ..base });
    }
    let r0 = reduced_constraints(&q)?;
    let first = Polytope::from_system(&alt_constraints(&q)?, None);
    let second = Polytope::from_system(&alt_constraints(&mixed)?, None);
    let points = sample_points(&r0, samples, seed)?;
    let mut counterexamples = Vec::new();
    let outside_first = points.iter().filter(|p| !first.contains(p)).count();
    for p in &points {
        if !in_hull(&first, &second, p)? {
            counterexamples.push(p.clone());
        }
    }
    Ok(HullReport { checked_points: points.len(), outside_first, passed: counterexamples.is_empty(), counterexamples, ..base })
}

/// Vertices of the closure followed by random convex combinations of up to four of them.
pub(crate) fn sample_points(sys: &LinearSystem, samples: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    if sys.is_empty_closed()? {
        return Ok(Vec::new());
    }
    let vs = Polytope::from_system(sys, None).vertices()?;
    let mut points = vs.points.clone();
    if points.is_empty() {
        return Ok(points);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while points.len() < samples.max(vs.points.len()) {
        let k = rng.random_range(1..=4usize.min(vs.points.len()));
        let weights: Vec<f64> = (0..k).map(|_| -rng.random::<f64>().max(f64::MIN_POSITIVE).ln()).collect();
        let total: f64 = weights.iter().sum();
        let mut p = vec![0.0; sys.dim()];
        for w in &weights {
            let v = &vs.points[rng.random_range(0..vs.points.len())];
            for (pi, vi) in p.iter_mut().zip(v) {
                *pi += w / total * vi;
            }
        }
        points.push(p);
    }
    Ok(points)
}

/// x ∈ Hull(P, Q) iff x = y + z with A_P y ≤ t b_P, A_Q z ≤ (1−t) b_Q, t ∈ [0, 1].
/// Both polytopes must be bounded (their recession cones are {0}).
pub(crate) fn in_hull(p: &Polytope, q: &Polytope, x: &[f64]) -> Result<bool> {
    let d = x.len();
    let mut vars: Vec<String> = (0..d).map(|i| format!("y{i}")).collect();
    vars.push("t".into());
    let mut sys = LinearSystem::new(vars)?;
    let slack = TOL;
    for c in &p.constraints {
        let mut coeffs = c.coeffs.clone();
        coeffs.push(-c.bound);
        sys.push(crate::polytope::Constraint { coeffs, rel: Relation::Le, bound: slack, label: c.label.clone() })?;
    }
    for c in &q.constraints {
        let mut coeffs: Vec<f64> = c.coeffs.iter().map(|a| -a).collect();
        coeffs.push(c.bound);
        let bound = c.bound - c.value(x) + slack;
        sys.push(crate::polytope::Constraint { coeffs, rel: Relation::Le, bound, label: c.label.clone() })?;
    }
    sys.add(&[("t", -1.0)], Relation::Le, 0.0, "t>=0")?;
    sys.add(&[("t", 1.0)], Relation::Le, 1.0, "t<=1")?;
    Ok(!sys.is_empty_closed()?)
}

/// Pointwise check that the closed alternative region lies inside the closed reduced region.
pub fn alt_inside_reduced(q: &MIQuantities, samples: usize, seed: u64) -> Result<bool> {
    let red = reduced_constraints(q)?;
    let pts = sample_points(&alt_constraints(q)?, samples, seed)?;
    Ok(pts.iter().all(|p| red.contains(p, Membership::Closed)))
}
