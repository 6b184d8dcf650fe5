use serde::{Deserialize, Serialize};

use super::spec::{AuxSpec, RateTuple};
use crate::error::Result;
use crate::measures::{cond_mutual_info, mix_rows, mutual_info, Channel};

/// Which rate penalty enters the exponent minimisation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Gamma {
    Bob,
    Eve,
    Secrecy,
    /// γ ≡ 0; the minimum is 0, attained at V = ṼW.
    Zero,
}

fn pos(t: f64) -> f64 {
    t.max(0.0)
}

fn neg(t: f64) -> f64 {
    t.min(0.0)
}

/// (I(Q1,V|Q0), I(Q0,Q1V)) for a channel V from U × X̃.
pub fn mi_pair(v: &Channel, aux: &AuxSpec) -> Result<(f64, f64)> {
    let a = cond_mutual_info(aux.q0(), aux.q1(), v)?;
    let b = mutual_info(aux.q0(), &mix_rows(aux.q1(), v)?)?;
    Ok((a, b))
}

pub(crate) fn gamma_from(gamma: Gamma, a: f64, b: f64, r: &RateTuple) -> f64 {
    match gamma {
        Gamma::Bob => pos(a - r.r_j - r.r_l + r.r + neg(b - r.r_m - r.r)),
        Gamma::Eve => pos(b - r.r_m - r.r),
        Gamma::Secrecy => pos(r.r_l - r.r - r.r_lambda + neg(r.r_j - a)),
        Gamma::Zero => 0.0,
    }
}

/// |I(Q1,V|Q0) − R_J − R_L + R + |I(Q0,Q1V) − R_M − R|⁻|⁺.
pub fn gamma_bob(v: &Channel, aux: &AuxSpec, r: &RateTuple) -> Result<f64> {
    let (a, b) = mi_pair(v, aux)?;
    Ok(gamma_from(Gamma::Bob, a, b, r))
}

/// |I(Q0,Q1V) − R_M − R|⁺.
pub fn gamma_eve(v: &Channel, aux: &AuxSpec, r: &RateTuple) -> Result<f64> {
    let (a, b) = mi_pair(v, aux)?;
    Ok(gamma_from(Gamma::Eve, a, b, r))
}

/// |R_L − R − R_λ + |R_J − I(Q1,V|Q0)|⁻|⁺.
pub fn gamma_secrecy(v: &Channel, aux: &AuxSpec, r: &RateTuple) -> Result<f64> {
    let (a, b) = mi_pair(v, aux)?;
    Ok(gamma_from(Gamma::Secrecy, a, b, r))
}

/// An information term M(V) ∈ {0, A, B, A + B, −A} with A = I(Q1,V|Q0), B = I(Q0,Q1V).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Term {
    Zero,
    A,
    B,
    AB,
    NegA,
}

impl Term {
    pub(crate) fn eval(self, a: f64, b: f64) -> f64 {
        match self {
            Term::Zero => 0.0,
            Term::A => a,
            Term::B => b,
            Term::AB => a + b,
            Term::NegA => -a,
        }
    }
}

/// γ(V) = min over branches of |M(V) + c|⁺; each branch gives a convex objective
/// max(D, D + M + c).
pub(crate) fn branches(gamma: Gamma, r: &RateTuple) -> Vec<(Term, f64)> {
    let c1 = r.r_j + r.r_l - r.r;
    let c2 = r.r_m + r.r;
    let k = r.r_l - r.r - r.r_lambda;
    match gamma {
        Gamma::Bob => vec![(Term::AB, -c1 - c2), (Term::A, -c1)],
        Gamma::Eve => vec![(Term::B, -c2)],
        Gamma::Secrecy => vec![(Term::Zero, k), (Term::NegA, k + r.r_j)],
        Gamma::Zero => vec![(Term::Zero, 0.0)],
    }
}
