use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::sequence::Sequence;
use super::type_vector::{empirical_counts, joint_counts, CondType, TypeVector};
use crate::error::{Error, Result};
use crate::measures::Alphabet;

/// Multinomial coefficient `(Σ parts)! / Π parts!`.
pub fn multinomial(parts: &[u64]) -> BigUint {
    let mut acc = BigUint::one();
    let mut total = 0u64;
    for &p in parts {
        for i in 1..=p {
            total += 1;
            acc = acc * BigUint::from(total) / BigUint::from(i);
        }
    }
    acc
}

/// Binomial coefficient with big-integer result.
pub fn binomial(a: u64, b: u64) -> BigUint {
    if b > a {
        BigUint::zero()
    } else {
        multinomial(&[b, a - b])
    }
}

/// |T_Q| = n! / Π_x N(x)!.
pub fn type_class_size(q: &TypeVector) -> BigUint {
    multinomial(q.counts())
}

/// |T_V(x)| for any x of type `q`: Π_x multinomial(N(x); N(x, ·)).
pub fn shell_size(q: &TypeVector, v: &CondType) -> Result<BigUint> {
    v.ensure_consistent(q)?;
    Ok(v.counts().iter().map(|row| multinomial(row)).product())
}

/// Natural log of a big unsigned integer.
pub fn ln_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64 bits fit");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Flattened joint counts N(u, x) of Q0∘Q1 in row-major order over U × X.
fn joint_type_counts(q0: &TypeVector, q1: &CondType) -> Result<Vec<u64>> {
    q1.ensure_consistent(q0)?;
    Ok(q1.counts().iter().flatten().copied().collect())
}

/// Pr{z ∈ T_V(u ∘ X)} for X uniform on T_{Q1}(u), computed as
/// |T_{X|U,Z}(u, z)| / |T_{X|U}(u)|.
///
/// `v` is a conditional type from U × X (row-major) to Z. Returns 0 when the
/// joint type of (u, z) differs from the one implied by Q0∘Q1∘V.
pub fn shell_membership_probability(
    q0: &TypeVector,
    q1: &CondType,
    v: &CondType,
    u: &Sequence,
    z: &Sequence,
) -> Result<BigRational> {
    let ux = joint_type_counts(q0, q1)?;
    let product = Alphabet::product(q0.alphabet(), q1.output());
    if v.input() != &product {
        return Err(Error::AlphabetMismatch(format!("V input {} vs U×X {}", v.input(), product)));
    }
    if v.row_totals() != ux {
        return Err(Error::InconsistentCondType("V row totals differ from the joint type Q0∘Q1".into()));
    }
    if z.alphabet() != v.output() {
        return Err(Error::AlphabetMismatch(format!("z over {} vs V output {}", z.alphabet(), v.output())));
    }
    if !q0.contains(u) {
        return Err(Error::Precondition(format!("u = {u} is not of type {:?}", q0.counts())));
    }
    if u.len() != z.len() {
        return Err(Error::InvalidSequence("u and z have different lengths".into()));
    }
    let nx = q1.output().len();
    let nz = v.output().len();
    let observed = joint_counts(u, z);
    let mut numerator = BigUint::one();
    for (uu, obs_row) in observed.iter().enumerate() {
        for (zz, &obs) in obs_row.iter().enumerate() {
            let parts: Vec<u64> = (0..nx).map(|x| v.counts()[uu * nx + x][zz]).collect();
            if parts.iter().sum::<u64>() != obs {
                return Ok(BigRational::zero());
            }
            numerator *= multinomial(&parts);
        }
    }
    debug_assert_eq!(observed.first().map_or(0, Vec::len), nz);
    let denominator: BigUint = q1.counts().iter().map(|row| multinomial(row)).product();
    Ok(BigRational::new(BigInt::from(numerator), BigInt::from(denominator)))
}

/// Checks C(a, b) ≤ exp{(1 + n(R − δ)) b} for a = round(e^{nR}), b = round(e^{nδ}),
/// the binomial bound with logarithms in nats.
pub fn binomial_exponent_bound_check(rate: f64, delta: f64, n: u32) -> Result<bool> {
    let a = (n as f64 * rate).exp().round();
    let b = (n as f64 * delta).exp().round();
    if !(a.is_finite() && b >= 1.0 && a >= b && a < 1e15) {
        return Err(Error::Precondition(format!("need a ≥ b ≥ 1, got a = {a}, b = {b}")));
    }
    let c = binomial(a as u64, b as u64);
    let exponent = (1.0 + n as f64 * (rate - delta)) * b;
    Ok(ln_big(&c) <= exponent)
}

/// Occurrence counts, exposed for callers that need raw type vectors.
pub fn counts_of(s: &Sequence) -> Vec<u64> {
    empirical_counts(s)
}
