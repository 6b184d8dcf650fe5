use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::attack::{ensure_budget, DEFAULT_BUDGET};
use super::codebook::{sample_shell, sample_type_class};
use crate::error::{Error, Result};
use crate::measures::{cond_mutual_info, format_rational, rational_to_f64, Alphabet};
use crate::types::{
    enumerate_shell, enumerate_type_class, sequence_count, shell_membership_probability, shell_size,
    type_class_size, CondType, Sequence, TypeVector,
};

/// Empirical distribution of the maximum shell overlap max_z Σ_j 1{z ∈ T_V(u∘X_j)}
/// over independently drawn satellite sets, with a fixed-probe linearity check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OverlapReport {
    pub n: usize,
    pub junk: usize,
    pub samples: u64,
    /// `histogram[k]` counts samples whose maximum overlap equals `k`.
    pub histogram: Vec<u64>,
    pub mean_max: f64,
    pub cond_mutual_info: f64,
    /// ⌊exp{n I(Q1, V | Q0)}⌋, the largest J allowed.
    pub max_junk: f64,
    pub probe: Sequence,
    pub probe_mean: f64,
    pub probe_std_err: f64,
    /// J times the average over u ∈ T_{Q0} of Pr{probe ∈ T_V(u∘X)}.
    pub probe_expected: String,
    pub probe_expected_f64: f64,
    pub delta: f64,
    /// Fraction of samples whose maximum overlap reached exp(nδ).
    pub tail_frequency: f64,
    /// exp{−exp(nδ)}, the asymptotic tail bound; reported, not asserted.
    pub tail_bound: f64,
}

fn joint_row_totals(q1: &CondType) -> Vec<u64> {
    q1.counts().iter().flatten().copied().collect()
}

fn check_overlap_inputs(q0: &TypeVector, q1: &CondType, v: &CondType) -> Result<()> {
    q1.ensure_consistent(q0)?;
    let product = Alphabet::product(q0.alphabet(), q1.output());
    if v.input() != &product {
        return Err(Error::AlphabetMismatch(format!("V input {} vs U×X {}", v.input(), product)));
    }
    if v.row_totals() != joint_row_totals(q1) {
        return Err(Error::InconsistentCondType("V row totals differ from the joint type Q0∘Q1".into()));
    }
    Ok(())
}

/// The probe observation: first z of the shell of the lexicographically first codeword.
fn probe_sequence(q0: &TypeVector, q1: &CondType, v: &CondType) -> Result<Sequence> {
    let u = enumerate_type_class(q0).next().ok_or_else(|| Error::EmptyClass("T_Q0".into()))?;
    let x = enumerate_shell(&u, q1)?.next().ok_or_else(|| Error::EmptyClass("T_Q1(u)".into()))?;
    enumerate_shell(&u.pair(&x)?, v)?.next().ok_or_else(|| Error::EmptyClass("T_V(u∘x)".into()))
}

/// J × avg_{u ∈ T_{Q0}} Pr{z ∈ T_V(u∘X)}, the expected overlap count at `z`.
pub fn expected_overlap_at(q0: &TypeVector, q1: &CondType, v: &CondType, junk: usize, z: &Sequence) -> Result<BigRational> {
    let size = type_class_size(q0);
    ensure_budget(size.to_u128().unwrap_or(u128::MAX), DEFAULT_BUDGET)?;
    let mut total = BigRational::zero();
    for u in enumerate_type_class(q0) {
        total += shell_membership_probability(q0, q1, v, &u, z)?;
    }
    Ok(total * BigRational::from_integer(BigInt::from(junk)) / BigRational::from_integer(BigInt::from(size)))
}

/// Samples `samples` independent draws of u ∈ T_{Q0} and X_1..X_J ∈ T_{Q1}(u) and records
/// the maximum overlap count over all z, using δ = 0.1 for the tail report.
pub fn overlap_statistics(
    q0: &TypeVector,
    q1: &CondType,
    v: &CondType,
    junk: usize,
    samples: u64,
    seed: u64,
) -> Result<OverlapReport> {
    overlap_statistics_with_delta(q0, q1, v, junk, samples, seed, 0.1)
}

pub fn overlap_statistics_with_delta(
    q0: &TypeVector,
    q1: &CondType,
    v: &CondType,
    junk: usize,
    samples: u64,
    seed: u64,
    delta: f64,
) -> Result<OverlapReport> {
    check_overlap_inputs(q0, q1, v)?;
    if junk == 0 || samples == 0 {
        return Err(Error::Precondition("J and the sample count must be positive".into()));
    }
    let n = q0.n() as usize;
    let info = cond_mutual_info(&q0.to_distribution(), &q1.to_channel(), &v.to_channel())?;
    let max_junk = ((n as f64 * info).exp() + 1e-9).floor();
    if junk as f64 > max_junk {
        return Err(Error::Precondition(format!("J = {junk} exceeds ⌊exp(n I(Q1,V|Q0))⌋ = {max_junk}")));
    }
    let nz = v.output().len();
    let space = sequence_count(nz, n);
    ensure_budget(space, DEFAULT_BUDGET)?;
    let probe = probe_sequence(q0, q1, v)?;
    let probe_index = probe.lex_index() as usize;
    let expected = expected_overlap_at(q0, q1, v, junk, &probe)?;

    let threshold = (n as f64 * delta).exp();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0u32; space as usize];
    let mut histogram = vec![0u64; junk + 1];
    let (mut probe_sum, mut probe_sq, mut tail) = (0f64, 0f64, 0u64);
    for _ in 0..samples {
        counts.iter_mut().for_each(|c| *c = 0);
        let u = sample_type_class(q0, &mut rng);
        for _ in 0..junk {
            let x = sample_shell(&u, q1, &mut rng);
            for z in enumerate_shell(&u.pair(&x)?, v)? {
                counts[z.lex_index() as usize] += 1;
            }
        }
        let max = *counts.iter().max().expect("non-empty space") as usize;
        histogram[max] += 1;
        let at_probe = counts[probe_index] as f64;
        probe_sum += at_probe;
        probe_sq += at_probe * at_probe;
        tail += u64::from(max as f64 >= threshold);
    }
    let s = samples as f64;
    let probe_mean = probe_sum / s;
    let variance = if samples > 1 { (probe_sq - s * probe_mean * probe_mean).max(0.0) / (s - 1.0) } else { 0.0 };
    let mean_max = histogram.iter().enumerate().map(|(k, &c)| k as f64 * c as f64).sum::<f64>() / s;
    Ok(OverlapReport {
        n,
        junk,
        samples,
        histogram,
        mean_max,
        cond_mutual_info: info,
        max_junk,
        probe,
        probe_mean,
        probe_std_err: (variance / s).sqrt(),
        probe_expected_f64: rational_to_f64(&expected),
        probe_expected: format_rational(&expected),
        delta,
        tail_frequency: tail as f64 / s,
        tail_bound: (-threshold).exp(),
    })
}

/// Exact E[|T_V(C) ∩ T_V̂(Ĉ)| / |T_V(C)|] for U uniform on T_{Q0} and independent
/// X ∈ T_{Q1}(U), X̂ ∈ T_{Q̂1}(U), by full enumeration.
pub fn expected_packing_ratio(
    q0: &TypeVector,
    q1: &CondType,
    q1_hat: &CondType,
    v: &CondType,
    v_hat: &CondType,
) -> Result<BigRational> {
    check_overlap_inputs(q0, q1, v)?;
    check_overlap_inputs(q0, q1_hat, v_hat)?;
    if v.output() != v_hat.output() {
        return Err(Error::AlphabetMismatch("V and V̂ have different output alphabets".into()));
    }
    let class = type_class_size(q0);
    let shell = shell_size(q0, q1)?;
    let shell_hat = shell_size(q0, q1_hat)?;
    let joint = TypeVector::new(v.input().clone(), joint_row_totals(q1))?;
    let v_size = shell_size(&joint, v)?;
    let work: BigUint = &class * &shell * &shell_hat * &v_size;
    ensure_budget(work.to_u128().unwrap_or(u128::MAX), DEFAULT_BUDGET)?;

    let mut hits = BigUint::zero();
    for u in enumerate_type_class(q0) {
        let hat_sets: Vec<HashSet<u128>> = enumerate_shell(&u, q1_hat)?
            .map(|xh| Ok(enumerate_shell(&u.pair(&xh)?, v_hat)?.map(|y| y.lex_index()).collect()))
            .collect::<Result<_>>()?;
        for x in enumerate_shell(&u, q1)? {
            let ys: Vec<u128> = enumerate_shell(&u.pair(&x)?, v)?.map(|y| y.lex_index()).collect();
            for set in &hat_sets {
                hits += ys.iter().filter(|y| set.contains(y)).count();
            }
        }
    }
    let denominator = class * shell * shell_hat * v_size;
    Ok(BigRational::new(BigInt::from(hits), BigInt::from(denominator)))
}
