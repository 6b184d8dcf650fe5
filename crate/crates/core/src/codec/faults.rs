use num_rational::BigRational;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::attack::{ensure_budget, sequence_probability, AttackRegions, DEFAULT_BUDGET};
use super::codebook::{ChannelEntries, Codebook};
use super::decoders::{BobDecoder, EveDecoder, Mmi};
use crate::error::{Error, Result};
use crate::measures::{Channel, Prob, Weight};
use crate::types::{sequence_count, Sequence};

/// Conditional fault probabilities for one `(m, l)` pair, averaged over junk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MessageFaults {
    pub m: usize,
    pub l: usize,
    pub e_b: Prob,
    pub e_e: Prob,
    pub s_e: Prob,
}

/// Average fault probabilities of a code under given decoders and attack.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FaultReport {
    pub e_b: Prob,
    pub e_e: Prob,
    pub s_e: Prob,
    pub exact: bool,
    pub per_message: Vec<MessageFaults>,
}

impl FaultReport {
    /// One CSV row per `(m, l)`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,l,e_b,e_e,s_e\n");
        for r in &self.per_message {
            out.push_str(&format!("{},{},{},{},{}\n", r.m, r.l, r.e_b, r.e_e, r.s_e));
        }
        out
    }
}

/// Monte-Carlo estimate with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub std_err: f64,
}

impl Estimate {
    fn from_hits(hits: u64, samples: u64) -> Self {
        let mean = hits as f64 / samples as f64;
        Estimate { mean, std_err: (mean * (1.0 - mean) / samples as f64).sqrt() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloReport {
    pub samples: u64,
    pub e_b: Estimate,
    pub e_e: Estimate,
    pub s_e: Estimate,
}

fn check_attack(cb: &Codebook, w_e: &Channel, attack: &AttackRegions) -> Result<()> {
    if attack.n() != cb.n() || attack.secrets() != cb.secrets() || attack.z_alphabet() != w_e.output() {
        return Err(Error::Precondition("attack regions do not match the code and Eve's channel".into()));
    }
    Ok(())
}

/// Per-(m,l) sums over the `J` junk indices of the three fault events.
struct Sums<T> {
    e_b: Vec<T>,
    e_e: Vec<T>,
    s_e: Vec<T>,
}

fn chunked_sums<T, F>(count: u128, slots: usize, body: F) -> Vec<T>
where
    T: Weight,
    F: Fn(u128, &mut [T]) + Sync,
{
    const CHUNKS: u128 = 256;
    let chunk = count.div_ceil(CHUNKS).max(1);
    let partials: Vec<Vec<T>> = (0..count.div_ceil(chunk) as u64)
        .into_par_iter()
        .map(|c| {
            let mut acc = vec![T::zero(); slots];
            let start = c as u128 * chunk;
            for i in start..(start + chunk).min(count) {
                body(i, &mut acc);
            }
            acc
        })
        .collect();
    // fixed reduction order keeps float results reproducible
    let mut total = vec![T::zero(); slots];
    for p in partials {
        for (t, v) in total.iter_mut().zip(p) {
            *t = t.clone() + v;
        }
    }
    total
}

fn fault_sums<T: Weight + ChannelEntries>(
    cb: &Codebook,
    w_b: &Channel,
    w_e: &Channel,
    attack: &AttackRegions,
    bob: &dyn BobDecoder,
    eve: &dyn EveDecoder,
) -> Result<Sums<T>> {
    let rows_b = cb.extended_rows::<T>(w_b)?;
    let rows_e = cb.extended_rows::<T>(w_e)?;
    let slots = cb.messages() * cb.secrets();
    let codewords: Vec<(usize, usize, Vec<usize>)> =
        cb.indices().map(|(j, l, m)| (l, m, cb.codeword_symbols(j, l, m))).collect();
    let n = cb.n();

    let y_alphabet = w_b.output().clone();
    let e_b = chunked_sums(sequence_count(y_alphabet.len(), n), slots, |i, acc: &mut [T]| {
        let y = Sequence::from_lex_index(y_alphabet.clone(), n, i);
        let decision = bob.decode(cb, &y);
        for (l, m, c) in &codewords {
            if decision != Some((*m, *l)) {
                let slot = m * cb.secrets() + l;
                acc[slot] = acc[slot].clone() + sequence_probability(&rows_b, c, y.symbols());
            }
        }
    });

    let z_alphabet = w_e.output().clone();
    let zs = sequence_count(z_alphabet.len(), n);
    let eve_sums = chunked_sums(zs, 2 * slots, |i, acc: &mut [T]| {
        let z = Sequence::from_lex_index(z_alphabet.clone(), n, i);
        let decision = eve.decode(cb, &z);
        let list = attack.list(&z);
        for (l, m, c) in &codewords {
            let wrong = decision != Some(*m);
            let guessed = list.binary_search(l).is_ok();
            if !wrong && !guessed {
                continue;
            }
            let p = sequence_probability(&rows_e, c, z.symbols());
            let slot = m * cb.secrets() + l;
            if wrong {
                acc[slot] = acc[slot].clone() + p.clone();
            }
            if guessed {
                acc[slots + slot] = acc[slots + slot].clone() + p;
            }
        }
    });
    let (e_e, s_e) = eve_sums.split_at(slots);
    Ok(Sums { e_b, e_e: e_e.to_vec(), s_e: s_e.to_vec() })
}

fn report_from<T: Weight>(cb: &Codebook, sums: Sums<T>, exact: bool) -> FaultReport {
    let junk = T::ratio(cb.junk() as u64, 1);
    let slots = T::ratio((cb.messages() * cb.secrets()) as u64, 1);
    let avg = |v: &[T]| v.iter().cloned().fold(T::zero(), |a, b| a + b) / (junk.clone() * slots.clone());
    let per_message = (0..cb.messages())
        .flat_map(|m| (0..cb.secrets()).map(move |l| (m, l)))
        .map(|(m, l)| {
            let s = m * cb.secrets() + l;
            MessageFaults {
                m,
                l,
                e_b: (sums.e_b[s].clone() / junk.clone()).into_prob(),
                e_e: (sums.e_e[s].clone() / junk.clone()).into_prob(),
                s_e: (sums.s_e[s].clone() / junk.clone()).into_prob(),
            }
        })
        .collect();
    FaultReport {
        e_b: avg(&sums.e_b).into_prob(),
        e_e: avg(&sums.e_e).into_prob(),
        s_e: avg(&sums.s_e).into_prob(),
        exact,
        per_message,
    }
}

/// Exact average fault probabilities e_b, e_e and s_e with MMI decoders for Bob and Eve.
pub fn exact_fault_probabilities(
    cb: &Codebook,
    w_b: &Channel,
    w_e: &Channel,
    attack: &AttackRegions,
) -> Result<FaultReport> {
    exact_fault_probabilities_with(cb, w_b, w_e, attack, &Mmi, &Mmi, DEFAULT_BUDGET)
}

/// Like [`exact_fault_probabilities`] with caller-chosen decoders and enumeration budget.
/// Results are exact rationals when both channels carry rational entries.
pub fn exact_fault_probabilities_with(
    cb: &Codebook,
    w_b: &Channel,
    w_e: &Channel,
    attack: &AttackRegions,
    bob: &dyn BobDecoder,
    eve: &dyn EveDecoder,
    budget: u128,
) -> Result<FaultReport> {
    check_attack(cb, w_e, attack)?;
    let needed = sequence_count(w_b.output().len(), cb.n())
        .saturating_add(sequence_count(w_e.output().len(), cb.n()));
    ensure_budget(needed, budget)?;
    if w_b.exact().is_some() && w_e.exact().is_some() {
        Ok(report_from(cb, fault_sums::<BigRational>(cb, w_b, w_e, attack, bob, eve)?, true))
    } else {
        Ok(report_from(cb, fault_sums::<f64>(cb, w_b, w_e, attack, bob, eve)?, false))
    }
}

fn sample_output(rows: &[Vec<f64>], c: &[usize], alphabet: &crate::measures::Alphabet, rng: &mut ChaCha8Rng) -> Sequence {
    let symbols = c
        .iter()
        .map(|&a| {
            let r: f64 = rng.random();
            let row = &rows[a];
            let mut acc = 0.0;
            row.iter()
                .position(|&p| {
                    acc += p;
                    r < acc
                })
                .unwrap_or_else(|| row.iter().rposition(|&p| p > 0.0).unwrap_or(0))
        })
        .collect();
    Sequence::new(alphabet.clone(), symbols).expect("n ≥ 1")
}

/// Monte-Carlo estimate of the fault probabilities: uniform `(m, l, j)`, channel
/// outputs drawn from W_b and W_e, reproducible from `seed`.
pub fn monte_carlo_fault_probabilities(
    cb: &Codebook,
    w_b: &Channel,
    w_e: &Channel,
    attack: &AttackRegions,
    bob: &dyn BobDecoder,
    eve: &dyn EveDecoder,
    samples: u64,
    seed: u64,
) -> Result<MonteCarloReport> {
    check_attack(cb, w_e, attack)?;
    if samples == 0 {
        return Err(Error::Precondition("need at least one sample".into()));
    }
    let rows_b = cb.extended_rows::<f64>(w_b)?;
    let rows_e = cb.extended_rows::<f64>(w_e)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut eb, mut ee, mut se) = (0u64, 0u64, 0u64);
    for _ in 0..samples {
        let j = rng.random_range(0..cb.junk());
        let l = rng.random_range(0..cb.secrets());
        let m = rng.random_range(0..cb.messages());
        let c = cb.codeword_symbols(j, l, m);
        let y = sample_output(&rows_b, &c, w_b.output(), &mut rng);
        let z = sample_output(&rows_e, &c, w_e.output(), &mut rng);
        eb += u64::from(bob.decode(cb, &y) != Some((m, l)));
        ee += u64::from(eve.decode(cb, &z) != Some(m));
        se += u64::from(attack.guesses(&z, l));
    }
    Ok(MonteCarloReport {
        samples,
        e_b: Estimate::from_hits(eb, samples),
        e_e: Estimate::from_hits(ee, samples),
        s_e: Estimate::from_hits(se, samples),
    })
}
