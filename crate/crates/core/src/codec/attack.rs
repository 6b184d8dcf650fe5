use std::collections::BTreeSet;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::codebook::{ChannelEntries, Codebook};
use crate::error::{Error, Result};
use crate::measures::{Alphabet, Channel, Weight};
use crate::types::{sequence_count, Sequence};

/// Default cap on the number of sequences an exact enumeration may visit.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

pub(crate) fn ensure_budget(needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        Err(Error::BudgetExceeded { needed, budget })
    } else {
        Ok(())
    }
}

/// A deterministic fixed-size list decoder ψ: 𝒵ⁿ → λ-subsets of the secrets,
/// stored as a table indexed by the lexicographic position of z.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttackRegions {
    z_alphabet: Alphabet,
    n: usize,
    secrets: usize,
    lambda: usize,
    lists: Vec<Vec<usize>>,
}

impl AttackRegions {
    /// Builds regions from a user-supplied table; each list must hold exactly λ
    /// distinct secrets below `secrets`.
    pub fn from_table(
        z_alphabet: Alphabet,
        n: usize,
        secrets: usize,
        lambda: usize,
        lists: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if lambda == 0 || lambda > secrets {
            return Err(Error::ListTooLarge { lambda, secrets });
        }
        let expected = sequence_count(z_alphabet.len(), n);
        if lists.len() as u128 != expected {
            return Err(Error::Precondition(format!("{} lists for {expected} observations", lists.len())));
        }
        let mut normalized = Vec::with_capacity(lists.len());
        for list in lists {
            let set: BTreeSet<usize> = list.iter().copied().collect();
            if set.len() != lambda || set.iter().any(|&l| l >= secrets) {
                return Err(Error::Precondition(format!("list {list:?} is not a {lambda}-subset of 0..{secrets}")));
            }
            normalized.push(set.into_iter().collect());
        }
        Ok(AttackRegions { z_alphabet, n, secrets, lambda, lists: normalized })
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn secrets(&self) -> usize {
        self.secrets
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn z_alphabet(&self) -> &Alphabet {
        &self.z_alphabet
    }

    /// ψ(z), sorted ascending.
    pub fn list(&self, z: &Sequence) -> &[usize] {
        &self.lists[z.lex_index() as usize]
    }

    pub fn lists(&self) -> &[Vec<usize>] {
        &self.lists
    }

    pub fn guesses(&self, z: &Sequence, l: usize) -> bool {
        self.list(z).binary_search(&l).is_ok()
    }
}

/// The λ indices of largest score, ties resolved towards the smaller index.
fn top_lambda<T: Weight>(scores: &[T], lambda: usize) -> Vec<usize> {
    let mut chosen = vec![false; scores.len()];
    let mut out = Vec::with_capacity(lambda);
    for _ in 0..lambda {
        let mut best: Option<usize> = None;
        for (l, s) in scores.iter().enumerate() {
            if chosen[l] {
                continue;
            }
            match best {
                None => best = Some(l),
                Some(b) if *s > scores[b] && !s.ties(&scores[b]) => best = Some(l),
                _ => {}
            }
        }
        let b = best.expect("λ ≤ L");
        chosen[b] = true;
        out.push(b);
    }
    out.sort_unstable();
    out
}

/// Σ_{m,j} Wⁿ(z | c_{jlm}) for every secret `l`.
pub(crate) fn secret_scores<T: Weight>(cb: &Codebook, rows: &[Vec<T>], z: &[usize]) -> Vec<T> {
    let mut scores = vec![T::zero(); cb.secrets()];
    for (j, l, m) in cb.indices() {
        scores[l] = scores[l].clone() + sequence_probability(rows, &cb.codeword_symbols(j, l, m), z);
    }
    scores
}

/// Wⁿ(y | c) = Π_i W(y_i | c_i).
pub(crate) fn sequence_probability<T: Weight>(rows: &[Vec<T>], c: &[usize], y: &[usize]) -> T {
    let mut p = T::one();
    for (&a, &b) in c.iter().zip(y) {
        let w = &rows[a][b];
        if w.is_zero() {
            return T::zero();
        }
        p = p * w.clone();
    }
    p
}

fn attack_with<T: Weight + ChannelEntries>(cb: &Codebook, w_e: &Channel, lambda: usize) -> Result<Vec<Vec<usize>>> {
    let rows = cb.extended_rows::<T>(w_e)?;
    let nz = w_e.output().len();
    let count = sequence_count(nz, cb.n());
    let z_alphabet = w_e.output().clone();
    Ok((0..count as u64)
        .into_par_iter()
        .map(|i| {
            let z = Sequence::from_lex_index(z_alphabet.clone(), cb.n(), i as u128);
            top_lambda(&secret_scores(cb, &rows, z.symbols()), lambda)
        })
        .collect())
}

/// The optimal deterministic λ-list attack: ψ(z) holds the λ secrets with the largest
/// posterior Σ_{m,j} W_eⁿ(z | x_{jlm}), ties broken towards the smaller index.
/// Computed exactly when the channel has rational entries.
pub fn optimal_list_attack(cb: &Codebook, w_e: &Channel, lambda: usize) -> Result<AttackRegions> {
    optimal_list_attack_with_budget(cb, w_e, lambda, DEFAULT_BUDGET)
}

pub fn optimal_list_attack_with_budget(
    cb: &Codebook,
    w_e: &Channel,
    lambda: usize,
    budget: u128,
) -> Result<AttackRegions> {
    if lambda == 0 || lambda > cb.secrets() {
        return Err(Error::ListTooLarge { lambda, secrets: cb.secrets() });
    }
    ensure_budget(sequence_count(w_e.output().len(), cb.n()), budget)?;
    let lists = if w_e.exact().is_some() {
        attack_with::<BigRational>(cb, w_e, lambda)?
    } else {
        attack_with::<f64>(cb, w_e, lambda)?
    };
    Ok(AttackRegions { z_alphabet: w_e.output().clone(), n: cb.n(), secrets: cb.secrets(), lambda, lists })
}

/// Double-counting identity Σ_l |Ψ(l) ∩ S| = λ|S| with Ψ(l) = {z : l ∈ ψ(z)};
/// duplicates in `s` are counted once.
pub fn list_size_identity_check(regions: &AttackRegions, s: &[Sequence]) -> bool {
    let set: BTreeSet<u128> = s.iter().map(Sequence::lex_index).collect();
    let lhs: usize = (0..regions.secrets)
        .map(|l| set.iter().filter(|&&z| regions.lists[z as usize].contains(&l)).count())
        .sum();
    lhs == regions.lambda * set.len()
}
