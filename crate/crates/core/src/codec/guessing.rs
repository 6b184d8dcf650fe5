use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::measures::{Channel, Distribution, Prob, Weight};

fn top_k_sum<T: Weight>(values: &[T], k: usize) -> T {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).expect("probabilities are comparable"));
    sorted.into_iter().take(k).fold(T::zero(), |a, b| a + b)
}

fn guessing_with<T: Weight>(prior: &[T], posterior: &[Vec<T>], marginal: &[T], k: usize) -> (T, T) {
    let apriori = top_k_sum(prior, k);
    let aposteriori = marginal
        .iter()
        .zip(posterior)
        .fold(T::zero(), |acc, (pz, row)| acc + pz.clone() * top_k_sum(row, k));
    (apriori, aposteriori)
}

/// Success probability of `k` guesses of a secret: without observation (sum of the
/// `k` largest prior masses) and with observation (posterior-weighted average).
/// Exact when all inputs carry rational entries.
pub fn success_probability_guessing(
    prior: &Distribution,
    posterior: &Channel,
    marginal: &Distribution,
    k: usize,
) -> Result<(Prob, Prob)> {
    if k == 0 {
        return Err(Error::Precondition("need at least one guess".into()));
    }
    prior.alphabet().ensure_same(posterior.output(), "prior vs posterior output")?;
    marginal.alphabet().ensure_same(posterior.input(), "marginal vs posterior input")?;
    if let (Some(p), Some(v), Some(m)) = (prior.exact(), posterior.exact(), marginal.exact()) {
        let (a, b) = guessing_with::<BigRational>(p, v, m, k);
        Ok((a.into_prob(), b.into_prob()))
    } else {
        let (a, b) = guessing_with::<f64>(prior.probs(), posterior.rows(), marginal.probs(), k);
        Ok((a.into_prob(), b.into_prob()))
    }
}
