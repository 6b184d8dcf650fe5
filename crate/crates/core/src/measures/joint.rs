use super::alphabet::Alphabet;
use super::channel::Channel;
use super::distribution::{check_prob_vector, Distribution};
use super::info::entropy_of;
use crate::error::{Error, Result};

/// A probability tensor over a product of factor alphabets, stored row-major
/// (the last factor varies fastest).
#[derive(Clone, Debug, PartialEq)]
pub struct JointDistribution {
    factors: Vec<Alphabet>,
    probs: Vec<f64>,
}

impl JointDistribution {
    pub fn new(factors: Vec<Alphabet>, probs: Vec<f64>) -> Result<Self> {
        let size: usize = factors.iter().map(Alphabet::len).product();
        if factors.is_empty() || size != probs.len() {
            return Err(Error::InvalidDistribution(format!(
                "tensor of {} entries for product size {size}",
                probs.len()
            )));
        }
        check_prob_vector(&probs, "joint distribution")?;
        Ok(JointDistribution { factors, probs })
    }

    pub fn from_distribution(p: &Distribution) -> Self {
        JointDistribution { factors: vec![p.alphabet().clone()], probs: p.probs().to_vec() }
    }

    /// Appends a new factor drawn from `channel` given the factors listed in `parents`.
    /// The channel input is indexed row-major over the parent factors in the given order.
    pub fn extend(&self, channel: &Channel, parents: &[usize]) -> Result<Self> {
        let parent_size: usize = parents.iter().map(|&f| self.factors[f].len()).product();
        if channel.input().len() != parent_size {
            return Err(Error::AlphabetMismatch(format!(
                "channel has {} inputs, parents span {parent_size}",
                channel.input().len()
            )));
        }
        let out = channel.output().len();
        let mut probs = Vec::with_capacity(self.probs.len() * out);
        for (flat, &p) in self.probs.iter().enumerate() {
            let idx = self.unflatten(flat);
            let row = parents.iter().fold(0, |acc, &f| acc * self.factors[f].len() + idx[f]);
            probs.extend(channel.row(row).iter().map(|&w| p * w));
        }
        let mut factors = self.factors.clone();
        factors.push(channel.output().clone());
        Ok(JointDistribution { factors, probs })
    }

    pub fn factors(&self) -> &[Alphabet] {
        &self.factors
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    fn unflatten(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.factors.len()];
        for (k, a) in self.factors.iter().enumerate().rev() {
            idx[k] = flat % a.len();
            flat /= a.len();
        }
        idx
    }

    /// Marginal on the listed factors, in the listed order.
    pub fn marginal(&self, keep: &[usize]) -> Self {
        let factors: Vec<Alphabet> = keep.iter().map(|&f| self.factors[f].clone()).collect();
        let size: usize = factors.iter().map(Alphabet::len).product();
        let mut probs = vec![0.0; size.max(1)];
        for (flat, &p) in self.probs.iter().enumerate() {
            let idx = self.unflatten(flat);
            let target = keep.iter().fold(0, |acc, &f| acc * self.factors[f].len() + idx[f]);
            probs[target] += p;
        }
        JointDistribution { factors, probs }
    }

    pub fn entropy(&self) -> f64 {
        entropy_of(&self.probs)
    }

    /// H of the marginal on `factors` (0 for the empty set).
    pub fn entropy_of(&self, factors: &[usize]) -> f64 {
        if factors.is_empty() {
            0.0
        } else {
            self.marginal(factors).entropy()
        }
    }

    /// I(A ∧ B | C) from joint entropies.
    pub fn conditional_mutual_info(&self, a: &[usize], b: &[usize], c: &[usize]) -> f64 {
        let cat = |xs: &[&[usize]]| xs.concat();
        self.entropy_of(&cat(&[a, c])) + self.entropy_of(&cat(&[b, c]))
            - self.entropy_of(&cat(&[a, b, c]))
            - self.entropy_of(c)
    }

    pub fn mutual_info(&self, a: &[usize], b: &[usize]) -> f64 {
        self.conditional_mutual_info(a, b, &[])
    }
}
