use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use super::alphabet::Alphabet;
use super::exact::{format_rational, parse_rational, rational_to_f64};
use crate::error::{Error, Result};

/// Tolerance on the unit-sum constraint for float probability vectors.
pub const SUM_TOL: f64 = 1e-12;

/// A probability vector over a finite alphabet.
///
/// The float entries are always present. When built from exact rationals the
/// rational entries are kept alongside so exact code paths can use them.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution {
    alphabet: Alphabet,
    probs: Vec<f64>,
    exact: Option<Vec<BigRational>>,
}

pub(crate) fn check_prob_vector(probs: &[f64], what: &str) -> Result<()> {
    let mut sum = 0.0;
    for &p in probs {
        if !p.is_finite() || p < 0.0 {
            return Err(Error::InvalidDistribution(format!("{what}: entry {p} is not a probability")));
        }
        sum += p;
    }
    if (sum - 1.0).abs() > SUM_TOL {
        return Err(Error::InvalidDistribution(format!("{what}: entries sum to {sum}")));
    }
    Ok(())
}

pub(crate) fn check_exact_vector(probs: &[BigRational], what: &str) -> Result<()> {
    if probs.iter().any(|p| p.is_negative()) {
        return Err(Error::InvalidDistribution(format!("{what}: negative entry")));
    }
    let sum = probs.iter().fold(BigRational::zero(), |acc, p| acc + p);
    if !sum.is_one() {
        return Err(Error::InvalidDistribution(format!(
            "{what}: entries sum to {} instead of 1",
            format_rational(&sum)
        )));
    }
    Ok(())
}

/// Reads a JSON probability vector. The vector is exact only when every entry is a string.
pub(crate) fn parse_prob_values(values: &[Value]) -> Result<(Vec<f64>, Option<Vec<BigRational>>)> {
    let all_strings = values.iter().all(Value::is_string);
    let mut floats = Vec::with_capacity(values.len());
    let mut exact = Vec::with_capacity(values.len());
    for v in values {
        match v {
            Value::String(s) => {
                let r = parse_rational(s)?;
                floats.push(rational_to_f64(&r));
                exact.push(r);
            }
            Value::Number(n) => {
                floats.push(n.as_f64().ok_or_else(|| Error::Parse(format!("bad number {n}")))?)
            }
            other => return Err(Error::Parse(format!("expected probability, found {other}"))),
        }
    }
    Ok((floats, if all_strings { Some(exact) } else { None }))
}

pub(crate) fn prob_values(probs: &[f64], exact: Option<&[BigRational]>) -> Vec<Value> {
    match exact {
        Some(ex) => ex.iter().map(|r| Value::String(format_rational(r))).collect(),
        None => probs.iter().map(|&p| Value::from(p)).collect(),
    }
}

impl Distribution {
    pub fn new(alphabet: Alphabet, probs: Vec<f64>) -> Result<Self> {
        if alphabet.len() != probs.len() {
            return Err(Error::InvalidDistribution(format!(
                "{} probabilities for alphabet of size {}",
                probs.len(),
                alphabet.len()
            )));
        }
        check_prob_vector(&probs, "distribution")?;
        Ok(Distribution { alphabet, probs, exact: None })
    }

    /// Float distribution over the indexed alphabet `{0, .., k-1}`.
    pub fn from_probs(probs: &[f64]) -> Result<Self> {
        Self::new(Alphabet::indexed(probs.len().max(1)), probs.to_vec())
    }

    pub fn from_rationals(alphabet: Alphabet, probs: Vec<BigRational>) -> Result<Self> {
        if alphabet.len() != probs.len() {
            return Err(Error::InvalidDistribution("length does not match alphabet".into()));
        }
        check_exact_vector(&probs, "distribution")?;
        let floats = probs.iter().map(rational_to_f64).collect();
        Ok(Distribution { alphabet, probs: floats, exact: Some(probs) })
    }

    /// Exact distribution from literals such as `"3/4"` or `"0.25"`.
    pub fn parse(alphabet: Alphabet, literals: &[&str]) -> Result<Self> {
        let probs = literals.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        Self::from_rationals(alphabet, probs)
    }

    pub fn uniform(alphabet: Alphabet) -> Self {
        let k = alphabet.len() as u64;
        let exact = vec![BigRational::new(1.into(), k.into()); alphabet.len()];
        Self::from_rationals(alphabet, exact).expect("uniform is valid")
    }

    pub fn point_mass(alphabet: Alphabet, index: usize) -> Self {
        let exact = (0..alphabet.len())
            .map(|i| if i == index { BigRational::one() } else { BigRational::zero() })
            .collect();
        Self::from_rationals(alphabet, exact).expect("point mass is valid")
    }

    pub(crate) fn from_parts_unchecked(
        alphabet: Alphabet,
        probs: Vec<f64>,
        exact: Option<Vec<BigRational>>,
    ) -> Self {
        Distribution { alphabet, probs, exact }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, index: usize) -> f64 {
        self.probs[index]
    }

    pub fn exact(&self) -> Option<&[BigRational]> {
        self.exact.as_deref()
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Drops the exact representation, keeping only floats.
    pub fn to_float(&self) -> Self {
        Distribution { exact: None, ..self.clone() }
    }
}

#[derive(Serialize, Deserialize)]
struct DistributionJson {
    alphabet: Vec<String>,
    probs: Vec<Value>,
}

impl Serialize for Distribution {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        DistributionJson {
            alphabet: self.alphabet.labels().to_vec(),
            probs: prob_values(&self.probs, self.exact.as_deref()),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Distribution {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = DistributionJson::deserialize(deserializer)?;
        let alphabet = Alphabet::new(raw.alphabet).map_err(D::Error::custom)?;
        let (floats, exact) = parse_prob_values(&raw.probs).map_err(D::Error::custom)?;
        match exact {
            Some(ex) => Distribution::from_rationals(alphabet, ex),
            None => Distribution::new(alphabet, floats),
        }
        .map_err(D::Error::custom)
    }
}
