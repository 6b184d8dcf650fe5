//! JSON file formats shared by the command-line tool and the examples.
//!
//! Probabilities may be written as numbers or as `"p/q"` strings; a channel or
//! distribution whose entries are all strings keeps exact rational values.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::codec::DEFAULT_BUDGET;
use crate::error::{Error, Result};
use crate::exponents::{AuxSpec, RateTuple};
use crate::measures::{compose, Alphabet, Channel, Distribution};
use crate::types::{compositions, CondType, TypeVector};

/// Upper limit on the number of auxiliary structures a sweep may expand to.
pub const MAX_SWEEP: usize = 100_000;

pub fn read_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let text = std::fs::read_to_string(path.as_ref())?;
    Ok(serde_json::from_str(&text)?)
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Bob's and Eve's channels over a common input alphabet.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawChannels")]
pub struct ChannelsFile {
    #[serde(rename = "W_b")]
    pub w_b: Channel,
    #[serde(rename = "W_e")]
    pub w_e: Channel,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Deserialize)]
struct RawChannels {
    #[serde(rename = "W_b")]
    w_b: Channel,
    #[serde(rename = "W_e")]
    w_e: Channel,
    #[serde(default)]
    note: Option<String>,
}

impl TryFrom<RawChannels> for ChannelsFile {
    type Error = Error;

    fn try_from(r: RawChannels) -> Result<Self> {
        ChannelsFile::new(r.w_b, r.w_e, r.note)
    }
}

impl ChannelsFile {
    pub fn new(w_b: Channel, w_e: Channel, note: Option<String>) -> Result<Self> {
        w_b.input().ensure_same(w_e.input(), "W_b and W_e inputs")?;
        Ok(ChannelsFile { w_b, w_e, note })
    }
}

/// Grid over Q0 and the rows of Q1 with the given denominator, X̃ = X and no prefix noise.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub u: usize,
    pub denominator: u64,
}

/// Product of explicit candidate lists for Q0, Q1 and the prefix Ṽ. Empty Q0/Q1 lists are
/// filled from `grid`; an empty prefix list means the identity on X̃.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    #[serde(default)]
    pub q0: Vec<Distribution>,
    #[serde(default)]
    pub q1: Vec<Channel>,
    #[serde(default)]
    pub prefix: Vec<Channel>,
    #[serde(default)]
    pub grid: Option<GridSpec>,
}

/// An auxiliary-structure file: one spec, a list, or a sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AuxFile {
    List { aux: Vec<AuxSpec> },
    Sweep { sweep: SweepSpec },
    Single(AuxSpec),
}

fn grid_distributions(alphabet: &Alphabet, denominator: u64) -> Result<Vec<Distribution>> {
    compositions(denominator, alphabet.len())
        .into_iter()
        .map(|c| Distribution::new(alphabet.clone(), c.iter().map(|&k| k as f64 / denominator as f64).collect()))
        .collect()
}

fn grid_channels(input: &Alphabet, output: &Alphabet, denominator: u64, limit: usize) -> Result<Vec<Channel>> {
    let rows = grid_distributions(output, denominator)?;
    let count = (rows.len() as f64).powi(input.len() as i32);
    if count > limit as f64 {
        return Err(Error::BudgetExceeded { needed: count as u128, budget: limit as u128 });
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; input.len()];
    loop {
        let r = idx.iter().map(|&i| rows[i].probs().to_vec()).collect();
        out.push(Channel::new(input.clone(), output.clone(), r)?);
        let mut pos = idx.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < rows.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

impl SweepSpec {
    /// Every combination, validated against the channel input alphabet `x`.
    pub fn expand(&self, x: &Alphabet) -> Result<Vec<AuxSpec>> {
        let (mut q0s, mut q1s) = (self.q0.clone(), self.q1.clone());
        if let Some(g) = &self.grid {
            if g.u == 0 || g.denominator == 0 {
                return Err(Error::Precondition("grid needs |U| ≥ 1 and a positive denominator".into()));
            }
            let u = Alphabet::indexed(g.u);
            if q0s.is_empty() {
                q0s = grid_distributions(&u, g.denominator)?;
            }
            if q1s.is_empty() {
                q1s = grid_channels(&u, x, g.denominator, MAX_SWEEP)?;
            }
        }
        if q0s.is_empty() || q1s.is_empty() {
            return Err(Error::Precondition("a sweep needs Q0 and Q1 candidates or a grid".into()));
        }
        let prefixes = if self.prefix.is_empty() { vec![None] } else { self.prefix.iter().map(Some).collect() };
        let total = q0s.len().saturating_mul(q1s.len()).saturating_mul(prefixes.len());
        if total > MAX_SWEEP {
            return Err(Error::BudgetExceeded { needed: total as u128, budget: MAX_SWEEP as u128 });
        }
        let mut out = Vec::with_capacity(total);
        for q0 in &q0s {
            for q1 in &q1s {
                for p in &prefixes {
                    let prefix = match p {
                        Some(p) => (*p).clone(),
                        None => Channel::identity(q1.output().clone()),
                    };
                    let aux = AuxSpec::new(q0.clone(), q1.clone(), prefix)?;
                    aux.x_alphabet().ensure_same(x, "prefix output vs channel input")?;
                    out.push(aux);
                }
            }
        }
        Ok(out)
    }
}

impl AuxFile {
    pub fn expand(&self, x: &Alphabet) -> Result<Vec<AuxSpec>> {
        let list = match self {
            AuxFile::Single(a) => vec![a.clone()],
            AuxFile::List { aux } => aux.clone(),
            AuxFile::Sweep { sweep } => return sweep.expand(x),
        };
        for a in &list {
            a.x_alphabet().ensure_same(x, "prefix output vs channel input")?;
        }
        Ok(list)
    }
}

/// Parameters of a random constant-composition code: type counts of the clouds (over
/// indexed U) and of the satellites given the cloud symbol (over X̃).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodeSpec {
    pub q0: Vec<u64>,
    pub q1: Vec<Vec<u64>>,
    pub junk: usize,
    pub secrets: usize,
    pub messages: usize,
    pub lambda: usize,
}

/// A complete problem: channels, optional prefix and auxiliary structure, rates, code
/// parameters, seeds and budgets.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawProblem")]
pub struct ProblemSpec {
    #[serde(rename = "W_b")]
    pub w_b: Channel,
    #[serde(rename = "W_e")]
    pub w_e: Channel,
    /// Ṽ: X̃ → X placed in front of both channels when simulating a code.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prefix: Option<Channel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aux: Option<AuxSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rates: Option<RateTuple>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub code: Option<CodeSpec>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u128>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
}

#[derive(Deserialize)]
struct RawProblem {
    #[serde(rename = "W_b")]
    w_b: Channel,
    #[serde(rename = "W_e")]
    w_e: Channel,
    #[serde(default)]
    prefix: Option<Channel>,
    #[serde(default)]
    aux: Option<AuxSpec>,
    #[serde(default)]
    rates: Option<RateTuple>,
    #[serde(default)]
    code: Option<CodeSpec>,
    #[serde(default)]
    seed: u64,
    #[serde(default)]
    budget: Option<u128>,
    #[serde(default)]
    samples: Option<u64>,
}

impl TryFrom<RawProblem> for ProblemSpec {
    type Error = Error;

    fn try_from(r: RawProblem) -> Result<Self> {
        let spec = ProblemSpec {
            w_b: r.w_b,
            w_e: r.w_e,
            prefix: r.prefix,
            aux: r.aux,
            rates: r.rates,
            code: r.code,
            seed: r.seed,
            budget: r.budget,
            samples: r.samples,
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl ProblemSpec {
    pub fn validate(&self) -> Result<()> {
        self.w_b.input().ensure_same(self.w_e.input(), "W_b and W_e inputs")?;
        if let Some(p) = &self.prefix {
            p.output().ensure_same(self.w_b.input(), "prefix output vs channel input")?;
        }
        if let Some(a) = &self.aux {
            a.x_alphabet().ensure_same(self.w_b.input(), "aux prefix output vs channel input")?;
        }
        if let Some(c) = &self.code {
            self.code_types(c)?;
        }
        Ok(())
    }

    pub fn budget(&self) -> u128 {
        self.budget.unwrap_or(DEFAULT_BUDGET)
    }

    /// The channels seen by the code's satellite symbols: Ṽ W_b and Ṽ W_e, or W_b and W_e.
    pub fn effective_channels(&self) -> Result<(Channel, Channel)> {
        match &self.prefix {
            Some(p) => Ok((compose(p, &self.w_b)?, compose(p, &self.w_e)?)),
            None => Ok((self.w_b.clone(), self.w_e.clone())),
        }
    }

    /// Satellite alphabet: the prefix input, or the channel input.
    pub fn xt_alphabet(&self) -> &Alphabet {
        self.prefix.as_ref().map_or(self.w_b.input(), Channel::input)
    }

    /// (Q0, Q1) as exact types for the code parameters.
    pub fn code_types(&self, c: &CodeSpec) -> Result<(TypeVector, CondType)> {
        let u = Alphabet::indexed(c.q0.len().max(1));
        let q0 = TypeVector::new(u.clone(), c.q0.clone())?;
        let q1 = CondType::new(u, self.xt_alphabet().clone(), c.q1.clone())?;
        q1.ensure_consistent(&q0)?;
        Ok((q0, q1))
    }
}

/// Inputs of the overlap experiment: exact types Q0 (over indexed U), Q1 (U → X) and V
/// (U × X → Z), the number of satellites J, the number of draws and δ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OverlapSpec {
    pub q0: Vec<u64>,
    pub q1: Vec<Vec<u64>>,
    pub v: Vec<Vec<u64>>,
    pub x_size: usize,
    pub z_size: usize,
    pub junk: usize,
    pub samples: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_delta")]
    pub delta: f64,
}

fn default_delta() -> f64 {
    0.1
}

impl OverlapSpec {
    pub fn types(&self) -> Result<(TypeVector, CondType, CondType)> {
        let u = Alphabet::indexed(self.q0.len().max(1));
        let x = Alphabet::indexed(self.x_size.max(1));
        let q0 = TypeVector::new(u.clone(), self.q0.clone())?;
        let q1 = CondType::new(u.clone(), x.clone(), self.q1.clone())?;
        let v = CondType::new(Alphabet::product(&u, &x), Alphabet::indexed(self.z_size.max(1)), self.v.clone())?;
        Ok((q0, q1, v))
    }
}
