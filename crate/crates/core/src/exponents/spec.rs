use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{direct_product, extend_input, Alphabet, Channel, Distribution};

/// Rates in nats per channel use.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawRates")]
pub struct RateTuple {
    #[serde(rename = "R_M")]
    pub r_m: f64,
    #[serde(rename = "R_L")]
    pub r_l: f64,
    #[serde(rename = "R_lambda")]
    pub r_lambda: f64,
    #[serde(rename = "R")]
    pub r: f64,
    #[serde(rename = "R_J")]
    pub r_j: f64,
}

#[derive(Deserialize)]
struct RawRates {
    #[serde(rename = "R_M", default)]
    r_m: f64,
    #[serde(rename = "R_L", default)]
    r_l: f64,
    #[serde(rename = "R_lambda", default)]
    r_lambda: f64,
    #[serde(rename = "R", default)]
    r: f64,
    #[serde(rename = "R_J", default)]
    r_j: f64,
}

impl TryFrom<RawRates> for RateTuple {
    type Error = Error;

    fn try_from(raw: RawRates) -> Result<Self> {
        RateTuple::new(raw.r_m, raw.r_l, raw.r_lambda, raw.r, raw.r_j)
    }
}

impl RateTuple {
    pub fn new(r_m: f64, r_l: f64, r_lambda: f64, r: f64, r_j: f64) -> Result<Self> {
        let all = [r_m, r_l, r_lambda, r, r_j];
        if all.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::InvalidRates(format!("rates must be finite and non-negative: {all:?}")));
        }
        if r > r_l {
            return Err(Error::InvalidRates(format!("R = {r} exceeds R_L = {r_l}")));
        }
        Ok(RateTuple { r_m, r_l, r_lambda, r, r_j })
    }
}

/// Auxiliary structure (U, X̃) → X: a distribution Q0 on U, a channel Q1: U → X̃ and a
/// prefix channel Ṽ: U × X̃ → X.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawAux")]
pub struct AuxSpec {
    q0: Distribution,
    q1: Channel,
    prefix: Channel,
}

#[derive(Deserialize)]
struct RawAux {
    q0: Distribution,
    q1: Channel,
    prefix: Channel,
}

impl TryFrom<RawAux> for AuxSpec {
    type Error = Error;

    fn try_from(raw: RawAux) -> Result<Self> {
        AuxSpec::new(raw.q0, raw.q1, raw.prefix)
    }
}

impl AuxSpec {
    /// `prefix` may take X̃ as input, in which case it is extended trivially over U.
    pub fn new(q0: Distribution, q1: Channel, prefix: Channel) -> Result<Self> {
        q0.alphabet().ensure_same(q1.input(), "Q0 alphabet vs Q1 input")?;
        let product = Alphabet::product(q1.input(), q1.output());
        let prefix = if prefix.input() == &product {
            prefix
        } else if prefix.input() == q1.output() {
            extend_input(q1.input(), &prefix)
        } else {
            return Err(Error::AlphabetMismatch(format!(
                "prefix input {} is neither X̃ = {} nor U×X̃",
                prefix.input(),
                q1.output()
            )));
        };
        Ok(AuxSpec { q0, q1, prefix })
    }

    /// |U| = 1, X̃ = X, Q1 = `input`, identity prefix.
    pub fn direct(input: &Distribution) -> Self {
        let u = Alphabet::indexed(1);
        let q0 = Distribution::point_mass(u.clone(), 0);
        let q1 = Channel::constant(u, input);
        let prefix = Channel::identity(input.alphabet().clone());
        AuxSpec::new(q0, q1, prefix).expect("alphabets agree by construction")
    }

    pub fn q0(&self) -> &Distribution {
        &self.q0
    }

    pub fn q1(&self) -> &Channel {
        &self.q1
    }

    /// Ṽ over the full input U × X̃.
    pub fn prefix(&self) -> &Channel {
        &self.prefix
    }

    pub fn u_alphabet(&self) -> &Alphabet {
        self.q1.input()
    }

    pub fn xt_alphabet(&self) -> &Alphabet {
        self.q1.output()
    }

    pub fn x_alphabet(&self) -> &Alphabet {
        self.prefix.output()
    }

    /// Q = Q0∘Q1 over U × X̃.
    pub fn joint(&self) -> Distribution {
        direct_product(&self.q0, &self.q1).expect("validated at construction")
    }
}

/// Exponents of Bob's error, Eve's error and Eve's list success.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentTriple {
    #[serde(rename = "E_b")]
    pub e_b: f64,
    #[serde(rename = "E_e")]
    pub e_e: f64,
    #[serde(rename = "S_e")]
    pub s_e: f64,
}
