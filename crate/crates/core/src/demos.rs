//! Small worked instances, shared by the command-line `examples` subcommand,
//! the runnable examples and the tests.

use serde::{Deserialize, Serialize};

use crate::codec::{
    exact_fault_probabilities, exact_fault_probabilities_with, optimal_list_attack, success_probability_guessing,
    BobFn, Codebook, FaultReport, Mmi, DEFAULT_BUDGET,
};
use crate::error::Result;
use crate::exponents::AuxSpec;
use crate::io::ChannelsFile;
use crate::measures::{compose, Alphabet, Channel, Distribution, Prob};
use crate::region::{mi_quantities, AuxRegion, MIQuantities};
use crate::types::Sequence;

/// Channels of the shipped rate-region example.
pub const KORNER_STYLE_CHANNELS: &str = include_str!("../examples/data/korner_style_channels.json");
/// Auxiliary structure of the shipped rate-region example.
pub const KORNER_STYLE_AUX: &str = include_str!("../examples/data/korner_style_aux.json");

/// Two uses of a noiseless channel to Bob and an erasure channel to Eve; one junk bit j
/// and one secret bit l sent as (j, j ⊕ l).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JunkDataDemo {
    pub code: Codebook,
    pub w_b: Channel,
    pub w_e: Channel,
    /// Eve's single guess for each output z, in lexicographic order of z.
    pub guesses: Vec<(Sequence, usize)>,
    /// Bob decodes y⁽¹⁾ ⊕ y⁽²⁾.
    pub xor_bob: FaultReport,
    /// Bob uses MMI decoding, which cannot separate the two junk values.
    pub mmi_bob: FaultReport,
}

pub fn junk_data() -> Result<JunkDataDemo> {
    let bits = Alphabet::indexed(2);
    let x = |s: &str| Sequence::parse(bits.clone(), s);
    let code = Codebook::without_clouds(vec![x("00")?, x("11")?, x("01")?, x("10")?], 2, 2)?;
    let w_b = Channel::identity(bits.clone());
    let w_e = Channel::parse(bits, Alphabet::new(["0", "1", "e"])?, &[&["1/2", "0", "1/2"], &["0", "1/2", "1/2"]])?;
    let attack = optimal_list_attack(&code, &w_e, 1)?;
    let guesses = crate::types::all_sequences(w_e.output(), 2).map(|z| {
        let g = attack.list(&z)[0];
        (z, g)
    });
    let guesses = guesses.collect();
    let xor = BobFn(|_: &Codebook, y: &Sequence| Some((0, y.symbols()[0] ^ y.symbols()[1])));
    let xor_bob = exact_fault_probabilities_with(&code, &w_b, &w_e, &attack, &xor, &Mmi, DEFAULT_BUDGET)?;
    let mmi_bob = exact_fault_probabilities(&code, &w_b, &w_e, &attack)?;
    Ok(JunkDataDemo { code, w_b, w_e, guesses, xor_bob, mmi_bob })
}

/// Guessing a secret S with and without the observation Z, for one and two guesses.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GuessingDemo {
    pub prior: Distribution,
    pub marginal: Distribution,
    /// P_{S|Z}, indexed by z.
    pub posterior: Channel,
    /// (guesses, without observation, with observation)
    pub success: Vec<(usize, Prob, Prob)>,
}

pub fn perfect_secrecy() -> Result<GuessingDemo> {
    let s = Alphabet::indexed(2);
    let z = Alphabet::indexed(2);
    let marginal = Distribution::parse(z.clone(), &["5/8", "3/8"])?;
    let posterior = Channel::parse(z, s.clone(), &[&["4/5", "1/5"], &["2/3", "1/3"]])?;
    let prior = Distribution::parse(s, &["3/4", "1/4"])?;
    let success = (1..=2)
        .map(|k| success_probability_guessing(&prior, &posterior, &marginal, k).map(|(a, b)| (k, a, b)))
        .collect::<Result<_>>()?;
    Ok(GuessingDemo { prior, marginal, posterior, success })
}

/// A prefix channel Ṽ: X̃ → X = {00,01,10,11} that makes Eve's output independent of X̃
/// while Bob still reads X̃ noiselessly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrefixDmcDemo {
    pub prefix: Channel,
    pub w_b: Channel,
    pub w_e: Channel,
    pub composed_b: Channel,
    pub composed_e: Channel,
    /// Uniform X̃ through the prefix.
    pub with_prefix: MIQuantities,
    /// Uniform X without a prefix.
    pub without_prefix: MIQuantities,
}

pub fn prefix_dmc() -> Result<PrefixDmcDemo> {
    let xt = Alphabet::indexed(2);
    let x = Alphabet::new(["00", "01", "10", "11"])?;
    let prefix = Channel::parse(xt.clone(), x.clone(), &[&["1/3", "2/3", "0", "0"], &["0", "0", "2/3", "1/3"]])?;
    let w_b = Channel::parse(x.clone(), Alphabet::indexed(2), &[&["1", "0"], &["1", "0"], &["0", "1"], &["0", "1"]])?;
    let w_e = Channel::parse(x.clone(), Alphabet::indexed(3), &[
        &["1", "0", "0"],
        &["0", "1/2", "1/2"],
        &["1/2", "1/2", "0"],
        &["0", "0", "1"],
    ])?;
    let composed_b = compose(&prefix, &w_b)?;
    let composed_e = compose(&prefix, &w_e)?;
    let u = Alphabet::indexed(1);
    let q1 = Channel::constant(u.clone(), &Distribution::parse(xt, &["1/2", "1/2"])?);
    let aux = AuxSpec::new(Distribution::point_mass(u, 0), q1, prefix.clone())?;
    let with_prefix = mi_quantities(&w_b, &w_e, &aux)?;
    let without_prefix = mi_quantities(&w_b, &w_e, &AuxSpec::direct(&Distribution::uniform(x)))?;
    Ok(PrefixDmcDemo { prefix, w_b, w_e, composed_b, composed_e, with_prefix, without_prefix })
}

/// The shipped example in which every rate constraint family is a facet.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionDemo {
    pub channels: ChannelsFile,
    pub aux: AuxSpec,
    pub region: AuxRegion,
}

pub fn korner_style_region() -> Result<RegionDemo> {
    let channels: ChannelsFile = serde_json::from_str(KORNER_STYLE_CHANNELS)?;
    let aux: AuxSpec = serde_json::from_str(KORNER_STYLE_AUX)?;
    let region = AuxRegion::from_quantities(mi_quantities(&channels.w_b, &channels.w_e, &aux)?)?;
    Ok(RegionDemo { channels, aux, region })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> Prob {
        Prob::Exact(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn junk_data_values() {
        let d = junk_data().unwrap();
        assert_eq!(d.xor_bob.e_b, q(0, 1));
        assert_eq!(d.xor_bob.s_e, q(5, 8));
        assert_eq!(d.mmi_bob.e_b, q(1, 1));
        assert_eq!(d.guesses.len(), 9);
    }

    #[test]
    fn guessing_values() {
        let d = perfect_secrecy().unwrap();
        assert_eq!(d.success[0], (1, q(3, 4), q(3, 4)));
        assert_eq!(d.success[1], (2, q(1, 1), q(1, 1)));
    }

    #[test]
    fn prefix_values() {
        let d = prefix_dmc().unwrap();
        let third = BigRational::new(1.into(), 3.into());
        let exact = d.composed_e.exact().unwrap();
        assert!(exact.iter().flatten().all(|p| *p == third));
        assert_eq!(d.composed_b.exact().unwrap(), Channel::identity(Alphabet::indexed(2)).exact().unwrap());
        assert!(d.with_prefix.i_xt_z_given_u.abs() < 1e-15);
        assert!((d.with_prefix.i_xt_y_given_u - std::f64::consts::LN_2).abs() < 1e-12);
        assert!(d.without_prefix.i_xt_z_given_u > 0.1);
    }

    #[test]
    fn shipped_region_has_five_facets() {
        let d = korner_style_region().unwrap();
        assert!(d.region.all_families_irredundant(), "{:?}", d.region.irredundant);
        assert!(d.channels.note.is_some());
    }
}
