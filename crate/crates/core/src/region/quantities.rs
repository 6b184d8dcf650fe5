use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponents::AuxSpec;
use crate::measures::{Channel, JointDistribution};

/// Tolerance of the chain-rule identity I(UX̃∧Y) = I(U∧Y) + I(X̃∧Y|U).
pub const CHAIN_RULE_TOL: f64 = 1e-10;

/// The five mutual informations (nats) that shape the rate region of one
/// auxiliary structure.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawQuantities")]
pub struct MIQuantities {
    /// I(X̃∧Y|U)
    pub i_xt_y_given_u: f64,
    /// I(UX̃∧Y)
    pub i_uxt_y: f64,
    /// I(U∧Y)
    pub i_u_y: f64,
    /// I(U∧Z)
    pub i_u_z: f64,
    /// I(X̃∧Z|U)
    pub i_xt_z_given_u: f64,
}

#[derive(Deserialize)]
struct RawQuantities {
    i_xt_y_given_u: f64,
    i_uxt_y: f64,
    i_u_y: f64,
    i_u_z: f64,
    i_xt_z_given_u: f64,
}

impl TryFrom<RawQuantities> for MIQuantities {
    type Error = Error;

    fn try_from(r: RawQuantities) -> Result<Self> {
        let q = MIQuantities {
            i_xt_y_given_u: r.i_xt_y_given_u,
            i_uxt_y: r.i_uxt_y,
            i_u_y: r.i_u_y,
            i_u_z: r.i_u_z,
            i_xt_z_given_u: r.i_xt_z_given_u,
        };
        q.validate()?;
        Ok(q)
    }
}

impl MIQuantities {
    /// Builds the quantities from the four free values; I(UX̃∧Y) follows from the chain rule.
    pub fn from_parts(i_u_y: f64, i_xt_y_given_u: f64, i_u_z: f64, i_xt_z_given_u: f64) -> Result<Self> {
        let q = MIQuantities { i_xt_y_given_u, i_uxt_y: i_u_y + i_xt_y_given_u, i_u_y, i_u_z, i_xt_z_given_u };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.i_xt_y_given_u, self.i_uxt_y, self.i_u_y, self.i_u_z, self.i_xt_z_given_u];
        if all.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::Precondition(format!("mutual informations must be finite and non-negative: {all:?}")));
        }
        if self.chain_rule_gap() > CHAIN_RULE_TOL * self.i_uxt_y.max(1.0) {
            return Err(Error::Precondition(format!(
                "chain rule violated: I(UX̃∧Y) = {} but I(U∧Y) + I(X̃∧Y|U) = {}",
                self.i_uxt_y,
                self.i_u_y + self.i_xt_y_given_u
            )));
        }
        Ok(())
    }

    pub fn chain_rule_gap(&self) -> f64 {
        (self.i_uxt_y - self.i_u_y - self.i_xt_y_given_u).abs()
    }

    /// I(UX̃∧Z) = I(U∧Z) + I(X̃∧Z|U).
    pub fn i_uxt_z(&self) -> f64 {
        self.i_u_z + self.i_xt_z_given_u
    }

    /// I(X̃∧Y|U) − I(X̃∧Z|U), the largest secret list rate.
    pub fn conditional_advantage(&self) -> f64 {
        self.i_xt_y_given_u - self.i_xt_z_given_u
    }
}

/// Flushes round-off negatives of an information measure to zero.
fn clean(x: f64) -> f64 {
    if x < 0.0 && x > -1e-12 {
        0.0
    } else {
        x
    }
}

const U: usize = 0;
const XT: usize = 1;
const Y: usize = 3;
const Z: usize = 4;

/// Evaluates the quantities on the joint law Q0(u)Q1(x̃|u)Ṽ(x|u,x̃)W_b(y|x)W_e(z|x).
pub fn mi_quantities(w_b: &Channel, w_e: &Channel, aux: &AuxSpec) -> Result<MIQuantities> {
    check_chain(w_b, w_e, aux)?;
    let joint = JointDistribution::from_distribution(aux.q0())
        .extend(aux.q1(), &[U])?
        .extend(aux.prefix(), &[U, XT])?
        .extend(w_b, &[2])?
        .extend(w_e, &[2])?;
    let i_u_y = clean(joint.mutual_info(&[U], &[Y]));
    let i_xt_y_given_u = clean(joint.conditional_mutual_info(&[XT], &[Y], &[U]));
    let i_uxt_y = clean(joint.mutual_info(&[U, XT], &[Y]));
    let i_u_z = clean(joint.mutual_info(&[U], &[Z]));
    let i_xt_z_given_u = clean(joint.conditional_mutual_info(&[XT], &[Z], &[U]));
    let q = MIQuantities { i_xt_y_given_u, i_uxt_y, i_u_y, i_u_z, i_xt_z_given_u };
    q.validate()?;
    Ok(q)
}

pub(crate) fn check_chain(w_b: &Channel, w_e: &Channel, aux: &AuxSpec) -> Result<()> {
    aux.x_alphabet().ensure_same(w_b.input(), "prefix output vs W_b input")?;
    aux.x_alphabet().ensure_same(w_e.input(), "prefix output vs W_e input")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{compose, cond_mutual_info, mix_rows, mutual_info, Alphabet, Distribution};
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_channel(rng: &mut ChaCha8Rng, input: Alphabet, output: Alphabet) -> Channel {
        let rows = (0..input.len())
            .map(|_| {
                let raw: Vec<f64> = (0..output.len()).map(|_| rng.random::<f64>() + 1e-3).collect();
                let s: f64 = raw.iter().sum();
                raw.iter().map(|x| x / s).collect()
            })
            .collect();
        Channel::new(input, output, rows).unwrap()
    }

    /// Channel-level formulas, independent of the joint tensor.
    fn second_path(w_b: &Channel, w_e: &Channel, aux: &AuxSpec) -> MIQuantities {
        let to_y = compose(aux.prefix(), w_b).unwrap();
        let to_z = compose(aux.prefix(), w_e).unwrap();
        MIQuantities {
            i_xt_y_given_u: cond_mutual_info(aux.q0(), aux.q1(), &to_y).unwrap(),
            i_uxt_y: mutual_info(&aux.joint(), &to_y).unwrap(),
            i_u_y: mutual_info(aux.q0(), &mix_rows(aux.q1(), &to_y).unwrap()).unwrap(),
            i_u_z: mutual_info(aux.q0(), &mix_rows(aux.q1(), &to_z).unwrap()).unwrap(),
            i_xt_z_given_u: cond_mutual_info(aux.q0(), aux.q1(), &to_z).unwrap(),
        }
    }

    #[test]
    fn identity_prefix_with_trivial_u() {
        let w_b = Channel::from_rows(&[vec![0.9, 0.1], vec![0.2, 0.8]]).unwrap();
        let w_e = Channel::from_rows(&[vec![0.6, 0.4], vec![0.4, 0.6]]).unwrap();
        let p = Distribution::from_probs(&[0.3, 0.7]).unwrap();
        let q = mi_quantities(&w_b, &w_e, &AuxSpec::direct(&p)).unwrap();
        assert_eq!(q.i_u_y, 0.0);
        assert_eq!(q.i_u_z, 0.0);
        assert!((q.i_xt_y_given_u - mutual_info(&p, &w_b).unwrap()).abs() < 1e-12);
        assert!((q.i_xt_z_given_u - mutual_info(&p, &w_e).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn prefix_dmc_hides_everything_from_eve() {
        // X = {0,1,e}; Bob sees X, Eve sees only whether X = e
        let xa = Alphabet::new(["0", "1", "e"]).unwrap();
        let w_b = Channel::identity(xa.clone());
        let w_e = Channel::new(xa.clone(), Alphabet::indexed(2), vec![vec![1.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]])
            .unwrap();
        let xt = Alphabet::indexed(2);
        let prefix = Channel::new(xt.clone(), xa, vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]).unwrap();
        let u = Alphabet::indexed(1);
        let q0 = Distribution::point_mass(u.clone(), 0);
        let q1 = Channel::constant(u, &Distribution::uniform(xt));
        let q = mi_quantities(&w_b, &w_e, &AuxSpec::new(q0, q1, prefix).unwrap()).unwrap();
        assert!(q.i_xt_z_given_u.abs() < 1e-15);
        assert!((q.i_xt_y_given_u - std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn two_paths_agree_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..25 {
            let (u, xt, x) = (Alphabet::indexed(2), Alphabet::indexed(3), Alphabet::indexed(2));
            let q0 = Distribution::new(u.clone(), random_channel(&mut rng, Alphabet::indexed(1), u.clone()).row(0).to_vec())
                .unwrap();
            let q1 = random_channel(&mut rng, u.clone(), xt.clone());
            let prefix = random_channel(&mut rng, Alphabet::product(&u, &xt), x.clone());
            let w_b = random_channel(&mut rng, x.clone(), Alphabet::indexed(3));
            let w_e = random_channel(&mut rng, x, Alphabet::indexed(2));
            let aux = AuxSpec::new(q0, q1, prefix).unwrap();
            let a = mi_quantities(&w_b, &w_e, &aux).unwrap();
            let b = second_path(&w_b, &w_e, &aux);
            for (l, r) in [
                (a.i_xt_y_given_u, b.i_xt_y_given_u),
                (a.i_uxt_y, b.i_uxt_y),
                (a.i_u_y, b.i_u_y),
                (a.i_u_z, b.i_u_z),
                (a.i_xt_z_given_u, b.i_xt_z_given_u),
            ] {
                assert!((l - r).abs() < 1e-10, "{l} vs {r}");
            }
            assert!(a.chain_rule_gap() < 1e-10);
        }
    }

    #[test]
    fn validation_and_serde() {
        assert!(MIQuantities::from_parts(0.1, 0.2, 0.3, 0.0).is_ok());
        assert!(MIQuantities::from_parts(-0.1, 0.2, 0.3, 0.0).is_err());
        let bad = r#"{"i_xt_y_given_u":0.2,"i_uxt_y":0.5,"i_u_y":0.1,"i_u_z":0.1,"i_xt_z_given_u":0.0}"#;
        assert!(serde_json::from_str::<MIQuantities>(bad).is_err());
        let q = MIQuantities::from_parts(0.1, 0.2, 0.3, 0.05).unwrap();
        let back: MIQuantities = serde_json::from_str(&serde_json::to_string(&q).unwrap()).unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn alphabet_mismatch_is_reported() {
        let w = Channel::identity(Alphabet::indexed(3));
        let p = Distribution::uniform(Alphabet::indexed(2));
        assert!(mi_quantities(&w, &w, &AuxSpec::direct(&p)).is_err());
    }
}
