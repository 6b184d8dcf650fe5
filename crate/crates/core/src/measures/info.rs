//! Information measures in nats, with the conventions `0 ln 0 = 0` and `0 ln(0/0) = 0`.

use num_rational::BigRational;
use num_traits::Zero;

use super::alphabet::Alphabet;
use super::channel::Channel;
use super::distribution::Distribution;
use super::exact::Weight;
use super::joint::JointDistribution;
use crate::error::{Error, Result};

/// `-p ln p`, zero at `p = 0`.
#[inline]
pub(crate) fn neg_p_ln_p(p: f64) -> f64 {
    if p > 0.0 {
        -p * p.ln()
    } else {
        0.0
    }
}

pub(crate) fn entropy_of(probs: &[f64]) -> f64 {
    probs.iter().map(|&p| neg_p_ln_p(p)).sum()
}

fn ensure_input(q: &Distribution, v: &Channel) -> Result<()> {
    q.alphabet().ensure_same(v.input(), "distribution vs channel input")
}

pub fn entropy(p: &Distribution) -> f64 {
    entropy_of(p.probs())
}

/// H(V|Q) = Σ Q(x) V(y|x) ln 1/V(y|x).
pub fn cond_entropy(q: &Distribution, v: &Channel) -> Result<f64> {
    ensure_input(q, v)?;
    Ok(q.probs().iter().zip(v.rows()).map(|(&qx, row)| qx * entropy_of(row)).sum())
}

/// D(V‖W|Q). Returns `f64::INFINITY` when some `Q(x)V(y|x) > 0` has `W(y|x) = 0`.
pub fn divergence(v: &Channel, w: &Channel, q: &Distribution) -> Result<f64> {
    ensure_input(q, v)?;
    v.input().ensure_same(w.input(), "divergence inputs")?;
    v.output().ensure_same(w.output(), "divergence outputs")?;
    let mut total = 0.0;
    for ((&qx, vrow), wrow) in q.probs().iter().zip(v.rows()).zip(w.rows()) {
        if qx == 0.0 {
            continue;
        }
        for (&vy, &wy) in vrow.iter().zip(wrow) {
            if vy == 0.0 {
                continue;
            }
            if wy == 0.0 {
                return Ok(f64::INFINITY);
            }
            total += qx * vy * (vy / wy).ln();
        }
    }
    Ok(total.max(0.0))
}

/// The output marginal QV.
pub fn marginal(q: &Distribution, v: &Channel) -> Result<Distribution> {
    ensure_input(q, v)?;
    let probs = vec_mat(q.probs(), v.rows());
    let exact = match (q.exact(), v.exact()) {
        (Some(qe), Some(ve)) => Some(vec_mat(qe, ve)),
        _ => None,
    };
    Ok(Distribution::from_parts_unchecked(v.output().clone(), probs, exact))
}

/// I(Q,V) = H(QV) − H(V|Q).
pub fn mutual_info(q: &Distribution, v: &Channel) -> Result<f64> {
    let h_out = entropy(&marginal(q, v)?);
    let h_cond = cond_entropy(q, v)?;
    Ok((h_out - h_cond).max(0.0))
}

/// The direct product Q0∘Q1 as a distribution over `U × X` (row-major).
pub fn direct_product(q0: &Distribution, q1: &Channel) -> Result<Distribution> {
    ensure_input(q0, q1)?;
    let alphabet = Alphabet::product(q0.alphabet(), q1.output());
    let probs = q0
        .probs()
        .iter()
        .zip(q1.rows())
        .flat_map(|(&p, row)| row.iter().map(move |&w| p * w))
        .collect();
    let exact = match (q0.exact(), q1.exact()) {
        (Some(pe), Some(we)) => Some(
            pe.iter()
                .zip(we)
                .flat_map(|(p, row)| row.iter().map(move |w| p * w))
                .collect(),
        ),
        _ => None,
    };
    Ok(Distribution::from_parts_unchecked(alphabet, probs, exact))
}

fn ensure_product_input(q0: &Distribution, q1: &Channel, v: &Channel) -> Result<()> {
    ensure_input(q0, q1)?;
    let expected = Alphabet::product(q0.alphabet(), q1.output());
    expected.ensure_same(v.input(), "channel input must be the product U×X")
}

/// I(Q1,V|Q0) = H(Q1|Q0) − H(V|Q0∘Q1), for V a channel from `U × X`.
pub fn cond_mutual_info(q0: &Distribution, q1: &Channel, v: &Channel) -> Result<f64> {
    ensure_product_input(q0, q1, v)?;
    let q = direct_product(q0, q1)?;
    // H(Q1|Q0) here is the conditional entropy of the mixture Q1V given U
    let mixed = mix_rows(q1, v)?;
    let h_out_given_u = cond_entropy(q0, &mixed)?;
    Ok((h_out_given_u - cond_entropy(&q, v)?).max(0.0))
}

/// The channel `U → Z` given by (Q1V)(z|u) = Σ_x Q1(x|u) V(z|u,x).
pub fn mix_rows(q1: &Channel, v: &Channel) -> Result<Channel> {
    let nx = q1.output().len();
    if v.input().len() != q1.input().len() * nx {
        return Err(Error::AlphabetMismatch(format!(
            "channel has {} inputs, expected {}",
            v.input().len(),
            q1.input().len() * nx
        )));
    }
    let nz = v.output().len();
    let mix = |q1rows: &[Vec<f64>], vrows: &[Vec<f64>]| -> Vec<Vec<f64>> {
        q1rows
            .iter()
            .enumerate()
            .map(|(u, row)| {
                let mut out = vec![0.0; nz];
                for (x, &w) in row.iter().enumerate() {
                    for (z, o) in out.iter_mut().enumerate() {
                        *o += w * vrows[u * nx + x][z];
                    }
                }
                out
            })
            .collect()
    };
    let rows = mix(q1.rows(), v.rows());
    let exact = match (q1.exact(), v.exact()) {
        (Some(qe), Some(ve)) => Some(
            qe.iter()
                .enumerate()
                .map(|(u, row)| {
                    (0..nz)
                        .map(|z| {
                            row.iter()
                                .enumerate()
                                .fold(BigRational::zero(), |acc, (x, w)| acc + w * &ve[u * nx + x][z])
                        })
                        .collect()
                })
                .collect(),
        ),
        _ => None,
    };
    Ok(Channel::from_parts_unchecked(q1.input().clone(), v.output().clone(), rows, exact))
}

/// The trivial extension W(y|u,x) := W(y|x) over the input alphabet `U × X`.
pub fn extend_input(u: &Alphabet, w: &Channel) -> Channel {
    let input = Alphabet::product(u, w.input());
    let rows = (0..u.len()).flat_map(|_| w.rows().iter().cloned()).collect();
    let exact = w.exact().map(|ex| (0..u.len()).flat_map(|_| ex.iter().cloned()).collect());
    Channel::from_parts_unchecked(input, w.output().clone(), rows, exact)
}

/// The joint law of (input, output) under Q and V.
pub fn joint(q: &Distribution, v: &Channel) -> Result<JointDistribution> {
    ensure_input(q, v)?;
    JointDistribution::from_distribution(q).extend(v, &[0])
}

/// Posterior channel (indexed by output) and output marginal.
/// Rows for zero-probability outputs are uniform.
pub fn bayes(prior: &Distribution, forward: &Channel) -> Result<(Channel, Distribution)> {
    ensure_input(prior, forward)?;
    let out = marginal(prior, forward)?;
    let rows = bayes_rows(prior.probs(), forward.rows(), out.probs());
    let exact = match (prior.exact(), forward.exact(), out.exact()) {
        (Some(p), Some(f), Some(m)) => Some(bayes_rows(p, f, m)),
        _ => None,
    };
    let posterior = match exact {
        Some(ex) => Channel::from_parts_unchecked(
            forward.output().clone(),
            prior.alphabet().clone(),
            ex.iter().map(|r| r.iter().map(Weight::to_f64).collect()).collect(),
            Some(ex),
        ),
        None => Channel::from_float_rows_normalized(
            forward.output().clone(),
            prior.alphabet().clone(),
            rows,
        ),
    };
    Ok((posterior, out))
}

fn bayes_rows<T: Weight>(prior: &[T], forward: &[Vec<T>], out: &[T]) -> Vec<Vec<T>> {
    let k = prior.len() as u64;
    out.iter()
        .enumerate()
        .map(|(y, my)| {
            if my.is_zero() {
                vec![T::ratio(1, k); prior.len()]
            } else {
                prior
                    .iter()
                    .zip(forward)
                    .map(|(px, row)| px.clone() * row[y].clone() / my.clone())
                    .collect()
            }
        })
        .collect()
}

/// max over subsets A of P(A) − Q(A), i.e. half the L1 distance.
pub fn variation_distance(p: &Distribution, q: &Distribution) -> Result<f64> {
    p.alphabet().ensure_same(q.alphabet(), "variation distance")?;
    Ok(p.probs().iter().zip(q.probs()).map(|(a, b)| (a - b).max(0.0)).sum())
}

/// Matrix product: first `prefix`, then `w`.
pub fn compose(prefix: &Channel, w: &Channel) -> Result<Channel> {
    prefix.output().ensure_same(w.input(), "composition")?;
    let rows = mat_mat(prefix.rows(), w.rows());
    let exact = match (prefix.exact(), w.exact()) {
        (Some(a), Some(b)) => Some(mat_mat(a, b)),
        _ => None,
    };
    Ok(Channel::from_parts_unchecked(prefix.input().clone(), w.output().clone(), rows, exact))
}

fn vec_mat<T: Weight>(v: &[T], m: &[Vec<T>]) -> Vec<T> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| v.iter().zip(m).fold(T::zero(), |acc, (a, row)| acc + a.clone() * row[j].clone()))
        .collect()
}

fn mat_mat<T: Weight>(a: &[Vec<T>], b: &[Vec<T>]) -> Vec<Vec<T>> {
    a.iter().map(|row| vec_mat(row, b)).collect()
}

/// Product of marginals of (Q, V) as a channel with identical rows, used by oracles.
pub fn independent_channel(q: &Distribution, v: &Channel) -> Result<Channel> {
    Ok(Channel::constant(v.input().clone(), &marginal(q, v)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    fn d(p: &[f64]) -> Distribution {
        Distribution::from_probs(p).unwrap()
    }

    fn ch(rows: &[&[f64]]) -> Channel {
        Channel::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn bsc(p: f64) -> Channel {
        ch(&[&[1.0 - p, p], &[p, 1.0 - p]])
    }

    #[test]
    fn entropy_simple_cases() {
        assert!((entropy(&d(&[0.5, 0.5])) - LN_2).abs() < 1e-15);
        assert_eq!(entropy(&d(&[0.0, 1.0, 0.0])), 0.0);
        // 3/4 ln(4/3) + 1/4 ln 4, digits from an independent 50-digit evaluation
        let expected = 0.562_335_144_618_808_5;
        assert!((entropy(&d(&[0.75, 0.25])) - expected).abs() < 1e-15);
    }

    #[test]
    fn zero_log_zero_conventions() {
        // 0 ln 0 = 0 inside H; 0 ln(0/0) = 0 inside D
        let v = ch(&[&[1.0, 0.0], &[0.0, 1.0]]);
        assert_eq!(cond_entropy(&d(&[0.5, 0.5]), &v).unwrap(), 0.0);
        assert_eq!(divergence(&v, &v, &d(&[0.5, 0.5])).unwrap(), 0.0);
    }

    #[test]
    fn cond_entropy_cases() {
        let v = bsc(0.25);
        let row = entropy(&d(&[0.75, 0.25]));
        assert!((cond_entropy(&d(&[1.0, 0.0]), &v).unwrap() - row).abs() < 1e-15);
        assert!((cond_entropy(&d(&[0.5, 0.5]), &v).unwrap() - row).abs() < 1e-15);
        let wrong = Distribution::new(Alphabet::new(["a", "b"]).unwrap(), vec![0.5, 0.5]).unwrap();
        assert!(cond_entropy(&wrong, &v).is_err());
    }

    #[test]
    fn divergence_infinite_when_not_absolutely_continuous() {
        let v = bsc(0.1);
        let w = ch(&[&[1.0, 0.0], &[0.1, 0.9]]);
        assert_eq!(divergence(&v, &w, &d(&[0.5, 0.5])).unwrap(), f64::INFINITY);
        // no mass on the offending row → finite
        assert!(divergence(&v, &w, &d(&[0.0, 1.0])).unwrap().is_finite());
    }

    #[test]
    fn divergence_matches_term_sum() {
        let v = ch(&[&[0.3, 0.7], &[0.6, 0.4]]);
        let w = ch(&[&[0.5, 0.5], &[0.2, 0.8]]);
        let q = d(&[0.35, 0.65]);
        let oracle = 0.35 * (0.3 * (0.3f64 / 0.5).ln() + 0.7 * (0.7f64 / 0.5).ln())
            + 0.65 * (0.6 * (0.6f64 / 0.2).ln() + 0.4 * (0.4f64 / 0.8).ln());
        assert!((divergence(&v, &w, &q).unwrap() - oracle).abs() < 1e-12);
    }

    #[test]
    fn mutual_info_cases() {
        let same = ch(&[&[0.2, 0.8], &[0.2, 0.8]]);
        assert!(mutual_info(&d(&[0.3, 0.7]), &same).unwrap().abs() < 1e-15);
        let id = Channel::identity(Alphabet::indexed(3));
        let u3 = Distribution::uniform(Alphabet::indexed(3));
        assert!((mutual_info(&u3, &id).unwrap() - 3f64.ln()).abs() < 1e-14);
        // 3×2 instance against D(joint ‖ product of marginals)
        let v = ch(&[&[0.1, 0.9], &[0.5, 0.5], &[0.8, 0.2]]);
        let q = d(&[0.2, 0.3, 0.5]);
        let indep = independent_channel(&q, &v).unwrap();
        let oracle = divergence(&v, &indep, &q).unwrap();
        assert!((mutual_info(&q, &v).unwrap() - oracle).abs() < 1e-12);
    }

    #[test]
    fn cond_mutual_info_cases() {
        let u = Alphabet::indexed(2);
        let x = Alphabet::indexed(2);
        let ux = Alphabet::product(&u, &x);
        let q0 = d(&[0.4, 0.6]);
        let q1 = ch(&[&[0.3, 0.7], &[0.9, 0.1]]);
        // V depends on u only
        let v = ch(&[&[0.2, 0.8], &[0.2, 0.8], &[0.6, 0.4], &[0.6, 0.4]]).with_input(ux.clone()).unwrap();
        assert!(cond_mutual_info(&q0, &q1, &v).unwrap().abs() < 1e-14);

        // per-u decomposition oracle
        let v = ch(&[&[0.2, 0.8], &[0.7, 0.3], &[0.6, 0.4], &[0.05, 0.95]]).with_input(ux).unwrap();
        let mut oracle = 0.0;
        for uu in 0..2 {
            let row_q = q1.row_distribution(uu);
            let vu = Channel::from_rows(&[v.row(2 * uu).to_vec(), v.row(2 * uu + 1).to_vec()]).unwrap();
            oracle += q0.prob(uu) * mutual_info(&row_q, &vu).unwrap();
        }
        assert!((cond_mutual_info(&q0, &q1, &v).unwrap() - oracle).abs() < 1e-12);

        // |U| = 1 reduces to plain mutual information
        let u1 = Alphabet::indexed(1);
        let q0 = Distribution::point_mass(u1.clone(), 0);
        let q1 = ch(&[&[0.25, 0.75]]);
        let w = bsc(0.1);
        let vext = extend_input(&u1, &w);
        let direct = mutual_info(&q1.row_distribution(0), &w).unwrap();
        assert!((cond_mutual_info(&q0, &q1, &vext).unwrap() - direct).abs() < 1e-14);
    }

    #[test]
    fn marginal_cases() {
        let q = d(&[0.2, 0.8]);
        let m = marginal(&q, &Channel::identity(Alphabet::indexed(2))).unwrap();
        assert!(m.probs().iter().zip(q.probs()).all(|(a, b)| (a - b).abs() < 1e-15));
        let c = Channel::constant(Alphabet::indexed(2), &d(&[0.1, 0.6, 0.3]));
        let m = marginal(&q, &c).unwrap();
        assert!((m.prob(1) - 0.6).abs() < 1e-15);
        let v = ch(&[&[0.1, 0.9], &[0.7, 0.3]]);
        let m = marginal(&q, &v).unwrap();
        assert!((m.prob(0) - (0.2 * 0.1 + 0.8 * 0.7)).abs() < 1e-15);
    }

    #[test]
    fn bayes_inverts_the_guessing_example() {
        let s = Alphabet::indexed(2);
        let z = Alphabet::indexed(2);
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        // observation marginal and posterior of the secret given the observation
        let p_z = Distribution::parse(z.clone(), &["5/8", "3/8"]).unwrap();
        let p_s_given_z = Channel::parse(z, s, &[&["4/5", "1/5"], &["2/3", "1/3"]]).unwrap();
        let (p_z_given_s, p_s) = bayes(&p_z, &p_s_given_z).unwrap();
        assert_eq!(p_s.exact().unwrap(), &[q(3, 4), q(1, 4)]);
        assert_eq!(p_z_given_s.exact().unwrap()[0], vec![q(2, 3), q(1, 3)]);
        assert_eq!(p_z_given_s.exact().unwrap()[1], vec![q(1, 2), q(1, 2)]);
        // and back again
        let (post, out) = bayes(&p_s, &p_z_given_s).unwrap();
        assert_eq!(out, p_z);
        assert_eq!(post, p_s_given_z);
    }

    #[test]
    fn bayes_zero_output_row_is_uniform() {
        let prior = d(&[0.5, 0.5]);
        let fwd = ch(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]]);
        let (post, out) = bayes(&prior, &fwd).unwrap();
        assert_eq!(out.prob(2), 0.0);
        assert_eq!(post.row(2), &[0.5, 0.5]);
        let (post, _) = bayes(&prior, &Channel::identity(Alphabet::indexed(2))).unwrap();
        assert_eq!(post.rows(), Channel::identity(Alphabet::indexed(2)).rows());
    }

    #[test]
    fn variation_distance_cases() {
        let p = d(&[0.2, 0.8]);
        assert_eq!(variation_distance(&p, &p).unwrap(), 0.0);
        assert_eq!(variation_distance(&d(&[1.0, 0.0]), &d(&[0.0, 1.0])).unwrap(), 1.0);
        let a = d(&[0.1, 0.4, 0.5]);
        let b = d(&[0.3, 0.3, 0.4]);
        let half_l1: f64 = 0.5 * a.probs().iter().zip(b.probs()).map(|(x, y)| (x - y).abs()).sum::<f64>();
        assert!((variation_distance(&a, &b).unwrap() - half_l1).abs() < 1e-15);
    }

    #[test]
    fn compose_identity_and_exactness() {
        let w = Channel::parse(Alphabet::indexed(2), Alphabet::indexed(3), &[&["1/2", "1/2", "0"], &["0", "1/3", "2/3"]])
            .unwrap();
        let c = compose(&Channel::identity(Alphabet::indexed(2)), &w).unwrap();
        assert_eq!(c, w);
        assert!(compose(&w, &w).is_err());
    }
}
