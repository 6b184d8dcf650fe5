//! Random instances and independent reference computations shared by the
//! integration tests and the acceptance harness.

#![allow(dead_code)]

use rand::RngExt;
use rand_chacha::ChaCha8Rng;
use wiretap::exponents::AuxSpec;
use wiretap::measures::{Alphabet, Channel, Distribution};

/// A random row with a tendency towards peaked distributions.
pub fn random_row(rng: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..k).map(|_| rng.random::<f64>().powi(3) + 1e-3).collect();
    let s: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / s).collect()
}

pub fn random_channel(rng: &mut ChaCha8Rng, input: usize, output: usize) -> Channel {
    let rows = (0..input).map(|_| random_row(rng, output)).collect();
    Channel::new(Alphabet::indexed(input), Alphabet::indexed(output), rows).unwrap()
}

pub fn random_distribution(rng: &mut ChaCha8Rng, k: usize) -> Distribution {
    Distribution::new(Alphabet::indexed(k), random_row(rng, k)).unwrap()
}

/// Random (U, X̃) → X with the given alphabet sizes and a random prefix over U × X̃.
pub fn random_aux(rng: &mut ChaCha8Rng, u: usize, xt: usize, x: usize) -> AuxSpec {
    let q0 = random_distribution(rng, u);
    let q1 = random_channel(rng, u, xt);
    let prefix = random_channel(rng, u * xt, x)
        .with_input(Alphabet::product(&Alphabet::indexed(u), &Alphabet::indexed(xt)))
        .unwrap();
    AuxSpec::new(q0, q1, prefix).unwrap()
}

/// Reference values (I(U∧Y), I(X̃∧Y|U)) computed from the explicit joint law
/// Q0(u)Q1(x̃|u) Σ_x Ṽ(x|u,x̃)W(y|x), without the library's information measures.
pub fn reference_mi(aux: &AuxSpec, w: &Channel) -> (f64, f64) {
    let (nu, nxt, ny) = (aux.u_alphabet().len(), aux.xt_alphabet().len(), w.output().len());
    let mut p = vec![vec![vec![0.0; ny]; nxt]; nu];
    for u in 0..nu {
        for t in 0..nxt {
            for x in 0..w.input().len() {
                let pre = aux.prefix().entry(u * nxt + t, x);
                for y in 0..ny {
                    p[u][t][y] += aux.q0().prob(u) * aux.q1().entry(u, t) * pre * w.entry(x, y);
                }
            }
        }
    }
    let p_u: Vec<f64> = p.iter().map(|a| a.iter().flatten().sum()).collect();
    let p_y: Vec<f64> = (0..ny).map(|y| p.iter().map(|a| a.iter().map(|b| b[y]).sum::<f64>()).sum()).collect();
    let p_uy: Vec<Vec<f64>> = p.iter().map(|a| (0..ny).map(|y| a.iter().map(|b| b[y]).sum()).collect()).collect();
    let mut i_u_y = 0.0;
    for u in 0..nu {
        for y in 0..ny {
            if p_uy[u][y] > 0.0 {
                i_u_y += p_uy[u][y] * (p_uy[u][y] / (p_u[u] * p_y[y])).ln();
            }
        }
    }
    let mut i_xt_y_u = 0.0;
    for u in 0..nu {
        for t in 0..nxt {
            let p_ut: f64 = p[u][t].iter().sum();
            for y in 0..ny {
                let v = p[u][t][y];
                if v > 0.0 {
                    i_xt_y_u += v * (v * p_u[u] / (p_ut * p_uy[u][y])).ln();
                }
            }
        }
    }
    (i_u_y, i_xt_y_u)
}
