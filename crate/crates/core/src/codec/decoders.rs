use super::codebook::Codebook;
use crate::measures::Weight;
use crate::types::{joint_counts, mutual_info_from_counts, Sequence};

/// Bob's decoder: maps an output sequence to `(m, l)` or declares no decision.
pub trait BobDecoder: Sync {
    fn decode(&self, cb: &Codebook, y: &Sequence) -> Option<(usize, usize)>;
}

/// Eve's public-message decoder.
pub trait EveDecoder: Sync {
    fn decode(&self, cb: &Codebook, z: &Sequence) -> Option<usize>;
}

/// Maximum empirical mutual information decoding with a uniqueness requirement.
#[derive(Clone, Copy, Debug, Default)]
pub struct Mmi;

impl BobDecoder for Mmi {
    fn decode(&self, cb: &Codebook, y: &Sequence) -> Option<(usize, usize)> {
        mmi_decode_bob(cb, y)
    }
}

impl EveDecoder for Mmi {
    fn decode(&self, cb: &Codebook, z: &Sequence) -> Option<usize> {
        mmi_decode_eve(cb, z)
    }
}

/// Closure-backed Bob decoder, e.g. the XOR rule of the junk-data example.
pub struct BobFn<F>(pub F);

impl<F: Fn(&Codebook, &Sequence) -> Option<(usize, usize)> + Sync> BobDecoder for BobFn<F> {
    fn decode(&self, cb: &Codebook, y: &Sequence) -> Option<(usize, usize)> {
        (self.0)(cb, y)
    }
}

/// Closure-backed Eve decoder.
pub struct EveFn<F>(pub F);

impl<F: Fn(&Codebook, &Sequence) -> Option<usize> + Sync> EveDecoder for EveFn<F> {
    fn decode(&self, cb: &Codebook, z: &Sequence) -> Option<usize> {
        (self.0)(cb, z)
    }
}

/// Index of the unique maximiser, or `None` on a tie for the maximum.
fn unique_argmax(scores: impl Iterator<Item = f64>) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    let mut tied = false;
    for (i, s) in scores.enumerate() {
        match best {
            None => best = Some((i, s)),
            Some((_, b)) if s.ties(&b) => tied = true,
            Some((_, b)) if s > b => {
                best = Some((i, s));
                tied = false;
            }
            _ => {}
        }
    }
    if tied {
        None
    } else {
        best.map(|(i, _)| i)
    }
}

fn empirical_mi(x: &Sequence, y: &Sequence) -> f64 {
    mutual_info_from_counts(&joint_counts(x, y), x.len() as u64)
}

/// Returns `(m, l)` of the unique codeword `c_{jlm}` maximising I(c ∧ y) over the
/// whole codebook; ties yield no decision.
pub fn mmi_decode_bob(cb: &Codebook, y: &Sequence) -> Option<(usize, usize)> {
    let nx = cb.x_alphabet().len();
    let combined = crate::measures::Alphabet::indexed(cb.u_alphabet().len() * nx);
    let scores = cb.indices().map(|(j, l, m)| {
        let c = Sequence::from_parts_unchecked(combined.clone(), cb.codeword_symbols(j, l, m));
        empirical_mi(&c, y)
    });
    let winner = unique_argmax(scores)?;
    let (_, l, m) = cb.indices().nth(winner)?;
    Some((m, l))
}

/// Returns the unique cloud centre `m` maximising I(u_m ∧ z); ties yield no decision.
pub fn mmi_decode_eve(cb: &Codebook, z: &Sequence) -> Option<usize> {
    unique_argmax(cb.clouds().iter().map(|u| empirical_mi(u, z)))
}
