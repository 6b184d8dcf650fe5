use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{Alphabet, Channel, Weight};
use crate::types::{CondType, Sequence, TypeVector};

/// Codewords `c_{jlm} = u_m ∘ x_{jlm}` indexed by junk `j`, secret `l` and public
/// message `m` (all 0-based).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Codebook {
    u_alphabet: Alphabet,
    x_alphabet: Alphabet,
    n: usize,
    junk: usize,
    secrets: usize,
    messages: usize,
    clouds: Vec<Sequence>,
    satellites: Vec<Sequence>,
    composition: Option<(TypeVector, CondType)>,
}

fn shuffled_multiset(counts: &[u64], rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut items: Vec<usize> =
        counts.iter().enumerate().flat_map(|(s, &c)| std::iter::repeat_n(s, c as usize)).collect();
    items.shuffle(rng);
    items
}

/// Draws `u` uniformly from T_{Q0}.
pub(crate) fn sample_type_class(q0: &TypeVector, rng: &mut ChaCha8Rng) -> Sequence {
    Sequence::new(q0.alphabet().clone(), shuffled_multiset(q0.counts(), rng)).expect("n ≥ 1")
}

/// Draws `x` uniformly from the shell T_{Q1}(u).
pub(crate) fn sample_shell(u: &Sequence, q1: &CondType, rng: &mut ChaCha8Rng) -> Sequence {
    let mut per_symbol: Vec<std::vec::IntoIter<usize>> =
        q1.counts().iter().map(|row| shuffled_multiset(row, rng).into_iter()).collect();
    let symbols = u.symbols().iter().map(|&a| per_symbol[a].next().expect("row totals match")).collect();
    Sequence::new(q1.output().clone(), symbols).expect("n ≥ 1")
}

impl Codebook {
    /// Builds a codebook from explicit codewords without requiring constant composition.
    /// `satellites` is ordered by `(m, l, j)` with `j` fastest.
    pub fn from_codewords(
        clouds: Vec<Sequence>,
        satellites: Vec<Sequence>,
        junk: usize,
        secrets: usize,
    ) -> Result<Self> {
        let messages = clouds.len();
        if messages == 0 || junk == 0 || secrets == 0 {
            return Err(Error::Precondition("J, L and M must be positive".into()));
        }
        if satellites.len() != messages * secrets * junk {
            return Err(Error::Precondition(format!(
                "{} satellites for J·L·M = {}",
                satellites.len(),
                messages * secrets * junk
            )));
        }
        let n = clouds[0].len();
        let u_alphabet = clouds[0].alphabet().clone();
        let x_alphabet = satellites[0].alphabet().clone();
        if clouds.iter().any(|c| c.len() != n || c.alphabet() != &u_alphabet)
            || satellites.iter().any(|x| x.len() != n || x.alphabet() != &x_alphabet)
        {
            return Err(Error::InvalidSequence("codewords differ in length or alphabet".into()));
        }
        Ok(Codebook { u_alphabet, x_alphabet, n, junk, secrets, messages, clouds, satellites, composition: None })
    }

    /// Codebook with a single cloud `u = 0…0` over a one-symbol alphabet.
    pub fn without_clouds(satellites: Vec<Sequence>, junk: usize, secrets: usize) -> Result<Self> {
        let n = satellites.first().map_or(0, Sequence::len);
        let u = Sequence::new(Alphabet::indexed(1), vec![0; n])?;
        Self::from_codewords(vec![u], satellites, junk, secrets)
    }

    pub fn u_alphabet(&self) -> &Alphabet {
        &self.u_alphabet
    }

    pub fn x_alphabet(&self) -> &Alphabet {
        &self.x_alphabet
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// J, the number of junk indices.
    pub fn junk(&self) -> usize {
        self.junk
    }

    /// L, the number of secrets.
    pub fn secrets(&self) -> usize {
        self.secrets
    }

    /// M, the number of public messages.
    pub fn messages(&self) -> usize {
        self.messages
    }

    pub fn composition(&self) -> Option<&(TypeVector, CondType)> {
        self.composition.as_ref()
    }

    pub fn index(&self, j: usize, l: usize, m: usize) -> usize {
        (m * self.secrets + l) * self.junk + j
    }

    pub fn cloud(&self, m: usize) -> &Sequence {
        &self.clouds[m]
    }

    pub fn clouds(&self) -> &[Sequence] {
        &self.clouds
    }

    pub fn satellite(&self, j: usize, l: usize, m: usize) -> &Sequence {
        &self.satellites[self.index(j, l, m)]
    }

    pub fn satellites(&self) -> &[Sequence] {
        &self.satellites
    }

    pub fn codeword(&self, j: usize, l: usize, m: usize) -> Sequence {
        self.cloud(m).pair(self.satellite(j, l, m)).expect("equal lengths")
    }

    /// `(j, l, m)` for every codeword, in storage order.
    pub fn indices(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.messages)
            .flat_map(move |m| (0..self.secrets).flat_map(move |l| (0..self.junk).map(move |j| (j, l, m))))
    }

    /// Combined symbol `u·|X| + x` at every position of codeword `(j, l, m)`.
    pub(crate) fn codeword_symbols(&self, j: usize, l: usize, m: usize) -> Vec<usize> {
        let nx = self.x_alphabet.len();
        self.cloud(m)
            .symbols()
            .iter()
            .zip(self.satellite(j, l, m).symbols())
            .map(|(&u, &x)| u * nx + x)
            .collect()
    }

    /// Channel rows indexed by the combined symbol `(u, x)`. Accepts a channel whose input
    /// is either X (trivially extended over U) or the product U × X.
    pub(crate) fn extended_rows<T: Weight + ChannelEntries>(&self, w: &Channel) -> Result<Vec<Vec<T>>> {
        let rows = T::rows_of(w).ok_or_else(|| Error::Precondition("channel has no exact entries".into()))?;
        if w.input() == &self.x_alphabet {
            Ok((0..self.u_alphabet.len()).flat_map(|_| rows.iter().cloned()).collect())
        } else if w.input() == &Alphabet::product(&self.u_alphabet, &self.x_alphabet) {
            Ok(rows)
        } else {
            Err(Error::AlphabetMismatch(format!(
                "channel input {} matches neither X = {} nor U×X",
                w.input(),
                self.x_alphabet
            )))
        }
    }
}

/// Access to a channel's entries in a chosen scalar type.
pub(crate) trait ChannelEntries: Sized {
    fn rows_of(w: &Channel) -> Option<Vec<Vec<Self>>>;
}

impl ChannelEntries for f64 {
    fn rows_of(w: &Channel) -> Option<Vec<Vec<f64>>> {
        Some(w.rows().to_vec())
    }
}

impl ChannelEntries for BigRational {
    fn rows_of(w: &Channel) -> Option<Vec<Vec<BigRational>>> {
        w.exact().map(<[_]>::to_vec)
    }
}

/// Random constant-composition code: clouds uniform on T_{Q0}, satellites conditionally
/// uniform on T_{Q1}(u_m), all independent and reproducible from `seed`.
pub fn sample_random_code(
    q0: &TypeVector,
    q1: &CondType,
    junk: usize,
    secrets: usize,
    messages: usize,
    seed: u64,
) -> Result<Codebook> {
    q1.ensure_consistent(q0)?;
    if junk == 0 || secrets == 0 || messages == 0 {
        return Err(Error::Precondition("J, L and M must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let clouds: Vec<Sequence> = (0..messages).map(|_| sample_type_class(q0, &mut rng)).collect();
    let mut satellites = Vec::with_capacity(messages * secrets * junk);
    for u in &clouds {
        for _ in 0..secrets * junk {
            satellites.push(sample_shell(u, q1, &mut rng));
        }
    }
    let mut cb = Codebook::from_codewords(clouds, satellites, junk, secrets)?;
    cb.composition = Some((q0.clone(), q1.clone()));
    Ok(cb)
}

/// The junk-data encoder f(·|m, l): mass 1/J on each satellite `x_{jlm}`, merged on collisions.
pub fn encoder_distribution(cb: &Codebook, m: usize, l: usize) -> Vec<(Sequence, BigRational)> {
    let mut out: Vec<(Sequence, BigRational)> = Vec::new();
    let mass = BigRational::new(1.into(), cb.junk().into());
    for j in 0..cb.junk() {
        let x = cb.satellite(j, l, m);
        match out.iter_mut().find(|(s, _)| s == x) {
            Some((_, p)) => *p += &mass,
            None => out.push((x.clone(), mass.clone())),
        }
    }
    out.sort_by(|a, b| a.0.symbols().cmp(b.0.symbols()));
    out
}
