use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::measures::Alphabet;

/// An n-sequence over a declared alphabet, stored as symbol indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Sequence {
    alphabet: Alphabet,
    symbols: Vec<usize>,
}

impl Sequence {
    pub fn new(alphabet: Alphabet, symbols: Vec<usize>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::InvalidSequence("block length must be at least 1".into()));
        }
        if let Some(&s) = symbols.iter().find(|&&s| s >= alphabet.len()) {
            return Err(Error::InvalidSequence(format!(
                "symbol index {s} outside alphabet of size {}",
                alphabet.len()
            )));
        }
        Ok(Sequence { alphabet, symbols })
    }

    pub fn from_labels<S: AsRef<str>>(alphabet: Alphabet, labels: &[S]) -> Result<Self> {
        let symbols = labels
            .iter()
            .map(|l| {
                alphabet
                    .index_of(l.as_ref())
                    .ok_or_else(|| Error::InvalidSequence(format!("unknown symbol `{}`", l.as_ref())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet, symbols)
    }

    /// Parses a string whose characters are single-character labels, e.g. `"0110"`.
    pub fn parse(alphabet: Alphabet, text: &str) -> Result<Self> {
        let labels: Vec<String> = text.chars().map(String::from).collect();
        Self::from_labels(alphabet, &labels)
    }

    pub(crate) fn from_parts_unchecked(alphabet: Alphabet, symbols: Vec<usize>) -> Self {
        Sequence { alphabet, symbols }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn symbols(&self) -> &[usize] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Element-wise concatenation `self ∘ other` over the product alphabet.
    pub fn pair(&self, other: &Sequence) -> Result<Sequence> {
        if self.len() != other.len() {
            return Err(Error::InvalidSequence(format!(
                "cannot pair sequences of lengths {} and {}",
                self.len(),
                other.len()
            )));
        }
        let k = other.alphabet.len();
        let symbols = self.symbols.iter().zip(&other.symbols).map(|(&a, &b)| a * k + b).collect();
        Ok(Sequence { alphabet: Alphabet::product(&self.alphabet, &other.alphabet), symbols })
    }

    /// Position of this sequence in the lexicographic order of all |A|^n sequences.
    pub fn lex_index(&self) -> u128 {
        let k = self.alphabet.len() as u128;
        self.symbols.iter().fold(0u128, |acc, &s| acc * k + s as u128)
    }

    /// Inverse of [`Sequence::lex_index`].
    pub fn from_lex_index(alphabet: Alphabet, n: usize, mut index: u128) -> Self {
        let k = alphabet.len() as u128;
        let mut symbols = vec![0; n];
        for s in symbols.iter_mut().rev() {
            *s = (index % k) as usize;
            index /= k;
        }
        Sequence { alphabet, symbols }
    }

    pub fn labels(&self) -> Vec<&str> {
        self.symbols.iter().map(|&s| self.alphabet.label(s)).collect()
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let single = self.alphabet.labels().iter().all(|l| l.chars().count() == 1);
        let sep = if single { "" } else { " " };
        write!(f, "{}", self.labels().join(sep))
    }
}

impl fmt::Debug for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sequence({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct SequenceJson {
    alphabet: Alphabet,
    symbols: Vec<String>,
}

impl Serialize for Sequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let symbols = self.labels().into_iter().map(String::from).collect();
        SequenceJson { alphabet: self.alphabet.clone(), symbols }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Sequence {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = SequenceJson::deserialize(deserializer)?;
        Sequence::from_labels(raw.alphabet, &raw.symbols).map_err(serde::de::Error::custom)
    }
}

/// Number of sequences |A|^n, saturating at `u128::MAX`.
pub fn sequence_count(alphabet_size: usize, n: usize) -> u128 {
    (0..n).try_fold(1u128, |acc, _| acc.checked_mul(alphabet_size as u128)).unwrap_or(u128::MAX)
}

/// All |A|^n sequences in lexicographic order.
pub fn all_sequences(alphabet: &Alphabet, n: usize) -> impl Iterator<Item = Sequence> + '_ {
    (0..sequence_count(alphabet.len(), n)).map(move |i| Sequence::from_lex_index(alphabet.clone(), n, i))
}
