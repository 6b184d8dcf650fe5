use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An ordered list of distinct symbol labels.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet(Arc<[String]>);

impl Alphabet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet must be non-empty".into()));
        }
        for (i, a) in labels.iter().enumerate() {
            if labels[..i].contains(a) {
                return Err(Error::InvalidAlphabet(format!("duplicate label `{a}`")));
            }
        }
        Ok(Alphabet(labels.into()))
    }

    /// Labels `"0"`, `"1"`, ..., `"k-1"`.
    pub fn indexed(k: usize) -> Self {
        assert!(k > 0, "alphabet must be non-empty");
        Alphabet((0..k).map(|i| i.to_string()).collect())
    }

    /// Pairs `(a,b)` in row-major order: index of `(i, j)` is `i * right.len() + j`.
    pub fn product(left: &Alphabet, right: &Alphabet) -> Self {
        let labels = left
            .labels()
            .iter()
            .flat_map(|a| right.labels().iter().map(move |b| format!("({a},{b})")))
            .collect();
        Alphabet(labels)
    }

    /// Disjoint union; labels are prefixed so they stay distinct.
    pub fn disjoint_union(left: &Alphabet, right: &Alphabet) -> Self {
        let labels = left
            .labels()
            .iter()
            .map(|a| format!("L:{a}"))
            .chain(right.labels().iter().map(|b| format!("R:{b}")))
            .collect();
        Alphabet(labels)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.0
    }

    pub fn label(&self, index: usize) -> &str {
        &self.0[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.0.iter().position(|l| l == label)
    }

    pub(crate) fn ensure_same(&self, other: &Alphabet, what: &str) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch(format!("{what}: {self} vs {other}")))
        }
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.join(","))
    }
}

impl Serialize for Alphabet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Alphabet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let labels = Vec::<String>::deserialize(deserializer)?;
        Alphabet::new(labels).map_err(serde::de::Error::custom)
    }
}
