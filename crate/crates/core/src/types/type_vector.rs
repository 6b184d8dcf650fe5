use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::sequence::Sequence;
use crate::error::{Error, Result};
use crate::measures::{Alphabet, Channel, Distribution};

/// Exact empirical distribution of an n-sequence, kept as integer counts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TypeVector {
    alphabet: Alphabet,
    counts: Vec<u64>,
}

impl TypeVector {
    pub fn new(alphabet: Alphabet, counts: Vec<u64>) -> Result<Self> {
        if counts.len() != alphabet.len() {
            return Err(Error::InvalidSequence(format!(
                "{} counts for alphabet of size {}",
                counts.len(),
                alphabet.len()
            )));
        }
        if counts.iter().sum::<u64>() == 0 {
            return Err(Error::InvalidSequence("type of an empty sequence".into()));
        }
        Ok(TypeVector { alphabet, counts })
    }

    /// Type over the indexed alphabet `{0, .., counts.len()-1}`.
    pub fn from_counts(counts: &[u64]) -> Result<Self> {
        Self::new(Alphabet::indexed(counts.len().max(1)), counts.to_vec())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, symbol: usize) -> u64 {
        self.counts[symbol]
    }

    pub fn n(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn to_distribution(&self) -> Distribution {
        let n = BigInt::from(self.n());
        let probs = self.counts.iter().map(|&c| BigRational::new(c.into(), n.clone())).collect();
        Distribution::from_rationals(self.alphabet.clone(), probs).expect("counts form a type")
    }

    pub fn contains(&self, s: &Sequence) -> bool {
        s.alphabet() == &self.alphabet && empirical_counts(s) == self.counts
    }
}

pub(crate) fn empirical_counts(s: &Sequence) -> Vec<u64> {
    let mut counts = vec![0u64; s.alphabet().len()];
    for &x in s.symbols() {
        counts[x] += 1;
    }
    counts
}

/// Canonical conditional type: joint counts `N(x, y)` with the row totals `N(x)` of
/// the conditioning sequence. Rows with `N(x) = 0` read as uniform.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CondType {
    input: Alphabet,
    output: Alphabet,
    counts: Vec<Vec<u64>>,
}

impl CondType {
    pub fn new(input: Alphabet, output: Alphabet, counts: Vec<Vec<u64>>) -> Result<Self> {
        if counts.len() != input.len() || counts.iter().any(|r| r.len() != output.len()) {
            return Err(Error::InconsistentCondType(format!(
                "count matrix shape does not match {}×{}",
                input.len(),
                output.len()
            )));
        }
        Ok(CondType { input, output, counts })
    }

    /// Conditional type over indexed alphabets.
    pub fn from_counts(counts: &[Vec<u64>]) -> Result<Self> {
        let cols = counts.first().map_or(0, Vec::len);
        if counts.is_empty() || cols == 0 {
            return Err(Error::InconsistentCondType("empty count matrix".into()));
        }
        Self::new(Alphabet::indexed(counts.len()), Alphabet::indexed(cols), counts.to_vec())
    }

    pub fn input(&self) -> &Alphabet {
        &self.input
    }

    pub fn output(&self) -> &Alphabet {
        &self.output
    }

    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }

    pub fn row_totals(&self) -> Vec<u64> {
        self.counts.iter().map(|r| r.iter().sum()).collect()
    }

    /// Whether this row is filled by the uniform convention.
    pub fn is_canonical_uniform(&self, x: usize) -> bool {
        self.counts[x].iter().all(|&c| c == 0)
    }

    /// The conditioning type implied by the row totals.
    pub fn input_type(&self) -> Result<TypeVector> {
        TypeVector::new(self.input.clone(), self.row_totals())
    }

    /// The output type `(QV)` implied by the column totals.
    pub fn output_type(&self) -> Result<TypeVector> {
        let cols = (0..self.output.len()).map(|y| self.counts.iter().map(|r| r[y]).sum()).collect();
        TypeVector::new(self.output.clone(), cols)
    }

    pub fn ensure_consistent(&self, q: &TypeVector) -> Result<()> {
        if q.alphabet() != &self.input {
            return Err(Error::AlphabetMismatch(format!(
                "conditional type input {} vs type alphabet {}",
                self.input,
                q.alphabet()
            )));
        }
        if self.row_totals() != q.counts() {
            return Err(Error::InconsistentCondType(format!(
                "row totals {:?} differ from type counts {:?}",
                self.row_totals(),
                q.counts()
            )));
        }
        Ok(())
    }

    /// The row-stochastic matrix, exact, with uniform rows where `N(x) = 0`.
    pub fn to_channel(&self) -> Channel {
        let k = self.output.len() as u64;
        let rows = self
            .counts
            .iter()
            .map(|row| {
                let total: u64 = row.iter().sum();
                if total == 0 {
                    vec![BigRational::new(1.into(), k.into()); row.len()]
                } else {
                    row.iter().map(|&c| BigRational::new(c.into(), total.into())).collect()
                }
            })
            .collect();
        Channel::from_rationals(self.input.clone(), self.output.clone(), rows)
            .expect("normalized counts are stochastic")
    }

    /// Whether `y` lies in the V-shell of `x`.
    pub fn shell_contains(&self, x: &Sequence, y: &Sequence) -> bool {
        x.alphabet() == &self.input
            && y.alphabet() == &self.output
            && x.len() == y.len()
            && joint_counts(x, y) == self.counts
    }
}

pub(crate) fn joint_counts(x: &Sequence, y: &Sequence) -> Vec<Vec<u64>> {
    let mut counts = vec![vec![0u64; y.alphabet().len()]; x.alphabet().len()];
    for (&a, &b) in x.symbols().iter().zip(y.symbols()) {
        counts[a][b] += 1;
    }
    counts
}

/// P_x: occurrence counts of each symbol.
pub fn empirical_type(s: &Sequence) -> TypeVector {
    TypeVector { alphabet: s.alphabet().clone(), counts: empirical_counts(s) }
}

/// P_{y|x}, the canonical conditional type of `y` given `x`.
pub fn canonical_cond_type(x: &Sequence, y: &Sequence) -> Result<CondType> {
    if x.len() != y.len() {
        return Err(Error::InvalidSequence(format!(
            "sequences of lengths {} and {}",
            x.len(),
            y.len()
        )));
    }
    CondType::new(x.alphabet().clone(), y.alphabet().clone(), joint_counts(x, y))
}

/// I(x ∧ y) = I(P_x, P_{y|x}), evaluated directly from the joint counts.
pub fn empirical_mutual_info(x: &Sequence, y: &Sequence) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::InvalidSequence("sequences of different lengths".into()));
    }
    Ok(mutual_info_from_counts(&joint_counts(x, y), x.len() as u64))
}

pub(crate) fn mutual_info_from_counts(joint: &[Vec<u64>], n: u64) -> f64 {
    let n = n as f64;
    let rows: Vec<f64> = joint.iter().map(|r| r.iter().sum::<u64>() as f64).collect();
    let cols: Vec<f64> =
        (0..joint.first().map_or(0, Vec::len)).map(|b| joint.iter().map(|r| r[b]).sum::<u64>() as f64).collect();
    let mut total = 0.0;
    for (a, row) in joint.iter().enumerate() {
        for (b, &c) in row.iter().enumerate() {
            if c > 0 {
                let c = c as f64;
                total += c / n * (c * n / (rows[a] * cols[b])).ln();
            }
        }
    }
    total.max(0.0)
}
