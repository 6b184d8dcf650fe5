use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use super::alphabet::Alphabet;
use super::distribution::{
    check_exact_vector, check_prob_vector, parse_prob_values, prob_values, Distribution,
};
use super::exact::{parse_rational, rational_to_f64};
use crate::error::{Error, Result};

/// A row-stochastic matrix: row `x` is the output distribution given input `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct Channel {
    input: Alphabet,
    output: Alphabet,
    rows: Vec<Vec<f64>>,
    exact: Option<Vec<Vec<BigRational>>>,
}

impl Channel {
    pub fn new(input: Alphabet, output: Alphabet, rows: Vec<Vec<f64>>) -> Result<Self> {
        check_shape(&input, &output, rows.len(), rows.iter().map(Vec::len))?;
        for (i, row) in rows.iter().enumerate() {
            check_prob_vector(row, &format!("row {}", input.label(i)))
                .map_err(|e| Error::InvalidChannel(e.to_string()))?;
        }
        Ok(Channel { input, output, rows, exact: None })
    }

    /// Float channel with indexed input and output alphabets.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || cols == 0 {
            return Err(Error::InvalidChannel("empty matrix".into()));
        }
        Self::new(Alphabet::indexed(rows.len()), Alphabet::indexed(cols), rows.to_vec())
    }

    pub fn from_rationals(
        input: Alphabet,
        output: Alphabet,
        rows: Vec<Vec<BigRational>>,
    ) -> Result<Self> {
        check_shape(&input, &output, rows.len(), rows.iter().map(Vec::len))?;
        for (i, row) in rows.iter().enumerate() {
            check_exact_vector(row, &format!("row {}", input.label(i)))
                .map_err(|e| Error::InvalidChannel(e.to_string()))?;
        }
        let floats = rows.iter().map(|r| r.iter().map(rational_to_f64).collect()).collect();
        Ok(Channel { input, output, rows: floats, exact: Some(rows) })
    }

    /// Exact channel from literal rows such as `[["1/3", "2/3"], ["1", "0"]]`.
    pub fn parse(input: Alphabet, output: Alphabet, literals: &[&[&str]]) -> Result<Self> {
        let rows = literals
            .iter()
            .map(|row| row.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rationals(input, output, rows)
    }

    pub fn identity(alphabet: Alphabet) -> Self {
        let k = alphabet.len();
        let rows = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                    .collect()
            })
            .collect();
        Self::from_rationals(alphabet.clone(), alphabet, rows).expect("identity is stochastic")
    }

    /// Every row equal to `row`.
    pub fn constant(input: Alphabet, row: &Distribution) -> Self {
        let rows = vec![row.probs().to_vec(); input.len()];
        let exact = row.exact().map(|ex| vec![ex.to_vec(); input.len()]);
        Channel { input, output: row.alphabet().clone(), rows, exact }
    }

    pub(crate) fn from_parts_unchecked(
        input: Alphabet,
        output: Alphabet,
        rows: Vec<Vec<f64>>,
        exact: Option<Vec<Vec<BigRational>>>,
    ) -> Self {
        Channel { input, output, rows, exact }
    }

    /// Builds a float channel, renormalizing rows that drifted by rounding.
    pub(crate) fn from_float_rows_normalized(
        input: Alphabet,
        output: Alphabet,
        mut rows: Vec<Vec<f64>>,
    ) -> Self {
        for row in &mut rows {
            let s: f64 = row.iter().sum();
            if s > 0.0 {
                row.iter_mut().for_each(|p| *p /= s);
            }
        }
        Channel { input, output, rows, exact: None }
    }

    pub fn input(&self) -> &Alphabet {
        &self.input
    }

    pub fn output(&self) -> &Alphabet {
        &self.output
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn row(&self, x: usize) -> &[f64] {
        &self.rows[x]
    }

    pub fn entry(&self, x: usize, y: usize) -> f64 {
        self.rows[x][y]
    }

    pub fn exact(&self) -> Option<&[Vec<BigRational>]> {
        self.exact.as_deref()
    }

    pub fn row_distribution(&self, x: usize) -> Distribution {
        Distribution::from_parts_unchecked(
            self.output.clone(),
            self.rows[x].clone(),
            self.exact.as_ref().map(|ex| ex[x].clone()),
        )
    }

    pub fn to_float(&self) -> Self {
        Channel { exact: None, ..self.clone() }
    }

    /// Same matrix with the input alphabet relabeled.
    pub fn with_input(&self, input: Alphabet) -> Result<Self> {
        if input.len() != self.input.len() {
            return Err(Error::AlphabetMismatch("relabeling changes input size".into()));
        }
        Ok(Channel { input, ..self.clone() })
    }

    /// Largest absolute difference between any two rows (0 iff the output ignores the input).
    pub fn max_row_deviation(&self) -> f64 {
        let first = &self.rows[0];
        self.rows
            .iter()
            .flat_map(|r| r.iter().zip(first).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max)
    }
}

fn check_shape(
    input: &Alphabet,
    output: &Alphabet,
    n_rows: usize,
    row_lens: impl Iterator<Item = usize>,
) -> Result<()> {
    if n_rows != input.len() {
        return Err(Error::InvalidChannel(format!(
            "{n_rows} rows for input alphabet of size {}",
            input.len()
        )));
    }
    for len in row_lens {
        if len != output.len() {
            return Err(Error::InvalidChannel(format!(
                "row of length {len} for output alphabet of size {}",
                output.len()
            )));
        }
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct ChannelJson {
    input: Vec<String>,
    output: Vec<String>,
    rows: Vec<Vec<Value>>,
}

impl Serialize for Channel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| prob_values(r, self.exact.as_ref().map(|ex| ex[i].as_slice())))
            .collect();
        ChannelJson {
            input: self.input.labels().to_vec(),
            output: self.output.labels().to_vec(),
            rows,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Channel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = ChannelJson::deserialize(deserializer)?;
        let input = Alphabet::new(raw.input).map_err(D::Error::custom)?;
        let output = Alphabet::new(raw.output).map_err(D::Error::custom)?;
        let parsed = raw
            .rows
            .iter()
            .map(|r| parse_prob_values(r))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        let all_exact = parsed.iter().all(|(_, ex)| ex.is_some());
        if all_exact {
            let rows = parsed.into_iter().map(|(_, ex)| ex.unwrap()).collect();
            Channel::from_rationals(input, output, rows).map_err(D::Error::custom)
        } else {
            let rows = parsed.into_iter().map(|(f, _)| f).collect();
            Channel::new(input, output, rows).map_err(D::Error::custom)
        }
    }
}
