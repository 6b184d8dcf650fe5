use super::sequence::Sequence;
use super::type_vector::{empirical_counts, CondType, TypeVector};
use crate::error::{Error, Result};
use crate::measures::Alphabet;

/// Lexicographic enumeration of sequences whose positions are partitioned into
/// groups, each group drawing symbols from its own multiset.
#[derive(Clone, Debug)]
pub struct ConstrainedSequences {
    alphabet: Alphabet,
    groups: Vec<usize>,
    pools: Vec<Vec<u64>>,
    current: Vec<usize>,
    state: State,
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum State {
    Fresh,
    Running,
    Done,
}

impl ConstrainedSequences {
    fn new(alphabet: Alphabet, groups: Vec<usize>, pools: Vec<Vec<u64>>) -> Self {
        let n = groups.len();
        let mut it = ConstrainedSequences { alphabet, groups, pools, current: vec![0; n], state: State::Fresh };
        if !it.fill_from(0) {
            it.state = State::Done;
        }
        it
    }

    fn take_smallest_from(&mut self, pos: usize, above: Option<usize>) -> bool {
        let pool = &mut self.pools[self.groups[pos]];
        let start = above.map_or(0, |s| s + 1);
        match (start..pool.len()).find(|&s| pool[s] > 0) {
            Some(s) => {
                pool[s] -= 1;
                self.current[pos] = s;
                true
            }
            None => false,
        }
    }

    fn fill_from(&mut self, start: usize) -> bool {
        (start..self.groups.len()).all(|pos| self.take_smallest_from(pos, None))
    }

    fn advance(&mut self) -> bool {
        for pos in (0..self.groups.len()).rev() {
            let cur = self.current[pos];
            self.pools[self.groups[pos]][cur] += 1;
            if self.take_smallest_from(pos, Some(cur)) {
                return self.fill_from(pos + 1);
            }
        }
        false
    }
}

impl Iterator for ConstrainedSequences {
    type Item = Sequence;

    fn next(&mut self) -> Option<Sequence> {
        match self.state {
            State::Done => return None,
            State::Fresh => self.state = State::Running,
            State::Running => {
                if !self.advance() {
                    self.state = State::Done;
                    return None;
                }
            }
        }
        Some(Sequence::from_parts_unchecked(self.alphabet.clone(), self.current.clone()))
    }
}

/// All sequences of type `q`, in lexicographic order.
pub fn enumerate_type_class(q: &TypeVector) -> ConstrainedSequences {
    let n = q.n() as usize;
    ConstrainedSequences::new(q.alphabet().clone(), vec![0; n], vec![q.counts().to_vec()])
}

/// The V-shell T_V(x), in lexicographic order. Errors when V is inconsistent with the type of x.
pub fn enumerate_shell(x: &Sequence, v: &CondType) -> Result<ConstrainedSequences> {
    if x.alphabet() != v.input() {
        return Err(Error::AlphabetMismatch(format!("sequence over {} vs V input {}", x.alphabet(), v.input())));
    }
    if empirical_counts(x) != v.row_totals() {
        return Err(Error::InconsistentCondType(format!(
            "row totals {:?} do not match the type of {x}",
            v.row_totals()
        )));
    }
    Ok(ConstrainedSequences::new(v.output().clone(), x.symbols().to_vec(), v.counts().to_vec()))
}

/// All compositions of `n` into `k` parts, lexicographically descending
/// (`(n,0,..)` first).
pub(crate) fn compositions(n: u64, k: usize) -> Vec<Vec<u64>> {
    fn rec(n: u64, k: usize, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if k == 1 {
            prefix.push(n);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=n).rev() {
            prefix.push(first);
            rec(n - first, k - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// P_n(A): every type of an n-sequence over `alphabet`.
pub fn enumerate_types(n: u64, alphabet: &Alphabet) -> Result<Vec<TypeVector>> {
    if n == 0 {
        return Err(Error::InvalidSequence("block length must be at least 1".into()));
    }
    compositions(n, alphabet.len()).into_iter().map(|c| TypeVector::new(alphabet.clone(), c)).collect()
}

/// V_n(Q, out): every canonical conditional type given a sequence of type `q`.
pub fn enumerate_cond_types(q: &TypeVector, output: &Alphabet) -> Vec<CondType> {
    let row_choices: Vec<Vec<Vec<u64>>> = q
        .counts()
        .iter()
        .map(|&c| if c == 0 { vec![vec![0; output.len()]] } else { compositions(c, output.len()) })
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; row_choices.len()];
    loop {
        let counts = idx.iter().zip(&row_choices).map(|(&i, rows)| rows[i].clone()).collect();
        out.push(CondType::new(q.alphabet().clone(), output.clone(), counts).expect("shape is consistent"));
        // odometer with the last input symbol fastest
        let mut pos = idx.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < row_choices[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::{canonical_cond_type, empirical_type, shell_size, type_class_size};
    use num_bigint::BigUint;

    #[test]
    fn binary_types_of_length_two() {
        let types = enumerate_types(2, &Alphabet::indexed(2)).unwrap();
        let counts: Vec<_> = types.iter().map(|t| t.counts().to_vec()).collect();
        assert_eq!(counts, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(enumerate_types(1, &Alphabet::indexed(4)).unwrap().len(), 4);
        // stars and bars: C(4+2, 2) = 15
        assert_eq!(enumerate_types(4, &Alphabet::indexed(3)).unwrap().len(), 15);
    }

    #[test]
    fn cond_type_counts() {
        let out = Alphabet::indexed(2);
        let single = TypeVector::from_counts(&[2, 0]).unwrap();
        assert_eq!(enumerate_cond_types(&single, &out).len(), 3);
        let n1 = TypeVector::from_counts(&[0, 1, 0]).unwrap();
        assert_eq!(enumerate_cond_types(&n1, &Alphabet::indexed(3)).len(), 3);
        // compositions of 2 into 2 parts times compositions of 1 into 2 parts
        let q = TypeVector::from_counts(&[2, 1]).unwrap();
        assert_eq!(enumerate_cond_types(&q, &out).len(), 3 * 2);
    }

    #[test]
    fn type_class_is_lexicographic_and_complete() {
        let q = TypeVector::from_counts(&[3, 2, 1]).unwrap();
        let all: Vec<_> = enumerate_type_class(&q).collect();
        assert_eq!(BigUint::from(all.len()), type_class_size(&q));
        assert_eq!(all.len(), 60);
        assert!(all.windows(2).all(|w| w[0].symbols() < w[1].symbols()));
        assert!(all.iter().all(|s| empirical_type(s) == q));
    }

    #[test]
    fn shell_enumeration_matches_size() {
        let x = Sequence::parse(Alphabet::indexed(2), "00101").unwrap();
        let y = Sequence::parse(Alphabet::indexed(3), "01220").unwrap();
        let v = canonical_cond_type(&x, &y).unwrap();
        let shell: Vec<_> = enumerate_shell(&x, &v).unwrap().collect();
        assert_eq!(BigUint::from(shell.len()), shell_size(&empirical_type(&x), &v).unwrap());
        assert!(shell.iter().all(|s| canonical_cond_type(&x, s).unwrap() == v));
        assert!(shell.windows(2).all(|w| w[0].symbols() < w[1].symbols()));
        let bad = crate::types::CondType::from_counts(&[vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        assert!(enumerate_shell(&x, &bad).is_err());
    }
}
