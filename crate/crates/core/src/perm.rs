use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A permutation in one-line notation, `w_1 ... w_n`.
///
/// Ordered by length first, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &v in &word {
            if v == 0 || v > n || seen[v] {
                return Err(Error::Parse(format!("{word:?} is not a permutation")));
            }
            seen[v] = true;
        }
        Ok(Permutation(word))
    }

    pub(crate) fn from_vec_unchecked(word: Vec<usize>) -> Self {
        Permutation(word)
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn longest(n: usize) -> Self {
        Permutation((1..=n).rev().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn word(&self) -> &[usize] {
        &self.0
    }

    /// `w_i`, 1-based.
    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    /// `pos[v]` is the 1-based position of value `v` (`pos[0]` unused).
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.0.len() + 1];
        for (k, &v) in self.0.iter().enumerate() {
            pos[v] = k + 1;
        }
        pos
    }

    pub fn inverse(&self) -> Permutation {
        Permutation(self.positions()[1..].to_vec())
    }

    /// The word read backwards.
    pub fn reverse(&self) -> Permutation {
        Permutation(self.0.iter().rev().copied().collect())
    }

    /// Standardization of an arbitrary sequence of distinct integers.
    pub fn standardize(seq: &[usize]) -> Permutation {
        let mut sorted = seq.to_vec();
        sorted.sort_unstable();
        Permutation(seq.iter().map(|v| sorted.binary_search(v).unwrap() + 1).collect())
    }

    /// Subword of values in `set`, standardized.
    pub fn restrict_values(&self, keep: impl Fn(usize) -> bool) -> Permutation {
        let sub: Vec<usize> = self.0.iter().copied().filter(|&v| keep(v)).collect();
        Permutation::standardize(&sub)
    }

    /// Positions `s` (1-based) with `w_s > w_{s+1}`.
    pub fn descent_positions(&self) -> Vec<usize> {
        (1..self.0.len()).filter(|&s| self.0[s - 1] > self.0[s]).collect()
    }

    /// Descents as value pairs `(w_{s+1}, w_s)` with the smaller value first.
    pub fn descents(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> =
            self.descent_positions().into_iter().map(|s| (self.0[s], self.0[s - 1])).collect();
        out.sort();
        out
    }

    pub fn swap_positions(&self, s: usize) -> Permutation {
        let mut w = self.0.clone();
        w.swap(s - 1, s);
        Permutation(w)
    }

    /// All permutations of `[n]` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut w: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation(w.clone()));
            if !next_permutation(&mut w) {
                break;
            }
        }
        out
    }

    /// Lexicographic rank among permutations of the same length.
    pub fn rank(&self) -> usize {
        let n = self.0.len();
        let mut rank = 0;
        for i in 0..n {
            let smaller = self.0[i + 1..].iter().filter(|&&v| v < self.0[i]).count();
            rank = rank * (n - i) + smaller;
        }
        rank
    }
}

fn next_permutation(w: &mut [usize]) -> bool {
    let n = w.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && w[i - 1] >= w[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while w[j] <= w[i - 1] {
        j -= 1;
    }
    w.swap(i - 1, j);
    w[i..].reverse();
    true
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() > 9 {
            let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        } else {
            for v in &self.0 {
                write!(f, "{v}")?;
            }
            Ok(())
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Digit words (`35214`) or comma-separated values (`3,5,2,1,4`).
    /// The empty string is the empty permutation.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let word: Option<Vec<usize>> = if s.contains(',') {
            s.split(',').map(|p| p.trim().parse::<usize>().ok()).collect()
        } else {
            s.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect()
        };
        let word = word.ok_or_else(|| Error::Parse(format!("bad permutation `{s}`")))?;
        Permutation::new(word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("35214").word(), &[3, 5, 2, 1, 4]);
        assert_eq!(p("3,5,2,1,4"), p("35214"));
        assert_eq!(p("").len(), 0);
        assert!("3321".parse::<Permutation>().is_err());
        assert!("12a".parse::<Permutation>().is_err());
        let long = Permutation::identity(10);
        assert_eq!(long.to_string(), "1,2,3,4,5,6,7,8,9,10");
        assert_eq!(long.to_string().parse::<Permutation>().unwrap(), long);
    }

    #[test]
    fn enumeration_and_rank() {
        for n in 0..=6 {
            let all = Permutation::all(n);
            assert_eq!(all.len(), (1..=n).product::<usize>());
            for (k, w) in all.iter().enumerate() {
                assert_eq!(w.rank(), k);
            }
            assert!(all.windows(2).all(|x| x[0] < x[1]));
        }
    }

    #[test]
    fn standardize_and_descents() {
        assert_eq!(Permutation::standardize(&[5, 2, 9]), p("213"));
        assert_eq!(p("3241").restrict_values(|v| v != 2), p("231"));
        assert_eq!(p("3241").descents(), vec![(1, 4), (2, 3)]);
        assert_eq!(p("3241").inverse(), p("4213"));
    }
}
