//! Permutations of `{1..n}` in one-line notation.
//!
//! Products compose right to left: `u.compose(v)` maps `i` to `u(v(i))`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct Permutation(Vec<u8>);

impl Permutation {
    /// Validates that `one_line` is a bijection of `1..=n`.
    pub fn new(one_line: Vec<u8>) -> Result<Self> {
        let n = one_line.len();
        let mut seen = vec![false; n];
        for &v in &one_line {
            let i = v as usize;
            if i == 0 || i > n || seen[i - 1] {
                return Err(Error::InvalidPermutation(format!("{one_line:?}")));
            }
            seen[i - 1] = true;
        }
        Ok(Permutation(one_line))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u8).collect())
    }

    /// The longest element `w0`, reversing `1..n`.
    pub fn longest(n: usize) -> Self {
        Permutation((1..=n as u8).rev().collect())
    }

    /// The simple transposition `s_k = (k, k+1)`.
    pub fn simple(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(Error::OutOfRange {
                what: "simple reflection index",
                value: k as i64,
                range: format!("1..={}", n.saturating_sub(1)),
            });
        }
        let mut p = Permutation::identity(n);
        p.0.swap(k - 1, k);
        Ok(p)
    }

    /// All of `S_n` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur = Permutation::identity(n).0;
        loop {
            out.push(Permutation(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn one_line(&self) -> &[u8] {
        &self.0
    }

    /// `w(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        Ok(Permutation(
            other.0.iter().map(|&j| self.0[j as usize - 1]).collect(),
        ))
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.size()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize - 1] = i as u8 + 1;
        }
        Permutation(inv)
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        self.lehmer_code().iter().map(|&c| c as usize).sum()
    }

    /// `code(w)_k = #{j > k : w(j) < w(k)}`.
    pub fn lehmer_code(&self) -> Vec<u32> {
        let w = &self.0;
        (0..w.len())
            .map(|k| w[k + 1..].iter().filter(|&&v| v < w[k]).count() as u32)
            .collect()
    }

    /// Inverse of [`Permutation::lehmer_code`]; requires `code[k] <= n-1-k`.
    pub fn from_lehmer_code(code: &[u32]) -> Result<Permutation> {
        let n = code.len();
        let mut remaining: Vec<u8> = (1..=n as u8).collect();
        let mut out = Vec::with_capacity(n);
        for (k, &c) in code.iter().enumerate() {
            if c as usize >= n - k {
                return Err(Error::OutOfRange {
                    what: "Lehmer code entry",
                    value: c as i64,
                    range: format!("0..={}", n - 1 - k),
                });
            }
            out.push(remaining.remove(c as usize));
        }
        Ok(Permutation(out))
    }

    /// Positions `i` (1-based) with `w(i) > w(i+1)`.
    pub fn descents(&self) -> Vec<usize> {
        (1..self.size())
            .filter(|&i| self.0[i - 1] > self.0[i])
            .collect()
    }

    /// A reduced word `[i1, ..., il]` with `w = s_{i1} ... s_{il}`.
    ///
    /// Peels off the leftmost descent from the right each step, so the
    /// output is deterministic.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.0.clone();
        let mut peeled = Vec::new();
        while let Some(i) = (1..w.len()).find(|&i| w[i - 1] > w[i]) {
            // w = (w s_i) s_i with l(w s_i) = l(w) - 1
            w.swap(i - 1, i);
            peeled.push(i);
        }
        peeled.reverse();
        peeled
    }

    /// `s_{i1} ... s_{il}` in `S_n`.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Permutation> {
        let mut p = Permutation::identity(n);
        for &i in word {
            p = p.compose(&Permutation::simple(n, i)?)?;
        }
        Ok(p)
    }
}

impl TryFrom<Vec<u8>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<u8>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<u8> {
    fn from(p: Permutation) -> Vec<u8> {
        p.0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses `2,3,1`, `[2,3,1]` or `231` (single digits).
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let bad = || Error::InvalidPermutation(s.to_string());
        let values: Vec<u8> = if body.contains(',') {
            body.split(',')
                .map(|p| p.trim().parse::<u8>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            body.chars()
                .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(bad))
                .collect::<Result<_>>()?
        };
        Permutation::new(values)
    }
}
