//! Freely reduced words over a list of generators.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A generator or its inverse, named by position in a generator list.
///
/// The derived order is `g0 < g0^-1 < g1 < g1^-1 < ...`; the reduction and
/// fundamental-domain scans enumerate `X^±` in this order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub index: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(index: usize, inverse: bool) -> Self {
        Letter { index, inverse }
    }

    pub fn pos(index: usize) -> Self {
        Letter::new(index, false)
    }

    pub fn neg(index: usize) -> Self {
        Letter::new(index, true)
    }

    pub fn inv(self) -> Self {
        Letter::new(self.index, !self.inverse)
    }

    /// All letters over `n` generators in canonical order.
    pub fn all(n: usize) -> impl Iterator<Item = Letter> {
        (0..n).flat_map(|i| [Letter::pos(i), Letter::neg(i)])
    }

    /// Signed 1-based index: `g3^-1` is `-3`.
    pub fn signed(self) -> i64 {
        let k = self.index as i64 + 1;
        if self.inverse {
            -k
        } else {
            k
        }
    }
}

/// A freely reduced word. Never contains `a a^-1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    /// Freely reduces `letters`.
    pub fn reduced(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// Reduced product `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        let common = self
            .0
            .iter()
            .rev()
            .zip(other.0.iter())
            .take_while(|(a, b)| a.inv() == **b)
            .count();
        let mut v = self.0[..self.0.len() - common].to_vec();
        v.extend_from_slice(&other.0[common..]);
        Word(v)
    }

    /// Substitutes a word for every generator.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut acc = Word::empty();
        for l in &self.0 {
            let w = &images[l.index];
            acc = if l.inverse {
                acc.concat(&w.inverse())
            } else {
                acc.concat(w)
            };
        }
        acc
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.0.iter().map(|l| l.signed()).collect()
    }

    pub fn from_signed(v: &[i64]) -> Option<Word> {
        v.iter()
            .map(|&k| (k != 0).then(|| Letter::new(k.unsigned_abs() as usize - 1, k < 0)))
            .collect::<Option<Vec<_>>>()
            .map(Word::reduced)
    }

    /// Renders the word with the given generator name, e.g. `g1 g2^-1`.
    pub fn display_with(&self, name: &str) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|l| {
                if l.inverse {
                    format!("{name}{}^-1", l.index + 1)
                } else {
                    format!("{name}{}", l.index + 1)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("g"))
    }
}
