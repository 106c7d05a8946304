//! Finite words over the binary alphabet `{0,1}` and the ternary alphabet
//! `{A,B,C}`, with the basic combinatorial measurements used everywhere else:
//! Parikh vectors, balance, factor complexity and conjugation.

use std::collections::HashSet;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{parse_err, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Alphabet {
    Binary,
    Ternary,
}

impl Alphabet {
    pub fn size(self) -> usize {
        match self {
            Alphabet::Binary => 2,
            Alphabet::Ternary => 3,
        }
    }

    pub fn symbol(self, letter: u8) -> char {
        match self {
            Alphabet::Binary => (b'0' + letter) as char,
            Alphabet::Ternary => (b'A' + letter) as char,
        }
    }

    pub fn index_of(self, c: char) -> Option<u8> {
        match (self, c) {
            (Alphabet::Binary, '0'..='1') => Some(c as u8 - b'0'),
            (Alphabet::Ternary, 'A'..='C') => Some(c as u8 - b'A'),
            _ => None,
        }
    }

    /// Alphabet a non-empty letter belongs to.
    pub fn of_char(c: char) -> Option<Alphabet> {
        match c {
            '0' | '1' => Some(Alphabet::Binary),
            'A' | 'B' | 'C' => Some(Alphabet::Ternary),
            _ => None,
        }
    }

    pub fn letters(self) -> impl Iterator<Item = u8> {
        0..self.size() as u8
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alphabet::Binary => f.write_str("binary"),
            Alphabet::Ternary => f.write_str("ternary"),
        }
    }
}

/// An immutable finite word. Letters are stored as indices into the alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteWord {
    alphabet: Alphabet,
    letters: Vec<u8>,
}

impl FiniteWord {
    pub fn empty(alphabet: Alphabet) -> Self {
        FiniteWord {
            alphabet,
            letters: Vec::new(),
        }
    }

    pub fn from_letters(alphabet: Alphabet, letters: Vec<u8>) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| l as usize >= alphabet.size()) {
            return Err(Error::InvalidLetter {
                letter: char::from_digit(bad as u32, 36).unwrap_or('?'),
                alphabet,
            });
        }
        Ok(FiniteWord { alphabet, letters })
    }

    pub(crate) fn from_letters_unchecked(alphabet: Alphabet, letters: Vec<u8>) -> Self {
        debug_assert!(letters.iter().all(|&l| (l as usize) < alphabet.size()));
        FiniteWord { alphabet, letters }
    }

    pub fn parse(alphabet: Alphabet, s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| {
                alphabet
                    .index_of(c)
                    .ok_or(Error::InvalidLetter { letter: c, alphabet })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteWord { alphabet, letters })
    }

    /// Parses a binary word. Panics on invalid input; meant for literals.
    pub fn binary(s: &str) -> Self {
        Self::parse(Alphabet::Binary, s).expect("invalid binary word literal")
    }

    /// Parses a ternary word. Panics on invalid input; meant for literals.
    pub fn ternary(s: &str) -> Self {
        Self::parse(Alphabet::Ternary, s).expect("invalid ternary word literal")
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `|w|_a`
    pub fn count(&self, letter: u8) -> usize {
        self.letters.iter().filter(|&&l| l == letter).count()
    }

    pub fn first(&self) -> Option<u8> {
        self.letters.first().copied()
    }

    pub fn concat(&self, other: &FiniteWord) -> Result<FiniteWord> {
        self.same_alphabet(other)?;
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Ok(FiniteWord::from_letters_unchecked(self.alphabet, letters))
    }

    pub fn reversed(&self) -> FiniteWord {
        let mut letters = self.letters.clone();
        letters.reverse();
        FiniteWord::from_letters_unchecked(self.alphabet, letters)
    }

    /// Binary letter exchange 0 <-> 1.
    pub fn exchanged(&self) -> Result<FiniteWord> {
        self.require(Alphabet::Binary)?;
        let letters = self.letters.iter().map(|&l| 1 - l).collect();
        Ok(FiniteWord::from_letters_unchecked(self.alphabet, letters))
    }

    /// Moves the first letter to the end.
    pub fn rotated(&self) -> FiniteWord {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            letters.rotate_left(1);
        }
        FiniteWord::from_letters_unchecked(self.alphabet, letters)
    }

    pub(crate) fn require(&self, alphabet: Alphabet) -> Result<()> {
        if self.alphabet == alphabet {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                expected: alphabet,
                found: self.alphabet,
            })
        }
    }

    fn same_alphabet(&self, other: &FiniteWord) -> Result<()> {
        other.require(self.alphabet)
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.letters {
            write!(f, "{}", self.alphabet.symbol(l))?;
        }
        Ok(())
    }
}

/// Infers the alphabet from the first letter; the empty string parses as the
/// empty binary word.
impl FromStr for FiniteWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let alphabet = match s.chars().next() {
            None => Alphabet::Binary,
            Some(c) => Alphabet::of_char(c).ok_or_else(|| parse_err(s, "unknown letter"))?,
        };
        FiniteWord::parse(alphabet, s)
    }
}

impl Serialize for FiniteWord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ParikhVector {
    pub counts: Vec<usize>,
}

impl ParikhVector {
    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }
}

impl Add for &ParikhVector {
    type Output = ParikhVector;

    fn add(self, rhs: &ParikhVector) -> ParikhVector {
        assert_eq!(self.counts.len(), rhs.counts.len(), "Parikh vectors of different alphabets");
        ParikhVector {
            counts: self.counts.iter().zip(&rhs.counts).map(|(a, b)| a + b).collect(),
        }
    }
}

pub fn parikh(w: &FiniteWord) -> ParikhVector {
    let mut counts = vec![0; w.alphabet.size()];
    for &l in &w.letters {
        counts[l as usize] += 1;
    }
    ParikhVector { counts }
}

/// Two equal-length factors whose counts of the letter 1 differ by more than one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalanceViolation {
    pub length: usize,
    pub light_start: usize,
    pub heavy_start: usize,
    pub light_ones: usize,
    pub heavy_ones: usize,
}

/// First length (smallest) at which two factors differ by at least two in
/// their number of ones, or `None` if the binary word is balanced.
pub fn balance_violation(w: &FiniteWord) -> Result<Option<BalanceViolation>> {
    w.require(Alphabet::Binary)?;
    let n = w.len();
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(0usize);
    for &l in &w.letters {
        prefix.push(prefix.last().unwrap() + l as usize);
    }
    for length in 1..n {
        let (mut lo, mut lo_at) = (usize::MAX, 0);
        let (mut hi, mut hi_at) = (0, 0);
        for start in 0..=n - length {
            let ones = prefix[start + length] - prefix[start];
            if ones < lo {
                lo = ones;
                lo_at = start;
            }
            if ones > hi {
                hi = ones;
                hi_at = start;
            }
        }
        if hi > lo + 1 {
            return Ok(Some(BalanceViolation {
                length,
                light_start: lo_at,
                heavy_start: hi_at,
                light_ones: lo,
                heavy_ones: hi,
            }));
        }
    }
    Ok(None)
}

pub fn is_balanced(w: &FiniteWord) -> Result<bool> {
    Ok(balance_violation(w)?.is_none())
}

/// Number of distinct factors of length `n`.
pub fn factor_complexity(w: &FiniteWord, n: usize) -> usize {
    if n == 0 {
        return 1;
    }
    if n > w.len() {
        return 0;
    }
    w.letters.windows(n).collect::<HashSet<_>>().len()
}

/// `w ~ w2` iff `w v = v w2` for some word `v`, i.e. `w2` is a rotation of `w`.
pub fn is_conjugate_word(w: &FiniteWord, w2: &FiniteWord) -> bool {
    if w.alphabet != w2.alphabet || w.len() != w2.len() {
        return false;
    }
    if w.is_empty() {
        return true;
    }
    let doubled: Vec<u8> = w.letters.iter().chain(&w.letters).copied().collect();
    doubled.windows(w.len()).any(|win| win == w2.letters.as_slice())
}
