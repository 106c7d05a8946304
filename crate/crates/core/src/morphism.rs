//! Morphisms of the free monoids `{0,1}*` and `{A,B,C}*`, and Sturmian
//! morphisms: the standard morphism of a unimodular matrix, its chain of
//! right conjugates, and the start index `k` of the coding word `phi(01)`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{parse_err, Error, Result};
use crate::iet::coding_word_k;
use crate::intmat::{IntMatrix2, IntMatrix3};
use crate::words::{parikh, Alphabet, FiniteWord};

/// A morphism over one alphabet, given by the images of its letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Morphism {
    alphabet: Alphabet,
    images: Vec<FiniteWord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Incidence {
    Two(IntMatrix2),
    Three(IntMatrix3),
}

impl Morphism {
    pub fn new(alphabet: Alphabet, images: Vec<FiniteWord>) -> Result<Self> {
        if images.len() != alphabet.size() {
            return Err(Error::Domain(format!(
                "a {alphabet} morphism needs {} images, got {}",
                alphabet.size(),
                images.len()
            )));
        }
        for image in &images {
            image.require(alphabet)?;
        }
        Ok(Morphism { alphabet, images })
    }

    pub fn identity(alphabet: Alphabet) -> Self {
        let images = alphabet
            .letters()
            .map(|l| FiniteWord::from_letters_unchecked(alphabet, vec![l]))
            .collect();
        Morphism { alphabet, images }
    }

    /// Binary morphism from two image literals. Panics on invalid letters.
    pub fn binary(zero: &str, one: &str) -> Self {
        Morphism {
            alphabet: Alphabet::Binary,
            images: vec![FiniteWord::binary(zero), FiniteWord::binary(one)],
        }
    }

    /// Ternary morphism from three image literals. Panics on invalid letters.
    pub fn ternary(a: &str, b: &str, c: &str) -> Self {
        Morphism {
            alphabet: Alphabet::Ternary,
            images: [a, b, c].iter().map(|s| FiniteWord::ternary(s)).collect(),
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn image(&self, letter: u8) -> &FiniteWord {
        &self.images[letter as usize]
    }

    pub fn images(&self) -> &[FiniteWord] {
        &self.images
    }

    pub fn is_non_erasing(&self) -> bool {
        self.images.iter().all(|w| !w.is_empty())
    }

    pub fn apply(&self, w: &FiniteWord) -> Result<FiniteWord> {
        w.require(self.alphabet)?;
        let total = w.letters().iter().map(|&l| self.images[l as usize].len()).sum();
        let mut letters = Vec::with_capacity(total);
        for &l in w.letters() {
            letters.extend_from_slice(self.images[l as usize].letters());
        }
        Ok(FiniteWord::from_letters_unchecked(self.alphabet, letters))
    }

    pub fn incidence_matrix(&self) -> Incidence {
        match self.alphabet {
            Alphabet::Binary => Incidence::Two(self.binary_matrix()),
            Alphabet::Ternary => Incidence::Three(self.ternary_matrix()),
        }
    }

    fn rows(&self) -> Vec<Vec<u64>> {
        self.images
            .iter()
            .map(|w| parikh(w).counts.into_iter().map(|c| c as u64).collect())
            .collect()
    }

    /// Incidence matrix of a binary morphism.
    pub fn incidence2(&self) -> Result<IntMatrix2> {
        self.require(Alphabet::Binary)?;
        Ok(self.binary_matrix())
    }

    /// Incidence matrix of a ternary morphism.
    pub fn incidence3(&self) -> Result<IntMatrix3> {
        self.require(Alphabet::Ternary)?;
        Ok(self.ternary_matrix())
    }

    fn binary_matrix(&self) -> IntMatrix2 {
        let r = self.rows();
        IntMatrix2::new(r[0][0], r[0][1], r[1][0], r[1][1])
    }

    fn ternary_matrix(&self) -> IntMatrix3 {
        let r = self.rows();
        IntMatrix3::new([
            [r[0][0], r[0][1], r[0][2]],
            [r[1][0], r[1][1], r[1][2]],
            [r[2][0], r[2][1], r[2][2]],
        ])
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
}

/// `outer ∘ inner`, i.e. `a -> outer(inner(a))`.
pub fn compose(outer: &Morphism, inner: &Morphism) -> Result<Morphism> {
    inner.require(outer.alphabet)?;
    let images = inner
        .images
        .iter()
        .map(|w| outer.apply(w))
        .collect::<Result<Vec<_>>>()?;
    Ok(Morphism {
        alphabet: outer.alphabet,
        images,
    })
}

pub fn apply(m: &Morphism, w: &FiniteWord) -> Result<FiniteWord> {
    m.apply(w)
}

pub fn incidence_matrix(m: &Morphism) -> Incidence {
    m.incidence_matrix()
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, image) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}->{}", self.alphabet.symbol(i as u8), image)?;
        }
        Ok(())
    }
}

impl Serialize for Morphism {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Format `0->001,1->00101` or `A->AB,B->ABABB,C->ABAC`; whitespace is
/// ignored and every letter must be mapped exactly once.
impl FromStr for Morphism {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut alphabet = None;
        let mut images: Vec<Option<FiniteWord>> = vec![None, None, None];
        for rule in compact.split(',') {
            let (lhs, rhs) = rule
                .split_once("->")
                .ok_or_else(|| parse_err(rule, "expected 'letter->image'"))?;
            let mut chars = lhs.chars();
            let (Some(letter), None) = (chars.next(), chars.next()) else {
                return Err(parse_err(lhs, "expected a single letter"));
            };
            let this = Alphabet::of_char(letter).ok_or_else(|| parse_err(lhs, "unknown letter"))?;
            let alphabet = *alphabet.get_or_insert(this);
            if this != alphabet {
                return Err(parse_err(lhs, format!("letter outside the {alphabet} alphabet")));
            }
            let slot = &mut images[alphabet.index_of(letter).unwrap() as usize];
            if slot.is_some() {
                return Err(parse_err(lhs, "letter mapped twice"));
            }
            *slot = Some(FiniteWord::parse(alphabet, rhs).map_err(|_| parse_err(rhs, "invalid image"))?);
        }
        let alphabet = alphabet.ok_or_else(|| parse_err(s, "empty morphism"))?;
        let images = images
            .into_iter()
            .take(alphabet.size())
            .enumerate()
            .map(|(i, w)| {
                w.ok_or_else(|| parse_err(s, format!("no image for {}", alphabet.symbol(i as u8))))
            })
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(alphabet, images)
    }
}

/// Operators on pairs of words: `L(x,y) = (x, xy)` and `R(x,y) = (yx, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PairOp {
    L,
    R,
}

/// Sequence of operators taking `(0,1)` to the standard pair whose Parikh
/// rows are those of `a` (swapped when `det a = -1`), in application order.
///
/// Reduction runs backwards: the larger row (componentwise) must be the last
/// one built, so it is replaced by its difference with the other row.
pub fn standard_decomposition(a: &IntMatrix2) -> Result<Vec<PairOp>> {
    let det = a.unimodular_det()?;
    let (mut x, mut y) = if det == 1 {
        ((a.p0, a.q0), (a.p1, a.q1))
    } else {
        ((a.p1, a.q1), (a.p0, a.q0))
    };
    let mut ops = Vec::new();
    while (x, y) != ((1, 0), (0, 1)) {
        if x.0 >= y.0 && x.1 >= y.1 {
            x = (x.0 - y.0, x.1 - y.1);
            ops.push(PairOp::R);
        } else if y.0 >= x.0 && y.1 >= x.1 {
            y = (y.0 - x.0, y.1 - x.1);
            ops.push(PairOp::L);
        } else {
            return Err(Error::InvalidMatrix(format!("reduction of {a} is stuck")));
        }
    }
    ops.reverse();
    Ok(ops)
}

/// Standard pair obtained from `(0,1)` by applying `ops` in order.
pub fn standard_pair(ops: &[PairOp]) -> (FiniteWord, FiniteWord) {
    let mut x = FiniteWord::binary("0");
    let mut y = FiniteWord::binary("1");
    for op in ops {
        match op {
            PairOp::L => y = x.concat(&y).expect("binary"),
            PairOp::R => x = y.concat(&x).expect("binary"),
        }
    }
    (x, y)
}

/// The unique standard morphism with incidence matrix `a`.
pub fn standard_morphism(a: &IntMatrix2) -> Result<Morphism> {
    let ops = standard_decomposition(a)?;
    let (x, y) = standard_pair(&ops);
    let images = if a.det() == 1 { vec![x, y] } else { vec![y, x] };
    Ok(Morphism {
        alphabet: Alphabet::Binary,
        images,
    })
}

pub fn is_standard(m: &Morphism) -> bool {
    m.incidence2()
        .and_then(|a| standard_morphism(&a))
        .is_ok_and(|s| &s == m)
}

/// Conjugates by the common first letter `c`: `a -> c^{-1} m(a) c`. `None`
/// when the images do not all start with the same letter.
pub fn right_conjugate_step(m: &Morphism) -> Option<Morphism> {
    let c = m.images.first()?.first()?;
    if m.images.iter().any(|w| w.first() != Some(c)) {
        return None;
    }
    Some(Morphism {
        alphabet: m.alphabet,
        images: m.images.iter().map(FiniteWord::rotated).collect(),
    })
}

/// All Sturmian morphisms with matrix `a`: the standard morphism followed by
/// its successive right conjugates.
pub fn enumerate_sturmian(a: &IntMatrix2) -> Result<Vec<Morphism>> {
    let mut current = standard_morphism(a)?;
    let mut chain = Vec::with_capacity(a.norm() as usize);
    loop {
        let next = right_conjugate_step(&current);
        chain.push(current);
        match next {
            Some(m) => current = m,
            None => break,
        }
    }
    Ok(chain)
}

/// The `k` in `0..N` with `m(01)` equal to the coding of the 2iet of slope
/// `p/N` started at `k/N`, where `p = p0 + p1` and `N = ||A||`.
pub fn k_index(m: &Morphism) -> Result<u64> {
    let a = m.incidence2()?;
    a.unimodular_det()?;
    let image = m.apply(&FiniteWord::binary("01"))?;
    let n = a.norm();
    for k in 0..n {
        if coding_word_k(a.p(), n, k as i64)? == image {
            return Ok(k);
        }
    }
    Err(Error::NotSturmian(format!("{m}: image of 01 is not a rational 2iet coding")))
}

pub fn is_sturmian_morphism(m: &Morphism) -> bool {
    if m.alphabet != Alphabet::Binary || !m.is_non_erasing() {
        return false;
    }
    let a = m.binary_matrix();
    if !a.is_unimodular() {
        return false;
    }
    enumerate_sturmian(&a).is_ok_and(|chain| chain.contains(m))
}

/// Distinctness check used by the census: every element appears once.
pub fn all_distinct(chain: &[Morphism]) -> bool {
    chain.iter().collect::<HashSet<_>>().len() == chain.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Morphism {
        s.parse().unwrap()
    }

    fn mat(s: &str) -> IntMatrix2 {
        s.parse().unwrap()
    }

    #[test]
    fn apply_examples() {
        let phi = Morphism::binary("001", "00101");
        assert_eq!(phi.apply(&FiniteWord::binary("01")).unwrap().to_string(), "00100101");
        let w = FiniteWord::binary("0110");
        assert_eq!(Morphism::identity(Alphabet::Binary).apply(&w).unwrap(), w);
        assert!(phi.apply(&FiniteWord::binary("")).unwrap().is_empty());
        assert!(phi.apply(&FiniteWord::ternary("A")).is_err());
    }

    #[test]
    fn compose_examples() {
        let swap = Morphism::binary("1", "0");
        let inner = Morphism::binary("0", "01");
        let composed = compose(&swap, &inner).unwrap();
        assert_eq!(composed, Morphism::binary("1", "10"));
        assert_eq!(
            composed.incidence2().unwrap(),
            inner.incidence2().unwrap().mul(&swap.incidence2().unwrap())
        );
        let id = Morphism::identity(Alphabet::Binary);
        assert_eq!(compose(&inner, &id).unwrap(), inner);
        assert!(compose(&inner, &Morphism::identity(Alphabet::Ternary)).is_err());
    }

    #[test]
    fn incidence_examples() {
        assert_eq!(Morphism::binary("001", "00101").incidence2().unwrap(), mat("2,1;3,2"));
        assert_eq!(
            Morphism::identity(Alphabet::Binary).incidence_matrix(),
            Incidence::Two(IntMatrix2::IDENTITY)
        );
        assert_eq!(
            Morphism::ternary("AB", "ABABB", "ABAC").incidence3().unwrap().to_string(),
            "1,1,0;2,3,0;2,1,1"
        );
    }

    #[test]
    fn parse_and_display() {
        let eta = m(" A->AB, B->ABABB ,C->ABAC ");
        assert_eq!(eta.to_string(), "A->AB,B->ABABB,C->ABAC");
        assert_eq!(m("1->00101,0->001"), Morphism::binary("001", "00101"));
        assert!("0->0,0->1".parse::<Morphism>().is_err());
        assert!("0->0".parse::<Morphism>().is_err());
        assert!("0->0,A->B".parse::<Morphism>().is_err());
        assert!("0->2,1->1".parse::<Morphism>().is_err());
        assert!("".parse::<Morphism>().is_err());
    }

    #[test]
    fn standard_morphism_examples() {
        assert_eq!(
            standard_morphism(&IntMatrix2::IDENTITY).unwrap(),
            Morphism::identity(Alphabet::Binary)
        );
        assert_eq!(standard_morphism(&mat("1,0;1,1")).unwrap(), Morphism::binary("0", "01"));
        assert_eq!(standard_morphism(&mat("1,1;1,0")).unwrap(), Morphism::binary("01", "0"));
        assert_eq!(
            standard_decomposition(&mat("2,1;3,2")).unwrap(),
            vec![PairOp::L, PairOp::R, PairOp::L]
        );
        assert_eq!(
            standard_morphism(&mat("2,1;2,1")),
            Err(Error::NotUnimodular { det: 0 })
        );
    }

    #[test]
    fn right_conjugate_examples() {
        assert_eq!(
            right_conjugate_step(&Morphism::binary("001", "00101")),
            Some(Morphism::binary("010", "01010"))
        );
        assert_eq!(
            right_conjugate_step(&Morphism::binary("0", "01")),
            Some(Morphism::binary("0", "10"))
        );
        assert_eq!(right_conjugate_step(&Morphism::binary("0", "10")), None);
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(
            enumerate_sturmian(&IntMatrix2::IDENTITY).unwrap(),
            vec![Morphism::identity(Alphabet::Binary)]
        );
        assert_eq!(
            enumerate_sturmian(&mat("1,0;1,1")).unwrap(),
            vec![Morphism::binary("0", "01"), Morphism::binary("0", "10")]
        );
        let chain = enumerate_sturmian(&mat("2,1;3,2")).unwrap();
        assert_eq!(chain.len(), 7);
        assert!(chain.contains(&Morphism::binary("001", "00101")));
        assert!(chain.contains(&Morphism::binary("010", "01001")));
        assert!(all_distinct(&chain));
    }

    #[test]
    fn k_index_examples() {
        assert_eq!(k_index(&Morphism::binary("01", "0")).unwrap(), 1);
        assert_eq!(k_index(&Morphism::binary("10", "0")).unwrap(), 2);
        assert_eq!(k_index(&Morphism::identity(Alphabet::Binary)).unwrap(), 0);
        assert!(k_index(&Morphism::binary("01", "10")).is_err());
        assert!(matches!(k_index(&Morphism::binary("01", "110")), Err(Error::NotSturmian(_))));
    }

    #[test]
    fn sturmian_membership_examples() {
        assert!(is_sturmian_morphism(&Morphism::binary("001", "00101")));
        assert!(!is_sturmian_morphism(&Morphism::binary("01", "10")));
        assert!(is_sturmian_morphism(&Morphism::identity(Alphabet::Binary)));
        assert!(!is_sturmian_morphism(&Morphism::binary("", "1")));
        assert!(!is_sturmian_morphism(&Morphism::binary("0", "11")));
    }
}
