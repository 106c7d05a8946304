//! Codings of orbits under two- and three-interval exchange transformations.
//!
//! All intervals are left-closed: `[0, slope)`, `[slope, 1)` for the 2iet and
//! `[0, alpha)`, `[alpha, alpha+beta)`, `[alpha+beta, 1)` for the 3iet.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quad::QuadNumber;
use crate::words::{Alphabet, FiniteWord};

/// Exchange of `[0, slope)` and `[slope, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TwoIet {
    slope: QuadNumber,
}

impl TwoIet {
    pub fn new(slope: QuadNumber) -> Result<Self> {
        let below_zero = slope.signum() == Ordering::Less;
        let above_one = slope.compare(&QuadNumber::ONE)? == Ordering::Greater;
        if below_zero || above_one {
            return Err(Error::Domain(format!("slope {slope} outside [0,1]")));
        }
        Ok(TwoIet { slope })
    }

    pub fn slope(&self) -> QuadNumber {
        self.slope
    }

    fn letter(&self, x: &QuadNumber) -> Result<u8> {
        Ok(u8::from(x.compare(&self.slope)? != Ordering::Less))
    }

    /// One application of the transformation.
    pub fn step(&self, x: &QuadNumber) -> Result<QuadNumber> {
        if self.letter(x)? == 0 {
            x.checked_add(&QuadNumber::ONE.checked_sub(&self.slope)?)
        } else {
            x.checked_sub(&self.slope)
        }
    }

    /// The point `S^i x0`, computed in closed form as `{x0 - i*slope}`.
    pub fn orbit_point(&self, x0: &QuadNumber, i: i64) -> Result<QuadNumber> {
        let shift = self.slope.checked_mul(&QuadNumber::integer(i))?;
        x0.checked_sub(&shift)?.frac()
    }
}

/// Exchange of three intervals with permutation (3,2,1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ThreeIet {
    alpha: QuadNumber,
    beta: QuadNumber,
}

impl ThreeIet {
    pub fn new(alpha: QuadNumber, beta: QuadNumber) -> Result<Self> {
        let sum = alpha.checked_add(&beta)?;
        if alpha.signum() != Ordering::Greater
            || beta.signum() != Ordering::Greater
            || sum.compare(&QuadNumber::ONE)? != Ordering::Less
        {
            return Err(Error::Domain(format!(
                "need 0 < alpha, 0 < beta, alpha + beta < 1; got alpha={alpha}, beta={beta}"
            )));
        }
        Ok(ThreeIet { alpha, beta })
    }

    pub fn alpha(&self) -> QuadNumber {
        self.alpha
    }

    pub fn beta(&self) -> QuadNumber {
        self.beta
    }

    pub fn gamma(&self) -> QuadNumber {
        QuadNumber::ONE
            .checked_sub(&self.alpha)
            .and_then(|x| x.checked_sub(&self.beta))
            .expect("validated at construction")
    }

    /// Index of the interval (A = 0, B = 1, C = 2) containing `x`.
    pub fn letter(&self, x: &QuadNumber) -> Result<u8> {
        if x.compare(&self.alpha)? == Ordering::Less {
            return Ok(0);
        }
        let cut = self.alpha.checked_add(&self.beta)?;
        Ok(if x.compare(&cut)? == Ordering::Less { 1 } else { 2 })
    }

    pub fn step(&self, x: &QuadNumber) -> Result<QuadNumber> {
        let shift = match self.letter(x)? {
            0 => self.beta.checked_add(&self.gamma())?,
            1 => self.gamma().checked_sub(&self.alpha)?,
            _ => self.alpha.checked_add(&self.beta)?.neg(),
        };
        x.checked_add(&shift)
    }

    /// `(1 - alpha) / (1 + beta)`; the coding is aperiodic iff this is irrational.
    pub fn rotation_ratio(&self) -> Result<QuadNumber> {
        let num = QuadNumber::ONE.checked_sub(&self.alpha)?;
        let den = QuadNumber::ONE.checked_add(&self.beta)?;
        num.checked_div(&den)
    }
}

fn check_start(x0: &QuadNumber) -> Result<()> {
    if x0.in_unit_interval() {
        Ok(())
    } else {
        Err(Error::Domain(format!("start point {x0} outside [0,1)")))
    }
}

/// Prefix of length `n` of the coding of the orbit of `x0` under the 2iet.
pub fn two_iet_code(t: &TwoIet, x0: &QuadNumber, n: usize) -> Result<FiniteWord> {
    check_start(x0)?;
    let mut x = *x0;
    let mut letters = Vec::with_capacity(n);
    for _ in 0..n {
        letters.push(t.letter(&x)?);
        x = t.step(&x)?;
    }
    Ok(FiniteWord::from_letters_unchecked(Alphabet::Binary, letters))
}

/// The length-`n` coding of the 2iet with slope `p/n` started at `k/n`,
/// computed with residues: position `i` is 0 iff `(k - i p) mod n < p`.
pub fn coding_word_k(p: u64, n: u64, k: i64) -> Result<FiniteWord> {
    if p >= n || gcd(p, n) != 1 {
        return Err(Error::NotCoprime { p, n });
    }
    let (p, n) = (p as i64, n as i64);
    let letters = (0..n)
        .map(|i| u8::from((k - i * p).rem_euclid(n) >= p))
        .collect();
    Ok(FiniteWord::from_letters_unchecked(Alphabet::Binary, letters))
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Prefix of length `n` of the coding of the orbit of `x0` under the 3iet.
pub fn three_iet_code(t: &ThreeIet, x0: &QuadNumber, n: usize) -> Result<FiniteWord> {
    check_start(x0)?;
    let mut x = *x0;
    let mut letters = Vec::with_capacity(n);
    for _ in 0..n {
        letters.push(t.letter(&x)?);
        x = t.step(&x)?;
    }
    Ok(FiniteWord::from_letters_unchecked(Alphabet::Ternary, letters))
}

pub fn is_nondegenerate_params(t: &ThreeIet) -> Result<bool> {
    Ok(!t.rotation_ratio()?.is_rational())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QuadNumber {
        s.parse().unwrap()
    }

    fn code2(slope: &str, x0: &str, n: usize) -> String {
        two_iet_code(&TwoIet::new(q(slope)).unwrap(), &q(x0), n)
            .unwrap()
            .to_string()
    }

    #[test]
    fn two_iet_examples() {
        assert_eq!(code2("2/3", "0", 3), "001");
        assert_eq!(code2("(-1+1*sqrt(5))/2", "0", 3), "001");
        assert_eq!(code2("1", "0", 2), "00");
    }

    #[test]
    fn two_iet_domain_errors() {
        assert!(TwoIet::new(q("3/2")).is_err());
        assert!(TwoIet::new(q("-1/2")).is_err());
        let t = TwoIet::new(q("1/2")).unwrap();
        assert!(two_iet_code(&t, &q("1"), 3).is_err());
        assert!(two_iet_code(&t, &q("-1/3"), 3).is_err());
    }

    #[test]
    fn iteration_matches_closed_form_orbit() {
        let t = TwoIet::new(q("(-1+1*sqrt(5))/2")).unwrap();
        let mut x = q("1/7");
        for i in 0..200 {
            assert_eq!(x, t.orbit_point(&q("1/7"), i).unwrap());
            x = t.step(&x).unwrap();
        }
    }

    #[test]
    fn residue_coding_examples() {
        assert_eq!(coding_word_k(2, 3, 0).unwrap().to_string(), "001");
        assert_eq!(coding_word_k(2, 3, 1).unwrap().to_string(), "010");
        assert_eq!(coding_word_k(2, 3, 2).unwrap().to_string(), "100");
        assert_eq!(coding_word_k(2, 3, -1), coding_word_k(2, 3, 2));
        assert_eq!(coding_word_k(2, 4, 0), Err(Error::NotCoprime { p: 2, n: 4 }));
        assert!(coding_word_k(3, 3, 0).is_err());
    }

    #[test]
    fn three_iet_examples() {
        let t = ThreeIet::new(q("2/5"), q("3/10")).unwrap();
        assert_eq!(three_iet_code(&t, &q("0"), 3).unwrap().to_string(), "ABB");
        assert_eq!(three_iet_code(&t, &q("7/10"), 1).unwrap().to_string(), "C");
        let t = ThreeIet::new(q("(3-1*sqrt(5))/2"), q("1/4")).unwrap();
        assert_eq!(three_iet_code(&t, &q("0"), 1).unwrap().to_string(), "A");
    }

    #[test]
    fn three_iet_parameter_validation() {
        assert!(ThreeIet::new(q("0"), q("1/2")).is_err());
        assert!(ThreeIet::new(q("1/2"), q("1/2")).is_err());
        assert!(ThreeIet::new(q("1/2"), q("sqrt(2)")).is_err());
    }

    #[test]
    fn nondegeneracy_examples() {
        let t = |a: &str, b: &str| ThreeIet::new(q(a), q(b)).unwrap();
        assert!(!is_nondegenerate_params(&t("1/4", "1/4")).unwrap());
        assert!(is_nondegenerate_params(&t("(3-1*sqrt(5))/2", "1/4")).unwrap());
        let trap = t("(3-1*sqrt(5))/2", "(-2+1*sqrt(5))/1");
        assert_eq!(trap.rotation_ratio().unwrap(), q("1/2"));
        assert!(!is_nondegenerate_params(&trap).unwrap());
    }
}
