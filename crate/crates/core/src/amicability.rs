//! Projections `sigma01`/`sigma10` from `{A,B,C}*` to `{0,1}*`, amicable words
//! and morphisms, and ternarization.
//!
//! A pair `w`, `w'` is amicable when it is the pair of projections of one
//! ternary factor of a 3iet word. For finite words that factor condition is
//! decided by requiring both binary words to be balanced.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::iet::{is_nondegenerate_params, three_iet_code, ThreeIet};
use crate::morphism::{compose, is_sturmian_morphism, k_index, Morphism};
use crate::quad::QuadNumber;
use crate::words::{balance_violation, factor_complexity, is_balanced, Alphabet, BalanceViolation, FiniteWord};

const A: u8 = 0;
const B: u8 = 1;
const C: u8 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Projection {
    #[serde(rename = "sigma01")]
    Sigma01,
    #[serde(rename = "sigma10")]
    Sigma10,
}

impl fmt::Display for Projection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Projection::Sigma01 => "sigma01",
            Projection::Sigma10 => "sigma10",
        })
    }
}

/// `A -> 0`, `C -> 1`, `B -> 01` (or `10`).
pub fn sigma(v: &FiniteWord, which: Projection) -> Result<FiniteWord> {
    v.require(Alphabet::Ternary)?;
    let b_image: [u8; 2] = match which {
        Projection::Sigma01 => [0, 1],
        Projection::Sigma10 => [1, 0],
    };
    let mut letters = Vec::with_capacity(v.len() + v.count(B));
    for &l in v.letters() {
        match l {
            A => letters.push(0),
            B => letters.extend_from_slice(&b_image),
            _ => letters.push(1),
        }
    }
    Ok(FiniteWord::from_letters_unchecked(Alphabet::Binary, letters))
}

/// The ternary morphism `sigma` seen as a map on letters.
pub fn sigma_morphism(which: Projection) -> [FiniteWord; 3] {
    [A, B, C].map(|l| {
        sigma(&FiniteWord::from_letters_unchecked(Alphabet::Ternary, vec![l]), which)
            .expect("ternary letter")
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AmicabilityWitness {
    /// The ternarization.
    pub v: FiniteWord,
    /// Number of letters B in `v`.
    pub b: usize,
}

/// The ternary word whose projections are `w` and `w2`.
pub fn ternarize_words(w: &FiniteWord, w2: &FiniteWord) -> Result<AmicabilityWitness> {
    w.require(Alphabet::Binary)?;
    w2.require(Alphabet::Binary)?;
    if w.len() != w2.len() {
        return Err(Error::NotAmicable(format!(
            "lengths differ: |{w}| = {}, |{w2}| = {}",
            w.len(),
            w2.len()
        )));
    }
    let (x, y) = (w.letters(), w2.letters());
    let mut v = Vec::with_capacity(x.len());
    let mut i = 0;
    while i < x.len() {
        match (x[i], y[i]) {
            (0, 0) => v.push(A),
            (1, 1) => v.push(C),
            (0, 1) => {
                if i + 1 == x.len() {
                    return Err(Error::NotAmicable(format!("{w} vs {w2}: dangling 0/1 at position {i}")));
                }
                if (x[i + 1], y[i + 1]) != (1, 0) {
                    return Err(Error::NotAmicable(format!(
                        "{w} vs {w2}: 0/1 at position {i} not followed by 1/0"
                    )));
                }
                v.push(B);
                i += 1;
            }
            _ => {
                return Err(Error::NotAmicable(format!("{w} vs {w2}: 1/0 mismatch at position {i}")));
            }
        }
        i += 1;
    }
    for word in [w, w2] {
        if !is_balanced(word)? {
            return Err(Error::NotAmicable(format!("{word} is not balanced")));
        }
    }
    let v = FiniteWord::from_letters_unchecked(Alphabet::Ternary, v);
    let b = v.count(B);
    Ok(AmicabilityWitness { v, b })
}

/// `Some(b)` iff `w` is `b`-amicable to `w2`.
pub fn amicable_words_b(w: &FiniteWord, w2: &FiniteWord) -> Option<usize> {
    ternarize_words(w, w2).ok().map(|t| t.b)
}

/// Counts of B in the ternarizations of the images of 0, of 01 vs 10, and of 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AmicableCounts {
    pub b0: usize,
    pub b1: usize,
    pub b: usize,
}

fn images_01_10(phi: &Morphism, psi: &Morphism) -> Result<(FiniteWord, FiniteWord)> {
    let w = phi.image(0).concat(phi.image(1))?;
    let w2 = psi.image(1).concat(psi.image(0))?;
    Ok((w, w2))
}

fn ternarize_triple(phi: &Morphism, psi: &Morphism) -> Result<[AmicabilityWitness; 3]> {
    phi.require(Alphabet::Binary)?;
    psi.require(Alphabet::Binary)?;
    let (w01, w10) = images_01_10(phi, psi)?;
    Ok([
        ternarize_words(phi.image(0), psi.image(0))?,
        ternarize_words(&w01, &w10)?,
        ternarize_words(phi.image(1), psi.image(1))?,
    ])
}

/// `Some` iff `phi(0) ∝ psi(0)`, `phi(01) ∝ psi(10)` and `phi(1) ∝ psi(1)`.
pub fn amicable_morphisms(phi: &Morphism, psi: &Morphism) -> Option<AmicableCounts> {
    let [t0, tb, t1] = ternarize_triple(phi, psi).ok()?;
    Some(AmicableCounts {
        b0: t0.b,
        b1: t1.b,
        b: tb.b,
    })
}

/// `A -> ter(phi(0), psi(0))`, `B -> ter(phi(01), psi(10))`, `C -> ter(phi(1), psi(1))`.
pub fn ternarize_morphisms(phi: &Morphism, psi: &Morphism) -> Result<Morphism> {
    let [t0, tb, t1] = ternarize_triple(phi, psi)?;
    Morphism::new(Alphabet::Ternary, vec![t0.v, tb.v, t1.v])
}

/// An amicable pair of Sturmian morphisms with its ternarization and indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AmicablePair {
    pub phi: Morphism,
    pub psi: Morphism,
    pub eta: Morphism,
    pub b0: usize,
    pub b1: usize,
    pub b: usize,
    pub k: u64,
    pub kbar: u64,
}

impl AmicablePair {
    /// Builds the record when `phi ∝ psi`; both must be Sturmian.
    pub fn new(phi: &Morphism, psi: &Morphism) -> Result<Self> {
        let counts = amicable_morphisms(phi, psi)
            .ok_or_else(|| Error::NotAmicable(format!("{phi} is not amicable to {psi}")))?;
        Ok(AmicablePair {
            eta: ternarize_morphisms(phi, psi)?,
            phi: phi.clone(),
            psi: psi.clone(),
            b0: counts.b0,
            b1: counts.b1,
            b: counts.b,
            k: k_index(phi)?,
            kbar: k_index(psi)?,
        })
    }
}

/// Why a ternary morphism is not a ternarization of Sturmian morphisms.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NotTernarization {
    #[error("not a non-erasing ternary morphism")]
    NotTernary,
    #[error("sigma01(B)={image} != {expected}")]
    Sigma01 { image: FiniteWord, expected: FiniteWord },
    #[error("sigma10(B)={image} != {expected}")]
    Sigma10 { image: FiniteWord, expected: FiniteWord },
    #[error("recovered {which} = {morphism} is not Sturmian")]
    NotSturmian { which: &'static str, morphism: Morphism },
    #[error("recovered pair {phi} / {psi} is not amicable")]
    NotAmicable { phi: Morphism, psi: Morphism },
}

/// Decides membership in the monoid of ternarizations. On success returns
/// the pair `(phi, psi)` with `eta = ter(phi, psi)`.
pub fn is_ternarization(eta: &Morphism) -> std::result::Result<(Morphism, Morphism), NotTernarization> {
    if eta.alphabet() != Alphabet::Ternary || !eta.is_non_erasing() {
        return Err(NotTernarization::NotTernary);
    }
    let proj = |w: &FiniteWord, which| sigma(w, which).expect("ternary image");
    let (ea, eb, ec) = (eta.image(A), eta.image(B), eta.image(C));

    let image = proj(eb, Projection::Sigma01);
    let expected = proj(&ea.concat(ec).expect("ternary"), Projection::Sigma01);
    if image != expected {
        return Err(NotTernarization::Sigma01 { image, expected });
    }
    let image = proj(eb, Projection::Sigma10);
    let expected = proj(&ec.concat(ea).expect("ternary"), Projection::Sigma10);
    if image != expected {
        return Err(NotTernarization::Sigma10 { image, expected });
    }

    let phi = Morphism::new(
        Alphabet::Binary,
        vec![proj(ea, Projection::Sigma01), proj(ec, Projection::Sigma01)],
    )
    .expect("binary images");
    let psi = Morphism::new(
        Alphabet::Binary,
        vec![proj(ea, Projection::Sigma10), proj(ec, Projection::Sigma10)],
    )
    .expect("binary images");
    for (which, m) in [("phi", &phi), ("psi", &psi)] {
        if !is_sturmian_morphism(m) {
            return Err(NotTernarization::NotSturmian {
                which,
                morphism: m.clone(),
            });
        }
    }
    match ternarize_morphisms(&phi, &psi) {
        Ok(recovered) if &recovered == eta => Ok((phi, psi)),
        _ => Err(NotTernarization::NotAmicable { phi, psi }),
    }
}

/// `sigma01(eta(X)) = phi(sigma01(X))` and `sigma10(eta(X)) = psi(sigma10(X))`
/// for every letter X.
pub fn intertwines(eta: &Morphism, phi: &Morphism, psi: &Morphism) -> Result<bool> {
    for (which, m) in [(Projection::Sigma01, phi), (Projection::Sigma10, psi)] {
        let images = sigma_morphism(which);
        for x in [A, B, C] {
            if sigma(eta.image(x), which)? != m.apply(&images[x as usize])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `ter(phi1, psi1) ∘ ter(phi2, psi2) == ter(phi1 ∘ phi2, psi1 ∘ psi2)`.
pub fn closure_holds(p1: &AmicablePair, p2: &AmicablePair) -> Result<bool> {
    let lhs = compose(&p1.eta, &p2.eta)?;
    let rhs = ternarize_morphisms(&compose(&p1.phi, &p2.phi)?, &compose(&p1.psi, &p2.psi)?)?;
    Ok(lhs == rhs)
}

/// Prefix length and factor-length bound for the finite Sturmian test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PreservationConfig {
    pub n: usize,
    pub kmax: usize,
}

impl Default for PreservationConfig {
    fn default() -> Self {
        PreservationConfig { n: 1000, kmax: 20 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SturmianDefect {
    Unbalanced(BalanceViolation),
    Complexity { m: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PreservationViolation {
    pub projection: Projection,
    pub defect: SturmianDefect,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PreservationReport {
    pub holds: bool,
    pub image_length: usize,
    pub violation: Option<PreservationViolation>,
}

/// Balanced with `m + 1` factors of each length `1 <= m <= kmax`.
pub fn sturmian_defect(w: &FiniteWord, kmax: usize) -> Result<Option<SturmianDefect>> {
    if let Some(v) = balance_violation(w)? {
        return Ok(Some(SturmianDefect::Unbalanced(v)));
    }
    for m in 1..=kmax {
        let found = factor_complexity(w, m);
        if found != m + 1 {
            return Ok(Some(SturmianDefect::Complexity { m, found }));
        }
    }
    Ok(None)
}

/// Applies `eta` to the length-`n` coding of `x0` under `t` and tests both
/// projections of the image for the finite Sturmian property.
pub fn check_3iet_preservation(
    eta: &Morphism,
    t: &ThreeIet,
    x0: &QuadNumber,
    config: PreservationConfig,
) -> Result<PreservationReport> {
    eta.require(Alphabet::Ternary)?;
    if !is_nondegenerate_params(t)? {
        return Err(Error::DegenerateParameters(t.rotation_ratio()?.to_string()));
    }
    let u = three_iet_code(t, x0, config.n)?;
    check_image_preservation(eta, &u, config.kmax)
}

/// Same test against an already generated 3iet prefix `u`.
pub fn check_image_preservation(eta: &Morphism, u: &FiniteWord, kmax: usize) -> Result<PreservationReport> {
    let image = eta.apply(u)?;
    for which in [Projection::Sigma01, Projection::Sigma10] {
        if let Some(defect) = sturmian_defect(&sigma(&image, which)?, kmax)? {
            return Ok(PreservationReport {
                holds: false,
                image_length: image.len(),
                violation: Some(PreservationViolation {
                    projection: which,
                    defect,
                }),
            });
        }
    }
    Ok(PreservationReport {
        holds: true,
        image_length: image.len(),
        violation: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> FiniteWord {
        FiniteWord::binary(s)
    }

    fn t(s: &str) -> FiniteWord {
        FiniteWord::ternary(s)
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(&t("ABC"), Projection::Sigma01).unwrap(), b("0011"));
        assert_eq!(sigma(&t("ABC"), Projection::Sigma10).unwrap(), b("0101"));
        assert!(sigma(&t(""), Projection::Sigma01).unwrap().is_empty());
        assert!(sigma(&b("01"), Projection::Sigma01).is_err());
    }

    #[test]
    fn ternarize_word_examples() {
        let w = ternarize_words(&b("001"), &b("010")).unwrap();
        assert_eq!((w.v.to_string(), w.b), ("AB".into(), 1));
        let w = ternarize_words(&b("00101"), &b("01001")).unwrap();
        assert_eq!((w.v.to_string(), w.b), ("ABAC".into(), 1));
        let w = ternarize_words(&b("01"), &b("01")).unwrap();
        assert_eq!((w.v.to_string(), w.b), ("AC".into(), 0));
        assert!(matches!(ternarize_words(&b("10"), &b("01")), Err(Error::NotAmicable(_))));
    }

    #[test]
    fn ternarize_word_failures() {
        // dangling mismatch
        assert!(ternarize_words(&b("00"), &b("01")).is_err());
        // 0/1 followed by 1/1
        assert!(ternarize_words(&b("011"), &b("111")).is_err());
        // lengths differ
        assert!(ternarize_words(&b("0"), &b("01")).is_err());
        // unbalanced inputs
        assert!(ternarize_words(&b("0011"), &b("0011")).is_err());
    }

    #[test]
    fn amicable_word_examples() {
        assert_eq!(amicable_words_b(&b("00100101"), &b("01001010")), Some(3));
        assert_eq!(amicable_words_b(&b("0100101"), &b("0100101")), Some(0));
        assert_eq!(amicable_words_b(&b("001"), &b("100")), None);
    }

    #[test]
    fn amicable_morphism_examples() {
        let phi = Morphism::binary("001", "00101");
        let psi = Morphism::binary("010", "01001");
        assert_eq!(amicable_morphisms(&phi, &psi), Some(AmicableCounts { b0: 1, b1: 1, b: 3 }));
        assert_eq!(
            amicable_morphisms(&Morphism::binary("01", "0"), &Morphism::binary("10", "0")),
            Some(AmicableCounts { b0: 1, b1: 0, b: 0 })
        );
        assert_eq!(
            amicable_morphisms(&Morphism::identity(Alphabet::Binary), &Morphism::binary("1", "0")),
            None
        );
    }

    #[test]
    fn ternarize_morphism_examples() {
        let phi = Morphism::binary("001", "00101");
        let psi = Morphism::binary("010", "01001");
        assert_eq!(ternarize_morphisms(&phi, &psi).unwrap(), Morphism::ternary("AB", "ABABB", "ABAC"));
        let id = Morphism::identity(Alphabet::Binary);
        assert_eq!(ternarize_morphisms(&id, &id).unwrap(), Morphism::identity(Alphabet::Ternary));
        assert_eq!(
            ternarize_morphisms(&Morphism::binary("01", "0"), &Morphism::binary("10", "0")).unwrap(),
            Morphism::ternary("B", "ACA", "A")
        );
        assert!(ternarize_morphisms(&id, &Morphism::binary("1", "0")).is_err());
    }

    #[test]
    fn membership_examples() {
        let err = is_ternarization(&Morphism::ternary("B", "CAC", "C")).unwrap_err();
        assert_eq!(err.to_string(), "sigma01(B)=101 != 011");
        let id = Morphism::identity(Alphabet::Binary);
        assert_eq!(is_ternarization(&Morphism::identity(Alphabet::Ternary)), Ok((id.clone(), id)));
        assert_eq!(
            is_ternarization(&Morphism::ternary("C", "CAC", "B")),
            Ok((Morphism::binary("1", "01"), Morphism::binary("1", "10")))
        );
        assert_eq!(is_ternarization(&Morphism::ternary("", "B", "C")), Err(NotTernarization::NotTernary));
        assert_eq!(is_ternarization(&Morphism::binary("0", "1")), Err(NotTernarization::NotTernary));
    }

    #[test]
    fn membership_rejects_letter_exchange() {
        // A <-> C preserves 3iet words but is not a ternarization.
        assert!(is_ternarization(&Morphism::ternary("C", "B", "A")).is_err());
    }

    #[test]
    fn intertwining_on_worked_pair() {
        let phi = Morphism::binary("001", "00101");
        let psi = Morphism::binary("010", "01001");
        let eta = ternarize_morphisms(&phi, &psi).unwrap();
        assert!(intertwines(&eta, &phi, &psi).unwrap());
        assert!(!intertwines(&eta, &psi, &phi).unwrap());
    }

    #[test]
    fn pair_record() {
        let pair = AmicablePair::new(&Morphism::binary("001", "00101"), &Morphism::binary("010", "01001")).unwrap();
        assert_eq!((pair.b0, pair.b1, pair.b), (1, 1, 3));
        assert_eq!(pair.kbar - pair.k, (pair.b as u64) - 1);
    }

    fn params() -> ThreeIet {
        ThreeIet::new("(3-1*sqrt(5))/2".parse().unwrap(), "1/4".parse().unwrap()).unwrap()
    }

    #[test]
    fn preservation_examples() {
        let cfg = PreservationConfig { n: 500, kmax: 10 };
        let id = Morphism::identity(Alphabet::Ternary);
        assert!(check_3iet_preservation(&id, &params(), &QuadNumber::ZERO, cfg).unwrap().holds);
        let eta = Morphism::ternary("AB", "ABABB", "ABAC");
        assert!(check_3iet_preservation(&eta, &params(), &QuadNumber::ZERO, cfg).unwrap().holds);
        let collapse = Morphism::ternary("B", "B", "B");
        let report = check_3iet_preservation(&collapse, &params(), &QuadNumber::ZERO, cfg).unwrap();
        assert!(!report.holds);
        assert_eq!(
            report.violation.unwrap().defect,
            SturmianDefect::Complexity { m: 2, found: 2 }
        );
    }

    #[test]
    fn preservation_rejects_degenerate_parameters() {
        let trap = ThreeIet::new("(3-1*sqrt(5))/2".parse().unwrap(), "(-2+1*sqrt(5))/1".parse().unwrap()).unwrap();
        let id = Morphism::identity(Alphabet::Ternary);
        let err = check_3iet_preservation(&id, &trap, &QuadNumber::ZERO, PreservationConfig::default()).unwrap_err();
        assert!(matches!(err, Error::DegenerateParameters(_)));
    }
}
