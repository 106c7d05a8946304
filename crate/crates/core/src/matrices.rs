//! Counting amicable pairs per incidence matrix, the incidence matrices of
//! ternarizations, and the named ternary morphisms used by the probe.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::amicability::{amicable_morphisms, is_ternarization, AmicablePair};
use crate::error::{Error, Result};
use crate::intmat::{mul3, transpose3, IntMatrix2, IntMatrix3};
use crate::morphism::{compose, enumerate_sturmian, k_index, Morphism};

/// Number of ordered amicable pairs of Sturmian morphisms with matrix `a`:
/// `m (N - 1) + m (det - m) / 2` with `m = min(p, q)` and `N = ||a||`.
pub fn count_formula_total(a: &IntMatrix2) -> Result<u64> {
    let det = a.unimodular_det()?;
    let m = a.p().min(a.q()) as i64;
    let n = a.norm() as i64;
    // m (det - m) is a product of two consecutive integers up to sign, hence even.
    let total = m * (n - 1) + m * (det - m) / 2;
    Ok(total as u64)
}

/// Number of ordered `b`-amicable pairs with matrix `a`.
pub fn count_formula_b(a: &IntMatrix2, b: i64) -> u64 {
    let m = a.p().min(a.q()) as i64;
    let n = a.norm() as i64;
    match a.det() {
        1 if (1..=m).contains(&b) => (n - b) as u64,
        -1 if (0..m).contains(&b) => (n - b - 2) as u64,
        _ => 0,
    }
}

/// Non-zero values of `count_formula_b`, keyed by `b`.
pub fn formula_histogram(a: &IntMatrix2) -> BTreeMap<usize, u64> {
    let m = a.p().min(a.q());
    (0..=m)
        .map(|b| (b as usize, count_formula_b(a, b as i64)))
        .filter(|&(_, c)| c > 0)
        .collect()
}

/// All non-negative matrices with determinant ±1 and entry sum at most
/// `max_norm`, in lexicographic order of `(p0, q0, p1, q1)`.
pub fn unimodular_matrices(max_norm: u64) -> Vec<IntMatrix2> {
    let mut out = Vec::new();
    for p0 in 0..=max_norm {
        for q0 in 0..=max_norm - p0 {
            for p1 in 0..=max_norm - p0 - q0 {
                for q1 in 0..=max_norm - p0 - q0 - p1 {
                    let a = IntMatrix2::new(p0, q0, p1, q1);
                    if a.is_unimodular() {
                        out.push(a);
                    }
                }
            }
        }
    }
    out
}

/// Every ordered amicable pair among the Sturmian morphisms with matrix `a`,
/// sorted by `(k, kbar)`.
pub fn brute_force_pairs(a: &IntMatrix2) -> Result<Vec<AmicablePair>> {
    let chain = enumerate_sturmian(a)?;
    let indexed = chain
        .iter()
        .map(|m| Ok((k_index(m)?, m)))
        .collect::<Result<Vec<_>>>()?;
    let mut pairs = Vec::new();
    for &(k, phi) in &indexed {
        for &(kbar, psi) in &indexed {
            if amicable_morphisms(phi, psi).is_some() {
                let pair = AmicablePair::new(phi, psi)?;
                debug_assert_eq!((pair.k, pair.kbar), (k, kbar));
                pairs.push(pair);
            }
        }
    }
    pairs.sort_by_key(|p| (p.k, p.kbar));
    Ok(pairs)
}

pub fn pair_histogram(pairs: &[AmicablePair]) -> BTreeMap<usize, u64> {
    let mut hist = BTreeMap::new();
    for p in pairs {
        *hist.entry(p.b).or_insert(0) += 1;
    }
    hist
}

/// `[[p0-b0, b0, q0-b0], [p-b, b, q-b], [p1-b1, b1, q1-b1]]` with
/// `b = b0 + b1 + det a`.
pub fn ternarization_matrix(a: &IntMatrix2, b0: u64, b1: u64) -> Result<IntMatrix3> {
    let det = a.unimodular_det()?;
    let b = b0 as i64 + b1 as i64 + det;
    let (p, q) = (a.p() as i64, a.q() as i64);
    let signed = [
        [a.p0 as i64 - b0 as i64, b0 as i64, a.q0 as i64 - b0 as i64],
        [p - b, b, q - b],
        [a.p1 as i64 - b1 as i64, b1 as i64, a.q1 as i64 - b1 as i64],
    ];
    if signed.iter().flatten().any(|&x| x < 0) {
        return Err(Error::InfeasibleParameters(format!(
            "A={a}, b0={b0}, b1={b1} gives a negative entry"
        )));
    }
    Ok(IntMatrix3::new(signed.map(|row| row.map(|x| x as u64))))
}

/// `|b0 (p1 + q1) - b1 (p0 + q0)| < ||a||`.
pub fn condition_a(a: &IntMatrix2, b0: u64, b1: u64) -> bool {
    let lhs = b0 as i64 * (a.p1 + a.q1) as i64 - b1 as i64 * (a.p0 + a.q0) as i64;
    lhs.abs() < a.norm() as i64
}

/// `(1 - det)/2 <= b0 + b1 <= min(p, q) - (det + 1)/2`.
pub fn condition_b(a: &IntMatrix2, b0: u64, b1: u64) -> bool {
    let det = a.det();
    let s = (b0 + b1) as i64;
    let m = a.p().min(a.q()) as i64;
    (1 - det) / 2 <= s && s <= m - (det + 1) / 2
}

/// Parameters `(b0, b1)` allowed by both conditions and giving a
/// non-negative matrix.
pub fn admissible_parameters(a: &IntMatrix2) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for b0 in 0..=a.p0.min(a.q0) {
        for b1 in 0..=a.p1.min(a.q1) {
            if condition_a(a, b0, b1) && condition_b(a, b0, b1) && ternarization_matrix(a, b0, b1).is_ok() {
                out.push((b0, b1));
            }
        }
    }
    out
}

/// Matrices predicted by the classification for a given `a`.
pub fn predicted_matrices(a: &IntMatrix2) -> BTreeSet<IntMatrix3> {
    admissible_parameters(a)
        .into_iter()
        .filter_map(|(b0, b1)| ternarization_matrix(a, b0, b1).ok())
        .collect()
}

/// Incidence matrices of all brute-forced ternarizations for `a`.
pub fn realized_matrices(pairs: &[AmicablePair]) -> BTreeSet<IntMatrix3> {
    pairs
        .iter()
        .map(|p| p.eta.incidence3().expect("ternary"))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassificationWitness {
    pub a: IntMatrix2,
    pub b0: u64,
    pub b1: u64,
    pub delta: i64,
}

/// Reads `(A, b0, b1, delta)` off `m` and accepts iff `m` is the incidence
/// matrix of a ternarization of amicable Sturmian morphisms.
pub fn classify_matrix3(m: &IntMatrix3) -> Option<ClassificationWitness> {
    let r = m.to_signed();
    let (b0, b, b1) = (r[0][1], r[1][1], r[2][1]);
    let delta = b - b0 - b1;
    if delta.abs() != 1 {
        return None;
    }
    let a = IntMatrix2::new(
        (r[0][0] + b0) as u64,
        (r[0][2] + b0) as u64,
        (r[2][0] + b1) as u64,
        (r[2][2] + b1) as u64,
    );
    if a.det() != delta {
        return None;
    }
    let (p, q) = (a.p() as i64, a.q() as i64);
    if r[1][0] != p - b || r[1][2] != q - b {
        return None;
    }
    let (b0, b1) = (b0 as u64, b1 as u64);
    if !condition_a(&a, b0, b1) || !condition_b(&a, b0, b1) {
        return None;
    }
    Some(ClassificationWitness { a, b0, b1, delta })
}

const E: [[i64; 3]; 3] = [[0, 1, 1], [-1, 0, 1], [-1, -1, 0]];

/// `Some(s)` when `m E m^T = s E` for `s = ±1`.
pub fn e_condition(m: &IntMatrix3) -> Option<i8> {
    let x = m.to_signed();
    let product = mul3(&mul3(&x, &E), &transpose3(&x));
    let negated = E.map(|row| row.map(|v| -v));
    if product == E {
        Some(1)
    } else if product == negated {
        Some(-1)
    } else {
        None
    }
}

/// Exchange of the letters A and C.
pub fn exchange_ac() -> Morphism {
    Morphism::ternary("C", "B", "A")
}

/// `A -> B, B -> ACA, C -> A`, the ternarization of the Fibonacci morphism
/// `(01, 0)` with its conjugate `(10, 0)`.
pub fn fibonacci_ternarization() -> Morphism {
    Morphism::ternary("B", "ACA", "A")
}

/// `A -> B, B -> CAC, C -> C`: 3iet-preserving but not a ternarization.
pub fn preserving_non_ternarization() -> Morphism {
    Morphism::ternary("B", "CAC", "C")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeEntry {
    pub label: &'static str,
    pub morphism: Morphism,
    pub member: bool,
    pub phi: Option<Morphism>,
    pub psi: Option<Morphism>,
    pub diagnostic: Option<String>,
    pub matrix_classified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub eta: Morphism,
    pub entries: Vec<ProbeEntry>,
}

impl ProbeReport {
    /// First composite in probe order that is a ternarization.
    pub fn first_member(&self) -> Option<&ProbeEntry> {
        self.entries.iter().find(|e| e.member)
    }

    pub fn entry(&self, label: &str) -> Option<&ProbeEntry> {
        self.entries.iter().find(|e| e.label == label)
    }
}

/// Tests `eta`, `eta^2`, `eta∘x1`, `eta∘x2` and `eta∘x1∘x2` for membership
/// in the monoid of ternarizations, where `x1` exchanges A and C and `x2` is
/// [`fibonacci_ternarization`].
pub fn conjecture_probe(eta: &Morphism) -> Result<ProbeReport> {
    let x1 = exchange_ac();
    let x2 = fibonacci_ternarization();
    let candidates = [
        ("eta", eta.clone()),
        ("eta^2", compose(eta, eta)?),
        ("eta.xi1", compose(eta, &x1)?),
        ("eta.xi2", compose(eta, &x2)?),
        ("eta.xi1.xi2", compose(&compose(eta, &x1)?, &x2)?),
    ];
    let entries = candidates
        .into_iter()
        .map(|(label, morphism)| {
            let matrix_classified = classify_matrix3(&morphism.incidence3().expect("ternary")).is_some();
            match is_ternarization(&morphism) {
                Ok((phi, psi)) => ProbeEntry {
                    label,
                    morphism,
                    member: true,
                    phi: Some(phi),
                    psi: Some(psi),
                    diagnostic: None,
                    matrix_classified,
                },
                Err(why) => ProbeEntry {
                    label,
                    morphism,
                    member: false,
                    phi: None,
                    psi: None,
                    diagnostic: Some(why.to_string()),
                    matrix_classified,
                },
            }
        })
        .collect();
    Ok(ProbeReport {
        eta: eta.clone(),
        entries,
    })
}
