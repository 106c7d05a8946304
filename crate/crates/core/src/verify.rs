//! Exhaustive verification suites. Each suite compares a closed form or a
//! structural claim against brute-force enumeration and reports one
//! [`Check`] per subject (usually per matrix).

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::amicability::{
    amicable_words_b, check_image_preservation, closure_holds, intertwines, AmicablePair, PreservationConfig,
};
use crate::error::{parse_err, Error, Result};
use crate::iet::{gcd, is_nondegenerate_params, three_iet_code, ThreeIet};
use crate::intmat::IntMatrix2;
use crate::matrices::{
    admissible_parameters, brute_force_pairs, classify_matrix3, count_formula_total, e_condition, exchange_ac,
    formula_histogram, pair_histogram, predicted_matrices, realized_matrices, ternarization_matrix,
    unimodular_matrices, ClassificationWitness,
};
use crate::morphism::{enumerate_sturmian, is_standard, k_index};
use crate::iet::coding_word_k;
use crate::par::{self, Strategy};
use crate::quad::QuadNumber;

pub const DEFAULT_SEED: u64 = 0x5EED_2012;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Counting,
    LemmaW,
    Matrices,
    Monoid,
    Preserve,
    Census,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Counting,
        Suite::LemmaW,
        Suite::Matrices,
        Suite::Monoid,
        Suite::Preserve,
        Suite::Census,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Counting => "counting",
            Suite::LemmaW => "lemma-w",
            Suite::Matrices => "matrices",
            Suite::Monoid => "monoid",
            Suite::Preserve => "preserve",
            Suite::Census => "census",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| parse_err(s, "unknown suite"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub subject: String,
    pub passed: bool,
    pub expected: String,
    pub observed: String,
}

impl Check {
    fn compare(subject: impl Into<String>, expected: impl fmt::Debug, observed: impl fmt::Debug) -> Check {
        let expected = format!("{expected:?}");
        let observed = format!("{observed:?}");
        Check {
            subject: subject.into(),
            passed: expected == observed,
            expected,
            observed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Matrix norm bound; for `lemma-w` the bound on the word length `N`.
    pub max_norm: u64,
    pub seed: u64,
    pub samples: usize,
    pub preservation: PreservationConfig,
    pub strategy: Strategy,
}

impl VerifyOptions {
    pub fn for_suite(suite: Suite) -> Self {
        let max_norm = match suite {
            Suite::Counting | Suite::Census => 12,
            Suite::LemmaW => 24,
            Suite::Matrices => 10,
            Suite::Monoid | Suite::Preserve => 6,
        };
        VerifyOptions {
            max_norm,
            seed: DEFAULT_SEED,
            samples: 200,
            preservation: PreservationConfig::default(),
            strategy: Strategy::default(),
        }
    }
}

pub type TotalFormula = fn(&IntMatrix2) -> Result<u64>;

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<SuiteReport> {
    match suite {
        Suite::Counting => counting(opts.max_norm, opts.strategy, count_formula_total),
        Suite::LemmaW => lemma_w(opts.max_norm, opts.strategy),
        Suite::Matrices => matrix_theorem(opts.max_norm, opts.strategy),
        Suite::Monoid => monoid(opts.max_norm, opts.seed, opts.samples, opts.strategy),
        Suite::Preserve => preserve(opts.max_norm, opts.preservation, opts.strategy),
        Suite::Census => census(opts.max_norm, opts.strategy),
    }
}

/// One matrix of a counting sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub matrix: IntMatrix2,
    pub det: i64,
    pub norm: u64,
    pub formula: u64,
    pub formula_by_b: BTreeMap<usize, u64>,
    pub brute: Option<u64>,
    pub brute_by_b: Option<BTreeMap<usize, u64>>,
}

impl CountRow {
    /// `None` when brute force was not run.
    pub fn agrees(&self) -> Option<bool> {
        Some(self.brute? == self.formula && self.brute_by_b.as_ref()? == &self.formula_by_b)
    }
}

/// Closed-form counts for every unimodular matrix up to `max_norm`, with the
/// brute-force counts alongside when `compare` is set.
pub fn count_rows(max_norm: u64, compare: bool, strategy: Strategy, formula: TotalFormula) -> Result<Vec<CountRow>> {
    let matrices = unimodular_matrices(max_norm);
    par::map(&matrices, strategy, |a| {
        let (brute, brute_by_b) = if compare {
            let pairs = brute_force_pairs(a)?;
            (Some(pairs.len() as u64), Some(pair_histogram(&pairs)))
        } else {
            (None, None)
        };
        Ok(CountRow {
            matrix: *a,
            det: a.det(),
            norm: a.norm(),
            formula: formula(a)?,
            formula_by_b: formula_histogram(a),
            brute,
            brute_by_b,
        })
    })
    .into_iter()
    .collect()
}

/// Ordered brute-force pair counts and their per-`b` histograms against the
/// closed forms. `formula` is injectable so tests can plant a fault.
pub fn counting(max_norm: u64, strategy: Strategy, formula: TotalFormula) -> Result<SuiteReport> {
    let rows = count_rows(max_norm, true, strategy, formula)?;
    let checks = rows
        .into_iter()
        .map(|row| {
            Check::compare(
                format!("A={}", row.matrix),
                (row.formula, &row.formula_by_b),
                (row.brute.unwrap(), row.brute_by_b.as_ref().unwrap()),
            )
        })
        .collect();
    Ok(SuiteReport {
        suite: Suite::Counting,
        checks,
    })
}

/// Co-prime `(p, n)` with `0 < p < n <= max_n`.
pub fn coprime_slopes(max_n: u64) -> Vec<(u64, u64)> {
    (2..=max_n)
        .flat_map(|n| (1..n).filter(move |&p| gcd(p, n) == 1).map(move |p| (p, n)))
        .collect()
}

/// `w^(k)` is `b`-amicable to `w^(kbar)` exactly when `b = kbar - k` and
/// `0 <= b <= min(p, q)`.
pub fn lemma_w(max_n: u64, strategy: Strategy) -> Result<SuiteReport> {
    let slopes = coprime_slopes(max_n);
    let checks = par::map(&slopes, strategy, |&(p, n)| {
        let words = (0..n)
            .map(|k| coding_word_k(p, n, k as i64))
            .collect::<Result<Vec<_>>>()?;
        let m = p.min(n - p) as i64;
        let mut mismatches = Vec::new();
        let mut amicable = 0usize;
        for (k, wk) in words.iter().enumerate() {
            for (kbar, wkbar) in words.iter().enumerate() {
                let diff = kbar as i64 - k as i64;
                let expected = (0..=m).contains(&diff).then_some(diff as usize);
                let observed = amicable_words_b(wk, wkbar);
                amicable += usize::from(observed.is_some());
                if expected != observed {
                    mismatches.push((k, kbar, expected, observed));
                }
            }
        }
        // Amicable pairs for b = 0..=m number n - b each.
        let expected_amicable: i64 = (0..=m).map(|b| n as i64 - b).sum();
        Ok(Check {
            subject: format!("p={p},N={n}"),
            passed: mismatches.is_empty() && amicable as i64 == expected_amicable,
            expected: format!("{expected_amicable} amicable index pairs, 0 mismatches"),
            observed: match mismatches.first() {
                None => format!("{amicable} amicable index pairs, 0 mismatches"),
                Some(first) => format!(
                    "{amicable} amicable index pairs, {} mismatches, first (k, kbar, expected, observed) = {first:?}",
                    mismatches.len()
                ),
            },
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport {
        suite: Suite::LemmaW,
        checks,
    })
}

/// Per matrix: brute-forced ternarization matrices equal the predicted set;
/// each satisfies the E-condition and has row sums equal to the image
/// lengths; classification inverts the construction. Ends with the
/// letter-exchange matrix, which satisfies the E-condition but is rejected.
pub fn matrix_theorem(max_norm: u64, strategy: Strategy) -> Result<SuiteReport> {
    let matrices = unimodular_matrices(max_norm);
    let mut checks = par::map(&matrices, strategy, |a| -> Result<Check> {
        let pairs = brute_force_pairs(a)?;
        let realized = realized_matrices(&pairs);
        let predicted = predicted_matrices(a);
        let mut problems = Vec::new();
        for m in &realized {
            if e_condition(m).is_none() {
                problems.push(format!("E-condition fails for {m}"));
            }
        }
        for p in &pairs {
            let m = p.eta.incidence3()?;
            let lengths = [0u8, 1, 2].map(|x| p.eta.image(x).len() as u64);
            if m.row_sums() != lengths {
                problems.push(format!("row sums of {m} differ from image lengths"));
            }
        }
        for (b0, b1) in admissible_parameters(a) {
            let m = ternarization_matrix(a, b0, b1)?;
            let expected = ClassificationWitness {
                a: *a,
                b0,
                b1,
                delta: a.det(),
            };
            if classify_matrix3(&m) != Some(expected) {
                problems.push(format!("classification of {m} does not return (A, {b0}, {b1})"));
            }
        }
        let fmt_set = |s: &BTreeSet<_>| s.iter().map(ToString::to_string).collect::<Vec<String>>().join(" | ");
        Ok(Check {
            subject: format!("A={a}"),
            passed: realized == predicted && problems.is_empty(),
            expected: format!("{{{}}}", fmt_set(&predicted)),
            observed: if problems.is_empty() {
                format!("{{{}}}", fmt_set(&realized))
            } else {
                format!("{{{}}}; {}", fmt_set(&realized), problems.join("; "))
            },
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let swap = exchange_ac().incidence3()?;
    checks.push(Check::compare(
        format!("B={swap} (A<->C exchange)"),
        (Some(-1i8), None::<ClassificationWitness>),
        (e_condition(&swap), classify_matrix3(&swap)),
    ));
    Ok(SuiteReport {
        suite: Suite::Matrices,
        checks,
    })
}

/// All amicable pairs for matrices up to `max_norm`, in matrix order.
pub fn pair_pool(max_norm: u64, strategy: Strategy) -> Result<Vec<AmicablePair>> {
    let matrices = unimodular_matrices(max_norm);
    let per_matrix = par::map(&matrices, strategy, brute_force_pairs)
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(per_matrix.into_iter().flatten().collect())
}

/// `samples` seeded draws `(pair1, pair2)` from the pool: the ternarization
/// of the composed pair equals the composition of ternarizations, and all
/// three morphisms intertwine with the projections.
pub fn monoid(max_norm: u64, seed: u64, samples: usize, strategy: Strategy) -> Result<SuiteReport> {
    let pool = pair_pool(max_norm, strategy)?;
    if pool.is_empty() {
        return Err(Error::Domain(format!("no amicable pairs with norm <= {max_norm}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<(usize, usize, usize)> = (0..samples)
        .map(|i| (i, rng.gen_range(0..pool.len()), rng.gen_range(0..pool.len())))
        .collect();
    let checks = par::map(&draws, strategy, |&(i, x, y)| -> Result<Check> {
        let (p1, p2) = (&pool[x], &pool[y]);
        let phi = crate::morphism::compose(&p1.phi, &p2.phi)?;
        let psi = crate::morphism::compose(&p1.psi, &p2.psi)?;
        let eta = crate::morphism::compose(&p1.eta, &p2.eta)?;
        let observed = (
            closure_holds(p1, p2).unwrap_or(false),
            intertwines(&p1.eta, &p1.phi, &p1.psi)?,
            intertwines(&p2.eta, &p2.phi, &p2.psi)?,
            intertwines(&eta, &phi, &psi)?,
        );
        Ok(Check::compare(
            format!("sample {i}: ter({}; {}) o ter({}; {})", p1.phi, p1.psi, p2.phi, p2.psi),
            (true, true, true, true),
            observed,
        ))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport {
        suite: Suite::Monoid,
        checks,
    })
}

/// Non-degenerate parameters used by the preservation suite.
pub fn golden_params() -> ThreeIet {
    ThreeIet::new(
        QuadNumber::new(3, -1, 5, 2).expect("valid"),
        QuadNumber::rational(1, 4).expect("valid"),
    )
    .expect("valid parameters")
}

/// Same `alpha`, with `beta = sqrt(5) - 2`, which makes `(1-alpha)/(1+beta)`
/// rational.
pub fn degenerate_params() -> ThreeIet {
    ThreeIet::new(
        QuadNumber::new(3, -1, 5, 2).expect("valid"),
        QuadNumber::new(-2, 1, 5, 1).expect("valid"),
    )
    .expect("valid parameters")
}

/// Every ternarization up to `max_norm` maps a 3iet prefix to a word whose
/// projections are balanced with complexity `m + 1` up to `kmax`.
pub fn preserve(max_norm: u64, config: PreservationConfig, strategy: Strategy) -> Result<SuiteReport> {
    let params = golden_params();
    let u = three_iet_code(&params, &QuadNumber::ZERO, config.n)?;
    let pool = pair_pool(max_norm, strategy)?;
    let mut etas: Vec<_> = pool.into_iter().map(|p| p.eta).collect::<HashSet<_>>().into_iter().collect();
    etas.sort();
    let mut checks = par::map(&etas, strategy, |eta| -> Result<Check> {
        let report = check_image_preservation(eta, &u, config.kmax)?;
        Ok(Check {
            subject: format!("eta={eta}"),
            passed: report.holds,
            expected: "both projections Sturmian on the prefix".into(),
            observed: match &report.violation {
                None => format!("both projections Sturmian (image length {})", report.image_length),
                Some(v) => format!("{} fails: {:?}", v.projection, v.defect),
            },
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let trap = degenerate_params();
    checks.push(Check::compare(
        format!("alpha={}, beta={} non-degenerate", trap.alpha(), trap.beta()),
        false,
        is_nondegenerate_params(&trap)?,
    ));
    Ok(SuiteReport {
        suite: Suite::Preserve,
        checks,
    })
}

/// Per matrix: `N - 1` distinct Sturmian morphisms with matrix `A`, one of
/// them standard, `k` injective and avoiding `N - 1` (det +1) or `0` (det -1).
pub fn census(max_norm: u64, strategy: Strategy) -> Result<SuiteReport> {
    let matrices = unimodular_matrices(max_norm);
    let checks = par::map(&matrices, strategy, |a| -> Result<Check> {
        let chain = enumerate_sturmian(a)?;
        let n = a.norm();
        let distinct = chain.iter().collect::<HashSet<_>>().len();
        let all_match = chain.iter().all(|m| m.incidence2().ok() == Some(*a));
        let standard = chain.iter().filter(|m| is_standard(m)).count();
        let ks = chain.iter().map(k_index).collect::<Result<Vec<_>>>()?;
        let distinct_k = ks.iter().collect::<HashSet<_>>().len();
        let forbidden = if a.det() == 1 { n - 1 } else { 0 };
        Ok(Check::compare(
            format!("A={a}"),
            (n - 1, n - 1, true, 1usize, n - 1, false),
            (
                chain.len() as u64,
                distinct as u64,
                all_match,
                standard,
                distinct_k as u64,
                ks.contains(&forbidden),
            ),
        ))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport {
        suite: Suite::Census,
        checks,
    })
}
