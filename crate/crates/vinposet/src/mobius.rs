//! Möbius function evaluation: a brute-force recursion over any materialized
//! interval, and the closed-form evaluator for quasi-consecutive intervals
//! whose bottom occurs exactly once in the top.

use std::fmt;

use serde_json::{json, Value};

use crate::permutation::Permutation;
use crate::poset::{CoverCache, Interval};
use crate::vincular::{contains, count_occurrences, covered_by, occurrences, VincularScheme};
use crate::Error;

/// Evaluation order for the defining recursion; both must agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `mu(x,x) = 1`, `mu(x,y) = -sum of mu(x,z) over x <= z < y`.
    BottomUp,
    /// `mu(x,y) = -sum of mu(z,y) over x < z <= y`.
    TopDown,
}

/// `mu(bottom, top)` by memoized recursion over the interval's elements.
pub fn mobius_bruteforce(iv: &Interval, direction: Direction) -> i64 {
    let n = iv.len();
    if n == 1 {
        return 1;
    }
    // Per-element reachability inside the interval, as bitsets over element
    // indices. Element order is by level, so edge sources precede targets
    // and one sweep per direction suffices.
    let words = n.div_ceil(64);
    let mut reach = vec![vec![0u64; words]; n];
    for (i, row) in reach.iter_mut().enumerate() {
        row[i / 64] |= 1 << (i % 64);
    }
    let merge = |dst: &mut [u64], src: &[u64]| {
        for (d, s) in dst.iter_mut().zip(src) {
            *d |= s;
        }
    };
    let mut values = vec![0i64; n];
    match direction {
        Direction::BottomUp => {
            for &(lo, up) in iv.edge_indices() {
                let (left, right) = reach.split_at_mut(up as usize);
                merge(&mut right[0], &left[lo as usize]);
            }
            values[0] = 1;
            for i in 1..n {
                values[i] = -dot_below(&reach[i], &values, i);
            }
            values[n - 1]
        }
        Direction::TopDown => {
            for &(lo, up) in iv.edge_indices().iter().rev() {
                let (left, right) = reach.split_at_mut(up as usize);
                merge(&mut left[lo as usize], &right[0]);
            }
            values[n - 1] = 1;
            for i in (0..n - 1).rev() {
                let mut sum = 0i64;
                for j in i + 1..n {
                    if reach[i][j / 64] >> (j % 64) & 1 == 1 {
                        sum += values[j];
                    }
                }
                values[i] = -sum;
            }
            values[0]
        }
    }
}

fn dot_below(bits: &[u64], values: &[i64], i: usize) -> i64 {
    (0..i)
        .filter(|&j| bits[j / 64] >> (j % 64) & 1 == 1)
        .map(|j| values[j])
        .sum()
}

/// The case of the single-occurrence theorem a pair falls under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseLabel {
    /// `sigma = tau`: mu = 1.
    Equal,
    /// `tau` covers `sigma`: mu = -1.
    Covered,
    /// Rank 2, the occurrence involves the first entry but neither the
    /// second nor the last: mu = 1.
    Rank2FirstEntry,
    /// Rank 2, the occurrence involves the second entry but neither the
    /// first nor the last: mu = 1.
    Rank2SecondEntry,
    /// Rank 2, the occurrence involves the last entry but neither of the
    /// first two, and those two are not consecutive integers: mu = 1.
    Rank2LastEntryNonconsec,
    /// Rank 3, the occurrence is consecutive, involves the next-to-last
    /// entry but none of the first two or the last, and the top covers
    /// three elements inside the interval: mu = -1.
    Rank3Exceptional,
    /// Every remaining single-occurrence pair: mu = 0.
    Zero,
}

impl CaseLabel {
    pub fn mobius_value(self) -> i64 {
        match self {
            CaseLabel::Equal => 1,
            CaseLabel::Covered => -1,
            CaseLabel::Rank2FirstEntry => 1,
            CaseLabel::Rank2SecondEntry => 1,
            CaseLabel::Rank2LastEntryNonconsec => 1,
            CaseLabel::Rank3Exceptional => -1,
            CaseLabel::Zero => 0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CaseLabel::Equal => "EQUAL",
            CaseLabel::Covered => "COVERED",
            CaseLabel::Rank2FirstEntry => "RANK2_FIRST_ENTRY",
            CaseLabel::Rank2SecondEntry => "RANK2_SECOND_ENTRY",
            CaseLabel::Rank2LastEntryNonconsec => "RANK2_LAST_ENTRY_NONCONSEC",
            CaseLabel::Rank3Exceptional => "RANK3_EXCEPTIONAL",
            CaseLabel::Zero => "ZERO",
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn first_two_consecutive_integers(tau: &Permutation) -> bool {
    let v = tau.values();
    (i16::from(v[0]) - i16::from(v[1])).abs() == 1
}

/// Classifies a pair with exactly one quasi-consecutive occurrence into its
/// theorem case. Errors when the occurrence count differs from one.
pub fn classify_single_occurrence(
    sigma: &Permutation,
    tau: &Permutation,
) -> Result<CaseLabel, Error> {
    let quasi = VincularScheme::QuasiConsecutive;
    let occs = occurrences(sigma, tau, &quasi).unwrap_or_default();
    if occs.len() != 1 {
        return Err(Error::NotApplicable(format!("{} occurrences", occs.len())));
    }
    let occ = &occs[0];
    let n = tau.len();
    let label = match n - sigma.len() {
        0 => CaseLabel::Equal,
        1 => CaseLabel::Covered,
        2 => {
            let first = occ.involves(1);
            let second = occ.involves(2);
            let last = occ.involves(n);
            if first && !second && !last {
                CaseLabel::Rank2FirstEntry
            } else if second && !first && !last {
                CaseLabel::Rank2SecondEntry
            } else if last && !first && !second && !first_two_consecutive_integers(tau) {
                CaseLabel::Rank2LastEntryNonconsec
            } else {
                CaseLabel::Zero
            }
        }
        3 => {
            let inner = occ.involves(n - 1)
                && !occ.involves(1)
                && !occ.involves(2)
                && !occ.involves(n)
                && occ.is_consecutive();
            if inner && covers_three_inside(sigma, tau) {
                CaseLabel::Rank3Exceptional
            } else {
                CaseLabel::Zero
            }
        }
        _ => CaseLabel::Zero,
    };
    Ok(label)
}

// Whether tau covers three distinct elements that all lie in [sigma, tau].
// Only the top two levels are needed; quasi-consecutive containment and
// order coincide, so membership is a containment test.
fn covers_three_inside(sigma: &Permutation, tau: &Permutation) -> bool {
    let quasi = VincularScheme::QuasiConsecutive;
    let covers = covered_by(tau, &quasi);
    covers.len() == 3 && covers.iter().all(|c| contains(sigma, c, &quasi))
}

/// The single-occurrence theorem's value for the pair, without materializing
/// the interval. Errors when the occurrence count differs from one.
pub fn mobius_closed_form(sigma: &Permutation, tau: &Permutation) -> Result<i64, Error> {
    Ok(classify_single_occurrence(sigma, tau)?.mobius_value())
}

/// How a Möbius value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    BruteForce,
    ClosedForm(CaseLabel),
}

impl Method {
    pub fn kind(&self) -> &'static str {
        match self {
            Method::BruteForce => "brute_force",
            Method::ClosedForm(_) => "closed_form",
        }
    }

    pub fn case(&self) -> Option<CaseLabel> {
        match self {
            Method::BruteForce => None,
            Method::ClosedForm(label) => Some(*label),
        }
    }
}

/// A Möbius value with its provenance and the occurrence count of the pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MobiusEvaluation {
    pub value: i64,
    pub method: Method,
    pub occurrence_count: usize,
}

/// Evaluation strategy for [`mobius`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Closed form when the scheme is quasi-consecutive and the occurrence
    /// count is one; brute force otherwise.
    Auto,
    /// Always materialize the interval and run the recursion.
    Brute,
    /// Closed form or error.
    Theorem,
}

/// Computes `mu(sigma, tau)` under `scheme`. Incomparable pairs evaluate to
/// 0; only [`Strategy::Theorem`] on an inapplicable pair is an error.
pub fn mobius(
    sigma: &Permutation,
    tau: &Permutation,
    scheme: &VincularScheme,
    strategy: Strategy,
) -> Result<MobiusEvaluation, Error> {
    mobius_with_cache(&mut CoverCache::new(scheme.clone()), sigma, tau, strategy)
}

/// [`mobius`] against a caller-owned cache, for sweeps that revisit
/// sub-permutations.
pub fn mobius_with_cache(
    cache: &mut CoverCache,
    sigma: &Permutation,
    tau: &Permutation,
    strategy: Strategy,
) -> Result<MobiusEvaluation, Error> {
    let quasi = cache.scheme().is_quasi_consecutive();
    let count = count_occurrences(sigma, tau, cache.scheme());
    let closed_form = |count: usize| -> Result<MobiusEvaluation, Error> {
        let case = classify_single_occurrence(sigma, tau)?;
        Ok(MobiusEvaluation {
            value: case.mobius_value(),
            method: Method::ClosedForm(case),
            occurrence_count: count,
        })
    };
    match strategy {
        Strategy::Theorem => {
            if !quasi {
                return Err(Error::NotApplicable(
                    "scheme is not quasi-consecutive".to_string(),
                ));
            }
            closed_form(count)
        }
        Strategy::Auto if quasi && count == 1 => closed_form(count),
        _ => {
            let value = match cache.interval(sigma, tau) {
                Ok(iv) => mobius_bruteforce(&iv, Direction::BottomUp),
                Err(Error::NotComparable { .. }) => 0,
                Err(e) => return Err(e),
            };
            Ok(MobiusEvaluation {
                value,
                method: Method::BruteForce,
                occurrence_count: count,
            })
        }
    }
}

/// The 2 x n grid formula: when `tau` covers precisely two permutations,
/// its first two entries are not consecutive integers, and no occurrence of
/// `sigma` involves the first entry (or `sigma = 1`), the interval is a grid
/// and mu depends only on the length difference.
pub fn two_cover_grid_mobius(sigma: &Permutation, tau: &Permutation) -> Result<i64, Error> {
    let quasi = VincularScheme::QuasiConsecutive;
    let covers = covered_by(tau, &quasi);
    if covers.len() != 2 {
        return Err(Error::NotApplicable(format!(
            "tau covers {} permutations, need exactly 2",
            covers.len()
        )));
    }
    if first_two_consecutive_integers(tau) {
        return Err(Error::NotApplicable(
            "the first two entries of tau are consecutive integers".to_string(),
        ));
    }
    let occs = occurrences(sigma, tau, &quasi).unwrap_or_default();
    if occs.is_empty() {
        return Err(Error::NotApplicable(
            "sigma does not occur in tau".to_string(),
        ));
    }
    if sigma.len() > 1 && occs.iter().any(|occ| occ.involves(1)) {
        return Err(Error::NotApplicable(
            "an occurrence of sigma involves the first entry of tau".to_string(),
        ));
    }
    debug_assert!(sigma.is_monotone());
    Ok(match tau.len() - sigma.len() {
        0 => 1,
        1 => -1,
        2 => 1,
        _ => 0,
    })
}

/// The JSON result schema shared with the command line:
/// `{sigma, tau, scheme, mu, method, case, occurrences, rank}`.
pub fn report_json(
    sigma: &Permutation,
    tau: &Permutation,
    scheme: &VincularScheme,
    eval: &MobiusEvaluation,
) -> Value {
    json!({
        "sigma": sigma.to_string(),
        "tau": tau.to_string(),
        "scheme": scheme.to_string(),
        "mu": eval.value,
        "method": eval.method.kind(),
        "case": eval.method.case().map(|c| c.as_str()),
        "occurrences": eval.occurrence_count,
        "rank": tau.len() as i64 - sigma.len() as i64,
    })
}

/// One disagreement between the closed form and the recursion.
#[derive(Debug, Clone)]
pub struct TheoremMismatch {
    pub sigma: Permutation,
    pub tau: Permutation,
    pub case: CaseLabel,
    pub closed_form: i64,
    pub brute_force: i64,
}

/// Outcome of a single-occurrence soundness sweep.
#[derive(Debug, Clone, Default)]
pub struct TheoremSweep {
    pub pairs_checked: u64,
    pub mismatches: Vec<TheoremMismatch>,
}

impl TheoremSweep {
    pub fn merge(&mut self, other: TheoremSweep) {
        self.pairs_checked += other.pairs_checked;
        self.mismatches.extend(other.mismatches);
    }
}

/// Checks closed form against brute force for every `sigma < tau` with
/// exactly one quasi-consecutive occurrence, for this single `tau`.
pub fn verify_single_occurrence_for(cache: &mut CoverCache, tau: &Permutation) -> TheoremSweep {
    debug_assert!(cache.scheme().is_quasi_consecutive());
    let mut sweep = TheoremSweep::default();
    let below = cache.down_set(tau);
    for sigma in below.iter().filter(|s| *s != tau) {
        if count_occurrences(sigma, tau, &VincularScheme::QuasiConsecutive) != 1 {
            continue;
        }
        let case = classify_single_occurrence(sigma, tau).expect("count is one");
        let closed = case.mobius_value();
        let iv = cache.interval(sigma, tau).expect("sigma is below tau");
        let brute = mobius_bruteforce(&iv, Direction::BottomUp);
        sweep.pairs_checked += 1;
        if closed != brute {
            sweep.mismatches.push(TheoremMismatch {
                sigma: sigma.clone(),
                tau: tau.clone(),
                case,
                closed_form: closed,
                brute_force: brute,
            });
        }
    }
    sweep
}

/// Exhaustive soundness sweep over every `tau` with `|tau| <= max_len`.
pub fn verify_single_occurrence(max_len: usize) -> TheoremSweep {
    let mut cache = CoverCache::new(VincularScheme::QuasiConsecutive);
    let mut sweep = TheoremSweep::default();
    for n in 2..=max_len {
        for tau in Permutation::all_of_length(n) {
            sweep.merge(verify_single_occurrence_for(&mut cache, &tau));
        }
    }
    sweep
}
