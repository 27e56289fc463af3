//! Conjecture and proposition checks. A failed conjecture is a reported
//! finding (exit 1), never a crash.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use vinposet::mobius::{mobius_bruteforce, mobius_with_cache, Direction, Strategy};
use vinposet::{contains, AdjacencyVector, CoverCache, Permutation, VincularScheme};

use crate::{EXIT_NEGATIVE, EXIT_OK};

/// Reports mu(sigma, sigma + ... + sigma) for every base pattern up to
/// `sigma_max` and every copy count that fits in `len_cap`.
pub(crate) fn direct_sum(sigma_max: usize, len_cap: usize, i_know: bool) -> u8 {
    if let Err(code) = crate::check_cap("--len-cap", len_cap, i_know) {
        return code;
    }
    if sigma_max == 0 || 2 * sigma_max > len_cap {
        return crate::usage_error("--sigma-max must be at least 1 with 2*sigma_max <= len_cap");
    }
    let mut counterexamples = 0usize;
    let mut instances = 0usize;
    let mut cache = CoverCache::new(VincularScheme::QuasiConsecutive);
    for m in 1..=sigma_max {
        for sigma in Permutation::all_of_length(m) {
            let mut tau = sigma.clone();
            for copies in 2.. {
                if copies * m > len_cap {
                    break;
                }
                tau = tau.direct_sum(&sigma).expect("within the length cap");
                let eval = mobius_with_cache(&mut cache, &sigma, &tau, Strategy::Auto)
                    .expect("auto strategy cannot fail");
                instances += 1;
                let verdict = if eval.value == 1 {
                    ""
                } else {
                    counterexamples += 1;
                    " [counterexample]"
                };
                println!("sigma={sigma} copies={copies} tau={tau} mu={}{verdict}", eval.value);
            }
        }
    }
    println!(
        "direct-sum report: {instances} instances, {counterexamples} counterexamples"
    );
    if counterexamples == 0 {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

type BoundFlags = (u64, u64, Vec<(Permutation, Permutation, i64)>);

/// Flags any consecutive-scheme interval with |mu| > 1.
pub(crate) fn consecutive_bound(max_len: usize, i_know: bool) -> u8 {
    if let Err(code) = crate::check_cap("--max-len", max_len, i_know) {
        return code;
    }
    let mut checked = 0u64;
    let mut peak = 0u64;
    let mut flagged: Vec<(Permutation, Permutation, i64)> = Vec::new();
    for n in 1..=max_len {
        let per_tau: Vec<BoundFlags> = Permutation::all_of_length(n)
            .into_par_iter()
            .map_init(
                || CoverCache::new(VincularScheme::Consecutive),
                |cache, tau| {
                    let mut local: BoundFlags = (0, 0, Vec::new());
                    for sigma in cache.down_set(&tau).iter() {
                        let iv = cache.interval(sigma, &tau).expect("sigma is below tau");
                        let mu = mobius_bruteforce(&iv, Direction::BottomUp);
                        local.0 += 1;
                        local.1 = local.1.max(mu.unsigned_abs());
                        if mu.unsigned_abs() > 1 {
                            local.2.push((sigma.clone(), tau.clone(), mu));
                        }
                    }
                    local
                },
            )
            .collect();
        for (count, local_peak, local_flags) in per_tau {
            checked += count;
            peak = peak.max(local_peak);
            flagged.extend(local_flags);
        }
    }
    for (sigma, tau, mu) in &flagged {
        println!("flag: sigma={sigma} tau={tau} mu={mu}");
    }
    println!(
        "consecutive-bound report: {checked} intervals up to length {max_len}, max |mu| = {peak}, {} flags",
        flagged.len()
    );
    if flagged.is_empty() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

/// One containment/order disagreement.
struct Disagreement {
    sigma: Permutation,
    tau: Permutation,
    contains: bool,
    leq: bool,
}

/// Searches for pairs where the containment relation and the poset order
/// disagree, under an explicit scheme or randomly sampled explicit-row
/// schemes.
pub(crate) fn equiv_search(
    scheme: Option<&str>,
    max_len: usize,
    schemes: usize,
    seed: u64,
    i_know: bool,
) -> u8 {
    if let Err(code) = crate::check_cap("--max-len", max_len, i_know) {
        return code;
    }
    let targets: Vec<VincularScheme> = match scheme {
        Some(text) => match crate::parse_scheme(text) {
            Ok(s) => vec![s],
            Err(code) => return code,
        },
        None => sample_schemes(schemes, max_len, seed),
    };
    let mut total = 0usize;
    for scheme in &targets {
        let found = disagreements(scheme, max_len);
        for d in &found {
            println!(
                "disagreement: scheme={scheme} sigma={} tau={} contains={} leq={}",
                d.sigma, d.tau, d.contains, d.leq
            );
        }
        println!("scheme {scheme}: {} disagreements up to length {max_len}", found.len());
        total += found.len();
    }
    println!(
        "equiv-search report: {} schemes, {total} disagreements",
        targets.len()
    );
    if total == 0 {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

fn sample_schemes(count: usize, max_len: usize, seed: u64) -> Vec<VincularScheme> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let rows: Vec<AdjacencyVector> = (1..max_len)
                .map(|k| AdjacencyVector::from_bits((0..k).map(|_| rng.random()).collect::<Vec<bool>>()))
                .collect();
            VincularScheme::explicit_rows(rows, false).expect("distinct row lengths")
        })
        .collect()
}

fn disagreements(scheme: &VincularScheme, max_len: usize) -> Vec<Disagreement> {
    let patterns: Vec<Vec<Permutation>> =
        (1..=max_len).map(Permutation::all_of_length).collect();
    let mut found = Vec::new();
    for n in 1..=max_len {
        let per_tau: Vec<Vec<Disagreement>> = Permutation::all_of_length(n)
            .into_par_iter()
            .map_init(
                || CoverCache::new(scheme.clone()),
                |cache, tau| {
                    let below = cache.down_set(&tau);
                    let mut local = Vec::new();
                    for sigma in patterns[..n].iter().flatten() {
                        let is_contained = contains(sigma, &tau, cache.scheme());
                        let is_below = below.contains(sigma);
                        if is_contained != is_below {
                            local.push(Disagreement {
                                sigma: sigma.clone(),
                                tau: tau.clone(),
                                contains: is_contained,
                                leq: is_below,
                            });
                        }
                    }
                    local
                },
            )
            .collect();
        found.extend(per_tau.into_iter().flatten());
    }
    found
}
