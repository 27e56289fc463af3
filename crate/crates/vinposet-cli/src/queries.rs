//! The three point queries: containment, interval rendering, Möbius value.

use vinposet::mobius::{mobius as evaluate_mobius, report_json};
use vinposet::{poset, vincular, Error, Strategy};

use crate::{IntervalFormat, MethodArg, EXIT_NEGATIVE, EXIT_OK};

pub(crate) fn contains(pattern: &str, text: &str, scheme: &str, list: bool) -> u8 {
    let (pattern, text, scheme) = match (
        crate::parse_permutation(pattern),
        crate::parse_permutation(text),
        crate::parse_scheme(scheme),
    ) {
        (Ok(p), Ok(t), Ok(s)) => (p, t, s),
        (p, t, s) => return p.err().or(t.err()).or(s.err()).unwrap(),
    };
    let occurrences = vincular::occurrences(&pattern, &text, &scheme).unwrap_or_default();
    let found = !occurrences.is_empty();
    println!("{found}");
    if list {
        for occ in &occurrences {
            println!("{occ}");
        }
    }
    if found {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

pub(crate) fn interval(sigma: &str, tau: &str, scheme: &str, format: IntervalFormat) -> u8 {
    let (sigma, tau, scheme) = match (
        crate::parse_permutation(sigma),
        crate::parse_permutation(tau),
        crate::parse_scheme(scheme),
    ) {
        (Ok(b), Ok(t), Ok(s)) => (b, t, s),
        (b, t, s) => return b.err().or(t.err()).or(s.err()).unwrap(),
    };
    let iv = match poset::interval(&sigma, &tau, &scheme) {
        Ok(iv) => iv,
        Err(e @ Error::NotComparable { .. }) => {
            eprintln!("error: {e}");
            return EXIT_NEGATIVE;
        }
        Err(e) => return crate::usage_error(e),
    };
    match format {
        IntervalFormat::Text => {
            println!("interval [{sigma}, {tau}] under {scheme}: rank {}", iv.rank());
            for (r, level) in iv.levels().enumerate() {
                let row: Vec<String> = level.iter().map(|q| q.to_string()).collect();
                println!("level {r}: [{}]", row.join(", "));
            }
            println!("hasse edges: {}", iv.edge_indices().len());
        }
        IntervalFormat::Json => println!("{}", iv.to_json()),
        IntervalFormat::Dot => print!("{}", iv.to_dot()),
    }
    EXIT_OK
}

pub(crate) fn mobius(sigma: &str, tau: &str, scheme: &str, method: MethodArg) -> u8 {
    let (sigma, tau, scheme) = match (
        crate::parse_permutation(sigma),
        crate::parse_permutation(tau),
        crate::parse_scheme(scheme),
    ) {
        (Ok(b), Ok(t), Ok(s)) => (b, t, s),
        (b, t, s) => return b.err().or(t.err()).or(s.err()).unwrap(),
    };
    let strategy = match method {
        MethodArg::Auto => Strategy::Auto,
        MethodArg::Brute => Strategy::Brute,
        MethodArg::Theorem => Strategy::Theorem,
    };
    match evaluate_mobius(&sigma, &tau, &scheme, strategy) {
        Ok(eval) => {
            println!("{}", report_json(&sigma, &tau, &scheme, &eval));
            EXIT_OK
        }
        Err(e @ Error::NotApplicable(_)) => {
            eprintln!("error: {e}");
            EXIT_NEGATIVE
        }
        Err(e) => crate::usage_error(e),
    }
}
