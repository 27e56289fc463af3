//! Möbius survey over all targets containing a fixed pattern, with a
//! persisted, resumable record stream.

use std::collections::{BTreeMap, HashMap};
use std::fs;

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use vinposet::mobius::{mobius_with_cache, Strategy};
use vinposet::{contains, CoverCache, Permutation, VincularScheme};

use crate::{SurveyFormat, EXIT_IO, EXIT_OK};

/// One surveyed pair; the CSV columns and the JSON result schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub(crate) struct SurveyRecord {
    pub sigma: String,
    pub tau: String,
    pub scheme: String,
    pub mu: i64,
    pub method: String,
    pub case: Option<String>,
    pub occurrences: u64,
    pub rank: i64,
}

pub(crate) struct Options {
    pub sigma: String,
    pub max_len: usize,
    pub scheme: String,
    pub out: Option<PathBuf>,
    pub resume: bool,
    pub format: SurveyFormat,
    pub i_know: bool,
}

pub(crate) fn run(opts: &Options) -> u8 {
    let sigma = match crate::parse_permutation(&opts.sigma) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let scheme = match crate::parse_scheme(&opts.scheme) {
        Ok(s) => s,
        Err(code) => return code,
    };
    if let Err(code) = crate::check_cap("--max-len", opts.max_len, opts.i_know) {
        return code;
    }
    if opts.resume && opts.out.is_none() {
        return crate::usage_error("--resume requires --out");
    }

    let existing: Vec<SurveyRecord> = match opts.out.as_deref() {
        Some(path) if opts.resume && path.exists() => match read_records(path, opts.format) {
            Ok(records) => records,
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", path.display());
                return EXIT_IO;
            }
        },
        _ => Vec::new(),
    };
    let fingerprint = scheme.to_string();
    let cached: HashMap<&str, &SurveyRecord> = existing
        .iter()
        .filter(|r| r.sigma == sigma.to_string() && r.scheme == fingerprint)
        .map(|r| (r.tau.as_str(), r))
        .collect();

    // Every tau containing sigma, in enumeration order (length, then lex).
    let targets: Vec<Permutation> = (sigma.len() + 1..=opts.max_len)
        .flat_map(Permutation::all_of_length)
        .collect();
    let rows: Vec<Option<(SurveyRecord, bool)>> = targets
        .into_par_iter()
        .map_init(
            || CoverCache::new(scheme.clone()),
            |cache, tau| {
                if let Some(&hit) = cached.get(tau.to_string().as_str()) {
                    return Some((hit.clone(), false));
                }
                if !contains(&sigma, &tau, cache.scheme()) {
                    return None;
                }
                let eval = mobius_with_cache(cache, &sigma, &tau, Strategy::Auto)
                    .expect("auto strategy cannot fail");
                Some((
                    SurveyRecord {
                        sigma: sigma.to_string(),
                        tau: tau.to_string(),
                        scheme: fingerprint.clone(),
                        mu: eval.value,
                        method: eval.method.kind().to_string(),
                        case: eval.method.case().map(|c| c.as_str().to_string()),
                        occurrences: eval.occurrence_count as u64,
                        rank: tau.len() as i64 - sigma.len() as i64,
                    },
                    true,
                ))
            },
        )
        .collect();
    let rows: Vec<(SurveyRecord, bool)> = rows.into_iter().flatten().collect();
    let fresh: Vec<&SurveyRecord> = rows.iter().filter(|(_, new)| *new).map(|(r, _)| r).collect();

    if let Some(path) = opts.out.as_deref() {
        let outcome = if opts.resume && path.exists() {
            append_records(path, opts.format, &existing, &fresh)
        } else {
            let all: Vec<&SurveyRecord> = rows.iter().map(|(r, _)| r).collect();
            write_records(path, opts.format, &all)
        };
        if let Err(e) = outcome {
            eprintln!("error: cannot write {}: {e}", path.display());
            return EXIT_IO;
        }
    } else {
        let all: Vec<&SurveyRecord> = rows.iter().map(|(r, _)| r).collect();
        let mut stdout = std::io::stdout().lock();
        if emit(&mut stdout, opts.format, &all).is_err() {
            return EXIT_IO;
        }
    }

    print_summary(&sigma, &scheme, opts.max_len, &rows);
    EXIT_OK
}

fn print_summary(
    sigma: &Permutation,
    scheme: &VincularScheme,
    max_len: usize,
    rows: &[(SurveyRecord, bool)],
) {
    let reused = rows.iter().filter(|(_, new)| !*new).count();
    println!(
        "surveyed {} targets containing {sigma} under {scheme}, lengths {}..={max_len} ({reused} reused)",
        rows.len(),
        sigma.len() + 1,
    );
    if rows.is_empty() {
        return;
    }
    let mut distribution: BTreeMap<i64, usize> = BTreeMap::new();
    for (record, _) in rows {
        *distribution.entry(record.mu).or_default() += 1;
    }
    println!("mu distribution:");
    for (mu, count) in &distribution {
        println!("  mu={mu}: {count}");
    }
    let peak = rows
        .iter()
        .map(|(r, _)| r.mu.unsigned_abs())
        .max()
        .unwrap();
    let witness = rows
        .iter()
        .find(|(r, _)| r.mu.unsigned_abs() == peak)
        .map(|(r, _)| r.tau.clone())
        .unwrap();
    println!("max |mu| = {peak}, witness tau = {witness}");
}

fn emit(
    writer: &mut dyn std::io::Write,
    format: SurveyFormat,
    records: &[&SurveyRecord],
) -> std::io::Result<()> {
    match format {
        SurveyFormat::Csv => {
            let mut csv_writer = csv::Writer::from_writer(writer);
            for record in records {
                csv_writer.serialize(record)?;
            }
            csv_writer.flush()
        }
        SurveyFormat::Json => {
            let values: Vec<serde_json::Value> = records
                .iter()
                .map(|r| serde_json::to_value(r).expect("plain fields"))
                .collect();
            writeln!(writer, "{}", serde_json::Value::Array(values))
        }
    }
}

fn write_records(path: &Path, format: SurveyFormat, records: &[&SurveyRecord]) -> std::io::Result<()> {
    let mut file = fs::File::create(path)?;
    emit(&mut file, format, records)
}

fn append_records(
    path: &Path,
    format: SurveyFormat,
    existing: &[SurveyRecord],
    fresh: &[&SurveyRecord],
) -> std::io::Result<()> {
    match format {
        SurveyFormat::Csv => {
            // Append-only cache: leave prior records in place.
            let file = fs::OpenOptions::new().append(true).open(path)?;
            let mut csv_writer = csv::WriterBuilder::new().has_headers(false).from_writer(file);
            for record in fresh {
                csv_writer.serialize(record)?;
            }
            csv_writer.flush()
        }
        SurveyFormat::Json => {
            let merged: Vec<&SurveyRecord> = existing.iter().chain(fresh.iter().copied()).collect();
            write_records(path, format, &merged)
        }
    }
}

pub(crate) fn read_records(path: &Path, format: SurveyFormat) -> std::io::Result<Vec<SurveyRecord>> {
    match format {
        SurveyFormat::Csv => {
            let mut reader = csv::Reader::from_path(path)?;
            reader
                .deserialize()
                .collect::<Result<Vec<SurveyRecord>, _>>()
                .map_err(std::io::Error::other)
        }
        SurveyFormat::Json => {
            let text = fs::read_to_string(path)?;
            serde_json::from_str(&text).map_err(std::io::Error::other)
        }
    }
}
