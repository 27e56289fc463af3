//! Dashed permutations, adjacency schemes, and occurrence detection.
//!
//! A pattern of length `k` carries a (0,1)-vector of `k-1` adjacency bits:
//! bit `j` = 1 means a dash sits between pattern positions `j` and `j+1`
//! (a gap is allowed there in the text), bit `j` = 0 means the two matched
//! entries must be adjacent in the text. A scheme assigns such a vector to
//! every pattern length at once.

use std::fmt;
use std::str::FromStr;

use crate::permutation::Permutation;
use crate::Error;

/// The (0,1)-vector recording where the dashes of a pattern sit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AdjacencyVector {
    bits: Vec<bool>,
}

impl AdjacencyVector {
    pub fn from_bits(bits: impl Into<Vec<bool>>) -> Self {
        AdjacencyVector { bits: bits.into() }
    }

    /// The empty vector, carried by patterns of length 1.
    pub fn empty() -> Self {
        AdjacencyVector { bits: Vec::new() }
    }

    pub fn all_ones(len: usize) -> Self {
        AdjacencyVector { bits: vec![true; len] }
    }

    pub fn all_zeros(len: usize) -> Self {
        AdjacencyVector { bits: vec![false; len] }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Whether a gap is allowed between matched positions `j` and `j+1`
    /// (1-indexed, `1 <= j <= len`).
    pub fn gap_allowed(&self, j: usize) -> bool {
        self.bits[j - 1]
    }
}

impl fmt::Display for AdjacencyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self.bits.iter().map(|&b| if b { "1" } else { "0" }).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A permutation together with its own adjacency vector, e.g. `5-13-42`.
///
/// This is what the matcher actually consumes; scheme-based occurrence
/// search builds one from the scheme's type vector for the pattern length.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DashedPermutation {
    base: Permutation,
    dashes: AdjacencyVector,
}

impl DashedPermutation {
    pub fn new(base: Permutation, dashes: AdjacencyVector) -> Result<Self, Error> {
        if dashes.len() != base.len() - 1 {
            return Err(Error::DashLengthMismatch {
                bits: dashes.len(),
                expected: base.len() - 1,
            });
        }
        Ok(DashedPermutation { base, dashes })
    }

    pub fn base(&self) -> &Permutation {
        &self.base
    }

    pub fn dashes(&self) -> &AdjacencyVector {
        &self.dashes
    }

    /// All occurrences of this dashed pattern in `text`, in lexicographic
    /// position order. Empty means avoidance.
    pub fn occurrences_in(&self, text: &Permutation) -> Result<Vec<Occurrence>, Error> {
        if self.base.len() > text.len() {
            return Err(Error::PatternLongerThanText {
                pattern: self.base.len(),
                text: text.len(),
            });
        }
        Ok(search(self, text))
    }
}

impl fmt::Display for DashedPermutation {
    /// Compact dashed form, e.g. `5-13-42` (only for lengths up to 9).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.base.values().iter().enumerate() {
            if i > 0 && self.dashes.gap_allowed(i) {
                write!(f, "-")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for DashedPermutation {
    type Err = Error;

    /// Parses the compact dashed form `5-13-42` (digits and dashes, `n <= 9`).
    fn from_str(s: &str) -> Result<Self, Error> {
        let parse_err = |reason: &str| Error::ParsePermutation {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let mut values: Vec<u8> = Vec::new();
        let mut bits: Vec<bool> = Vec::new();
        let mut pending_dash = false;
        for c in s.chars() {
            match c {
                '-' => {
                    if values.is_empty() || pending_dash {
                        return Err(parse_err("misplaced dash"));
                    }
                    pending_dash = true;
                }
                _ => {
                    let d = c
                        .to_digit(10)
                        .ok_or_else(|| parse_err("expected digit or dash"))?;
                    if !values.is_empty() {
                        bits.push(pending_dash);
                    }
                    pending_dash = false;
                    values.push(d as u8);
                }
            }
        }
        if pending_dash {
            return Err(parse_err("trailing dash"));
        }
        let base = Permutation::new(values).map_err(|e| parse_err(&e.to_string()))?;
        DashedPermutation::new(base, AdjacencyVector::from_bits(bits))
    }
}

/// A rule assigning an adjacency vector to every pattern length: the
/// infinite lower triangular (0,1)-matrix `A`, encoded finitely.
#[derive(Debug, Clone)]
pub enum VincularScheme {
    /// All dashes: the classical pattern order (all-ones matrix).
    Classical,
    /// No dashes: the consecutive pattern order (null matrix).
    Consecutive,
    /// A single dash after the first entry: the vector `a = (1,0,0,...)`.
    QuasiConsecutive,
    /// Constant columns described by a finite prefix of the vector `a`,
    /// implicitly 0 beyond it.
    ConstantColumns(Vec<bool>),
    /// Finitely many explicit rows; row `k` has exactly `k` bits, so the
    /// row number is the bit count. Unlisted rows are filled with `fill`.
    ExplicitRows { rows: Vec<AdjacencyVector>, fill: bool },
}

impl VincularScheme {
    pub fn constant_columns(prefix: impl Into<Vec<bool>>) -> Self {
        VincularScheme::ConstantColumns(prefix.into())
    }

    pub fn explicit_rows(rows: Vec<AdjacencyVector>, fill: bool) -> Result<Self, Error> {
        let mut lengths: Vec<usize> = rows.iter().map(|r| r.len()).collect();
        lengths.sort_unstable();
        for w in lengths.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateRowLength(w[0]));
            }
        }
        if lengths.first() == Some(&0) {
            return Err(Error::EmptyRow);
        }
        Ok(VincularScheme::ExplicitRows { rows, fill })
    }

    /// The length-`k-1` adjacency vector prescribed for patterns of length
    /// `k` (the on-or-below-diagonal part of matrix row `k-1`).
    pub fn type_vector(&self, k: usize) -> AdjacencyVector {
        assert!(k >= 1, "pattern length must be at least 1");
        let len = k - 1;
        match self {
            VincularScheme::Classical => AdjacencyVector::all_ones(len),
            VincularScheme::Consecutive => AdjacencyVector::all_zeros(len),
            VincularScheme::QuasiConsecutive => {
                let mut bits = vec![false; len];
                if let Some(first) = bits.first_mut() {
                    *first = true;
                }
                AdjacencyVector::from_bits(bits)
            }
            VincularScheme::ConstantColumns(prefix) => {
                let bits = (0..len).map(|j| prefix.get(j).copied().unwrap_or(false)).collect::<Vec<_>>();
                AdjacencyVector::from_bits(bits)
            }
            VincularScheme::ExplicitRows { rows, fill } => rows
                .iter()
                .find(|r| r.len() == len)
                .cloned()
                .unwrap_or_else(|| AdjacencyVector::from_bits(vec![*fill; len])),
        }
    }

    /// Canonical text form; equal fingerprints mean the schemes prescribe
    /// the same type vector for every length. Used as memo-cache key.
    pub fn fingerprint(&self) -> String {
        match self {
            VincularScheme::Classical => "classical".to_string(),
            VincularScheme::Consecutive => "consecutive".to_string(),
            VincularScheme::QuasiConsecutive => "quasi".to_string(),
            VincularScheme::ConstantColumns(prefix) => {
                let trimmed: &[bool] = {
                    let end = prefix.iter().rposition(|&b| b).map_or(0, |i| i + 1);
                    &prefix[..end]
                };
                if trimmed.is_empty() {
                    "consecutive".to_string()
                } else if trimmed == [true] {
                    "quasi".to_string()
                } else {
                    let parts: Vec<&str> =
                        trimmed.iter().map(|&b| if b { "1" } else { "0" }).collect();
                    format!("a={}", parts.join(","))
                }
            }
            VincularScheme::ExplicitRows { rows, fill } => {
                let mut kept: Vec<&AdjacencyVector> = rows
                    .iter()
                    .filter(|r| r.bits().iter().any(|&b| b != *fill))
                    .collect();
                kept.sort_by_key(|r| r.len());
                if kept.is_empty() {
                    return if *fill { "classical" } else { "consecutive" }.to_string();
                }
                let rows_text: Vec<String> = kept
                    .iter()
                    .map(|r| {
                        r.bits()
                            .iter()
                            .map(|&b| if b { "1" } else { "0" })
                            .collect::<Vec<_>>()
                            .join(",")
                    })
                    .collect();
                format!("rows={}:fill={}", rows_text.join(";"), u8::from(*fill))
            }
        }
    }

    /// Whether this scheme is the quasi-consecutive one, `a = (1,0,0,...)`.
    pub fn is_quasi_consecutive(&self) -> bool {
        self.fingerprint() == "quasi"
    }

    /// Whether this scheme is the consecutive one (the null matrix).
    pub fn is_consecutive(&self) -> bool {
        self.fingerprint() == "consecutive"
    }
}

impl PartialEq for VincularScheme {
    fn eq(&self, other: &Self) -> bool {
        self.fingerprint() == other.fingerprint()
    }
}

impl Eq for VincularScheme {}

impl std::hash::Hash for VincularScheme {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.fingerprint().hash(state);
    }
}

impl fmt::Display for VincularScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fingerprint())
    }
}

impl FromStr for VincularScheme {
    type Err = Error;

    /// Grammar: `quasi` | `classical` | `consecutive` | `a=1,0,0` |
    /// `rows=0,1,0;0,0,0,0:fill=0`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let parse_err = |reason: &str| Error::ParseScheme {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let parse_bit = |t: &str| match t.trim() {
            "0" => Ok(false),
            "1" => Ok(true),
            _ => Err(parse_err("bits must be 0 or 1")),
        };
        match s.trim() {
            "quasi" | "quasi-consecutive" | "quasi_consecutive" => {
                return Ok(VincularScheme::QuasiConsecutive)
            }
            "classical" => return Ok(VincularScheme::Classical),
            "consecutive" => return Ok(VincularScheme::Consecutive),
            _ => {}
        }
        if let Some(rest) = s.trim().strip_prefix("a=") {
            let prefix = if rest.is_empty() {
                Vec::new()
            } else {
                rest.split(',').map(&parse_bit).collect::<Result<Vec<_>, _>>()?
            };
            return Ok(VincularScheme::ConstantColumns(prefix));
        }
        if let Some(rest) = s.trim().strip_prefix("rows=") {
            let (rows_text, fill) = match rest.split_once(":fill=") {
                Some((r, fill_text)) => (r, parse_bit(fill_text)?),
                None => (rest, false),
            };
            let rows = rows_text
                .split(';')
                .map(|row| {
                    Ok(AdjacencyVector::from_bits(
                        row.split(',').map(&parse_bit).collect::<Result<Vec<_>, _>>()?,
                    ))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            return VincularScheme::explicit_rows(rows, fill)
                .map_err(|e| parse_err(&e.to_string()));
        }
        Err(parse_err(
            "expected quasi | classical | consecutive | a=... | rows=...:fill=...",
        ))
    }
}

/// Positions `i_1 < ... < i_k` (1-indexed) of one occurrence of a pattern in
/// a text permutation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Occurrence {
    positions: Vec<usize>,
}

impl Occurrence {
    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    /// Whether the 1-indexed text position `pos` is part of the occurrence.
    pub fn involves(&self, pos: usize) -> bool {
        self.positions.binary_search(&pos).is_ok()
    }

    /// Whether the matched positions form a contiguous block of the text.
    pub fn is_consecutive(&self) -> bool {
        self.positions.windows(2).all(|w| w[1] == w[0] + 1)
    }
}

impl fmt::Display for Occurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.positions.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The complete, duplicate-free list of occurrences of `pattern` in `text`
/// under `scheme`, in lexicographic position order.
pub fn occurrences(
    pattern: &Permutation,
    text: &Permutation,
    scheme: &VincularScheme,
) -> Result<Vec<Occurrence>, Error> {
    let dashes = scheme.type_vector(pattern.len());
    DashedPermutation::new(pattern.clone(), dashes)
        .expect("type vector length matches by construction")
        .occurrences_in(text)
}

/// Whether `pattern` occurs in `text` under `scheme` (false when the pattern
/// is longer than the text).
pub fn contains(pattern: &Permutation, text: &Permutation, scheme: &VincularScheme) -> bool {
    count_occurrences(pattern, text, scheme) > 0
}

/// Number of occurrences; 0 when the pattern is longer than the text.
pub fn count_occurrences(
    pattern: &Permutation,
    text: &Permutation,
    scheme: &VincularScheme,
) -> usize {
    occurrences(pattern, text, scheme).map_or(0, |occ| occ.len())
}

/// The set of permutations covered by `text`: the patterns one shorter than
/// `text` that occur in it. Empty for length-1 text.
///
/// A length `n-1` occurrence is `text` minus a single position `r`, and the
/// only adjacency constraint it can violate sits at the splice: interior
/// removals need a dash there, while removing the first or last entry leaves
/// a contiguous block. So the cover set is a handful of entry removals.
pub fn covered_by(text: &Permutation, scheme: &VincularScheme) -> Vec<Permutation> {
    let n = text.len();
    if n < 2 {
        return Vec::new();
    }
    let bits = scheme.type_vector(n - 1);
    let mut out = Vec::new();
    for r in 1..=n {
        let splice_ok = r == 1 || r == n || bits.gap_allowed(r - 1);
        if splice_ok {
            out.push(text.remove_entry(r).expect("in range"));
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

// Backtracking matcher. The pattern is split at its dashes into blocks that
// must match contiguous runs of the text; block start positions are chosen
// left to right in increasing order, which yields lexicographic output.
fn search(pattern: &DashedPermutation, text: &Permutation) -> Vec<Occurrence> {
    // Block j covers pattern indices blocks[j].0 .. blocks[j].0 + blocks[j].1.
    let mut blocks: Vec<(usize, usize)> = vec![(0, 1)];
    for j in 1..pattern.base().len() {
        if pattern.dashes().gap_allowed(j) {
            blocks.push((j, 1));
        } else {
            blocks.last_mut().unwrap().1 += 1;
        }
    }
    // Minimum number of text positions needed from each block onward.
    let mut needed_from: Vec<usize> = vec![0; blocks.len() + 1];
    for (b, &(_, len)) in blocks.iter().enumerate().rev() {
        needed_from[b] = needed_from[b + 1] + len;
    }
    let mut search = BlockSearch {
        pattern: pattern.base().values(),
        text: text.values(),
        blocks,
        needed_from,
        chosen: Vec::with_capacity(pattern.base().len()),
        found: Vec::new(),
    };
    if search.needed_from[0] <= search.text.len() {
        search.descend(0, 0);
    }
    search.found
}

struct BlockSearch<'a> {
    pattern: &'a [u8],
    text: &'a [u8],
    blocks: Vec<(usize, usize)>,
    needed_from: Vec<usize>,
    chosen: Vec<usize>, // 0-indexed text positions, one per matched prefix entry
    found: Vec<Occurrence>,
}

impl BlockSearch<'_> {
    // Matched prefix stays order-isomorphic when pattern index j maps to pos.
    fn consistent(&self, j: usize, pos: usize) -> bool {
        self.chosen
            .iter()
            .enumerate()
            .take(j)
            .all(|(jp, &tp)| (self.pattern[jp] < self.pattern[j]) == (self.text[tp] < self.text[pos]))
    }

    fn descend(&mut self, block: usize, min_start: usize) {
        if block == self.blocks.len() {
            self.found.push(Occurrence {
                positions: self.chosen.iter().map(|&i| i + 1).collect(),
            });
            return;
        }
        let (first_idx, len) = self.blocks[block];
        let last_start = self.text.len().saturating_sub(self.needed_from[block]);
        for start in min_start..=last_start {
            let mut ok = true;
            for offset in 0..len {
                if !self.consistent(first_idx + offset, start + offset) {
                    ok = false;
                    break;
                }
                self.chosen.push(start + offset);
            }
            if ok {
                self.descend(block + 1, start + len);
            }
            self.chosen.truncate(first_idx);
        }
    }
}
