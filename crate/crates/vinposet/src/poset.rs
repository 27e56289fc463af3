//! The pattern containment order: reflexive-transitive closure of the
//! covering relation, interval construction, and Hasse-diagram export.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::permutation::Permutation;
use crate::vincular::{covered_by, VincularScheme};
use crate::Error;

/// Memoizes covering sets and down-sets for one scheme. Sweeps that revisit
/// the same sub-permutations many times should keep one of these alive; it
/// is cheap to construct, so one cache per worker task is the intended use.
#[derive(Debug, Clone)]
pub struct CoverCache {
    scheme: VincularScheme,
    covers: HashMap<Permutation, Arc<[Permutation]>>,
    down_sets: HashMap<Permutation, Arc<BTreeSet<Permutation>>>,
}

impl CoverCache {
    pub fn new(scheme: VincularScheme) -> Self {
        CoverCache {
            scheme,
            covers: HashMap::new(),
            down_sets: HashMap::new(),
        }
    }

    pub fn scheme(&self) -> &VincularScheme {
        &self.scheme
    }

    /// The set of permutations covered by `text` (see [`covered_by`]).
    pub fn covers(&mut self, text: &Permutation) -> Arc<[Permutation]> {
        if let Some(hit) = self.covers.get(text) {
            return hit.clone();
        }
        let computed: Arc<[Permutation]> = covered_by(text, &self.scheme).into();
        self.covers.insert(text.clone(), computed.clone());
        computed
    }

    /// Every permutation below or equal to `top` in the scheme's order.
    pub fn down_set(&mut self, top: &Permutation) -> Arc<BTreeSet<Permutation>> {
        if let Some(hit) = self.down_sets.get(top) {
            return hit.clone();
        }
        let mut all: BTreeSet<Permutation> = BTreeSet::new();
        all.insert(top.clone());
        let mut frontier = vec![top.clone()];
        while let Some(next) = frontier.pop() {
            for child in self.covers(&next).iter() {
                if all.insert(child.clone()) {
                    frontier.push(child.clone());
                }
            }
        }
        let all = Arc::new(all);
        self.down_sets.insert(top.clone(), all.clone());
        all
    }

    /// Whether there is a chain of coverings from `upper` down to `lower`
    /// (reflexively: every permutation is below itself).
    pub fn leq(&mut self, lower: &Permutation, upper: &Permutation) -> bool {
        if lower.len() > upper.len() {
            return false;
        }
        if lower == upper {
            return true;
        }
        self.down_set(upper).contains(lower)
    }

    /// Materializes the interval `[bottom, top]`; see [`interval`].
    pub fn interval(&mut self, bottom: &Permutation, top: &Permutation) -> Result<Interval, Error> {
        if !self.leq(bottom, top) {
            return Err(Error::NotComparable {
                lower: bottom.to_string(),
                upper: top.to_string(),
                scheme: self.scheme.to_string(),
            });
        }
        let rank = top.len() - bottom.len();

        // Downward closure from the top, one level per length.
        let mut down_levels: Vec<BTreeSet<Permutation>> = Vec::with_capacity(rank + 1);
        down_levels.push(BTreeSet::from([top.clone()]));
        for _ in 0..rank {
            let mut next = BTreeSet::new();
            for q in down_levels.last().unwrap() {
                next.extend(self.covers(q).iter().cloned());
            }
            down_levels.push(next);
        }
        down_levels.reverse(); // index r now holds length |bottom| + r

        // Upward reachability from the bottom, restricted to the closure.
        let mut levels: Vec<Vec<Permutation>> = Vec::with_capacity(rank + 1);
        levels.push(vec![bottom.clone()]);
        let mut edges: Vec<(u32, u32)> = Vec::new();
        let mut offsets: Vec<usize> = vec![0, 1];
        for r in 1..=rank {
            let below: HashMap<&Permutation, u32> = levels[r - 1]
                .iter()
                .enumerate()
                .map(|(i, q)| (q, (offsets[r - 1] + i) as u32))
                .collect();
            let mut level: Vec<Permutation> = Vec::new();
            for q in &down_levels[r] {
                if self.covers(q).iter().any(|c| below.contains_key(c)) {
                    level.push(q.clone());
                }
            }
            let base = offsets[r];
            for (i, q) in level.iter().enumerate() {
                for c in self.covers(q).iter() {
                    if let Some(&lower_idx) = below.get(c) {
                        edges.push((lower_idx, (base + i) as u32));
                    }
                }
            }
            offsets.push(base + level.len());
            levels.push(level);
        }
        debug_assert_eq!(levels[rank], vec![top.clone()]);

        let elements: Vec<Permutation> = levels.into_iter().flatten().collect();
        edges.sort_unstable();
        Ok(Interval {
            bottom: bottom.clone(),
            top: top.clone(),
            scheme: self.scheme.clone(),
            elements,
            offsets,
            edges,
        })
    }
}

/// Whether `lower <= upper` in the scheme's pattern containment order.
pub fn leq(lower: &Permutation, upper: &Permutation, scheme: &VincularScheme) -> bool {
    CoverCache::new(scheme.clone()).leq(lower, upper)
}

/// The interval `[bottom, top]`: every permutation between the two, graded
/// by length, together with all Hasse edges. Errors when the endpoints are
/// not comparable.
pub fn interval(
    bottom: &Permutation,
    top: &Permutation,
    scheme: &VincularScheme,
) -> Result<Interval, Error> {
    CoverCache::new(scheme.clone()).interval(bottom, top)
}

/// A materialized interval of the pattern poset.
///
/// Elements are stored level by level (level `r` holds the permutations of
/// length `|bottom| + r`), each level sorted, so rendering and iteration
/// are deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::len_without_is_empty)] // intervals always contain their endpoints
pub struct Interval {
    bottom: Permutation,
    top: Permutation,
    scheme: VincularScheme,
    elements: Vec<Permutation>,
    offsets: Vec<usize>, // level r = elements[offsets[r]..offsets[r+1]]
    edges: Vec<(u32, u32)>,
}

impl Interval {
    pub fn bottom(&self) -> &Permutation {
        &self.bottom
    }

    pub fn top(&self) -> &Permutation {
        &self.top
    }

    pub fn scheme(&self) -> &VincularScheme {
        &self.scheme
    }

    /// Number of levels minus one: `|top| - |bottom|`.
    pub fn rank(&self) -> usize {
        self.offsets.len() - 2
    }

    /// Total number of elements (always at least 1).
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// All elements, bottom level first, sorted within each level.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    /// The elements of rank level `r` (length `|bottom| + r`).
    pub fn level(&self, r: usize) -> &[Permutation] {
        &self.elements[self.offsets[r]..self.offsets[r + 1]]
    }

    pub fn levels(&self) -> impl Iterator<Item = &[Permutation]> {
        (0..=self.rank()).map(|r| self.level(r))
    }

    pub fn contains_element(&self, q: &Permutation) -> bool {
        if q.len() < self.bottom.len() || q.len() > self.top.len() {
            return false;
        }
        self.level(q.len() - self.bottom.len()).binary_search(q).is_ok()
    }

    /// Hasse edges as (lower, upper) pairs, lexicographic by indices.
    pub fn hasse_edges(&self) -> impl Iterator<Item = (&Permutation, &Permutation)> {
        self.edges
            .iter()
            .map(|&(lo, up)| (&self.elements[lo as usize], &self.elements[up as usize]))
    }

    /// Hasse edges as indices into [`Interval::elements`].
    pub fn edge_indices(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// True iff every rank level contains exactly one element.
    pub fn is_chain(&self) -> bool {
        self.offsets.windows(2).all(|w| w[1] - w[0] == 1)
    }

    /// Elements covering the bottom; empty at rank 0.
    pub fn atoms(&self) -> &[Permutation] {
        if self.rank() == 0 {
            &[]
        } else {
            self.level(1)
        }
    }

    /// Elements covered by the top; empty at rank 0.
    pub fn coatoms(&self) -> &[Permutation] {
        if self.rank() == 0 {
            &[]
        } else {
            self.level(self.rank() - 1)
        }
    }

    /// DOT rendering: one node per element, one edge per Hasse edge directed
    /// lower -> upper, levels aligned with `rank=same`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph interval {\n  rankdir=BT;\n  node [shape=box];\n");
        for level in self.levels() {
            out.push_str("  { rank=same;");
            for q in level {
                write!(out, " \"{q}\";").unwrap();
            }
            out.push_str(" }\n");
        }
        for (lower, upper) in self.hasse_edges() {
            writeln!(out, "  \"{lower}\" -> \"{upper}\";").unwrap();
        }
        out.push_str("}\n");
        out
    }

    /// JSON rendering: `{bottom, top, scheme, levels, edges}`.
    pub fn to_json(&self) -> Value {
        let levels: Vec<Vec<String>> = self
            .levels()
            .map(|level| level.iter().map(|q| q.to_string()).collect())
            .collect();
        let edges: Vec<Vec<String>> = self
            .hasse_edges()
            .map(|(lo, up)| vec![lo.to_string(), up.to_string()])
            .collect();
        json!({
            "bottom": self.bottom.to_string(),
            "top": self.top.to_string(),
            "scheme": self.scheme.to_string(),
            "levels": levels,
            "edges": edges,
        })
    }
}
