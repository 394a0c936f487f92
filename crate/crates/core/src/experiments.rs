//! Exact distributions of unweighted measures over every permutation of a
//! fixed size.
//!
//! Values are accumulated as reduced fractions so that counts and the mode
//! are exact; floating point only appears in [`DistStats`].

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::{format_sig, SIGNIFICANT_DIGITS};
use crate::measures::{footrule_unit, inversions};

pub const MIN_ENUMERATION: usize = 1;
pub const MAX_ENUMERATION: usize = 12;

/// Exact rational measure value.
pub type Value = Ratio<u64>;

fn check_size(n: usize, min: usize) -> Result<()> {
    if (min..=MAX_ENUMERATION).contains(&n) {
        Ok(())
    } else {
        Err(Error::SizeOutOfRange {
            n,
            min,
            max: MAX_ENUMERATION,
        })
    }
}

/// Rearranges `perm` into its lexicographic successor. Returns false, and
/// leaves `perm` sorted ascending, when it was the last permutation.
pub fn next_permutation(perm: &mut [usize]) -> bool {
    let Some(pivot) = perm.windows(2).rposition(|w| w[0] < w[1]) else {
        perm.reverse();
        return false;
    };
    let successor = perm
        .iter()
        .rposition(|&v| v > perm[pivot])
        .expect("a larger element exists right of the pivot");
    perm.swap(pivot, successor);
    perm[pivot + 1..].reverse();
    true
}

/// Lexicographic iterator over the permutations of `1..=n`.
#[derive(Debug, Clone)]
pub struct Permutations {
    current: Vec<usize>,
    done: bool,
}

impl Iterator for Permutations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let item = self.current.clone();
        self.done = !next_permutation(&mut self.current);
        Some(item)
    }
}

/// All `n!` permutations of `1..=n` in lexicographic order.
pub fn enumerate_permutations(n: usize) -> Result<Permutations> {
    check_size(n, MIN_ENUMERATION)?;
    Ok(Permutations {
        current: (1..=n).collect(),
        done: false,
    })
}

/// Calls `visit` for every permutation of `1..=n` that starts with `first`,
/// in lexicographic order. These blocks partition the full enumeration.
pub fn visit_with_prefix(n: usize, first: usize, mut visit: impl FnMut(&[usize])) {
    assert!((1..=n).contains(&first));
    let mut perm: Vec<usize> = std::iter::once(first)
        .chain((1..=n).filter(|&v| v != first))
        .collect();
    loop {
        visit(&perm);
        if !next_permutation(&mut perm[1..]) {
            break;
        }
    }
}

/// What is measured for each permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DistKind {
    /// `S / K`, identity excluded.
    Ratio,
    /// `S` over its reversal value `2 * floor(n^2 / 4)`.
    Footrule,
    /// `K` over `n (n - 1) / 2`.
    Kendall,
}

impl DistKind {
    pub fn name(self) -> &'static str {
        match self {
            DistKind::Ratio => "ratio",
            DistKind::Footrule => "footrule",
            DistKind::Kendall => "kendall",
        }
    }

    pub fn excludes_identity(self) -> bool {
        self == DistKind::Ratio
    }

    /// Measure of one permutation, `None` when undefined (ratio at the
    /// identity).
    pub fn value(self, perm: &[usize]) -> Option<Value> {
        let n = perm.len() as u64;
        match self {
            DistKind::Ratio => {
                let k = inversions(perm);
                (k > 0).then(|| Ratio::new(footrule_unit(perm), k))
            }
            DistKind::Footrule => Some(Ratio::new(footrule_unit(perm), 2 * (n * n / 4))),
            DistKind::Kendall => Some(Ratio::new(inversions(perm), n * (n - 1) / 2)),
        }
    }
}

impl std::str::FromStr for DistKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "ratio" => Ok(DistKind::Ratio),
            "footrule" => Ok(DistKind::Footrule),
            "kendall" => Ok(DistKind::Kendall),
            other => Err(format!("unknown distribution kind {other:?}")),
        }
    }
}

/// Exact value -> count multiset.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FrequencyTable {
    entries: BTreeMap<Value, u64>,
    total: u64,
}

impl FrequencyTable {
    pub fn new() -> Self {
        FrequencyTable::default()
    }

    pub fn add(&mut self, value: Value) {
        self.add_count(value, 1);
    }

    pub fn add_count(&mut self, value: Value, count: u64) {
        if count == 0 {
            return;
        }
        *self.entries.entry(value).or_insert(0) += count;
        self.total += count;
    }

    pub fn merge(&mut self, other: &FrequencyTable) {
        for (&value, &count) in &other.entries {
            self.add_count(value, count);
        }
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// Distinct values in ascending order.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn count(&self, value: Value) -> u64 {
        self.entries.get(&value).copied().unwrap_or(0)
    }

    /// `(value, count)` in ascending value order.
    pub fn iter(&self) -> impl Iterator<Item = (Value, u64)> + '_ {
        self.entries.iter().map(|(&v, &c)| (v, c))
    }

    pub fn min(&self) -> Option<Value> {
        self.entries.keys().next().copied()
    }

    pub fn max(&self) -> Option<Value> {
        self.entries.keys().next_back().copied()
    }

    /// Mean computed in exact rational arithmetic.
    pub fn exact_mean(&self) -> Option<Ratio<u128>> {
        if self.is_empty() {
            return None;
        }
        let sum = self
            .iter()
            .map(|(v, c)| Ratio::new(*v.numer() as u128 * c as u128, *v.denom() as u128))
            .fold(Ratio::from_integer(0), |acc, x| acc + x);
        Some(sum / self.total as u128)
    }

    /// `value,count` rows sorted by value, values with 12 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("value,count\n");
        for (value, count) in self.iter() {
            let _ = writeln!(
                out,
                "{},{}",
                format_sig(to_f64(value), SIGNIFICANT_DIGITS),
                count
            );
        }
        out
    }

    /// Exact entries as `{num, den, count}` records.
    pub fn exact_entries(&self) -> Vec<ExactEntry> {
        self.iter()
            .map(|(v, count)| ExactEntry {
                num: *v.numer(),
                den: *v.denom(),
                value: to_f64(v),
                count,
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExactEntry {
    pub num: u64,
    pub den: u64,
    pub value: f64,
    pub count: u64,
}

pub fn to_f64(v: Value) -> f64 {
    *v.numer() as f64 / *v.denom() as f64
}

/// Population moments and location statistics of a frequency table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistStats {
    pub mean: f64,
    pub median: f64,
    pub mode: f64,
    pub std_dev: f64,
    pub skewness: f64,
}

/// Mean, median (average of the two middle values for an even total),
/// mode (smallest value among the most frequent), population standard
/// deviation and population skewness `m3 / m2^(3/2)` (0 when `m2 = 0`).
pub fn compute_stats(table: &FrequencyTable) -> Result<DistStats> {
    if table.is_empty() {
        return Err(Error::EmptyTable);
    }
    let total = table.total() as f64;
    let mean = table.iter().map(|(v, c)| to_f64(v) * c as f64).sum::<f64>() / total;
    let (mut m2, mut m3) = (0.0, 0.0);
    for (v, c) in table.iter() {
        let d = to_f64(v) - mean;
        m2 += c as f64 * d * d;
        m3 += c as f64 * d * d * d;
    }
    m2 /= total;
    m3 /= total;

    let mut mode = (Value::from_integer(0), 0);
    for (v, c) in table.iter() {
        if c > mode.1 {
            mode = (v, c);
        }
    }

    Ok(DistStats {
        mean,
        median: median(table),
        mode: to_f64(mode.0),
        std_dev: m2.sqrt(),
        skewness: if m2 > 0.0 { m3 / m2.powf(1.5) } else { 0.0 },
    })
}

fn nth_value(table: &FrequencyTable, index: u64) -> Value {
    let mut seen = 0;
    for (v, c) in table.iter() {
        seen += c;
        if index < seen {
            return v;
        }
    }
    unreachable!("index {index} beyond table total {}", table.total())
}

fn median(table: &FrequencyTable) -> f64 {
    let total = table.total();
    if total % 2 == 1 {
        to_f64(nth_value(table, total / 2))
    } else {
        let lo = nth_value(table, total / 2 - 1);
        let hi = nth_value(table, total / 2);
        to_f64((lo + hi) / 2)
    }
}

/// A complete enumeration result.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    pub kind: DistKind,
    pub n: usize,
    pub table: FrequencyTable,
    pub stats: DistStats,
}

impl Distribution {
    pub fn identity_excluded(&self) -> bool {
        self.kind.excludes_identity()
    }

    pub fn stats_json(&self) -> StatsRecord {
        StatsRecord {
            kind: self.kind,
            n: self.n,
            samples: self.table.total(),
            identity_excluded: self.identity_excluded(),
            distinct_values: self.table.len(),
            min: self.table.min().map(to_f64),
            max: self.table.max().map(to_f64),
            stats: self.stats,
        }
    }
}

/// Serializable summary written by the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StatsRecord {
    pub kind: DistKind,
    pub n: usize,
    pub samples: u64,
    pub identity_excluded: bool,
    pub distinct_values: usize,
    pub min: Option<f64>,
    pub max: Option<f64>,
    #[serde(flatten)]
    pub stats: DistStats,
}

fn partial_table(kind: DistKind, n: usize, first: usize) -> FrequencyTable {
    let mut table = FrequencyTable::new();
    visit_with_prefix(n, first, |perm| {
        if let Some(v) = kind.value(perm) {
            table.add(v);
        }
    });
    table
}

/// Enumerates all permutations of `1..=n` on `jobs` threads. Each thread
/// claims leading-element blocks and fills a private table; the tables are
/// merged at the end, so the result does not depend on `jobs`.
pub fn distribution(kind: DistKind, n: usize, jobs: usize) -> Result<Distribution> {
    check_size(n, 2)?;
    let jobs = jobs.clamp(1, n);
    let next = AtomicUsize::new(1);
    let merged = Mutex::new(FrequencyTable::new());
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| {
                let mut local = FrequencyTable::new();
                loop {
                    let first = next.fetch_add(1, Ordering::Relaxed);
                    if first > n {
                        break;
                    }
                    local.merge(&partial_table(kind, n, first));
                }
                merged.lock().expect("worker panicked").merge(&local);
            });
        }
    });
    let table = merged.into_inner().expect("worker panicked");
    let stats = compute_stats(&table)?;
    Ok(Distribution {
        kind,
        n,
        table,
        stats,
    })
}

/// Distribution of `S / K` over all non-identity permutations.
pub fn ratio_distribution(n: usize) -> Result<(FrequencyTable, DistStats)> {
    let d = distribution(DistKind::Ratio, n, 1)?;
    Ok((d.table, d.stats))
}

/// Distribution of the normalized footrule or Kendall tau over all
/// permutations, identity included.
pub fn normalized_distribution(n: usize, kind: DistKind) -> Result<(FrequencyTable, DistStats)> {
    let d = distribution(kind, n, 1)?;
    Ok((d.table, d.stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(num: u64, den: u64) -> Value {
        Ratio::new(num, den)
    }

    #[test]
    fn enumeration_counts_and_order() {
        let perms: Vec<_> = enumerate_permutations(3).unwrap().collect();
        assert_eq!(
            perms,
            vec![
                vec![1, 2, 3],
                vec![1, 3, 2],
                vec![2, 1, 3],
                vec![2, 3, 1],
                vec![3, 1, 2],
                vec![3, 2, 1]
            ]
        );
        assert_eq!(
            enumerate_permutations(1).unwrap().collect::<Vec<_>>(),
            vec![vec![1]]
        );
        assert_eq!(enumerate_permutations(6).unwrap().count(), 720);
        assert!(enumerate_permutations(0).is_err());
        assert!(enumerate_permutations(13).is_err());
    }

    #[test]
    fn prefix_blocks_partition_enumeration() {
        let all: Vec<_> = enumerate_permutations(5).unwrap().collect();
        let mut blocks = Vec::new();
        for first in 1..=5 {
            visit_with_prefix(5, first, |p| blocks.push(p.to_vec()));
        }
        assert_eq!(blocks, all);
    }

    #[test]
    fn ratio_n2_is_single_transposition() {
        let (table, stats) = ratio_distribution(2).unwrap();
        assert_eq!(table.total(), 1);
        assert_eq!(table.count(r(2, 1)), 1);
        assert_eq!(stats.mean, 2.0);
        assert_eq!(stats.std_dev, 0.0);
        assert_eq!(stats.skewness, 0.0);
    }

    #[test]
    fn normalized_n2() {
        for kind in [DistKind::Footrule, DistKind::Kendall] {
            let (table, _) = normalized_distribution(2, kind).unwrap();
            assert_eq!(
                table.iter().collect::<Vec<_>>(),
                vec![(r(0, 1), 1), (r(1, 1), 1)]
            );
        }
    }

    #[test]
    fn size_bounds() {
        assert!(matches!(
            distribution(DistKind::Ratio, 1, 1),
            Err(Error::SizeOutOfRange { n: 1, .. })
        ));
        assert!(distribution(DistKind::Kendall, 13, 1).is_err());
    }

    #[test]
    fn stats_degenerate_and_two_point() {
        let mut t = FrequencyTable::new();
        t.add(r(1, 1));
        let s = compute_stats(&t).unwrap();
        assert_eq!(
            (s.mean, s.median, s.mode, s.std_dev, s.skewness),
            (1.0, 1.0, 1.0, 0.0, 0.0)
        );

        let mut t = FrequencyTable::new();
        t.add(r(0, 1));
        t.add(r(1, 1));
        let s = compute_stats(&t).unwrap();
        assert_eq!((s.mean, s.median, s.std_dev), (0.5, 0.5, 0.5));
        assert_eq!(s.mode, 0.0);
        assert_eq!(s.skewness, 0.0);

        assert!(matches!(
            compute_stats(&FrequencyTable::new()),
            Err(Error::EmptyTable)
        ));
    }

    #[test]
    fn mode_prefers_smallest_on_tie() {
        let mut t = FrequencyTable::new();
        t.add_count(r(3, 2), 4);
        t.add_count(r(1, 2), 4);
        t.add_count(r(1, 1), 2);
        assert_eq!(compute_stats(&t).unwrap().mode, 0.5);
    }

    #[test]
    fn ratio_stats_n4_match_brute_force() {
        // Independent accumulation straight from the 24 permutations.
        let mut samples = Vec::new();
        for p in enumerate_permutations(4).unwrap() {
            let s: i64 = p
                .iter()
                .enumerate()
                .map(|(i, &v)| (i as i64 + 1 - v as i64).abs())
                .sum();
            let mut k = 0;
            for i in 0..4 {
                for j in i + 1..4 {
                    k += (p[i] > p[j]) as i64;
                }
            }
            if k > 0 {
                samples.push(s as f64 / k as f64);
            }
        }
        let n = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / n;
        let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
        let m3 = samples.iter().map(|x| (x - mean).powi(3)).sum::<f64>() / n;
        samples.sort_by(f64::total_cmp);

        let (table, stats) = ratio_distribution(4).unwrap();
        assert_eq!(table.total(), 23);
        assert!((stats.mean - mean).abs() < 1e-12);
        assert!((stats.std_dev - var.sqrt()).abs() < 1e-12);
        assert!((stats.skewness - m3 / var.powf(1.5)).abs() < 1e-12);
        // 23 samples: the median is the 12th.
        assert_eq!(stats.median, samples[11]);
    }

    #[test]
    fn csv_is_sorted_with_header() {
        let (table, _) = normalized_distribution(3, DistKind::Kendall).unwrap();
        assert_eq!(
            table.to_csv(),
            "value,count\n0,1\n0.333333333333,2\n0.666666666667,2\n1,1\n"
        );
    }

    #[test]
    fn jobs_do_not_change_result() {
        let serial = distribution(DistKind::Footrule, 7, 1).unwrap();
        for jobs in [2, 3, 8, 64] {
            assert_eq!(distribution(DistKind::Footrule, 7, jobs).unwrap(), serial);
        }
    }
}
