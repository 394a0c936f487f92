//! Weighted Spearman footrule and weighted Kendall tau.
//!
//! The slice kernels take a 1-based rank vector `ranks` (entry `i` is the
//! comparand rank of the element with reference rank `i + 1`) and the
//! weights of those elements in reference order. The pair-level functions
//! look weights up by token, so a weight follows its element through
//! completion and relabelling.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fenwick::Fenwick;
use crate::model::{complete_and_align, AlignedPair, RankedList, WeightTable};

/// Relative tolerance used by inequality and equivalence checks.
pub const TOLERANCE: f64 = 1e-9;

/// Largest weight routed through the exact integer path.
const MAX_EXACT_WEIGHT: f64 = 4_294_967_296.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KendallAlgo {
    /// Literal double loop over all pairs.
    Naive,
    /// Single scan with a binary indexed tree, `O(n log n)`.
    #[default]
    Fast,
}

/// `sum_i w_i * |i - ranks[i]|`.
pub fn footrule(ranks: &[usize], weights: &[f64]) -> f64 {
    debug_assert_eq!(ranks.len(), weights.len());
    ranks
        .iter()
        .zip(weights)
        .enumerate()
        .map(|(i, (&r, &w))| w * (i + 1).abs_diff(r) as f64)
        .sum()
}

/// Weighted Kendall tau by the pairwise definition.
pub fn kendall_naive(ranks: &[usize], weights: &[f64]) -> f64 {
    debug_assert_eq!(ranks.len(), weights.len());
    let mut twice = 0.0;
    for i in 0..ranks.len() {
        let (ri, wi) = (ranks[i], weights[i]);
        let mut row = 0.0;
        for j in i + 1..ranks.len() {
            let inverted = (ri > ranks[j]) as u8 as f64;
            row += inverted * (wi + weights[j]);
        }
        twice += row;
    }
    twice / 2.0
}

/// Weighted Kendall tau by splitting `2 K_w` into the sum over inversions
/// of the earlier element's weight plus the later element's weight.
///
/// Scanning in reference order, an element with comparand rank `r` is the
/// later half of an inversion with every earlier element ranked above `r`.
/// One tree counts those elements and a second sums their weights.
pub fn kendall_fast(ranks: &[usize], weights: &[f64]) -> f64 {
    debug_assert_eq!(ranks.len(), weights.len());
    let n = ranks.len();
    // Slot n - r holds rank r, so prefix(n - r) covers ranks above r.
    let mut counts = Fenwick::<u64>::new(n);
    let mut sums = Fenwick::<f64>::new(n);
    let mut twice = 0.0;
    for (&r, &w) in ranks.iter().zip(weights) {
        let above = counts.prefix(n - r);
        twice += w * above as f64 + sums.prefix(n - r);
        counts.add(n - r, 1);
        sums.add(n - r, w);
    }
    twice / 2.0
}

/// Exact footrule for integer weights.
pub fn footrule_int(ranks: &[usize], weights: &[u64]) -> u128 {
    debug_assert_eq!(ranks.len(), weights.len());
    ranks
        .iter()
        .zip(weights)
        .enumerate()
        .map(|(i, (&r, &w))| w as u128 * (i + 1).abs_diff(r) as u128)
        .sum()
}

/// Exact `2 K_w` for integer weights.
pub fn kendall_twice_int(ranks: &[usize], weights: &[u64]) -> u128 {
    debug_assert_eq!(ranks.len(), weights.len());
    let n = ranks.len();
    let mut counts = Fenwick::<u64>::new(n);
    let mut sums = Fenwick::<u128>::new(n);
    let mut twice = 0u128;
    for (&r, &w) in ranks.iter().zip(weights) {
        twice += w as u128 * counts.prefix(n - r) as u128 + sums.prefix(n - r);
        counts.add(n - r, 1);
        sums.add(n - r, w as u128);
    }
    twice
}

/// Unweighted footrule.
pub fn footrule_unit(ranks: &[usize]) -> u64 {
    ranks
        .iter()
        .enumerate()
        .map(|(i, &r)| (i + 1).abs_diff(r) as u64)
        .sum()
}

/// Unweighted Kendall tau (inversion count) by the pairwise definition.
pub fn inversions(ranks: &[usize]) -> u64 {
    let mut count = 0;
    for (i, &ri) in ranks.iter().enumerate() {
        count += ranks[i + 1..].iter().filter(|&&rj| ri > rj).count() as u64;
    }
    count
}

fn integer_weights(weights: &[f64]) -> Option<Vec<u64>> {
    weights
        .iter()
        .map(|&w| (w.fract() == 0.0 && w <= MAX_EXACT_WEIGHT).then_some(w as u64))
        .collect()
}

/// Weighted footrule of a pair. Integer weights are summed exactly.
pub fn footrule_weighted(pair: &AlignedPair, table: &WeightTable) -> f64 {
    let weights = pair.weights(table);
    match integer_weights(&weights) {
        Some(ints) => footrule_int(pair.pi_ranks(), &ints) as f64,
        None => footrule(pair.pi_ranks(), &weights),
    }
}

/// Weighted Kendall tau of a pair. With [`KendallAlgo::Fast`] and integer
/// weights, `2 K_w` is computed exactly in integers.
pub fn kendall_weighted(pair: &AlignedPair, table: &WeightTable, algo: KendallAlgo) -> f64 {
    let weights = pair.weights(table);
    match algo {
        KendallAlgo::Naive => kendall_naive(pair.pi_ranks(), &weights),
        KendallAlgo::Fast => match integer_weights(&weights) {
            Some(ints) => kendall_twice_int(pair.pi_ranks(), &ints) as f64 / 2.0,
            None => kendall_fast(pair.pi_ranks(), &weights),
        },
    }
}

/// Footrule of the reversal, `sum_i w_i * |i - (n - i + 1)|`, with the
/// universe in reference order.
pub fn footrule_denominator(table: &WeightTable, universe: &[String]) -> Result<f64> {
    let n = universe.len();
    if n == 0 {
        return Err(Error::UndefinedNormalization { n });
    }
    Ok(universe
        .iter()
        .enumerate()
        .map(|(i, t)| table.get(t) * (2 * i + 1).abs_diff(n) as f64)
        .sum())
}

/// `sum_{i<j} (w_i + w_j) / 2`, via the closed form `(n - 1) / 2 * sum_i w_i`.
pub fn kendall_denominator(table: &WeightTable, universe: &[String]) -> f64 {
    let n = universe.len();
    if n < 2 {
        return 0.0;
    }
    let total: f64 = universe.iter().map(|t| table.get(t)).sum();
    (n - 1) as f64 / 2.0 * total
}

/// Footrule divided by its reversal value. Not clamped: with non-uniform
/// weights the reversal is not always the maximum and the result can
/// exceed 1.
pub fn footrule_normalized(pair: &AlignedPair, table: &WeightTable) -> Result<f64> {
    let denom = footrule_denominator(table, pair.universe())?;
    if denom == 0.0 {
        return Err(Error::UndefinedNormalization { n: pair.len() });
    }
    Ok(footrule_weighted(pair, table) / denom)
}

pub fn kendall_normalized(pair: &AlignedPair, table: &WeightTable) -> Result<f64> {
    let denom = kendall_denominator(table, pair.universe());
    if denom == 0.0 {
        return Err(Error::UndefinedNormalization { n: pair.len() });
    }
    Ok(kendall_weighted(pair, table, KendallAlgo::Fast) / denom)
}

/// Maps a normalized distance in `[0, 1]` to an agreement score in `[-1, 1]`.
pub fn signed_scale(v: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::OutsideUnitInterval(v));
    }
    Ok(1.0 - 2.0 * v)
}

/// Absolute slack allowed when comparing raw measures.
pub(crate) fn slack(footrule_raw: f64) -> f64 {
    TOLERANCE * footrule_raw.max(1.0)
}

/// `(K_w <= S_w, S_w <= 2 K_w)` within [`TOLERANCE`].
pub fn dg_bounds(kendall_raw: f64, footrule_raw: f64) -> (bool, bool) {
    let eps = slack(footrule_raw);
    (
        kendall_raw <= footrule_raw + eps,
        footrule_raw <= 2.0 * kendall_raw + eps,
    )
}

/// All measures for one comparison.
///
/// Normalized values are `None` when the denominator is zero (`n = 1`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureReport {
    pub n: usize,
    pub footrule_raw: f64,
    pub footrule_denom: f64,
    pub footrule_norm: Option<f64>,
    /// Set when `footrule_norm > 1`, which non-uniform weights allow.
    pub footrule_overflow: bool,
    pub kendall_raw: f64,
    pub kendall_denom: f64,
    pub kendall_norm: Option<f64>,
    /// `footrule_raw / kendall_raw`, absent when `kendall_raw = 0`.
    pub ratio: Option<f64>,
    pub dg_holds: bool,
}

impl MeasureReport {
    pub fn for_pair(pair: &AlignedPair, table: &WeightTable) -> Result<Self> {
        let n = pair.len();
        let footrule_raw = footrule_weighted(pair, table);
        let kendall_raw = kendall_weighted(pair, table, KendallAlgo::Fast);
        let footrule_denom = footrule_denominator(table, pair.universe())?;
        let kendall_denom = kendall_denominator(table, pair.universe());
        let footrule_norm = (footrule_denom > 0.0).then(|| footrule_raw / footrule_denom);
        let kendall_norm = (kendall_denom > 0.0).then(|| kendall_raw / kendall_denom);
        let (lower, upper) = dg_bounds(kendall_raw, footrule_raw);
        Ok(MeasureReport {
            n,
            footrule_raw,
            footrule_denom,
            footrule_norm,
            footrule_overflow: footrule_norm.is_some_and(|v| v > 1.0 + TOLERANCE),
            kendall_raw,
            kendall_denom,
            kendall_norm,
            ratio: (kendall_raw > 0.0).then(|| footrule_raw / kendall_raw),
            dg_holds: lower && upper,
        })
    }

    /// Signed-scale footrule, `None` when undefined or outside `[0, 1]`.
    pub fn footrule_signed(&self) -> Option<f64> {
        self.footrule_norm.and_then(|v| signed_scale(v).ok())
    }

    pub fn kendall_signed(&self) -> Option<f64> {
        self.kendall_norm.and_then(|v| signed_scale(v).ok())
    }
}

/// Completes, aligns and measures two possibly partial lists.
pub fn compare(a: &RankedList, b: &RankedList, table: &WeightTable) -> Result<MeasureReport> {
    let pair = complete_and_align(a, b)?;
    MeasureReport::for_pair(&pair, table)
}
