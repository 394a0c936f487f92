//! Diagnostics that replay the argument bounding the weighted footrule by
//! the weighted Kendall tau: adjacent-swap paths from the identity, the
//! change in footrule contributed by each swap, and the classification of
//! inversions by how far their endpoints are displaced.
//!
//! The swap path lives in arrangement form. Start from the reference list
//! and swap adjacent elements until the comparand order is reached. Each
//! element carries its own weight, and the footrule of an arrangement is
//! `sum_k w(e_k) * |k - rank(e_k)|` over positions `k`.

use serde::Serialize;

use crate::measures::{dg_bounds, footrule, kendall_fast, slack};
use crate::model::{AlignedPair, WeightTable};

/// Which of the three displacement patterns an adjacent swap falls into.
///
/// With `a < b` the reference ranks at positions `x` and `x + 1` before the
/// swap, and `w(x)`, `w(x + 1)` their weights:
/// - `Case1`: `a < b <= x`, delta `w(x) - w(x + 1)`
/// - `Case2`: `x + 1 <= a < b`, delta `w(x + 1) - w(x)`
/// - `Case3`: `a <= x < x + 1 <= b`, delta `w(x) + w(x + 1)`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SwapCase {
    #[serde(rename = "CASE1")]
    Case1,
    #[serde(rename = "CASE2")]
    Case2,
    #[serde(rename = "CASE3")]
    Case3,
}

impl SwapCase {
    fn classify(x: usize, a: usize, b: usize) -> SwapCase {
        debug_assert!(a < b);
        if b <= x {
            SwapCase::Case1
        } else if a > x {
            SwapCase::Case2
        } else {
            SwapCase::Case3
        }
    }

    /// Footrule change predicted for this case.
    pub fn predicted_delta(self, w_x: f64, w_next: f64) -> f64 {
        match self {
            SwapCase::Case1 => w_x - w_next,
            SwapCase::Case2 => w_next - w_x,
            SwapCase::Case3 => w_x + w_next,
        }
    }
}

/// One adjacent transposition on the path from the identity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SwapStep {
    /// 1-based position; the step swaps positions `index` and `index + 1`.
    pub index: usize,
    /// Arrangement before the swap, as reference ranks.
    pub before: Vec<usize>,
    /// Footrule after the swap minus footrule before it.
    pub delta: f64,
    pub case_label: SwapCase,
    /// Weights of the elements at `index` and `index + 1` before the swap.
    pub weights: (f64, f64),
}

fn term(weight: f64, position: usize, rank: usize) -> f64 {
    weight * position.abs_diff(rank) as f64
}

/// A shortest adjacent-swap path from the identity arrangement to the
/// comparand, one step per inversion.
///
/// Left-to-right bubble sort of the comparand arrangement is recorded and
/// then replayed backwards, so every step turns an ascending neighbour pair
/// into a descending one.
pub fn minimal_swap_sequence(pair: &AlignedPair, table: &WeightTable) -> Vec<SwapStep> {
    let weights = pair.weights(table);
    let mut arrangement = pair.positions();
    let n = arrangement.len();

    let mut swaps = Vec::new();
    for end in (1..n).rev() {
        let mut swapped = false;
        for k in 0..end {
            if arrangement[k] > arrangement[k + 1] {
                arrangement.swap(k, k + 1);
                swaps.push(k);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }

    // `arrangement` is now the identity; replay in reverse.
    swaps
        .into_iter()
        .rev()
        .map(|k| {
            let before = arrangement.clone();
            let (a, b) = (before[k], before[k + 1]);
            let (w_a, w_b) = (weights[a - 1], weights[b - 1]);
            let x = k + 1;
            let delta =
                (term(w_b, x, b) + term(w_a, x + 1, a)) - (term(w_a, x, a) + term(w_b, x + 1, b));
            arrangement.swap(k, k + 1);
            SwapStep {
                index: x,
                before,
                delta,
                case_label: SwapCase::classify(x, a, b),
                weights: (w_a, w_b),
            }
        })
        .collect()
}

/// Outcome of checking that swap deltas add up to the footrule.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TelescopingReport {
    pub steps: usize,
    pub delta_sum: f64,
    pub footrule: f64,
    pub sum_matches: bool,
    /// First step (0-based) whose delta disagrees with its case formula or
    /// exceeds `w(x) + w(x + 1)`.
    pub first_bad_step: Option<usize>,
}

impl TelescopingReport {
    pub fn ok(&self) -> bool {
        self.sum_matches && self.first_bad_step.is_none()
    }
}

pub fn telescoping_check(
    steps: &[SwapStep],
    pair: &AlignedPair,
    table: &WeightTable,
) -> TelescopingReport {
    let weights = pair.weights(table);
    let footrule = footrule(pair.pi_ranks(), &weights);
    let delta_sum: f64 = steps.iter().map(|s| s.delta).sum();
    let eps = slack(footrule);
    let first_bad_step = steps.iter().position(|s| {
        let (w_x, w_next) = s.weights;
        let step_eps = slack(w_x + w_next);
        (s.delta - s.case_label.predicted_delta(w_x, w_next)).abs() > step_eps
            || s.delta > w_x + w_next + step_eps
    });
    TelescopingReport {
        steps: steps.len(),
        delta_sum,
        footrule,
        sum_matches: (delta_sum - footrule).abs() <= eps,
        first_bad_step,
    }
}

/// Counts of inversions by displacement type.
///
/// An inversion `[i; j]` is `i < j` with `pi(i) > pi(j)`. It is Type I when
/// `pi(i) >= j` and Type II when `pi(j) <= i`. An inversion can be both,
/// or neither (`i < pi(j) < pi(i) < j`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct InversionDecomposition {
    pub total_inversions: u64,
    pub type1: u64,
    pub type2: u64,
    pub both: u64,
    pub neither: u64,
}

pub fn inversion_types(pair: &AlignedPair) -> InversionDecomposition {
    let ranks = pair.pi_ranks();
    let mut d = InversionDecomposition::default();
    for i in 0..ranks.len() {
        for j in i + 1..ranks.len() {
            if ranks[i] <= ranks[j] {
                continue;
            }
            let type1 = ranks[i] > j;
            let type2 = ranks[j] <= i + 1;
            d.total_inversions += 1;
            d.type1 += type1 as u64;
            d.type2 += type2 as u64;
            d.both += (type1 && type2) as u64;
            d.neither += (!type1 && !type2) as u64;
        }
    }
    d
}

/// Per reference rank `i`, the number of Type I inversions `[i; k]`.
pub fn type1_counts(pair: &AlignedPair) -> Vec<u64> {
    let ranks = pair.pi_ranks();
    (0..ranks.len())
        .map(|i| {
            (i + 1..ranks.len())
                .filter(|&k| ranks[i] > ranks[k] && ranks[i] > k)
                .count() as u64
        })
        .collect()
}

/// Both sides of `K_w <= S_w <= 2 K_w` for one pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DgReport {
    pub kendall_raw: f64,
    pub footrule_raw: f64,
    pub kendall_twice: f64,
    pub holds_lower: bool,
    pub holds_upper: bool,
    pub ratio: Option<f64>,
}

impl DgReport {
    pub fn holds(&self) -> bool {
        self.holds_lower && self.holds_upper
    }
}

pub fn dg_report(pair: &AlignedPair, table: &WeightTable) -> DgReport {
    let weights = pair.weights(table);
    let footrule_raw = footrule(pair.pi_ranks(), &weights);
    let kendall_raw = kendall_fast(pair.pi_ranks(), &weights);
    let (holds_lower, holds_upper) = dg_bounds(kendall_raw, footrule_raw);
    DgReport {
        kendall_raw,
        footrule_raw,
        kendall_twice: 2.0 * kendall_raw,
        holds_lower,
        holds_upper,
        ratio: (kendall_raw > 0.0).then(|| footrule_raw / kendall_raw),
    }
}
