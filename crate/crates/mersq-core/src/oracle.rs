//! Bounded brute-force enumeration, the independent check on the solver.
//!
//! The search never consults the closed-form classification: it walks the
//! (x, y) grid, evaluates M_p^x + (M_q+1)^y exactly, and keeps the pairs
//! whose sum is a perfect square with root divisible by l. That turns an
//! O(X * Y * Z) scan into O(X * Y) exact square tests.

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

use crate::ntcore::integer_sqrt;
use crate::serde_util::biguint_dec_opt;
use crate::solver::{CaseLabel, EquationInstance, NonexistenceReason, Solution, SolutionSet, classify};

/// Exponent and root caps for one sweep. Without `z_max` the root is
/// implied by (x, y) through the square test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    pub x_max: u32,
    pub y_max: u32,
    #[serde(default, with = "biguint_dec_opt")]
    pub z_max: Option<BigUint>,
}

impl SearchBounds {
    pub fn new(x_max: u32, y_max: u32) -> Self {
        Self {
            x_max,
            y_max,
            z_max: None,
        }
    }

    pub fn with_z_max(mut self, z_max: BigUint) -> Self {
        self.z_max = Some(z_max);
        self
    }
}

/// The test-suite default: x, y up to 12, root unconstrained. Covers every
/// worked example while keeping values under 2^200.
impl Default for SearchBounds {
    fn default() -> Self {
        Self::new(12, 12)
    }
}

/// Exact check of M_p^x + (M_q+1)^y = (l*z)^2 in big-integer arithmetic.
pub fn verify(instance: &EquationInstance, x: u32, y: u32, z: &BigUint) -> bool {
    let lhs = instance.mp().value().pow(x) + instance.mq_plus_one().pow(y);
    let root = instance.l() * z;
    lhs == &root * &root
}

/// Which solution-bearing case a found tuple instantiates, judged purely
/// by its shape. `None` marks a tuple outside every case; the classifier
/// says that cannot happen, which is exactly why the oracle reports it.
fn structural_label(instance: &EquationInstance, x: u32, y: u32) -> Option<CaseLabel> {
    if instance.l_is_two() {
        (x == 1 && y == 0).then_some(CaseLabel::T1CaseIIb)
    } else if x == 0 {
        (y == 1).then_some(CaseLabel::T2CaseIb)
    } else if y >= 1 {
        Some(CaseLabel::T2CaseIII)
    } else {
        None
    }
}

/// Exhaustive sweep of the bounded (x, y) grid, lexicographic output.
///
/// The x-range is sliced across threads and the slices are re-merged in
/// order, so the result is independent of parallelism. Within bounds the
/// returned set is exact: a triple is present iff it verifies.
pub fn brute_force(instance: &EquationInstance, bounds: &SearchBounds) -> SolutionSet {
    let mp_pows = power_table(instance.mp().value(), bounds.x_max);
    let mq_pows = power_table(&instance.mq_plus_one(), bounds.y_max);
    let root_cap = bounds.z_max.as_ref().map(|z| instance.l() * z);

    let mut solutions: Vec<Solution> = (0..=bounds.x_max)
        .into_par_iter()
        .map(|x| {
            let mut found = Vec::new();
            for y in 0..=bounds.y_max {
                let sum = &mp_pows[x as usize] + &mq_pows[y as usize];
                let (s, exact) = integer_sqrt(&sum);
                if let Some(cap) = &root_cap
                    && &s > cap
                {
                    // sums grow with y, so every later root does too
                    break;
                }
                if !exact || !(&s % instance.l()).is_zero() {
                    continue;
                }
                found.push(Solution {
                    x,
                    y,
                    z: s / instance.l(),
                    case_label: structural_label(instance, x, y),
                    derivation: None,
                });
            }
            found
        })
        .flatten_iter()
        .collect();
    solutions.sort_by_key(|s| (s.x, s.y));

    let nonexistence_reasons = if solutions.is_empty() {
        vec![NonexistenceReason::BoundedSearchExhausted {
            x_max: bounds.x_max,
            y_max: bounds.y_max,
        }]
    } else {
        Vec::new()
    };
    SolutionSet {
        instance: instance.clone(),
        solutions,
        nonexistence_reasons,
    }
}

fn power_table(base: &BigUint, max_exp: u32) -> Vec<BigUint> {
    let mut pows = Vec::with_capacity(max_exp as usize + 1);
    let mut acc = BigUint::from(1u32);
    for _ in 0..=max_exp {
        pows.push(acc.clone());
        acc *= base;
    }
    pows
}

/// Exhaustive search for a^x - b^y = 1 with every component >= 2.
///
/// Mihailescu's theorem says the only such tuple is (3, 2, 2, 3); this is
/// the desk-scale check the solver's trust in that theorem rests on.
/// Output is sorted by (a, b, x, y).
pub fn catalan_search(a_max: u64, b_max: u64, x_max: u32, y_max: u32) -> Vec<(u64, u64, u32, u32)> {
    // index b^y + 1 by value, then scan a^x
    let mut by_value: HashMap<BigUint, Vec<(u64, u32)>> = HashMap::new();
    for b in 2..=b_max {
        let base = BigUint::from(b);
        for y in 2..=y_max {
            by_value
                .entry(base.pow(y) + 1u32)
                .or_default()
                .push((b, y));
        }
    }
    let mut hits = Vec::new();
    for a in 2..=a_max {
        let base = BigUint::from(a);
        for x in 2..=x_max {
            if let Some(matches) = by_value.get(&base.pow(x)) {
                for &(b, y) in matches {
                    hits.push((a, b, x, y));
                }
            }
        }
    }
    hits.sort_unstable();
    hits
}

/// A triple that one route produced and the other did not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremDiscrepancy {
    pub x: u32,
    pub y: u32,
    pub z: BigUint,
    pub found_by: Finder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Finder {
    /// Brute force found it, the classification did not predict it.
    OracleOnly,
    /// The classification emitted it, brute force did not confirm it.
    SolverOnly,
}

/// Runs both routes inside the same bounds and reports every disagreement
/// instead of merging. An empty report is the expected outcome; anything
/// else falsifies the classification (or the search).
pub fn compare_with_classify(
    instance: &EquationInstance,
    bounds: &SearchBounds,
) -> Vec<TheoremDiscrepancy> {
    let oracle_triples = brute_force(instance, bounds).triples();
    let solver_triples: Vec<_> = classify(instance, false)
        .triples()
        .into_iter()
        .filter(|(x, y, z)| {
            *x <= bounds.x_max
                && *y <= bounds.y_max
                && bounds.z_max.as_ref().is_none_or(|cap| z <= cap)
        })
        .collect();

    let mut report = Vec::new();
    for (x, y, z) in &oracle_triples {
        if !solver_triples.contains(&(*x, *y, z.clone())) {
            report.push(TheoremDiscrepancy {
                x: *x,
                y: *y,
                z: z.clone(),
                found_by: Finder::OracleOnly,
            });
        }
    }
    for (x, y, z) in &solver_triples {
        if !oracle_triples.contains(&(*x, *y, z.clone())) {
            report.push(TheoremDiscrepancy {
                x: *x,
                y: *y,
                z: z.clone(),
                found_by: Finder::SolverOnly,
            });
        }
    }
    report
}
