//! Crisp lexicographic cascade over a decision matrix.
//!
//! Criteria are scanned in importance order; the first criterion on which
//! two alternatives differ decides, and its 1-based index is the
//! superiority degree of the comparison.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::Result;
use crate::model::{ComparisonOutcome, DecisionMatrix, Verdict};

/// Equivalence classes of a total preorder, best first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ranking {
    pub tiers: Vec<Vec<String>>,
}

impl Ranking {
    pub fn best(&self) -> &[String] {
        self.tiers.first().map_or(&[], Vec::as_slice)
    }

    pub fn tier_of(&self, id: &str) -> Option<usize> {
        self.tiers.iter().position(|t| t.iter().any(|x| x == id))
    }
}

/// Cascade on two score rows of equal length.
pub fn compare_rows<T: Ord>(a: &[T], b: &[T]) -> ComparisonOutcome {
    for (j, (x, y)) in a.iter().zip(b).enumerate() {
        match x.cmp(y) {
            Ordering::Greater => return ComparisonOutcome::first(j + 1),
            Ordering::Less => return ComparisonOutcome::second(j + 1),
            Ordering::Equal => {}
        }
    }
    ComparisonOutcome::EQUIVALENT
}

pub fn lex_compare_at(matrix: &DecisionMatrix, i: usize, l: usize) -> ComparisonOutcome {
    compare_rows(matrix.row(i), matrix.row(l))
}

pub fn lex_compare(matrix: &DecisionMatrix, i: &str, l: &str) -> Result<ComparisonOutcome> {
    let (i, l) = (matrix.index_of(i)?, matrix.index_of(l)?);
    Ok(lex_compare_at(matrix, i, l))
}

/// Sort key for best-first ordering. Only valid for linked outcomes.
pub(crate) fn best_first(outcome: ComparisonOutcome) -> Ordering {
    match outcome.verdict {
        Verdict::FirstPreferred => Ordering::Less,
        Verdict::SecondPreferred => Ordering::Greater,
        Verdict::Equivalent | Verdict::Incomparable => Ordering::Equal,
    }
}

/// Alternative indices grouped into tiers, best first. Within a tier the
/// original input order is kept.
pub fn rank_indices(matrix: &DecisionMatrix) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..matrix.n()).collect();
    order.sort_by(|&a, &b| best_first(lex_compare_at(matrix, a, b)));
    let mut tiers: Vec<Vec<usize>> = Vec::new();
    for idx in order {
        match tiers.last_mut() {
            Some(tier) if matrix.row(tier[0]) == matrix.row(idx) => tier.push(idx),
            _ => tiers.push(vec![idx]),
        }
    }
    tiers
}

pub fn lex_rank(matrix: &DecisionMatrix) -> Ranking {
    let tiers = rank_indices(matrix)
        .into_iter()
        .map(|t| t.into_iter().map(|i| matrix.alternatives()[i].clone()).collect())
        .collect();
    Ranking { tiers }
}

pub fn lex_best(matrix: &DecisionMatrix) -> Vec<String> {
    lex_rank(matrix).tiers.into_iter().next().unwrap_or_default()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrderDefect {
    Incomparable {
        a: usize,
        b: usize,
    },
    /// `a ≿ b` and `b ≿ c` but not `a ≿ c`.
    Intransitive {
        a: usize,
        b: usize,
        c: usize,
    },
}

impl std::fmt::Display for OrderDefect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OrderDefect::Incomparable { a, b } => write!(f, "alternatives {a} and {b} are incomparable"),
            OrderDefect::Intransitive { a, b, c } => {
                write!(f, "{a} ≿ {b} and {b} ≿ {c} but not {a} ≿ {c}")
            }
        }
    }
}

/// Groups alternatives into best-first tiers from a full pairwise table,
/// after checking that the table describes a total preorder.
#[allow(clippy::needless_range_loop)]
pub fn tiers_from_table(
    table: &[Vec<ComparisonOutcome>],
) -> std::result::Result<Vec<Vec<usize>>, OrderDefect> {
    let n = table.len();
    for a in 0..n {
        for b in 0..n {
            if table[a][b].verdict == Verdict::Incomparable {
                return Err(OrderDefect::Incomparable { a, b });
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if !table[a][b].is_at_least() {
                continue;
            }
            for c in 0..n {
                if table[b][c].is_at_least() && !table[a][c].is_at_least() {
                    return Err(OrderDefect::Intransitive { a, b, c });
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| best_first(table[a][b]));
    let mut tiers: Vec<Vec<usize>> = Vec::new();
    for idx in order {
        match tiers.last_mut() {
            Some(tier) if table[tier[0]][idx].verdict == Verdict::Equivalent => tier.push(idx),
            _ => tiers.push(vec![idx]),
        }
    }
    Ok(tiers)
}

/// The superiority degree separating each tier from the next one.
pub fn tier_levels(matrix: &DecisionMatrix, ranking: &Ranking) -> Result<Vec<usize>> {
    ranking
        .tiers
        .windows(2)
        .map(|w| {
            let outcome = lex_compare(matrix, &w[0][0], &w[1][0])?;
            Ok(outcome.level.unwrap_or(0))
        })
        .collect()
}
