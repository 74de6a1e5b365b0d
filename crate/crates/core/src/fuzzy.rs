//! Fuzzy lexicographic procedure.
//!
//! A fuzzy preference relation is an `n×n` membership matrix with entries in
//! `[0, 1]`. From it we derive the inverse, the equivalence part
//! `min(μ(i,l), μ(l,i))` and the strict part `max(μ(i,l) − μ(l,i), 0)`.
//! The cascade scans the strict parts of importance-ordered relations and
//! stops at the first level where one side has positive strict preference.

use std::io::Read;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Deserialize;

use crate::crisp;
use crate::error::{Error, Result};
use crate::model::{ComparisonOutcome, NumberText, Verdict};
use crate::rational::{self, Rational};
use crate::relational::{check_ids, rank_order};

pub const DEFAULT_BASE: u32 = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzyRelation {
    membership: Vec<Vec<Rational>>,
}

fn check_square<T>(rows: &[Vec<T>]) -> Result<()> {
    let n = rows.len();
    match rows.iter().find(|r| r.len() != n) {
        Some(r) => Err(Error::SizeMismatch {
            expected: n,
            found: r.len(),
        }),
        None => Ok(()),
    }
}

impl FuzzyRelation {
    pub fn new(membership: Vec<Vec<Rational>>) -> Result<Self> {
        Self::checked(membership, 0)
    }

    fn checked(membership: Vec<Vec<Rational>>, relation: usize) -> Result<Self> {
        check_square(&membership)?;
        for (row, r) in membership.iter().enumerate() {
            for (col, v) in r.iter().enumerate() {
                if v.is_negative() || *v > Rational::one() {
                    return Err(Error::Membership {
                        relation,
                        row,
                        col,
                        value: rational::format(v),
                    });
                }
            }
        }
        Ok(Self { membership })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Rational) -> Result<Self> {
        Self::new((0..n).map(|i| (0..n).map(|l| f(i, l)).collect()).collect())
    }

    pub fn size(&self) -> usize {
        self.membership.len()
    }

    pub fn get(&self, i: usize, l: usize) -> &Rational {
        &self.membership[i][l]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.membership
    }

    fn map_pairs(&self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        let n = self.size();
        Self {
            membership: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|l| f(&self.membership[i][l], &self.membership[l][i]))
                        .collect()
                })
                .collect(),
        }
    }

    /// Entrywise image under `phi`, which must map `[0, 1]` into itself.
    pub fn map_entries(&self, phi: impl Fn(&Rational) -> Rational) -> Result<Self> {
        Self::new(
            self.membership
                .iter()
                .map(|r| r.iter().map(&phi).collect())
                .collect(),
        )
    }
}

pub fn inverse(m: &FuzzyRelation) -> FuzzyRelation {
    m.map_pairs(|_, back| back.clone())
}

pub fn equivalence_part(m: &FuzzyRelation) -> FuzzyRelation {
    m.map_pairs(|fwd, back| fwd.min(back).clone())
}

pub fn strict_part(m: &FuzzyRelation) -> FuzzyRelation {
    m.map_pairs(|fwd, back| (fwd - back).max(Rational::zero()))
}

/// Outcome of a fuzzy comparison. `degree` is the strict-preference degree
/// at the deciding level, or for `Equivalent` the smallest equivalence
/// degree over all levels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzyOutcome {
    pub verdict: Verdict,
    pub level: Option<usize>,
    pub degree: Rational,
}

impl FuzzyOutcome {
    pub fn outcome(&self) -> ComparisonOutcome {
        ComparisonOutcome {
            verdict: self.verdict,
            level: self.level,
        }
    }
}

/// Importance-ordered fuzzy relations with strict and equivalence parts
/// precomputed.
#[derive(Debug, Clone)]
pub struct FuzzyStack {
    strict: Vec<FuzzyRelation>,
    equivalence: Vec<FuzzyRelation>,
    n: usize,
}

impl FuzzyStack {
    pub fn new(relations: &[FuzzyRelation]) -> Result<Self> {
        let first = relations.first().ok_or(Error::NoRelations)?;
        let n = first.size();
        if let Some(r) = relations.iter().find(|r| r.size() != n) {
            return Err(Error::SizeMismatch {
                expected: n,
                found: r.size(),
            });
        }
        Ok(Self {
            strict: relations.iter().map(strict_part).collect(),
            equivalence: relations.iter().map(equivalence_part).collect(),
            n,
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn levels(&self) -> usize {
        self.strict.len()
    }

    pub fn strict_parts(&self) -> &[FuzzyRelation] {
        &self.strict
    }

    pub fn compare(&self, i: usize, l: usize) -> Result<FuzzyOutcome> {
        for idx in [i, l] {
            if idx >= self.n {
                return Err(Error::IndexOutOfRange {
                    index: idx,
                    size: self.n,
                });
            }
        }
        for (j, s) in self.strict.iter().enumerate() {
            let (fwd, back) = (s.get(i, l), s.get(l, i));
            if fwd.is_positive() {
                return Ok(FuzzyOutcome {
                    verdict: Verdict::FirstPreferred,
                    level: Some(j + 1),
                    degree: fwd.clone(),
                });
            }
            if back.is_positive() {
                return Ok(FuzzyOutcome {
                    verdict: Verdict::SecondPreferred,
                    level: Some(j + 1),
                    degree: back.clone(),
                });
            }
        }
        let degree = self
            .equivalence
            .iter()
            .map(|e| e.get(i, l))
            .min()
            .cloned()
            .unwrap_or_else(Rational::one);
        Ok(FuzzyOutcome {
            verdict: Verdict::Equivalent,
            level: None,
            degree,
        })
    }

    pub fn table(&self) -> Vec<Vec<FuzzyOutcome>> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|l| self.compare(i, l).expect("in range"))
                    .collect()
            })
            .collect()
    }

    pub fn outcome_table(&self) -> Vec<Vec<ComparisonOutcome>> {
        self.table()
            .iter()
            .map(|row| row.iter().map(FuzzyOutcome::outcome).collect())
            .collect()
    }
}

pub fn fuzzy_lex_compare(relations: &[FuzzyRelation], i: usize, l: usize) -> Result<FuzzyOutcome> {
    FuzzyStack::new(relations)?.compare(i, l)
}

/// `B^(m−j)` for `j = 1..m`, most important first.
pub fn fuzzy_weights(m: usize, base: u32) -> Vec<BigInt> {
    (0..m)
        .map(|j| num_traits::pow(BigInt::from(base), m - 1 - j))
        .collect()
}

/// `score[i][l] = Σ_j B^(m−j) · μ_j^s(i, l)`. Entries are not clamped.
pub fn fuzzy_lex_convolve(relations: &[FuzzyRelation], base: u32) -> Result<Vec<Vec<Rational>>> {
    if base < 2 {
        return Err(Error::Parse(format!(
            "convolution base must be at least 2, got {base}"
        )));
    }
    let stack = FuzzyStack::new(relations)?;
    let weights: Vec<Rational> = fuzzy_weights(stack.levels(), base)
        .into_iter()
        .map(Rational::from_integer)
        .collect();
    let n = stack.size();
    Ok((0..n)
        .map(|i| {
            (0..n)
                .map(|l| {
                    weights
                        .iter()
                        .zip(stack.strict_parts())
                        .map(|(w, s)| w * s.get(i, l))
                        .sum()
                })
                .collect()
        })
        .collect())
}

/// Row means, diagonal included.
pub fn utility_projection(m: &FuzzyRelation) -> Vec<Rational> {
    let n = Rational::from_integer(BigInt::from(m.size()));
    m.rows().iter().map(|r| r.iter().sum::<Rational>() / &n).collect()
}

/// Best-first tiers of the fuzzy lexicographic relation. Returns
/// [`Error::Order`] naming the offending triple when the pairwise verdicts
/// are not transitive on this data.
pub fn fuzzy_lex_rank(relations: &[FuzzyRelation]) -> Result<Vec<Vec<usize>>> {
    let stack = FuzzyStack::new(relations)?;
    crisp::tiers_from_table(&stack.outcome_table()).map_err(Error::Order)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Transform {
    #[default]
    Identity,
    Square,
    Halve,
}

impl Transform {
    pub fn apply(self, t: &Rational) -> Rational {
        match self {
            Transform::Identity => t.clone(),
            Transform::Square => t * t,
            Transform::Halve => t / Rational::from_integer(BigInt::from(2)),
        }
    }
}

impl std::str::FromStr for Transform {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "identity" => Ok(Transform::Identity),
            "square" => Ok(Transform::Square),
            "halve" => Ok(Transform::Halve),
            _ => Err(format!("unknown transform `{s}`")),
        }
    }
}

impl std::fmt::Display for Transform {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Transform::Identity => "identity",
            Transform::Square => "square",
            Transform::Halve => "halve",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaleMismatch {
    pub i: usize,
    pub l: usize,
    pub before: ComparisonOutcome,
    pub after: ComparisonOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ScaleTheoremReport {
    pub pairs_checked: usize,
    pub mismatches: Vec<ScaleMismatch>,
}

impl ScaleTheoremReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Applies `phi` to every membership of every relation and compares the
/// verdict/level table before and after. `phi` must fix 0 and be strictly
/// increasing on the values present; both are checked.
pub fn check_scale_theorem(
    relations: &[FuzzyRelation],
    phi: impl Fn(&Rational) -> Rational,
) -> Result<ScaleTheoremReport> {
    if !phi(&Rational::zero()).is_zero() {
        return Err(Error::Transform("φ(0) must be 0".into()));
    }
    let mut values: Vec<&Rational> = relations.iter().flat_map(|r| r.rows().iter().flatten()).collect();
    values.sort();
    values.dedup();
    let images: Vec<Rational> = values.iter().map(|v| phi(v)).collect();
    if images.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Transform(
            "φ is not strictly increasing on the memberships".into(),
        ));
    }

    let before = FuzzyStack::new(relations)?.outcome_table();
    let transformed = relations
        .iter()
        .map(|r| r.map_entries(&phi))
        .collect::<Result<Vec<_>>>()?;
    let after = FuzzyStack::new(&transformed)?.outcome_table();
    let n = before.len();
    let mut report = ScaleTheoremReport {
        pairs_checked: n * n,
        mismatches: Vec::new(),
    };
    for i in 0..n {
        for l in 0..n {
            if before[i][l] != after[i][l] {
                report.mismatches.push(ScaleMismatch {
                    i,
                    l,
                    before: before[i][l],
                    after: after[i][l],
                });
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzyFile {
    pub alternatives: Vec<String>,
    pub relations: Vec<FuzzyRelation>,
}

#[derive(Debug, Deserialize)]
struct JsonFuzzyRelation {
    rank: usize,
    rows: Vec<Vec<NumberText>>,
}

#[derive(Debug, Deserialize)]
struct JsonFuzzy {
    n: usize,
    #[serde(default)]
    alternatives: Option<Vec<String>>,
    relations: Vec<JsonFuzzyRelation>,
}

/// JSON: `{"n": 2, "relations": [{"rank": 1, "rows": [["1", "0.7"], ["0.2", "1"]]}]}`
pub fn load_fuzzy_json(source: impl Read) -> Result<FuzzyFile> {
    let doc: JsonFuzzy = serde_json::from_reader(source)?;
    let alternatives = check_ids(doc.alternatives, doc.n)?;
    let ranks: Vec<usize> = doc.relations.iter().map(|r| r.rank).collect();
    let order = rank_order(&ranks)?;
    let mut parsed = Vec::with_capacity(doc.relations.len());
    for r in doc.relations {
        if r.rows.len() != doc.n {
            return Err(Error::Parse(format!(
                "relation of rank {} is not {}×{}",
                r.rank, doc.n, doc.n
            )));
        }
        let rows = r
            .rows
            .iter()
            .map(|row| row.iter().map(NumberText::parse).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        parsed.push(Some(FuzzyRelation::checked(rows, r.rank)?));
    }
    let relations = order
        .iter()
        .map(|&k| parsed[k].take().expect("permutation"))
        .collect();
    Ok(FuzzyFile {
        alternatives,
        relations,
    })
}
