//! Lexicographic composition of crisp binary preference relations.
//!
//! Each criterion is given as a relation `R_j` (`R_j[i][l]` reads "x_i is at
//! least as good as x_l"). Pairs may be incomparable, so the composed
//! relation is in general a quasi-order rather than a linear order.

use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::crisp;
use crate::error::{Error, Result};
use crate::model::{ComparisonOutcome, DecisionMatrix, Verdict};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrispRelation {
    adjacency: Vec<Vec<bool>>,
}

impl CrispRelation {
    pub fn new(adjacency: Vec<Vec<bool>>) -> Result<Self> {
        let n = adjacency.len();
        if let Some(row) = adjacency.iter().find(|r| r.len() != n) {
            return Err(Error::SizeMismatch {
                expected: n,
                found: row.len(),
            });
        }
        Ok(Self { adjacency })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            adjacency: vec![vec![false; n]; n],
        }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        Self {
            adjacency: (0..n).map(|i| (0..n).map(|l| f(i, l)).collect()).collect(),
        }
    }

    /// `R[i][l] ⇔ K_j(x_i) ≥ K_j(x_l)`.
    pub fn from_criterion(matrix: &DecisionMatrix, j: usize) -> Self {
        Self::from_fn(matrix.n(), |i, l| matrix.score(i, j) >= matrix.score(l, j))
    }

    pub fn size(&self) -> usize {
        self.adjacency.len()
    }

    pub fn holds(&self, i: usize, l: usize) -> bool {
        self.adjacency[i][l]
    }

    pub fn set(&mut self, i: usize, l: usize, value: bool) {
        self.adjacency[i][l] = value;
    }

    pub fn rows(&self) -> &[Vec<bool>] {
        &self.adjacency
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| {
            (0..n).all(|b| !self.holds(a, b) || (0..n).all(|c| !self.holds(b, c) || self.holds(a, c)))
        })
    }

    /// Smallest transitive relation containing `self`.
    pub fn transitive_closure(&self) -> Self {
        let n = self.size();
        let mut out = self.clone();
        for k in 0..n {
            for i in 0..n {
                if out.adjacency[i][k] {
                    for l in 0..n {
                        if out.adjacency[k][l] {
                            out.adjacency[i][l] = true;
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationParts {
    pub strict: Vec<Vec<bool>>,
    pub equivalent: Vec<Vec<bool>>,
    pub incomparable: Vec<Vec<bool>>,
}

impl RelationParts {
    /// The composition step for one ordered pair at this level.
    fn step(&self, i: usize, l: usize) -> Step {
        if self.strict[i][l] {
            Step::First
        } else if self.strict[l][i] {
            Step::Second
        } else if self.equivalent[i][l] {
            Step::Tie
        } else {
            Step::Incomparable
        }
    }
}

enum Step {
    First,
    Second,
    Tie,
    Incomparable,
}

pub fn derive_parts(r: &CrispRelation) -> RelationParts {
    let n = r.size();
    let part = |f: &dyn Fn(bool, bool) -> bool| -> Vec<Vec<bool>> {
        (0..n)
            .map(|i| (0..n).map(|l| f(r.holds(i, l), r.holds(l, i))).collect())
            .collect()
    };
    RelationParts {
        strict: part(&|a, b| a && !b),
        equivalent: part(&|a, b| a && b),
        incomparable: part(&|a, b| !a && !b),
    }
}

fn common_size(relations: &[CrispRelation]) -> Result<usize> {
    let n = relations.first().map_or(0, CrispRelation::size);
    match relations.iter().find(|r| r.size() != n) {
        Some(r) => Err(Error::SizeMismatch {
            expected: n,
            found: r.size(),
        }),
        None => Ok(n),
    }
}

/// Importance-ordered relations with their derived parts computed once.
#[derive(Debug, Clone)]
pub struct RelationStack {
    parts: Vec<RelationParts>,
    n: usize,
}

impl RelationStack {
    pub fn new(relations: &[CrispRelation]) -> Result<Self> {
        let n = common_size(relations)?;
        Ok(Self {
            parts: relations.iter().map(derive_parts).collect(),
            n,
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn levels(&self) -> usize {
        self.parts.len()
    }

    pub fn compare(&self, i: usize, l: usize) -> Result<ComparisonOutcome> {
        for idx in [i, l] {
            if idx >= self.n {
                return Err(Error::IndexOutOfRange {
                    index: idx,
                    size: self.n,
                });
            }
        }
        for (j, parts) in self.parts.iter().enumerate() {
            match parts.step(i, l) {
                Step::First => return Ok(ComparisonOutcome::first(j + 1)),
                Step::Second => return Ok(ComparisonOutcome::second(j + 1)),
                Step::Tie => {}
                Step::Incomparable => return Ok(ComparisonOutcome::INCOMPARABLE),
            }
        }
        Ok(ComparisonOutcome::EQUIVALENT)
    }

    /// Outcome for every ordered pair, `table[i][l]`.
    pub fn table(&self) -> Vec<Vec<ComparisonOutcome>> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|l| self.compare(i, l).expect("in range"))
                    .collect()
            })
            .collect()
    }
}

/// Compares `x_i` with `x_l` through the importance-ordered relations: a
/// strict preference decides, an equivalence defers to the next relation,
/// and incomparability stops the scan.
pub fn lex_compose(relations: &[CrispRelation], i: usize, l: usize) -> Result<ComparisonOutcome> {
    RelationStack::new(relations)?.compare(i, l)
}

/// `(i, q, l, level)`: x_i ~ x_q at `level` together with a strict
/// preference involving x_i and x_l that does not carry over to x_q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub i: usize,
    pub q: usize,
    pub l: usize,
    pub level: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub a1_violations: Vec<AxiomViolation>,
    pub a2_violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        self.a1_violations.is_empty() && self.a2_violations.is_empty()
    }
}

/// A1: equivalents inherit what either one strictly beats.
/// A2: whatever strictly beats one of two equivalents beats the other.
pub fn check_axioms(relations: &[CrispRelation]) -> Result<AxiomReport> {
    let n = common_size(relations)?;
    let mut report = AxiomReport::default();
    for (j, r) in relations.iter().enumerate() {
        let p = derive_parts(r);
        for i in 0..n {
            for q in 0..n {
                if !p.equivalent[i][q] {
                    continue;
                }
                for l in 0..n {
                    let v = AxiomViolation {
                        i,
                        q,
                        l,
                        level: j + 1,
                    };
                    if p.strict[i][l] && !p.strict[q][l] {
                        report.a1_violations.push(v);
                    }
                    if p.strict[l][i] && !p.strict[l][q] {
                        report.a2_violations.push(v);
                    }
                }
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompositionReport {
    pub premises_hold: bool,
    pub composed_transitive: bool,
    /// False when at least one pair is incomparable.
    pub composed_linked: bool,
    /// `(a, b, c)` with a ≻ b, b ≻ c but not a ≻ c.
    pub counterexample: Option<(usize, usize, usize)>,
}

/// Brute-force check of the claim that transitive relations satisfying A1
/// and A2 compose into a transitive (possibly non-linked) relation.
pub fn verify_composition(relations: &[CrispRelation]) -> Result<CompositionReport> {
    let axioms = check_axioms(relations)?;
    let premises_hold = axioms.holds() && relations.iter().all(CrispRelation::is_transitive);
    let stack = RelationStack::new(relations)?;
    let table = stack.table();
    let n = stack.size();
    let strict = |a: usize, b: usize| table[a][b].verdict == Verdict::FirstPreferred;
    let mut counterexample = None;
    'outer: for a in 0..n {
        for b in 0..n {
            if !strict(a, b) {
                continue;
            }
            for c in 0..n {
                if strict(b, c) && !strict(a, c) {
                    counterexample = Some((a, b, c));
                    break 'outer;
                }
            }
        }
    }
    let composed_linked = table.iter().flatten().all(|o| o.verdict != Verdict::Incomparable);
    Ok(CompositionReport {
        premises_hold,
        composed_transitive: counterexample.is_none(),
        composed_linked,
        counterexample,
    })
}

/// Relations induced from every criterion column of a matrix.
pub fn relations_from_matrix(matrix: &DecisionMatrix) -> Vec<CrispRelation> {
    (0..matrix.m())
        .map(|j| CrispRelation::from_criterion(matrix, j))
        .collect()
}

/// Crisp relations read from a file, sorted by importance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationFile {
    pub alternatives: Vec<String>,
    pub relations: Vec<CrispRelation>,
}

#[derive(Debug, Deserialize)]
struct JsonRelation {
    rank: usize,
    rows: Vec<Vec<u8>>,
}

#[derive(Debug, Deserialize)]
struct JsonRelations {
    n: usize,
    #[serde(default)]
    alternatives: Option<Vec<String>>,
    relations: Vec<JsonRelation>,
}

pub(crate) fn default_ids(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// Ranks must be exactly 1..=m; returns the permutation that sorts by rank.
pub(crate) fn rank_order(ranks: &[usize]) -> Result<Vec<usize>> {
    let m = ranks.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&k| ranks[k]);
    for (pos, &k) in order.iter().enumerate() {
        if ranks[k] != pos + 1 {
            return Err(Error::Parse(format!(
                "relation ranks must be exactly 1..={m}, found {:?}",
                ranks
            )));
        }
    }
    Ok(order)
}

pub(crate) fn check_ids(alternatives: Option<Vec<String>>, n: usize) -> Result<Vec<String>> {
    let ids = alternatives.unwrap_or_else(|| default_ids(n));
    if ids.len() != n {
        return Err(Error::Parse(format!(
            "{} alternative ids given for n = {n}",
            ids.len()
        )));
    }
    Ok(ids)
}

fn bool_rows(rows: Vec<Vec<u8>>, n: usize, rank: usize) -> Result<CrispRelation> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Parse(format!("relation of rank {rank} is not {n}×{n}")));
    }
    let adjacency = rows
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|v| match v {
                    0 => Ok(false),
                    1 => Ok(true),
                    _ => Err(Error::Parse(format!(
                        "relation of rank {rank}: entry {v} is not 0 or 1"
                    ))),
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    CrispRelation::new(adjacency)
}

/// JSON: `{"n": 3, "alternatives": [..optional..], "relations": [{"rank": 1, "rows": [[1,0,1],..]}]}`
pub fn load_relations_json(source: impl Read) -> Result<RelationFile> {
    let doc: JsonRelations = serde_json::from_reader(source)?;
    let alternatives = check_ids(doc.alternatives, doc.n)?;
    let ranks: Vec<usize> = doc.relations.iter().map(|r| r.rank).collect();
    let order = rank_order(&ranks)?;
    let mut relations: Vec<Option<CrispRelation>> = doc
        .relations
        .into_iter()
        .map(|r| bool_rows(r.rows, doc.n, r.rank).map(Some))
        .collect::<Result<_>>()?;
    let relations = order
        .iter()
        .map(|&k| relations[k].take().expect("permutation"))
        .collect();
    Ok(RelationFile {
        alternatives,
        relations,
    })
}

/// CSV blocks: a `rank,<k>` row followed by `n` rows of 0/1. An optional
/// leading `alternatives,<id>,...` row names the alternatives.
pub fn load_relations_csv(source: impl Read) -> Result<RelationFile> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(source);
    let mut ids: Option<Vec<String>> = None;
    let mut blocks: Vec<(usize, Vec<Vec<u8>>)> = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let err = |msg: String| Error::Parse(format!("line {line}: {msg}"));
        match record.get(0) {
            Some("alternatives") if blocks.is_empty() && ids.is_none() => {
                ids = Some(record.iter().skip(1).map(str::to_string).collect());
            }
            Some("rank") => {
                let cell = record.get(1).unwrap_or("");
                let rank = cell.parse().map_err(|_| err(format!("invalid rank `{cell}`")))?;
                blocks.push((rank, Vec::new()));
            }
            _ => {
                let Some((_, rows)) = blocks.last_mut() else {
                    return Err(err("matrix row before any `rank` row".into()));
                };
                let row = record
                    .iter()
                    .map(|c| c.parse::<u8>().map_err(|_| err(format!("invalid entry `{c}`"))))
                    .collect::<Result<Vec<_>>>()?;
                rows.push(row);
            }
        }
    }
    let n = blocks.first().map_or(0, |(_, rows)| rows.len());
    let alternatives = check_ids(ids, n)?;
    let ranks: Vec<usize> = blocks.iter().map(|(r, _)| *r).collect();
    let order = rank_order(&ranks)?;
    let mut parsed: Vec<Option<CrispRelation>> = blocks
        .into_iter()
        .map(|(rank, rows)| bool_rows(rows, n, rank).map(Some))
        .collect::<Result<_>>()?;
    let relations = order
        .iter()
        .map(|&k| parsed[k].take().expect("permutation"))
        .collect();
    Ok(RelationFile {
        alternatives,
        relations,
    })
}

/// Tiers of the composed relation, or the defect (incomparable pair or
/// intransitive triple) that prevents ranking.
pub fn compose_rank(stack: &RelationStack) -> Result<Vec<Vec<usize>>> {
    crisp::tiers_from_table(&stack.table()).map_err(Error::Order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(rows: &[&[u8]]) -> CrispRelation {
        CrispRelation::new(rows.iter().map(|r| r.iter().map(|&v| v == 1).collect()).collect()).unwrap()
    }

    fn total_order(n: usize) -> CrispRelation {
        // index 0 best
        CrispRelation::from_fn(n, |i, l| i <= l)
    }

    #[test]
    fn parts_of_total_order() {
        let p = derive_parts(&total_order(3));
        assert!(p.incomparable.iter().flatten().all(|&x| !x));
        for i in 0..3 {
            for l in 0..3 {
                assert_eq!(p.strict[i][l], i < l);
                assert_eq!(p.equivalent[i][l], i == l);
            }
        }
    }

    #[test]
    fn parts_of_empty_relation() {
        let p = derive_parts(&CrispRelation::empty(3));
        assert!(p.incomparable.iter().flatten().all(|&x| x));
        assert!(p.strict.iter().flatten().all(|&x| !x));
    }

    #[test]
    fn compose_examples() {
        let strict = rel(&[&[1, 1], &[0, 1]]);
        let tie = rel(&[&[1, 1], &[1, 1]]);
        let none = rel(&[&[1, 0], &[0, 1]]);
        assert_eq!(
            lex_compose(&[strict.clone(), none.clone()], 0, 1).unwrap(),
            ComparisonOutcome::first(1)
        );
        assert_eq!(
            lex_compose(&[tie.clone(), strict.clone()], 1, 0).unwrap(),
            ComparisonOutcome::second(2)
        );
        assert_eq!(
            lex_compose(&[tie.clone(), none.clone(), strict], 0, 1).unwrap(),
            ComparisonOutcome::INCOMPARABLE
        );
        assert_eq!(
            lex_compose(&[tie.clone(), tie], 0, 1).unwrap(),
            ComparisonOutcome::EQUIVALENT
        );
        assert!(matches!(
            lex_compose(&[none, total_order(3)], 0, 1),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn a1_counterexample() {
        // a ~ b, a ≻ c, b and c incomparable
        let r = rel(&[&[1, 1, 1], &[1, 1, 0], &[0, 0, 1]]);
        let report = check_axioms(std::slice::from_ref(&r)).unwrap();
        assert_eq!(
            report.a1_violations,
            vec![AxiomViolation {
                i: 0,
                q: 1,
                l: 2,
                level: 1
            }]
        );
        assert!(report.a2_violations.is_empty());
        let aff = verify_composition(&[r]).unwrap();
        assert!(!aff.premises_hold);
    }

    #[test]
    fn empty_relations_vacuous() {
        let report = check_axioms(&[CrispRelation::empty(4), CrispRelation::empty(4)]).unwrap();
        assert!(report.holds());
    }

    #[test]
    fn total_orders_compose_linked() {
        let aff = verify_composition(&[total_order(4), CrispRelation::from_fn(4, |i, l| i >= l)]).unwrap();
        assert!(aff.premises_hold && aff.composed_transitive && aff.composed_linked);
    }

    #[test]
    fn closure_is_transitive() {
        let r = rel(&[&[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[0, 0, 0, 0]]);
        assert!(!r.is_transitive());
        let c = r.transitive_closure();
        assert!(c.is_transitive());
        assert!(c.holds(0, 3));
        assert!(!c.holds(3, 0));
    }

    #[test]
    fn json_and_csv_loading() {
        let json = r#"{"n":2,"relations":[{"rank":2,"rows":[[1,0],[0,1]]},{"rank":1,"rows":[[1,1],[1,1]]}]}"#;
        let f = load_relations_json(json.as_bytes()).unwrap();
        assert_eq!(f.alternatives, vec!["x1", "x2"]);
        assert!(f.relations[0].holds(1, 0));
        assert!(!f.relations[1].holds(1, 0));

        let csv = "alternatives,a,b\nrank,2\n1,0\n0,1\n\nrank,1\n1,1\n1,1\n";
        let g = load_relations_csv(csv.as_bytes()).unwrap();
        assert_eq!(g.alternatives, vec!["a", "b"]);
        assert_eq!(g.relations, f.relations);

        let bad = r#"{"n":2,"relations":[{"rank":1,"rows":[[1,2],[0,1]]}]}"#;
        assert!(load_relations_json(bad.as_bytes()).is_err());
        let gap = r#"{"n":1,"relations":[{"rank":2,"rows":[[1]]}]}"#;
        assert!(load_relations_json(gap.as_bytes()).is_err());
    }
}
