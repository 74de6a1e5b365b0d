//! Domain types shared by every procedure, plus decision-matrix ingestion.
//!
//! A [`DecisionMatrix`] holds `n` alternatives scored on `m` "win"-type
//! criteria (larger is better). Criteria are kept in importance order:
//! index 0 carries rank 1, the most important criterion.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionSpec {
    pub name: String,
    pub scale_min: Rational,
    pub scale_max: Rational,
    /// 1 = most important.
    pub rank: usize,
}

impl CriterionSpec {
    pub fn new(name: impl Into<String>, scale_min: Rational, scale_max: Rational, rank: usize) -> Self {
        Self {
            name: name.into(),
            scale_min,
            scale_max,
            rank,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionMatrix {
    alternatives: Vec<String>,
    criteria: Vec<CriterionSpec>,
    scores: Vec<Vec<Rational>>,
}

impl DecisionMatrix {
    /// Builds and validates a matrix. `scores[i][j]` is the score of
    /// alternative `i` on criterion `j`; criteria must already be in rank order.
    pub fn new(
        alternatives: Vec<String>,
        criteria: Vec<CriterionSpec>,
        scores: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        let matrix = Self::from_parts_unchecked(alternatives, criteria, scores);
        let violations = validate(&matrix);
        if violations.is_empty() {
            Ok(matrix)
        } else {
            Err(Error::Invalid(violations))
        }
    }

    pub fn from_parts_unchecked(
        alternatives: Vec<String>,
        criteria: Vec<CriterionSpec>,
        scores: Vec<Vec<Rational>>,
    ) -> Self {
        Self {
            alternatives,
            criteria,
            scores,
        }
    }

    /// Integer matrix with generated ids `x1..xn`, criteria `k1..km` and a
    /// common declared scale.
    pub fn from_integers(rows: &[Vec<i64>], scale_min: i64, scale_max: i64) -> Result<Self> {
        let m = rows.first().map_or(0, Vec::len);
        let alternatives = (1..=rows.len()).map(|i| format!("x{i}")).collect();
        let criteria = (1..=m)
            .map(|j| {
                CriterionSpec::new(
                    format!("k{j}"),
                    rational::int(scale_min),
                    rational::int(scale_max),
                    j,
                )
            })
            .collect();
        let scores = rows
            .iter()
            .map(|r| r.iter().map(|&v| rational::int(v)).collect())
            .collect();
        Self::new(alternatives, criteria, scores)
    }

    pub fn n(&self) -> usize {
        self.alternatives.len()
    }

    pub fn m(&self) -> usize {
        self.criteria.len()
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn criteria(&self) -> &[CriterionSpec] {
        &self.criteria
    }

    pub fn scores(&self) -> &[Vec<Rational>] {
        &self.scores
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.scores[i]
    }

    pub fn score(&self, i: usize, j: usize) -> &Rational {
        &self.scores[i][j]
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = &Rational> + '_ {
        self.scores.iter().map(move |row| &row[j])
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.alternatives
            .iter()
            .position(|a| a == id)
            .ok_or_else(|| Error::UnknownAlternative(id.to_string()))
    }

    pub fn criterion_index(&self, name: &str) -> Option<usize> {
        self.criteria.iter().position(|c| c.name == name)
    }

    /// Applies `f` to every score of criterion `j` and replaces its scale.
    /// The result is validated.
    pub fn map_column(
        &self,
        j: usize,
        scale: (Rational, Rational),
        f: impl Fn(&Rational) -> Rational,
    ) -> Result<Self> {
        if j >= self.m() {
            return Err(Error::IndexOutOfRange {
                index: j,
                size: self.m(),
            });
        }
        let mut criteria = self.criteria.clone();
        criteria[j].scale_min = scale.0;
        criteria[j].scale_max = scale.1;
        let scores = self
            .scores
            .iter()
            .map(|row| {
                let mut row = row.clone();
                row[j] = f(&row[j]);
                row
            })
            .collect();
        Self::new(self.alternatives.clone(), criteria, scores)
    }

    /// Turns a loss-type criterion into a win-type one: scores and the
    /// scale `[min, max]` become `-score` and `[-max, -min]`.
    pub fn negate_criterion(&self, j: usize) -> Result<Self> {
        let c = self.criteria.get(j).ok_or(Error::IndexOutOfRange {
            index: j,
            size: self.m(),
        })?;
        let scale = (-c.scale_max.clone(), -c.scale_min.clone());
        self.map_column(j, scale, |v| -v.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    FirstPreferred,
    SecondPreferred,
    Equivalent,
    Incomparable,
}

impl Verdict {
    pub fn mirrored(self) -> Self {
        match self {
            Verdict::FirstPreferred => Verdict::SecondPreferred,
            Verdict::SecondPreferred => Verdict::FirstPreferred,
            v => v,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::FirstPreferred => "first_preferred",
            Verdict::SecondPreferred => "second_preferred",
            Verdict::Equivalent => "equivalent",
            Verdict::Incomparable => "incomparable",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Result of one pairwise comparison. `level` is the superiority degree:
/// the 1-based importance level at which the comparison was decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ComparisonOutcome {
    pub verdict: Verdict,
    pub level: Option<usize>,
}

impl ComparisonOutcome {
    pub fn first(level: usize) -> Self {
        Self {
            verdict: Verdict::FirstPreferred,
            level: Some(level),
        }
    }

    pub fn second(level: usize) -> Self {
        Self {
            verdict: Verdict::SecondPreferred,
            level: Some(level),
        }
    }

    pub const EQUIVALENT: Self = Self {
        verdict: Verdict::Equivalent,
        level: None,
    };

    pub const INCOMPARABLE: Self = Self {
        verdict: Verdict::Incomparable,
        level: None,
    };

    pub fn mirrored(self) -> Self {
        Self {
            verdict: self.verdict.mirrored(),
            level: self.level,
        }
    }

    /// Weak preference of the first element: strictly preferred or equivalent.
    pub fn is_at_least(self) -> bool {
        matches!(self.verdict, Verdict::FirstPreferred | Verdict::Equivalent)
    }
}

impl fmt::Display for ComparisonOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.level {
            Some(level) => write!(f, "{} (level {level})", self.verdict),
            None => write!(f, "{}", self.verdict),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NoAlternatives,
    NoCriteria,
    DuplicateAlternative {
        id: String,
    },
    EmptyScale {
        criterion: String,
        min: String,
        max: String,
    },
    DuplicateRank {
        rank: usize,
        criteria: Vec<String>,
    },
    RankOutOfRange {
        criterion: String,
        rank: usize,
        m: usize,
    },
    RankOrder {
        criterion: String,
    },
    RowLength {
        alternative: String,
        expected: usize,
        found: usize,
    },
    ScoreOutOfScale {
        alternative: String,
        criterion: String,
        value: String,
        min: String,
        max: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoAlternatives => write!(f, "n ≥ 1 violated: no alternatives"),
            Violation::NoCriteria => write!(f, "m ≥ 1 violated: no criteria"),
            Violation::DuplicateAlternative { id } => write!(f, "duplicate alternative id `{id}`"),
            Violation::EmptyScale { criterion, min, max } => {
                write!(
                    f,
                    "criterion `{criterion}`: scale_min {min} is not below scale_max {max}"
                )
            }
            Violation::DuplicateRank { rank, criteria } => {
                write!(f, "rank {rank} shared by criteria {}", criteria.join(", "))
            }
            Violation::RankOutOfRange { criterion, rank, m } => {
                write!(f, "criterion `{criterion}`: rank {rank} outside 1..={m}")
            }
            Violation::RankOrder { criterion } => {
                write!(f, "criterion `{criterion}` is listed out of rank order")
            }
            Violation::RowLength {
                alternative,
                expected,
                found,
            } => {
                write!(
                    f,
                    "alternative `{alternative}` has {found} scores, expected {expected}"
                )
            }
            Violation::ScoreOutOfScale {
                alternative,
                criterion,
                value,
                min,
                max,
            } => write!(
                f,
                "alternative `{alternative}`, criterion `{criterion}`: score {value} outside [{min}, {max}]"
            ),
        }
    }
}

/// Every invariant violation of `matrix`, in a stable order. Empty means valid.
pub fn validate(matrix: &DecisionMatrix) -> Vec<Violation> {
    let mut out = Vec::new();
    let m = matrix.m();
    if matrix.n() == 0 {
        out.push(Violation::NoAlternatives);
    }
    if m == 0 {
        out.push(Violation::NoCriteria);
    }

    let mut seen = HashSet::new();
    let mut reported = HashSet::new();
    for id in &matrix.alternatives {
        if !seen.insert(id) && reported.insert(id) {
            out.push(Violation::DuplicateAlternative { id: id.clone() });
        }
    }

    for c in &matrix.criteria {
        if c.scale_min >= c.scale_max {
            out.push(Violation::EmptyScale {
                criterion: c.name.clone(),
                min: rational::format(&c.scale_min),
                max: rational::format(&c.scale_max),
            });
        }
    }

    // Ranks all in 1..=m and pairwise distinct is the same as "exactly 1..m",
    // so gaps always surface as one of these two violations.
    let mut by_rank: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for c in &matrix.criteria {
        if c.rank == 0 || c.rank > m {
            out.push(Violation::RankOutOfRange {
                criterion: c.name.clone(),
                rank: c.rank,
                m,
            });
        }
        by_rank.entry(c.rank).or_default().push(c.name.clone());
    }
    for (rank, names) in by_rank {
        if names.len() > 1 {
            out.push(Violation::DuplicateRank {
                rank,
                criteria: names,
            });
        }
    }
    for pair in matrix.criteria.windows(2) {
        if pair[1].rank < pair[0].rank {
            out.push(Violation::RankOrder {
                criterion: pair[1].name.clone(),
            });
        }
    }

    for (id, row) in matrix.alternatives.iter().zip(&matrix.scores) {
        if row.len() != m {
            out.push(Violation::RowLength {
                alternative: id.clone(),
                expected: m,
                found: row.len(),
            });
            continue;
        }
        for (c, v) in matrix.criteria.iter().zip(row) {
            if *v < c.scale_min || *v > c.scale_max {
                out.push(Violation::ScoreOutOfScale {
                    alternative: id.clone(),
                    criterion: c.name.clone(),
                    value: rational::format(v),
                    min: rational::format(&c.scale_min),
                    max: rational::format(&c.scale_max),
                });
            }
        }
    }
    if matrix.scores.len() != matrix.alternatives.len() {
        out.push(Violation::RowLength {
            alternative: "<score rows>".into(),
            expected: matrix.alternatives.len(),
            found: matrix.scores.len(),
        });
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn from_path(path: &str) -> Self {
        if path.to_ascii_lowercase().ends_with(".json") {
            Format::Json
        } else {
            Format::Csv
        }
    }
}

pub fn load_matrix(source: impl Read, format: Format) -> Result<DecisionMatrix> {
    let matrix = load_matrix_unchecked(source, format)?;
    let violations = validate(&matrix);
    if violations.is_empty() {
        Ok(matrix)
    } else {
        Err(Error::Invalid(violations))
    }
}

/// Parses and puts criteria in rank order, without checking invariants.
pub fn load_matrix_unchecked(source: impl Read, format: Format) -> Result<DecisionMatrix> {
    let (alternatives, criteria, scores) = match format {
        Format::Csv => parse_csv(source)?,
        Format::Json => parse_json(source)?,
    };
    let (criteria, scores) = into_rank_order(criteria, scores);
    Ok(DecisionMatrix::from_parts_unchecked(
        alternatives,
        criteria,
        scores,
    ))
}

pub fn serialize(matrix: &DecisionMatrix, format: Format) -> Result<String> {
    match format {
        Format::Csv => to_csv(matrix),
        Format::Json => to_json(matrix),
    }
}

type Parts = (Vec<String>, Vec<CriterionSpec>, Vec<Vec<Rational>>);

fn into_rank_order(
    criteria: Vec<CriterionSpec>,
    scores: Vec<Vec<Rational>>,
) -> (Vec<CriterionSpec>, Vec<Vec<Rational>>) {
    let mut order: Vec<usize> = (0..criteria.len()).collect();
    order.sort_by_key(|&j| criteria[j].rank);
    let sorted = order.iter().map(|&j| criteria[j].clone()).collect();
    let scores = scores
        .into_iter()
        .map(|row| {
            if row.len() == order.len() {
                order.iter().map(|&j| row[j].clone()).collect()
            } else {
                row
            }
        })
        .collect();
    (sorted, scores)
}

fn at_line(record: &csv::StringRecord, msg: impl fmt::Display) -> Error {
    match record.position() {
        Some(p) => Error::Parse(format!("line {}: {msg}", p.line())),
        None => Error::Parse(msg.to_string()),
    }
}

fn cell_number(record: &csv::StringRecord, text: &str) -> Result<Rational> {
    rational::parse(text).map_err(|_| at_line(record, format!("invalid number `{text}`")))
}

// Layout: every row starts with a label/id cell.
//   alternative,<name_1>,...,<name_m>
//   scale,"min,max",...
//   rank,<rank_1>,...
//   <id>,<score_1>,...
fn parse_csv(source: impl Read) -> Result<Parts> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(source);
    let records = reader.records().collect::<std::result::Result<Vec<_>, _>>()?;
    let [names, scales, ranks, data @ ..] = records.as_slice() else {
        return Err(Error::Parse(
            "csv needs a name row, a scale row and a rank row".into(),
        ));
    };
    let m = names.len().saturating_sub(1);

    let scale_cells: Vec<&str> = scales.iter().skip(1).collect();
    let scale_pairs: Vec<(String, String)> = if scale_cells.len() == 2 * m {
        scale_cells
            .chunks(2)
            .map(|c| (c[0].to_string(), c[1].to_string()))
            .collect()
    } else if scale_cells.len() == m {
        scale_cells
            .iter()
            .map(|cell| {
                cell.split_once([',', ';'])
                    .map(|(a, b)| (a.trim().to_string(), b.trim().to_string()))
                    .ok_or_else(|| at_line(scales, format!("scale cell `{cell}` is not `min,max`")))
            })
            .collect::<Result<_>>()?
    } else {
        return Err(at_line(
            scales,
            format!("expected {m} scale pairs, found {} cells", scale_cells.len()),
        ));
    };

    let mut criteria = Vec::with_capacity(m);
    for (j, name) in names.iter().skip(1).enumerate() {
        let rank_cell = ranks.get(j + 1).unwrap_or("");
        if rank_cell.is_empty() {
            return Err(at_line(ranks, format!("missing rank for criterion `{name}`")));
        }
        let rank = rank_cell.parse::<usize>().map_err(|_| {
            at_line(
                ranks,
                format!("invalid rank `{rank_cell}` for criterion `{name}`"),
            )
        })?;
        let (lo, hi) = &scale_pairs[j];
        criteria.push(CriterionSpec::new(
            name,
            cell_number(scales, lo)?,
            cell_number(scales, hi)?,
            rank,
        ));
    }

    let mut alternatives = Vec::with_capacity(data.len());
    let mut scores = Vec::with_capacity(data.len());
    for record in data {
        if record.len() != m + 1 {
            return Err(at_line(
                record,
                format!("expected {} cells, found {}", m + 1, record.len()),
            ));
        }
        alternatives.push(record[0].to_string());
        scores.push(
            record
                .iter()
                .skip(1)
                .map(|cell| cell_number(record, cell))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok((alternatives, criteria, scores))
}

fn to_csv(matrix: &DecisionMatrix) -> Result<String> {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    let mut names = vec!["alternative".to_string()];
    names.extend(matrix.criteria.iter().map(|c| c.name.clone()));
    w.write_record(&names)?;
    let mut scales = vec!["scale".to_string()];
    scales.extend(matrix.criteria.iter().map(|c| {
        format!(
            "{},{}",
            rational::format(&c.scale_min),
            rational::format(&c.scale_max)
        )
    }));
    w.write_record(&scales)?;
    let mut ranks = vec!["rank".to_string()];
    ranks.extend(matrix.criteria.iter().map(|c| c.rank.to_string()));
    w.write_record(&ranks)?;
    for (id, row) in matrix.alternatives.iter().zip(&matrix.scores) {
        let mut rec = vec![id.clone()];
        rec.extend(row.iter().map(rational::format));
        w.write_record(&rec)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

/// A number given either as a JSON string (preferred, exact) or a JSON number.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub(crate) enum NumberText {
    Text(String),
    Number(serde_json::Number),
}

impl NumberText {
    pub(crate) fn parse(&self) -> Result<Rational> {
        match self {
            NumberText::Text(s) => rational::parse(s),
            NumberText::Number(n) => rational::parse(&n.to_string()),
        }
    }

    pub(crate) fn of(v: &Rational) -> Self {
        NumberText::Text(rational::format(v))
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonCriterion {
    name: String,
    scale_min: NumberText,
    scale_max: NumberText,
    rank: Option<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonAlternative {
    id: String,
    scores: Vec<NumberText>,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonMatrix {
    criteria: Vec<JsonCriterion>,
    alternatives: Vec<JsonAlternative>,
}

fn parse_json(source: impl Read) -> Result<Parts> {
    let doc: JsonMatrix = serde_json::from_reader(source)?;
    let criteria = doc
        .criteria
        .into_iter()
        .map(|c| {
            let rank = c
                .rank
                .ok_or_else(|| Error::Parse(format!("missing rank for criterion `{}`", c.name)))?;
            Ok(CriterionSpec::new(
                c.name,
                c.scale_min.parse()?,
                c.scale_max.parse()?,
                rank,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut alternatives = Vec::new();
    let mut scores = Vec::new();
    for alt in doc.alternatives {
        scores.push(
            alt.scores
                .iter()
                .map(NumberText::parse)
                .collect::<Result<Vec<_>>>()
                .map_err(|e| Error::Parse(format!("alternative `{}`: {e}", alt.id)))?,
        );
        alternatives.push(alt.id);
    }
    Ok((alternatives, criteria, scores))
}

fn to_json(matrix: &DecisionMatrix) -> Result<String> {
    let doc = JsonMatrix {
        criteria: matrix
            .criteria
            .iter()
            .map(|c| JsonCriterion {
                name: c.name.clone(),
                scale_min: NumberText::of(&c.scale_min),
                scale_max: NumberText::of(&c.scale_max),
                rank: Some(c.rank),
            })
            .collect(),
        alternatives: matrix
            .alternatives
            .iter()
            .zip(&matrix.scores)
            .map(|(id, row)| JsonAlternative {
                id: id.clone(),
                scores: row.iter().map(NumberText::of).collect(),
            })
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}
