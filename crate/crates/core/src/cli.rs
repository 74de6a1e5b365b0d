//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when the input is broken (unreadable file,
//! parse or validation failure, bad flags), 2 when the computation itself
//! found something (axiom violations, intransitivity, a failed condition).

use std::fs::File;
use std::io::BufReader;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::convolution::{self, RangeMode, Scheme};
use crate::crisp::{self, OrderDefect};
use crate::error::{Error, Result};
use crate::fuzzy::{self, FuzzyFile, FuzzyStack, Transform};
use crate::model::{self, ComparisonOutcome, DecisionMatrix, Format, Verdict};
use crate::rational::{self, Rational};
use crate::relational::{self, RelationFile, RelationStack};

#[derive(Debug, Parser)]
#[command(
    name = "lexdm",
    version,
    about = "Lexicographic multicriteria decision procedures"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FileFormat {
    Csv,
    Json,
}

#[derive(Debug, clap::Args)]
struct MatrixArgs {
    /// Decision matrix (CSV or JSON)
    file: String,
    /// Input format; guessed from the extension when omitted
    #[arg(long, value_enum)]
    format: Option<FileFormat>,
    /// Negate a loss-type criterion (by name) before processing; repeatable
    #[arg(long = "negate", value_name = "CRITERION")]
    negate: Vec<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
enum Method {
    #[default]
    Cascade,
    Convolution,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
enum SchemeArg {
    #[default]
    MixedRadix,
    PaperLiteral,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::MixedRadix => Scheme::MixedRadix,
            SchemeArg::PaperLiteral => Scheme::PaperLiteral,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
enum ModeArg {
    #[default]
    Declared,
    Observed,
}

impl From<ModeArg> for RangeMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Declared => RangeMode::Declared,
            ModeArg::Observed => RangeMode::Observed,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TransformArg {
    Square,
    Halve,
    Identity,
}

impl From<TransformArg> for Transform {
    fn from(t: TransformArg) -> Self {
        match t {
            TransformArg::Square => Transform::Square,
            TransformArg::Halve => Transform::Halve,
            TransformArg::Identity => Transform::Identity,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a decision matrix and list every invariant violation
    Validate {
        #[command(flatten)]
        input: MatrixArgs,
    },
    /// Rank alternatives by the cascade or by lexicographic convolution
    Rank {
        #[command(flatten)]
        input: MatrixArgs,
        #[arg(long, value_enum, default_value_t)]
        method: Method,
        #[arg(long, value_enum, default_value_t)]
        scheme: SchemeArg,
        #[arg(long, value_enum, default_value_t)]
        mode: ModeArg,
        /// Rescale every criterion so its maximum becomes A
        #[arg(long, value_name = "A")]
        normalize: Option<String>,
    },
    /// Compare two alternatives by the cascade
    Compare {
        #[command(flatten)]
        input: MatrixArgs,
        first: String,
        second: String,
    },
    /// Print lexicographic importance coefficients
    Weights {
        #[command(flatten)]
        input: MatrixArgs,
        #[arg(long, value_enum, default_value_t)]
        scheme: SchemeArg,
        #[arg(long, value_enum, default_value_t)]
        mode: ModeArg,
    },
    /// Check the scale-separation condition for lexicographic ordering
    CheckLex {
        #[command(flatten)]
        input: MatrixArgs,
    },
    /// Compose crisp relations lexicographically
    Relcompose {
        /// Relation stack (JSON or CSV blocks)
        file: String,
        /// Only compare these two alternatives
        #[arg(long, num_args = 2, value_names = ["FIRST", "SECOND"])]
        pair: Option<Vec<String>>,
    },
    /// Check the equivalence-substitution axioms on a relation stack
    CheckAxioms { file: String },
    /// Rank alternatives by the fuzzy lexicographic relation
    FuzzyRank { file: String },
    /// Compare two alternatives through a fuzzy relation stack
    FuzzyCompare {
        file: String,
        first: String,
        second: String,
        /// Base of the convolution weights B^(m-j)
        #[arg(long, default_value_t = fuzzy::DEFAULT_BASE)]
        base: u32,
    },
    /// Check verdict/level invariance under a monotone rescaling of memberships
    CheckTheorem {
        file: String,
        #[arg(long, value_enum)]
        transform: TransformArg,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone, Copy, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportMethod {
    Cascade,
    Convolution,
    Relational,
    Fuzzy,
}

#[derive(Debug, Clone, Serialize)]
pub struct TierReport {
    pub position: usize,
    pub members: Vec<String>,
    /// Superiority degree over the next tier.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level_to_next: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairReport {
    pub first: String,
    pub second: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScoreReport {
    pub id: String,
    pub values: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WeightReport {
    pub scheme: Scheme,
    pub mode: RangeMode,
    pub criteria: Vec<String>,
    pub weights: Vec<String>,
    pub diapasons: Vec<String>,
    pub gaps: Vec<String>,
    pub dominance_bound_holds: bool,
}

/// Everything a subcommand prints. Field order is the serialization order.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<ReportMethod>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<WeightReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ranking: Option<Vec<TierReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scores: Option<Vec<ScoreReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<PairReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub findings: Option<serde_json::Value>,
    pub warnings: Vec<String>,
}

impl RunReport {
    fn new(command: &str, method: Option<ReportMethod>) -> Self {
        Self {
            command: command.to_string(),
            method,
            weights: None,
            ranking: None,
            scores: None,
            pairs: None,
            findings: None,
            warnings: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        if let Some(method) = self.method {
            let name = serde_json::to_value(method).expect("enum serializes");
            out += &format!("method: {}\n", name.as_str().unwrap_or_default());
        }
        if let Some(w) = &self.weights {
            out += &format!("weights ({}, {}):\n", w.scheme, mode_name(w.mode));
            let width = w.criteria.iter().map(String::len).max().unwrap_or(0);
            for k in 0..w.criteria.len() {
                out += &format!(
                    "  {:<width$}  λ={}  d={}  gap={}\n",
                    w.criteria[k], w.weights[k], w.diapasons[k], w.gaps[k]
                );
            }
            out += &format!(
                "dominance bound: {}\n",
                if w.dominance_bound_holds {
                    "holds"
                } else {
                    "violated"
                }
            );
        }
        if let Some(tiers) = &self.ranking {
            out += "ranking:\n";
            for t in tiers {
                out += &format!("  {}. {}", t.position, t.members.join(", "));
                if let Some(level) = t.level_to_next {
                    out += &format!("  (over next tier at level {level})");
                }
                out += "\n";
            }
        }
        if let Some(scores) = &self.scores {
            out += "scores:\n";
            let width = scores.iter().map(|s| s.id.len()).max().unwrap_or(0);
            for s in scores {
                out += &format!("  {:<width$}  {}\n", s.id, s.values.join("  "));
            }
        }
        if let Some(pairs) = &self.pairs {
            out += "pairs:\n";
            for p in pairs {
                out += &format!("  {} vs {}: {}", p.first, p.second, p.verdict);
                if let Some(level) = p.level {
                    out += &format!(" at level {level}");
                }
                if let Some(d) = &p.degree {
                    out += &format!(", degree {d}");
                }
                out += "\n";
            }
        }
        if let Some(serde_json::Value::Object(map)) = &self.findings {
            out += "findings:\n";
            for (k, v) in map {
                out += &format!("  {k}: {v}\n");
            }
        }
        for w in &self.warnings {
            out += &format!("warning: {w}\n");
        }
        out
    }
}

fn mode_name(m: RangeMode) -> &'static str {
    match m {
        RangeMode::Declared => "declared",
        RangeMode::Observed => "observed",
    }
}

fn open(path: &str) -> Result<BufReader<File>> {
    File::open(path).map(BufReader::new).map_err(Error::from)
}

fn input_format(input: &MatrixArgs) -> Format {
    match input.format {
        Some(FileFormat::Csv) => Format::Csv,
        Some(FileFormat::Json) => Format::Json,
        None => Format::from_path(&input.file),
    }
}

fn load(input: &MatrixArgs) -> Result<DecisionMatrix> {
    let mut matrix = model::load_matrix(open(&input.file)?, input_format(input))?;
    for name in &input.negate {
        let j = matrix
            .criterion_index(name)
            .ok_or_else(|| Error::Parse(format!("unknown criterion `{name}` in --negate")))?;
        matrix = matrix.negate_criterion(j)?;
    }
    Ok(matrix)
}

fn load_relations(path: &str) -> Result<RelationFile> {
    if Format::from_path(path) == Format::Json {
        relational::load_relations_json(open(path)?)
    } else {
        relational::load_relations_csv(open(path)?)
    }
}

fn load_fuzzy(path: &str) -> Result<FuzzyFile> {
    fuzzy::load_fuzzy_json(open(path)?)
}

fn position(ids: &[String], id: &str) -> Result<usize> {
    ids.iter()
        .position(|x| x == id)
        .ok_or_else(|| Error::UnknownAlternative(id.to_string()))
}

fn pair(ids: &[String], i: usize, l: usize, o: ComparisonOutcome, degree: Option<&Rational>) -> PairReport {
    PairReport {
        first: ids[i].clone(),
        second: ids[l].clone(),
        verdict: o.verdict,
        level: o.level,
        degree: degree.map(rational::format),
    }
}

fn tier_reports(
    ids: &[String],
    tiers: &[Vec<usize>],
    level: impl Fn(usize, usize) -> Option<usize>,
) -> Vec<TierReport> {
    tiers
        .iter()
        .enumerate()
        .map(|(p, tier)| TierReport {
            position: p + 1,
            members: tier.iter().map(|&i| ids[i].clone()).collect(),
            level_to_next: tiers.get(p + 1).and_then(|next| level(tier[0], next[0])),
        })
        .collect()
}

fn upper_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |l| (i, l)))
}

fn defect_findings(defect: &OrderDefect, ids: &[String]) -> serde_json::Value {
    match *defect {
        OrderDefect::Incomparable { a, b } => serde_json::json!({
            "defect": "incomparable",
            "alternatives": [ids[a], ids[b]],
        }),
        OrderDefect::Intransitive { a, b, c } => serde_json::json!({
            "defect": "intransitive",
            "alternatives": [ids[a], ids[b], ids[c]],
            "detail": format!("{} ≿ {} and {} ≿ {} but not {} ≿ {}", ids[a], ids[b], ids[b], ids[c], ids[a], ids[c]),
        }),
    }
}

fn weight_report(matrix: &DecisionMatrix, w: &convolution::WeightVector, mode: RangeMode) -> WeightReport {
    let fmt = |v: &[Rational]| v.iter().map(rational::format).collect();
    WeightReport {
        scheme: w.scheme,
        mode,
        criteria: matrix.criteria().iter().map(|c| c.name.clone()).collect(),
        weights: fmt(&w.weights),
        diapasons: fmt(&w.diapasons),
        gaps: fmt(&w.gaps),
        dominance_bound_holds: w.satisfies_dominance(),
    }
}

const PAPER_LITERAL_NOTE: &str =
    "paper_literal weights grow toward the least important criterion and need not reproduce the cascade order";

fn execute(command: Command) -> Result<(i32, RunReport)> {
    match command {
        Command::Validate { input } => {
            let format = input_format(&input);
            let matrix = model::load_matrix_unchecked(open(&input.file)?, format)?;
            let mut report = RunReport::new("validate", None);
            let violations = model::validate(&matrix);
            let code = if violations.is_empty() { 0 } else { 1 };
            report.warnings = violations.iter().map(|v| v.to_string()).collect();
            report.findings = Some(serde_json::json!({
                "alternatives": matrix.n(),
                "criteria": matrix.m(),
                "valid": violations.is_empty(),
                "violations": violations,
            }));
            Ok((code, report))
        }
        Command::Rank {
            input,
            method,
            scheme,
            mode,
            normalize,
        } => {
            let mut matrix = load(&input)?;
            if let Some(a) = normalize {
                matrix = convolution::normalize(&matrix, &rational::parse(&a)?)?;
            }
            let ids = matrix.alternatives().to_vec();
            match method {
                Method::Cascade => {
                    let mut report = RunReport::new("rank", Some(ReportMethod::Cascade));
                    let tiers = crisp::rank_indices(&matrix);
                    report.ranking = Some(tier_reports(&ids, &tiers, |a, b| {
                        crisp::lex_compare_at(&matrix, a, b).level
                    }));
                    Ok((0, report))
                }
                Method::Convolution => {
                    let mode = RangeMode::from(mode);
                    let w = convolution::lex_weights(&matrix, scheme.into(), mode)?;
                    let values = convolution::convolve_all(&matrix, &w)?;
                    let mut report = RunReport::new("rank", Some(ReportMethod::Convolution));
                    let mut order: Vec<usize> = (0..matrix.n()).collect();
                    order.sort_by(|&a, &b| values[b].cmp(&values[a]));
                    let mut tiers: Vec<Vec<usize>> = Vec::new();
                    for i in order {
                        match tiers.last_mut() {
                            Some(t) if values[t[0]] == values[i] => t.push(i),
                            _ => tiers.push(vec![i]),
                        }
                    }
                    report.ranking = Some(tier_reports(&ids, &tiers, |_, _| None));
                    report.scores = Some(
                        ids.iter()
                            .zip(&values)
                            .map(|(id, v)| ScoreReport {
                                id: id.clone(),
                                values: vec![rational::format(v)],
                            })
                            .collect(),
                    );
                    let disagreements = upper_pairs(matrix.n())
                        .filter(|&(a, b)| {
                            let by_sum = values[a].cmp(&values[b]);
                            crisp::best_first(crisp::lex_compare_at(&matrix, a, b)) != by_sum.reverse()
                        })
                        .count();
                    if w.scheme == Scheme::PaperLiteral {
                        report.warnings.push(PAPER_LITERAL_NOTE.into());
                    }
                    if disagreements > 0 {
                        report.warnings.push(format!(
                            "convolution order disagrees with the cascade on {disagreements} pair(s)"
                        ));
                    }
                    report.weights = Some(weight_report(&matrix, &w, mode));
                    Ok((0, report))
                }
            }
        }
        Command::Compare { input, first, second } => {
            let matrix = load(&input)?;
            let outcome = crisp::lex_compare(&matrix, &first, &second)?;
            let ids = matrix.alternatives();
            let mut report = RunReport::new("compare", Some(ReportMethod::Cascade));
            report.pairs = Some(vec![pair(
                ids,
                matrix.index_of(&first)?,
                matrix.index_of(&second)?,
                outcome,
                None,
            )]);
            Ok((0, report))
        }
        Command::Weights { input, scheme, mode } => {
            let matrix = load(&input)?;
            let mode = RangeMode::from(mode);
            let w = convolution::lex_weights(&matrix, scheme.into(), mode)?;
            let mut report = RunReport::new("weights", Some(ReportMethod::Convolution));
            if w.scheme == Scheme::PaperLiteral {
                report.warnings.push(PAPER_LITERAL_NOTE.into());
            }
            report.weights = Some(weight_report(&matrix, &w, mode));
            Ok((0, report))
        }
        Command::CheckLex { input } => {
            let matrix = load(&input)?;
            let r = convolution::check_lex_condition(&matrix);
            let mut report = RunReport::new("check-lex", Some(ReportMethod::Convolution));
            let code = if r.holds { 0 } else { 2 };
            let mut findings = serde_json::to_value(&r)?;
            if let Some(v) = &r.first_violation {
                findings["first_violation"]["criteria"] = serde_json::json!([
                    matrix.criteria()[v.level - 1].name,
                    matrix.criteria()[v.level].name,
                ]);
            }
            report.findings = Some(findings);
            Ok((code, report))
        }
        Command::Relcompose { file, pair: only } => {
            let f = load_relations(&file)?;
            let stack = RelationStack::new(&f.relations)?;
            check_alternatives(&f.alternatives, stack.size())?;
            let ids = &f.alternatives;
            let mut report = RunReport::new("relcompose", Some(ReportMethod::Relational));
            let pairs: Vec<(usize, usize)> = match &only {
                Some(p) => vec![(position(ids, &p[0])?, position(ids, &p[1])?)],
                None => upper_pairs(stack.size()).collect(),
            };
            report.pairs = Some(
                pairs
                    .into_iter()
                    .map(|(a, b)| Ok(pair(ids, a, b, stack.compare(a, b)?, None)))
                    .collect::<Result<_>>()?,
            );
            let aff = relational::verify_composition(&f.relations)?;
            let mut code = 0;
            if only.is_none() {
                match relational::compose_rank(&stack) {
                    Ok(tiers) => {
                        report.ranking = Some(tier_reports(ids, &tiers, |a, b| {
                            stack.compare(a, b).ok().and_then(|o| o.level)
                        }))
                    }
                    Err(Error::Order(d)) => report
                        .warnings
                        .push(format!("no ranking: {}", describe_defect(&d, ids))),
                    Err(e) => return Err(e),
                }
            }
            if aff.premises_hold && !aff.composed_transitive {
                code = 2;
            }
            report.findings = Some(composition_findings(&aff, ids));
            Ok((code, report))
        }
        Command::CheckAxioms { file } => {
            let f = load_relations(&file)?;
            check_alternatives(&f.alternatives, f.relations.first().map_or(0, |r| r.size()))?;
            let ids = &f.alternatives;
            let axioms = relational::check_axioms(&f.relations)?;
            let aff = relational::verify_composition(&f.relations)?;
            let named = |v: &[relational::AxiomViolation]| -> Vec<serde_json::Value> {
                v.iter()
                    .map(|x| {
                        serde_json::json!({
                            "i": ids[x.i], "q": ids[x.q], "l": ids[x.l], "level": x.level,
                        })
                    })
                    .collect()
            };
            let mut findings = composition_findings(&aff, ids);
            findings["a1_violations"] = named(&axioms.a1_violations).into();
            findings["a2_violations"] = named(&axioms.a2_violations).into();
            let mut report = RunReport::new("check-axioms", Some(ReportMethod::Relational));
            report.findings = Some(findings);
            let code = if axioms.holds() { 0 } else { 2 };
            Ok((code, report))
        }
        Command::FuzzyRank { file } => {
            let f = load_fuzzy(&file)?;
            let stack = FuzzyStack::new(&f.relations)?;
            check_alternatives(&f.alternatives, stack.size())?;
            let ids = &f.alternatives;
            let mut report = RunReport::new("fuzzy-rank", Some(ReportMethod::Fuzzy));
            let utilities: Vec<Vec<Rational>> = f.relations.iter().map(fuzzy::utility_projection).collect();
            report.scores = Some(
                ids.iter()
                    .enumerate()
                    .map(|(i, id)| ScoreReport {
                        id: id.clone(),
                        values: utilities.iter().map(|u| rational::format(&u[i])).collect(),
                    })
                    .collect(),
            );
            match fuzzy::fuzzy_lex_rank(&f.relations) {
                Ok(tiers) => {
                    report.ranking = Some(tier_reports(ids, &tiers, |a, b| {
                        stack.compare(a, b).ok().and_then(|o| o.level)
                    }));
                    Ok((0, report))
                }
                Err(Error::Order(d)) => {
                    report.findings = Some(defect_findings(&d, ids));
                    report.warnings.push(format!(
                        "fuzzy lexicographic relation is not transitive here: {}",
                        describe_defect(&d, ids)
                    ));
                    Ok((2, report))
                }
                Err(e) => Err(e),
            }
        }
        Command::FuzzyCompare {
            file,
            first,
            second,
            base,
        } => {
            let f = load_fuzzy(&file)?;
            let stack = FuzzyStack::new(&f.relations)?;
            check_alternatives(&f.alternatives, stack.size())?;
            let ids = &f.alternatives;
            let (a, b) = (position(ids, &first)?, position(ids, &second)?);
            let outcome = stack.compare(a, b)?;
            let scores = fuzzy::fuzzy_lex_convolve(&f.relations, base)?;
            let diff = &scores[a][b] - &scores[b][a];
            let by_sum = match diff.cmp(&Rational::from_integer(0.into())) {
                std::cmp::Ordering::Greater => Verdict::FirstPreferred,
                std::cmp::Ordering::Less => Verdict::SecondPreferred,
                std::cmp::Ordering::Equal => Verdict::Equivalent,
            };
            let mut report = RunReport::new("fuzzy-compare", Some(ReportMethod::Fuzzy));
            report.pairs = Some(vec![pair(ids, a, b, outcome.outcome(), Some(&outcome.degree))]);
            report.scores = Some(vec![
                ScoreReport {
                    id: format!("{} over {}", ids[a], ids[b]),
                    values: vec![rational::format(&scores[a][b])],
                },
                ScoreReport {
                    id: format!("{} over {}", ids[b], ids[a]),
                    values: vec![rational::format(&scores[b][a])],
                },
            ]);
            report.findings = Some(serde_json::json!({
                "base": base,
                "weights": fuzzy::fuzzy_weights(stack.levels(), base).iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                "convolution_verdict": by_sum,
                "agrees_with_cascade": by_sum == outcome.verdict,
            }));
            if by_sum != outcome.verdict {
                report.warnings.push(format!(
                    "base {base} convolution disagrees with the cascade on this pair"
                ));
            }
            Ok((0, report))
        }
        Command::CheckTheorem { file, transform } => {
            let f = load_fuzzy(&file)?;
            let ids = &f.alternatives;
            let transform = Transform::from(transform);
            let r = fuzzy::check_scale_theorem(&f.relations, |t| transform.apply(t))?;
            let mut report = RunReport::new("check-theorem", Some(ReportMethod::Fuzzy));
            let mismatches: Vec<serde_json::Value> = r
                .mismatches
                .iter()
                .map(|m| {
                    serde_json::json!({
                        "first": ids[m.i], "second": ids[m.l],
                        "before": m.before.to_string(), "after": m.after.to_string(),
                    })
                })
                .collect();
            report.findings = Some(serde_json::json!({
                "transform": transform.to_string(),
                "pairs_checked": r.pairs_checked,
                "invariant": r.holds(),
                "mismatches": mismatches,
            }));
            Ok((if r.holds() { 0 } else { 2 }, report))
        }
    }
}

fn check_alternatives(ids: &[String], n: usize) -> Result<()> {
    if ids.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: ids.len(),
        });
    }
    Ok(())
}

fn describe_defect(d: &OrderDefect, ids: &[String]) -> String {
    match *d {
        OrderDefect::Incomparable { a, b } => format!("{} and {} are incomparable", ids[a], ids[b]),
        OrderDefect::Intransitive { a, b, c } => format!(
            "{} ≿ {} and {} ≿ {} but not {} ≿ {}",
            ids[a], ids[b], ids[b], ids[c], ids[a], ids[c]
        ),
    }
}

fn composition_findings(aff: &relational::CompositionReport, ids: &[String]) -> serde_json::Value {
    serde_json::json!({
        "premises_hold": aff.premises_hold,
        "composed_transitive": aff.composed_transitive,
        "composed_linked": aff.composed_linked,
        "counterexample": aff.counterexample.map(|(a, b, c)| [&ids[a], &ids[b], &ids[c]]),
    })
}

/// Runs the CLI on `argv` (program name first) without touching the process.
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Output {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Output {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let source = source_path(&cli.command).to_string();
    match execute(cli.command) {
        Ok((code, report)) => Output {
            code,
            stdout: if cli.json {
                report.to_json()
            } else {
                report.to_text()
            },
            stderr: String::new(),
        },
        Err(e) => Output {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {source}: {e}\n"),
        },
    }
}

fn source_path(c: &Command) -> &str {
    match c {
        Command::Validate { input }
        | Command::Rank { input, .. }
        | Command::Compare { input, .. }
        | Command::Weights { input, .. }
        | Command::CheckLex { input } => &input.file,
        Command::Relcompose { file, .. }
        | Command::CheckAxioms { file }
        | Command::FuzzyRank { file }
        | Command::FuzzyCompare { file, .. }
        | Command::CheckTheorem { file, .. } => file,
    }
}
