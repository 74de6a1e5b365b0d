//! Scalar (weighted-sum) representation of the lexicographic order.
//!
//! Two weight schemes are available:
//!
//! * [`Scheme::MixedRadix`]: each criterion is a digit of a mixed-radix
//!   number whose radix is the number of distinguishable scale points of
//!   the less important criteria. The convolution order then coincides
//!   with the cascade order.
//! * [`Scheme::PaperLiteral`]: `λ_j = d_j^(j-1)`. Kept for reference; it
//!   puts the largest weight on the least important criterion and carries
//!   no equivalence guarantee.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{CriterionSpec, DecisionMatrix};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    PaperLiteral,
    #[default]
    MixedRadix,
}

impl FromStr for Scheme {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "paper_literal" | "paper-literal" => Ok(Scheme::PaperLiteral),
            "mixed_radix" | "mixed-radix" => Ok(Scheme::MixedRadix),
            _ => Err(format!("unknown weight scheme `{s}`")),
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::PaperLiteral => "paper_literal",
            Scheme::MixedRadix => "mixed_radix",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RangeMode {
    #[default]
    Declared,
    Observed,
}

impl FromStr for RangeMode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "declared" => Ok(RangeMode::Declared),
            "observed" => Ok(RangeMode::Observed),
            _ => Err(format!("unknown range mode `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    pub weights: Vec<Rational>,
    pub scheme: Scheme,
    /// Diapasons the weights were built from.
    pub diapasons: Vec<Rational>,
    /// Smallest possible non-zero difference between two scores of each
    /// criterion (1 for integer columns).
    pub gaps: Vec<Rational>,
}

impl WeightVector {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `λ_j·δ_j > Σ_{k>j} λ_k·d_k` for every `j`: a one-gap win at level `j`
    /// outweighs any combination of differences at the lower levels.
    pub fn satisfies_dominance(&self) -> bool {
        (0..self.len()).all(|j| {
            let tail: Rational = (j + 1..self.len())
                .map(|k| &self.weights[k] * &self.diapasons[k])
                .sum();
            &self.weights[j] * &self.gaps[j] > tail
        })
    }
}

pub fn diapason(matrix: &DecisionMatrix, j: usize, mode: RangeMode) -> Result<Rational> {
    let c = matrix.criteria().get(j).ok_or(Error::IndexOutOfRange {
        index: j,
        size: matrix.m(),
    })?;
    Ok(match mode {
        RangeMode::Declared => &c.scale_max - &c.scale_min,
        RangeMode::Observed => {
            let max = matrix.column(j).max().cloned().unwrap_or_else(Rational::zero);
            let min = matrix.column(j).min().cloned().unwrap_or_else(Rational::zero);
            max - min
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LexConditionViolation {
    /// 1-based level of the more important criterion.
    pub level: usize,
    pub min: String,
    pub next_max: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LexConditionReport {
    pub holds: bool,
    pub first_violation: Option<LexConditionViolation>,
}

/// Lower scale bound with zero left out. A zero lower bound is replaced by
/// the first scale rank above it: 1, or `scale_max` when the scale ends below 1.
pub fn effective_min(c: &CriterionSpec) -> Rational {
    if c.scale_min.is_zero() {
        Rational::one().min(c.scale_max.clone())
    } else {
        c.scale_min.clone()
    }
}

/// Sufficient condition for a group of criteria to be lexicographically
/// ordered: every criterion's lowest non-zero scale value exceeds the
/// highest value of the next, less important criterion.
pub fn check_lex_condition(matrix: &DecisionMatrix) -> LexConditionReport {
    let first_violation = matrix.criteria().windows(2).enumerate().find_map(|(j, w)| {
        let min = effective_min(&w[0]);
        (min <= w[1].scale_max).then(|| LexConditionViolation {
            level: j + 1,
            min: rational::format(&min),
            next_max: rational::format(&w[1].scale_max),
        })
    });
    LexConditionReport {
        holds: first_violation.is_none(),
        first_violation,
    }
}

/// `1 / lcm(denominators)` of a column: every difference between two of its
/// scores is an integer multiple of this.
pub fn score_gap(matrix: &DecisionMatrix, j: usize) -> Rational {
    Rational::new(BigInt::one(), rational::lcm_of_denominators(matrix.column(j)))
}

pub fn lex_weights(matrix: &DecisionMatrix, scheme: Scheme, mode: RangeMode) -> Result<WeightVector> {
    let m = matrix.m();
    let diapasons = (0..m)
        .map(|j| diapason(matrix, j, mode))
        .collect::<Result<Vec<_>>>()?;
    let gaps: Vec<Rational> = (0..m).map(|j| score_gap(matrix, j)).collect();
    let name = |j: usize| matrix.criteria()[j].name.clone();

    let weights = match scheme {
        Scheme::PaperLiteral => {
            let w: Vec<Rational> = diapasons
                .iter()
                .enumerate()
                .map(|(j, d)| num_traits::pow(d.clone(), j))
                .collect();
            if let Some(j) = w.iter().position(|x| !x.is_positive()) {
                return Err(Error::ZeroWeight(name(j)));
            }
            w
        }
        Scheme::MixedRadix => {
            if mode == RangeMode::Observed {
                if let Some(j) = diapasons.iter().position(Zero::is_zero) {
                    return Err(Error::ZeroDiapason(name(j)));
                }
            }
            // radix_j = number of gap steps across criterion j's range, plus one
            let mut place = vec![Rational::one(); m];
            for j in (0..m.saturating_sub(1)).rev() {
                place[j] = &place[j + 1] * (&diapasons[j + 1] / &gaps[j + 1] + Rational::one());
            }
            place.iter().zip(&gaps).map(|(p, g)| p / g).collect()
        }
    };
    Ok(WeightVector {
        weights,
        scheme,
        diapasons,
        gaps,
    })
}

fn check_len(matrix: &DecisionMatrix, weights: &WeightVector) -> Result<()> {
    if weights.len() != matrix.m() {
        return Err(Error::SizeMismatch {
            expected: matrix.m(),
            found: weights.len(),
        });
    }
    Ok(())
}

pub fn convolve_at(matrix: &DecisionMatrix, weights: &WeightVector, i: usize) -> Result<Rational> {
    check_len(matrix, weights)?;
    Ok(weights
        .weights
        .iter()
        .zip(matrix.row(i))
        .map(|(w, k)| w * k)
        .sum())
}

pub fn convolve(matrix: &DecisionMatrix, weights: &WeightVector, id: &str) -> Result<Rational> {
    convolve_at(matrix, weights, matrix.index_of(id)?)
}

pub fn convolve_all(matrix: &DecisionMatrix, weights: &WeightVector) -> Result<Vec<Rational>> {
    (0..matrix.n()).map(|i| convolve_at(matrix, weights, i)).collect()
}

pub fn argmax_convolution(matrix: &DecisionMatrix, weights: &WeightVector) -> Result<Vec<String>> {
    let values = convolve_all(matrix, weights)?;
    let Some(best) = values.iter().max() else {
        return Ok(Vec::new());
    };
    Ok(values
        .iter()
        .zip(matrix.alternatives())
        .filter(|(v, _)| *v == best)
        .map(|(_, id)| id.clone())
        .collect())
}

/// Rescales every column so its maximum becomes `a`: `K · a / max K`.
/// Scales become `[min(0, scale_min · a / max), a]`.
pub fn normalize(matrix: &DecisionMatrix, a: &Rational) -> Result<DecisionMatrix> {
    if !a.is_positive() {
        return Err(Error::NonPositiveScale);
    }
    let mut out = matrix.clone();
    for j in 0..matrix.m() {
        let c = &matrix.criteria()[j];
        let max = matrix.column(j).max().cloned().unwrap_or_else(Rational::zero);
        if !max.is_positive() {
            return Err(Error::NonPositiveMaximum(c.name.clone()));
        }
        let factor = a / &max;
        let low = (&c.scale_min * &factor).min(Rational::zero());
        out = out.map_column(j, (low, a.clone()), |v| v * &factor)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn matrix(rows: &[Vec<i64>], lo: i64, hi: i64) -> DecisionMatrix {
        DecisionMatrix::from_integers(rows, lo, hi).unwrap()
    }

    fn with_scales(scales: &[(i64, i64)]) -> DecisionMatrix {
        let criteria = scales
            .iter()
            .enumerate()
            .map(|(j, &(lo, hi))| CriterionSpec::new(format!("k{}", j + 1), int(lo), int(hi), j + 1))
            .collect();
        let row = scales.iter().map(|&(_, hi)| int(hi)).collect();
        DecisionMatrix::new(vec!["x".into()], criteria, vec![row]).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn diapasons() {
        let m = matrix(&[vec![2], vec![5], vec![3]], 0, 10);
        assert_eq!(diapason(&m, 0, RangeMode::Declared).unwrap(), int(10));
        assert_eq!(diapason(&m, 0, RangeMode::Observed).unwrap(), int(3));
        let flat = matrix(&[vec![4], vec![4]], 0, 10);
        assert_eq!(diapason(&flat, 0, RangeMode::Observed).unwrap(), int(0));
        assert!(diapason(&m, 1, RangeMode::Declared).is_err());
    }

    #[test]
    fn lex_condition_examples() {
        assert!(check_lex_condition(&with_scales(&[(10, 19), (1, 9)])).holds);
        let r = check_lex_condition(&with_scales(&[(0, 5), (0, 5)]));
        assert!(!r.holds);
        assert_eq!(r.first_violation.unwrap().level, 1);
        let r = check_lex_condition(&with_scales(&[(0, 20), (1, 9)]));
        let v = r.first_violation.unwrap();
        assert_eq!((v.level, v.min.as_str(), v.next_max.as_str()), (1, "1", "9"));
        assert!(check_lex_condition(&with_scales(&[(0, 3)])).holds);
        let r = check_lex_condition(&with_scales(&[(100, 200), (10, 99), (0, 10)]));
        assert_eq!(r.first_violation.unwrap().level, 2);
    }

    #[test]
    fn mixed_radix_base_ten() {
        let m = matrix(&[vec![0, 0, 0]], 0, 9);
        let w = lex_weights(&m, Scheme::MixedRadix, RangeMode::Declared).unwrap();
        assert_eq!(w.weights, ints(&[100, 10, 1]));
        assert!(w.satisfies_dominance());
    }

    #[test]
    fn paper_literal_powers() {
        let m = matrix(&[vec![0, 0, 0]], 0, 5);
        let w = lex_weights(&m, Scheme::PaperLiteral, RangeMode::Declared).unwrap();
        assert_eq!(w.weights, ints(&[1, 5, 25]));
        assert!(!w.satisfies_dominance());
    }

    #[test]
    fn single_criterion_unit_weight() {
        let m = matrix(&[vec![3]], 0, 7);
        for scheme in [Scheme::MixedRadix, Scheme::PaperLiteral] {
            assert_eq!(
                lex_weights(&m, scheme, RangeMode::Declared).unwrap().weights,
                ints(&[1])
            );
        }
    }

    #[test]
    fn observed_zero_diapason_errors() {
        let m = matrix(&[vec![1, 4], vec![2, 4]], 0, 9);
        assert!(matches!(
            lex_weights(&m, Scheme::MixedRadix, RangeMode::Observed),
            Err(Error::ZeroDiapason(name)) if name == "k2"
        ));
    }

    #[test]
    fn fractional_scores_use_gap() {
        let criteria = vec![
            CriterionSpec::new("a", int(0), int(1), 1),
            CriterionSpec::new("b", int(0), int(2), 2),
        ];
        let scores = vec![
            vec![ratio(1, 2), int(0)],
            vec![int(0), ratio(3, 2)],
            vec![ratio(1, 2), int(2)],
        ];
        let m = DecisionMatrix::new(vec!["p".into(), "q".into(), "r".into()], criteria, scores).unwrap();
        let w = lex_weights(&m, Scheme::MixedRadix, RangeMode::Declared).unwrap();
        assert_eq!(w.gaps, vec![ratio(1, 2), ratio(1, 2)]);
        // radix of b = 2 / (1/2) + 1 = 5
        assert_eq!(w.weights, vec![int(10), int(2)]);
        assert!(w.satisfies_dominance());
        assert_eq!(argmax_convolution(&m, &w).unwrap(), vec!["r"]);
    }

    #[test]
    fn convolve_examples() {
        let m = matrix(&[vec![2, 5], vec![0, 0]], 0, 9);
        let w = WeightVector {
            weights: ints(&[10, 1]),
            scheme: Scheme::MixedRadix,
            diapasons: ints(&[9, 9]),
            gaps: ints(&[1, 1]),
        };
        assert_eq!(convolve(&m, &w, "x1").unwrap(), int(25));
        assert_eq!(convolve(&m, &w, "x2").unwrap(), int(0));
        let single = matrix(&[vec![7]], 0, 9);
        let w1 = lex_weights(&single, Scheme::MixedRadix, RangeMode::Declared).unwrap();
        assert_eq!(convolve(&single, &w1, "x1").unwrap(), int(7));
        assert!(matches!(
            convolve(&single, &w, "x1"),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn argmax_examples() {
        let m = matrix(&[vec![1, 1], vec![1, 2], vec![0, 9]], 0, 9);
        let w = WeightVector {
            weights: ints(&[10, 1]),
            scheme: Scheme::MixedRadix,
            diapasons: ints(&[9, 9]),
            gaps: ints(&[1, 1]),
        };
        assert_eq!(convolve_all(&m, &w).unwrap(), ints(&[11, 12, 9]));
        assert_eq!(argmax_convolution(&m, &w).unwrap(), vec!["x2"]);
        let same = matrix(&[vec![3, 3], vec![3, 3]], 0, 9);
        assert_eq!(argmax_convolution(&same, &w).unwrap(), vec!["x1", "x2"]);
    }

    #[test]
    fn normalize_examples() {
        let m = matrix(&[vec![2], vec![4]], 0, 10);
        let n = normalize(&m, &int(10)).unwrap();
        assert_eq!(n.scores(), &[ints(&[5]), ints(&[10])]);
        assert_eq!(
            (
                n.criteria()[0].scale_min.clone(),
                n.criteria()[0].scale_max.clone()
            ),
            (int(0), int(10))
        );

        let maxed = matrix(&[vec![3], vec![10]], 0, 10);
        assert_eq!(normalize(&maxed, &int(10)).unwrap().scores(), maxed.scores());

        let zero = matrix(&[vec![0], vec![0]], 0, 10);
        assert!(matches!(normalize(&zero, &int(10)), Err(Error::NonPositiveMaximum(c)) if c == "k1"));
        assert!(normalize(&m, &int(0)).is_err());
    }
}
