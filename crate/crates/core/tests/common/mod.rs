//! Generators and independent oracles shared by the integration tests.
//!
//! The oracles here re-derive each answer from the raw inputs (integer
//! encodings, literal case chains over adjacency/membership entries) and
//! never call into the procedures they are used to check.

#![allow(dead_code)]

use lexdm::fuzzy::FuzzyRelation;
use lexdm::model::{ComparisonOutcome, DecisionMatrix, Verdict};
use lexdm::rational::{self, Rational};
use lexdm::relational::CrispRelation;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rows(rng: &mut impl Rng, n: usize, m: usize, max: i64) -> Vec<Vec<i64>> {
    (0..n)
        .map(|_| (0..m).map(|_| rng.gen_range(0..=max)).collect())
        .collect()
}

/// n in 1..=max_n, m in 1..=max_m, integer scores in [0, 9].
pub fn random_matrix(rng: &mut impl Rng, max_n: usize, max_m: usize) -> (Vec<Vec<i64>>, DecisionMatrix) {
    let n = rng.gen_range(1..=max_n);
    let m = rng.gen_range(1..=max_m);
    // low-valued scores make ties at early levels common
    let max = if rng.gen_bool(0.5) { 2 } else { 9 };
    let rows = random_rows(rng, n, m, max);
    let matrix = DecisionMatrix::from_integers(&rows, 0, 9).expect("valid");
    (rows, matrix)
}

/// Encodes a row of digits in [0, 9] as a base-10 integer, most important first.
pub fn mixed_radix_code(row: &[i64]) -> u64 {
    row.iter().fold(0u64, |acc, &d| acc * 10 + d as u64)
}

/// First differing position (1-based) of two digit strings.
pub fn first_difference(a: &[i64], b: &[i64]) -> Option<usize> {
    a.iter().zip(b).position(|(x, y)| x != y).map(|p| p + 1)
}

pub fn oracle_compare(a: &[i64], b: &[i64]) -> ComparisonOutcome {
    let (ca, cb) = (mixed_radix_code(a), mixed_radix_code(b));
    match ca.cmp(&cb) {
        std::cmp::Ordering::Greater => ComparisonOutcome::first(first_difference(a, b).unwrap()),
        std::cmp::Ordering::Less => ComparisonOutcome::second(first_difference(a, b).unwrap()),
        std::cmp::Ordering::Equal => ComparisonOutcome::EQUIVALENT,
    }
}

/// Random transitive relation: a random relation with random density,
/// closed under transitivity, usually reflexive.
pub fn random_transitive(rng: &mut impl Rng, n: usize) -> CrispRelation {
    let density = rng.gen_range(0.05..0.6);
    let reflexive = rng.gen_bool(0.8);
    let cells: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|l| (reflexive && i == l) || rng.gen_bool(density))
                .collect()
        })
        .collect();
    CrispRelation::new(cells).unwrap().transitive_closure()
}

pub fn random_relation(rng: &mut impl Rng, n: usize, density: f64) -> CrispRelation {
    let cells: Vec<Vec<bool>> = (0..n)
        .map(|_| (0..n).map(|_| rng.gen_bool(density)).collect())
        .collect();
    CrispRelation::new(cells).unwrap()
}

/// Literal case chain for crisp relation stacks, read straight off the
/// adjacency entries.
pub fn oracle_compose(relations: &[CrispRelation], i: usize, l: usize) -> ComparisonOutcome {
    for (j, r) in relations.iter().enumerate() {
        let forward = r.rows()[i][l];
        let backward = r.rows()[l][i];
        if forward && !backward {
            return ComparisonOutcome::first(j + 1);
        }
        if backward && !forward {
            return ComparisonOutcome::second(j + 1);
        }
        if !forward && !backward {
            return ComparisonOutcome::INCOMPARABLE;
        }
    }
    ComparisonOutcome::EQUIVALENT
}

/// Membership matrix with entries on the grid `k / steps`.
pub fn random_fuzzy(rng: &mut impl Rng, n: usize, steps: i64) -> FuzzyRelation {
    FuzzyRelation::new(
        (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| rational::ratio(rng.gen_range(0..=steps), steps))
                    .collect()
            })
            .collect(),
    )
    .unwrap()
}

/// Random fuzzy stack; with probability 1/2 some pairs are made symmetric
/// at a level so deeper levels get exercised.
pub fn random_fuzzy_stack(rng: &mut impl Rng, n: usize, m: usize, steps: i64) -> Vec<FuzzyRelation> {
    (0..m)
        .map(|_| {
            let r = random_fuzzy(rng, n, steps);
            if rng.gen_bool(0.5) {
                let rows = r.rows().to_vec();
                let sym: Vec<Vec<Rational>> = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|l| {
                                if (i + l) % 2 == 0 {
                                    rows[i.min(l)][i.max(l)].clone()
                                } else {
                                    rows[i][l].clone()
                                }
                            })
                            .collect()
                    })
                    .collect();
                FuzzyRelation::new(sym).unwrap()
            } else {
                r
            }
        })
        .collect()
}

/// Literal transcription of the fuzzy case chain from the raw memberships.
pub fn oracle_fuzzy(relations: &[FuzzyRelation], i: usize, l: usize) -> (Verdict, Option<usize>, Rational) {
    for (j, r) in relations.iter().enumerate() {
        let forward = r.get(i, l);
        let backward = r.get(l, i);
        if forward > backward {
            return (Verdict::FirstPreferred, Some(j + 1), forward - backward);
        }
        if backward > forward {
            return (Verdict::SecondPreferred, Some(j + 1), backward - forward);
        }
    }
    let degree = relations.iter().map(|r| r.get(i, l).clone()).min().unwrap();
    (Verdict::Equivalent, None, degree)
}

/// All outcomes of a crisp comparison function over `n` alternatives.
pub fn table(n: usize, f: impl Fn(usize, usize) -> ComparisonOutcome) -> Vec<Vec<ComparisonOutcome>> {
    (0..n).map(|i| (0..n).map(|l| f(i, l)).collect()).collect()
}

pub fn strict(o: ComparisonOutcome) -> bool {
    o.verdict == Verdict::FirstPreferred
}
