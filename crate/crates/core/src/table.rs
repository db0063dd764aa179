//! Count tables shared by the three tree varieties.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{Binomials, Rational};
use crate::series::solve_linear_ode_counts;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variety {
    DecBinary,
    NonPlane12,
    Plane12,
}

impl Variety {
    pub const ALL: [Variety; 3] = [Variety::DecBinary, Variety::NonPlane12, Variety::Plane12];

    pub fn name(self) -> &'static str {
        match self {
            Variety::DecBinary => "dec-binary",
            Variety::NonPlane12 => "nonplane12",
            Variety::Plane12 => "plane12",
        }
    }

    /// Counting rule for trees whose root is balanced of a given rank.
    pub(crate) fn split_rule(self) -> SplitRule {
        match self {
            Variety::DecBinary => SplitRule { single_child: 2, halve_pairs: false },
            Variety::NonPlane12 => SplitRule { single_child: 1, halve_pairs: true },
            Variety::Plane12 => SplitRule { single_child: 1, halve_pairs: false },
        }
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Variety {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dec-binary" => Ok(Variety::DecBinary),
            "nonplane12" => Ok(Variety::NonPlane12),
            "plane12" => Ok(Variety::Plane12),
            other => Err(Error::InvalidArgument(format!("unknown variety `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    /// Trees whose root is balanced of rank `k`.
    RootBalanced,
    /// Balanced vertices of rank `k`, summed over all trees.
    AllBalanced,
}

/// Exact table indexed by tree size `n` (1..=n_max) and rank `k` (0..=k_max).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub variety: Variety,
    pub kind: TableKind,
    pub n_max: usize,
    pub k_max: usize,
    /// Row `n` holds ranks `0..=k_max`; row 0 is all zeros.
    counts: Vec<Vec<BigInt>>,
}

impl CountTable {
    pub(crate) fn from_columns(variety: Variety, kind: TableKind, n_max: usize, columns: Vec<Vec<BigInt>>) -> Self {
        let k_max = columns.len() - 1;
        let counts = (0..=n_max)
            .map(|n| columns.iter().map(|col| col[n].clone()).collect())
            .collect();
        CountTable { variety, kind, n_max, k_max, counts }
    }

    /// Count for size `n` and rank `k`; zero outside the stored range.
    pub fn get(&self, n: usize, k: usize) -> BigInt {
        if n > self.n_max || k > self.k_max {
            return BigInt::zero();
        }
        self.counts[n][k].clone()
    }

    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.counts[n]
    }

    pub fn column(&self, k: usize) -> Vec<BigInt> {
        self.counts.iter().map(|row| row[k].clone()).collect()
    }

    pub fn row_sum(&self, n: usize) -> BigInt {
        self.counts[n].iter().sum()
    }
}

/// How a root of rank `k` is assembled from subtrees of rank `k - 1`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SplitRule {
    /// Ways to attach a lone child (two sides for decreasing binary trees).
    pub single_child: u32,
    /// Unordered children count each two-block split twice.
    pub halve_pairs: bool,
}

/// Root-balanced counts `r[k][n]` for `k <= k_max`, `n <= n_max`.
///
/// A root is balanced of rank `k >= 1` exactly when every child is a
/// balanced root of rank `k - 1`; the two-child case picks the label set of
/// one child among the `n - 1` non-root labels.
pub(crate) fn root_balanced_columns(
    rule: SplitRule,
    k_max: usize,
    n_max: usize,
    binom: &Binomials,
) -> Result<Vec<Vec<BigInt>>> {
    assert!(binom.n_max() + 1 >= n_max);
    let mut columns: Vec<Vec<BigInt>> = Vec::with_capacity(k_max + 1);
    let mut leaf = vec![BigInt::zero(); n_max + 1];
    if n_max >= 1 {
        leaf[1] = BigInt::one();
    }
    columns.push(leaf);
    for k in 1..=k_max {
        let prev = &columns[k - 1];
        // A rank k-1 root needs at least k vertices.
        let cells: Result<Vec<BigInt>> = (0..=n_max)
            .into_par_iter()
            .map(|n| {
                if n < k + 1 {
                    return Ok(BigInt::zero());
                }
                let mut pairs = BigInt::zero();
                for i in k..n.saturating_sub(k) {
                    let j = n - 1 - i;
                    if prev[i].is_zero() || prev[j].is_zero() {
                        continue;
                    }
                    pairs += binom.get(n - 1, i) * &prev[i] * &prev[j];
                }
                if rule.halve_pairs {
                    let (half, rem) = pairs.div_rem(&BigInt::from(2));
                    if !rem.is_zero() {
                        return Err(Error::NonIntegral { what: "halved two-child root count", n });
                    }
                    pairs = half;
                }
                Ok(&prev[n - 1] * rule.single_child + pairs)
            })
            .collect();
        columns.push(cells?);
    }
    Ok(columns)
}

/// Solves `A_k' = f A_k + R_k'` for every rank column and returns the counts.
///
/// `f` must have order at least `n_max - 1`. Columns are independent and are
/// solved in parallel.
/// Solves `A_k' = f A_k + R_k'` for every root column, all in exponential
/// counts; `f_counts` needs entries `0..n_max`.
pub(crate) fn balanced_columns(
    f_counts: &[BigInt],
    root_columns: &[Vec<BigInt>],
    n_max: usize,
    binom: &Binomials,
) -> Result<Vec<Vec<BigInt>>> {
    root_columns
        .par_iter()
        .map(|root| {
            // Counts of R_k' are the root counts shifted down by one.
            let r_prime = &root[1..=n_max];
            solve_linear_ode_counts(f_counts, r_prime, BigInt::zero(), n_max, binom)
        })
        .collect()
}

/// What a [`ProbSequence`] measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbMeaning {
    /// `p_n`: the root of a random tree is balanced.
    RootBalanced,
    /// `P_n`: a random vertex of a random tree is balanced.
    VertexBalanced,
    /// `p_{n,k}`: the root is balanced of rank `k`.
    RootBalancedRank(usize),
}

/// Exact probabilities indexed by `n = 1, 2, ...`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbSequence {
    pub meaning: ProbMeaning,
    values: Vec<Rational>,
}

impl ProbSequence {
    pub fn new(meaning: ProbMeaning, values: Vec<Rational>) -> Self {
        ProbSequence { meaning, values }
    }

    /// Value at size `n >= 1`.
    pub fn get(&self, n: usize) -> &Rational {
        &self.values[n - 1]
    }

    pub fn n_max(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// First `n` with `value(n + 1) > value(n)`, if any.
    pub fn first_increase(&self) -> Option<usize> {
        self.values.windows(2).position(|w| w[1] > w[0]).map(|i| i + 1)
    }

    pub fn is_weakly_decreasing(&self) -> bool {
        self.first_increase().is_none()
    }
}
