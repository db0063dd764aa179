//! Balanced vertices in decreasing binary trees.
//!
//! Trees on `[n]` are in bijection with permutations, so there are `n!` of
//! them and their generating function is `1 / (1 - x)`. Marking a balanced
//! vertex of rank `k` and deleting the root gives
//! `A_k' = 2 A_k / (1 - x) + R_k'`, where `R_k` is the (polynomial) generating
//! function of trees whose root is balanced of rank `k`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::limits::{
    check_extrapolation_range, check_precision, extrapolate, extrapolation_sizes, vertex_fraction_samples, ClosedForm,
    LimitConstant,
};
use crate::scalar::{factorials, rational, Binomials, Rational};
use crate::series::{eval_at_one, from_egf_counts, one_minus_x_squared, polynomial_of, solve_linear_ode, Series};
use crate::table::{
    balanced_columns, root_balanced_columns, CountTable, ProbMeaning, ProbSequence, TableKind, Variety,
};

/// Series order used for rank-`k` work: the root-balanced polynomial has
/// degree at most `2^(k+1) - 1`, the numerator `P_k` at most `2^(k+1) + 1`.
pub fn default_order(k: usize) -> usize {
    (1usize << (k + 1)) + 8
}

/// Degree bound of `P_k = A_k (1 - x)^2`.
pub fn numerator_degree_bound(k: usize) -> usize {
    (1usize << (k + 1)) + 1
}

pub fn root_balanced_table(k_max: usize, n_max: usize) -> Result<CountTable> {
    let binom = Binomials::new(n_max);
    let columns = root_balanced_columns(Variety::DecBinary.split_rule(), k_max, n_max, &binom)?;
    Ok(CountTable::from_columns(Variety::DecBinary, TableKind::RootBalanced, n_max, columns))
}

/// `2 / (1 - x)`
fn removal_factor(order: usize) -> Series<Rational> {
    Series::geometric(order).scale(&rational(2, 1))
}

pub fn balanced_table(k_max: usize, n_max: usize) -> Result<CountTable> {
    let roots = root_balanced_table(k_max, n_max)?;
    let root_columns: Vec<_> = (0..=k_max).map(|k| roots.column(k)).collect();
    let f: Vec<BigInt> = factorials(n_max).into_iter().map(|f| f * 2).collect();
    let columns = balanced_columns(&f, &root_columns, n_max, &Binomials::new(n_max))?;
    Ok(CountTable::from_columns(Variety::DecBinary, TableKind::AllBalanced, n_max, columns))
}

/// `A_k` to the given order, straight from the differential equation.
pub fn balanced_series(k: usize, order: usize) -> Result<Series<Rational>> {
    let binom = Binomials::new(order + 1);
    let columns = root_balanced_columns(Variety::DecBinary.split_rule(), k, order + 1, &binom)?;
    let r_prime = from_egf_counts(&columns[k]).derivative()?;
    solve_linear_ode(&removal_factor(order), &r_prime, Rational::zero(), order)
}

/// Numerator `P_k` with `A_k = P_k / (1 - x)^2`, certified to be a polynomial.
pub fn numerator_polynomial(k: usize) -> Result<Vec<Rational>> {
    let order = default_order(k);
    let a = balanced_series(k, order)?;
    polynomial_of(&a.mul(&one_minus_x_squared(order)), numerator_degree_bound(k))
}

/// Limiting probability that a random vertex is balanced of rank `k`.
pub fn c_exact(k: usize) -> Result<Rational> {
    let c = eval_at_one(&numerator_polynomial(k)?);
    if c <= Rational::zero() {
        return Err(Error::Inconsistent(format!("limit constant for rank {k} is not positive")));
    }
    Ok(c)
}

/// Exact `c_0..=c_k_max`, each paired with an estimate extrapolated from
/// sizes up to `n_max`.
pub fn limit_constants_db(k_max: usize, precision_digits: usize, n_max: usize, levels: usize) -> Result<Vec<LimitConstant>> {
    check_precision(precision_digits)?;
    check_extrapolation_range(n_max, levels)?;
    let sizes = extrapolation_sizes(n_max, levels);
    let table = balanced_table(k_max, n_max)?;
    let trees = factorials(n_max);
    (0..=k_max)
        .map(|k| {
            let samples = vertex_fraction_samples(&table.column(k), &trees, &sizes);
            let empirical = extrapolate(&samples, levels, precision_digits)?;
            Ok(LimitConstant::new(&format!("c_{k}"), ClosedForm::rational(c_exact(k)?), empirical))
        })
        .collect()
}

/// `(1/3) / (1 - x)^2 + x/3 - 1/3`
pub fn leaf_closed_form(order: usize) -> Series<Rational> {
    let double_pole = Series::geometric(order).mul(&Series::geometric(order));
    double_pole
        .scale(&rational(1, 3))
        .add(&Series::x(order).scale(&rational(1, 3)))
        .sub(&Series::constant(rational(1, 3), order))
}

/// `(x^5/5 - x^3 + x^2) / (1 - x)^2`
pub fn rank_one_closed_form(order: usize) -> Result<Series<Rational>> {
    let num = Series::from_poly(
        vec![
            Rational::zero(),
            Rational::zero(),
            rational(1, 1),
            rational(-1, 1),
            Rational::zero(),
            rational(1, 5),
        ],
        order.max(5),
    )?
    .truncate(order);
    num.div(&one_minus_x_squared(order))
}

/// Root probabilities `p_{n,k}` for every rank and their sum `p_n`.
#[derive(Debug, Clone)]
pub struct RootProbabilities {
    /// Entry `k` is the sequence `p_{n,k}`, `n = 1..=n_max`.
    pub per_rank: Vec<ProbSequence>,
    pub aggregate: ProbSequence,
}

impl RootProbabilities {
    pub fn p(&self, n: usize, k: usize) -> Rational {
        if n == 0 {
            return Rational::one();
        }
        match self.per_rank.get(k) {
            Some(seq) => seq.get(n).clone(),
            None => Rational::zero(),
        }
    }
}

/// `p_{n,k} = r_{n,k} / n!` and `p_n`, checked against the recurrence on
/// the position of the maximum entry.
///
/// Ranks are always extended to `n_max - 1` so that `p_n` sums every rank.
pub fn root_prob_table(k_max: usize, n_max: usize) -> Result<RootProbabilities> {
    let k_eff = k_max.max(n_max.saturating_sub(1));
    let roots = root_balanced_table(k_eff, n_max)?;
    let fact = factorials(n_max);
    let per_rank: Vec<ProbSequence> = (0..=k_eff)
        .map(|k| {
            let values = (1..=n_max).map(|n| Rational::new(roots.get(n, k), fact[n].clone())).collect();
            ProbSequence::new(ProbMeaning::RootBalancedRank(k), values)
        })
        .collect();
    let aggregate = root_prob_aggregate(&roots, &fact);

    let recurrence = root_prob_recurrence(k_eff, n_max);
    for (k, seq) in per_rank.iter().enumerate() {
        for n in 1..=n_max {
            if seq.get(n) != &recurrence[k][n] {
                return Err(Error::Inconsistent(format!(
                    "root probability p({n},{k}) differs between count ratio and recurrence"
                )));
            }
        }
    }

    for n in 1..=n_max {
        let total = per_rank.iter().fold(Rational::zero(), |acc, seq| acc + seq.get(n));
        if &total != aggregate.get(n) {
            return Err(Error::Inconsistent(format!("p({n}) differs from the sum of its ranks")));
        }
    }
    Ok(RootProbabilities { per_rank, aggregate })
}

/// `p_n = (sum_k r_{n,k}) / n!` over every rank present in `roots`.
fn root_prob_aggregate(roots: &CountTable, fact: &[BigInt]) -> ProbSequence {
    let values = (1..=roots.n_max)
        .map(|n| Rational::new(roots.row_sum(n), fact[n].clone()))
        .collect();
    ProbSequence::new(ProbMeaning::RootBalanced, values)
}

/// `p_{n,k}` from `p_{n,k} = (sum_i p_{i,k-1} p_{n-1-i,k-1}) / n`, with the
/// empty subtree convention `p_{0,k} = 1`. Indexed `[k][n]`, `n = 0..=n_max`.
pub fn root_prob_recurrence(k_max: usize, n_max: usize) -> Vec<Vec<Rational>> {
    let mut table: Vec<Vec<Rational>> = Vec::with_capacity(k_max + 1);
    let mut leaf = vec![Rational::zero(); n_max + 1];
    leaf[0] = Rational::one();
    if n_max >= 1 {
        leaf[1] = Rational::one();
    }
    table.push(leaf);
    for k in 1..=k_max {
        let prev = &table[k - 1];
        let mut col = vec![Rational::zero(); n_max + 1];
        col[0] = Rational::one();
        // n = 1 is a leaf and never has rank k >= 1.
        for (n, slot) in col.iter_mut().enumerate().skip(2) {
            // Terms i and n-1-i coincide; sum over a shared denominator and
            // reduce once.
            let m = n - 1;
            let mut num = BigInt::zero();
            let mut den = BigInt::one();
            for i in 0..=m / 2 {
                let (a, b) = (&prev[i], &prev[m - i]);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                let mut term_num = a.numer() * b.numer();
                if i != m - i {
                    term_num *= 2;
                }
                let term_den = a.denom() * b.denom();
                let (q, r) = den.div_rem(&term_den);
                if r.is_zero() {
                    num += term_num * q;
                } else {
                    let lcm = den.lcm(&term_den);
                    num = num * (&lcm / &den) + term_num * (&lcm / &term_den);
                    den = lcm;
                }
            }
            *slot = Rational::new(num, den * BigInt::from(n));
        }
        table.push(col);
    }
    table
}

/// `P_n`, the probability that a uniformly random vertex of a uniformly random
/// tree on `[n]` is balanced, from
/// `P_n = (p_n + (2/n) sum_{i<n} i P_i) / n`.
pub fn vertex_prob_sequence(n_max: usize) -> Result<ProbSequence> {
    let roots = root_balanced_table(n_max.saturating_sub(1), n_max)?;
    let aggregate = root_prob_aggregate(&roots, &factorials(n_max));
    Ok(vertex_prob_from_roots(&aggregate))
}

pub(crate) fn vertex_prob_from_roots(root_probs: &ProbSequence) -> ProbSequence {
    let n_max = root_probs.n_max();
    let mut values: Vec<Rational> = Vec::with_capacity(n_max);
    let mut weighted = Rational::zero();
    for n in 1..=n_max {
        let nn = BigInt::from(n);
        let pn = (root_probs.get(n) + &weighted * rational(2, 1) / &nn) / &nn;
        weighted += &pn * &nn;
        values.push(pn);
    }
    ProbSequence::new(ProbMeaning::VertexBalanced, values)
}
