//! Balanced vertices in non-plane 1-2 trees (unordered children, at most two).
//!
//! These trees are counted by the Euler numbers with generating function
//! `y = tan x + sec x`, and the balanced-vertex series satisfy
//! `A_k' = y A_k + R_k'`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Result;
use crate::limits::{
    check_extrapolation_range, check_precision, extrapolate, extrapolation_sizes, vertex_fraction_samples,
    LimitConstant, NamedConstant,
};
use crate::scalar::{rational, Binomials, Rational};
use crate::series::{riccati_counts, solve_riccati_like, trig_series, RiccatiKind, Series, TrigKind};
use crate::table::{balanced_columns, root_balanced_columns, CountTable, TableKind, Variety};

/// `tan x + sec x` to the given order.
pub fn euler_series(order: usize) -> Series<Rational> {
    solve_riccati_like(RiccatiKind::EulerY, order)
}

/// `E_0, ..., E_{n_max}`.
pub fn euler_numbers(n_max: usize) -> Result<Vec<BigInt>> {
    riccati_counts(RiccatiKind::EulerY, n_max, &Binomials::new(n_max))
}

pub fn root_balanced_table_np(k_max: usize, n_max: usize) -> Result<CountTable> {
    let binom = Binomials::new(n_max);
    let columns = root_balanced_columns(Variety::NonPlane12.split_rule(), k_max, n_max, &binom)?;
    Ok(CountTable::from_columns(Variety::NonPlane12, TableKind::RootBalanced, n_max, columns))
}

pub fn balanced_table_np(k_max: usize, n_max: usize) -> Result<CountTable> {
    let roots = root_balanced_table_np(k_max, n_max)?;
    let root_columns: Vec<_> = (0..=k_max).map(|k| roots.column(k)).collect();
    let y = euler_numbers(n_max)?;
    let columns = balanced_columns(&y, &root_columns, n_max, &Binomials::new(n_max))?;
    Ok(CountTable::from_columns(Variety::NonPlane12, TableKind::AllBalanced, n_max, columns))
}

/// Outcome of comparing an ODE-route series with a closed-form expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormReport {
    pub label: String,
    pub order: usize,
    pub first_mismatch: Option<usize>,
}

impl ClosedFormReport {
    pub(crate) fn compare(label: &str, ode: &Series<Rational>, closed: &Series<Rational>, order: usize) -> Self {
        let first_mismatch = (0..=order).find(|&i| ode.coeff(i) != closed.coeff(i));
        ClosedFormReport { label: label.to_string(), order, first_mismatch }
    }

    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Balanced series for rank `k` by the differential equation, to `order`.
pub fn balanced_series_np(k: usize, order: usize) -> Result<Series<Rational>> {
    let binom = Binomials::new(order + 1);
    let columns = root_balanced_columns(Variety::NonPlane12.split_rule(), k, order + 1, &binom)?;
    let r_prime = crate::series::from_egf_counts(&columns[k]).derivative()?;
    crate::series::solve_linear_ode(&euler_series(order), &r_prime, Rational::zero(), order)
}

/// `(x - 1 + cos x) / (1 - sin x)`
pub fn leaf_closed_form_np(order: usize) -> Result<Series<Rational>> {
    let one = rational(1, 1);
    let cos = trig_series(TrigKind::Cos, &one, order)?;
    let sin = trig_series(TrigKind::Sin, &one, order)?;
    let num = Series::x(order).sub(&Series::constant(one.clone(), order)).add(&cos);
    let den = Series::constant(one, order).sub(&sin);
    num.div(&den)
}

/// `(1/6) ((3x^2 + 6x - 6) cos x - (6x + 6) sin x + x^3 + 3x^2 + 6) / (1 - sin x)`
pub fn rank_one_closed_form_np(order: usize) -> Result<Series<Rational>> {
    let one = rational(1, 1);
    let cos = trig_series(TrigKind::Cos, &one, order)?;
    let sin = trig_series(TrigKind::Sin, &one, order)?;
    let poly = |c: &[i64]| -> Result<Series<Rational>> {
        let coeffs: Vec<Rational> = c.iter().map(|&v| rational(v, 1)).collect();
        let len = coeffs.len();
        Ok(Series::from_poly(coeffs, order.max(len - 1))?.truncate(order))
    };
    let num = poly(&[-6, 6, 3])?
        .mul(&cos)
        .sub(&poly(&[6, 6])?.mul(&sin))
        .add(&poly(&[6, 0, 3, 1])?);
    let den = Series::constant(one, order).sub(&sin);
    Ok(num.div(&den)?.scale(&rational(1, 6)))
}

/// Checks the ODE route against both closed forms through `order`.
pub fn closed_form_check_np(order: usize) -> Result<Vec<ClosedFormReport>> {
    let leaves = ClosedFormReport::compare(
        "non-plane leaves",
        &balanced_series_np(0, order)?,
        &leaf_closed_form_np(order)?,
        order,
    );
    let rank_one = ClosedFormReport::compare(
        "non-plane rank 1",
        &balanced_series_np(1, order)?,
        &rank_one_closed_form_np(order)?,
        order,
    );
    Ok(vec![leaves, rank_one])
}

/// Limit constants for ranks 0, 1, 2 with their extrapolated estimates from
/// sizes up to `n_max`.
pub fn limit_constants_np(precision_digits: usize, n_max: usize, levels: usize) -> Result<Vec<LimitConstant>> {
    check_precision(precision_digits)?;
    check_extrapolation_range(n_max, levels)?;
    let sizes = extrapolation_sizes(n_max, levels);
    let table = balanced_table_np(2, n_max)?;
    let euler = euler_numbers(n_max)?;
    let named = [NamedConstant::C0Np, NamedConstant::C1Np, NamedConstant::C2Np];
    named
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let samples = vertex_fraction_samples(&table.column(k), &euler, &sizes);
            let empirical = extrapolate(&samples, levels, precision_digits)?;
            Ok(LimitConstant::new(c.name(), c.closed_form(), empirical))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::egf_counts;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn euler_examples() {
        let e = euler_numbers(8).unwrap();
        assert_eq!(e, ints(&[1, 1, 1, 2, 5, 16, 61, 272, 1385]));
    }

    #[test]
    fn integer_and_series_routes_agree() {
        assert_eq!(euler_numbers(60).unwrap(), egf_counts(&euler_series(60), "Euler").unwrap());
        let table = balanced_table_np(3, 30).unwrap();
        for k in 0..=3 {
            let series = egf_counts(&balanced_series_np(k, 30).unwrap(), "balanced").unwrap();
            assert_eq!(table.column(k), series, "rank {k}");
        }
    }

    #[test]
    fn root_balanced_examples() {
        let t = root_balanced_table_np(1, 6).unwrap();
        assert_eq!(t.get(1, 0), BigInt::from(1));
        assert_eq!(t.get(2, 1), BigInt::from(1));
        assert_eq!(t.get(3, 1), BigInt::from(1));
        assert_eq!(t.get(4, 1), BigInt::from(0));
    }

    #[test]
    fn balanced_examples() {
        let t = balanced_table_np(1, 4).unwrap();
        assert_eq!(t.column(0)[1..], ints(&[1, 1, 3, 9])[..]);
        assert_eq!(t.get(1, 1), BigInt::from(0));
        let closed = rank_one_closed_form_np(4).unwrap();
        let from_closed = egf_counts(&closed, "closed").unwrap();
        assert_eq!(t.get(4, 1), from_closed[4]);
    }

    #[test]
    fn closed_forms_match() {
        for report in closed_form_check_np(40).unwrap() {
            assert!(report.passed(), "{report:?}");
        }
        for report in closed_form_check_np(0).unwrap() {
            assert!(report.passed());
        }
    }

    #[test]
    fn vertex_bounds() {
        let t = balanced_table_np(5, 8).unwrap();
        let e = euler_numbers(8).unwrap();
        for n in 1..=3 {
            assert_eq!(t.row_sum(n), &e[n] * BigInt::from(n));
        }
        for n in 4..=8 {
            assert!(t.row_sum(n) < &e[n] * BigInt::from(n));
        }
    }
}
