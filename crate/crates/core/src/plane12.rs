//! Balanced vertices in plane 1-2 trees (ordered children, at most two, no
//! side tag on an only child).

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Result;
use crate::limits::{
    check_extrapolation_range, check_precision, extrapolate, extrapolation_sizes, vertex_fraction_samples,
    LimitConstant, NamedConstant,
};
use crate::nonplane12::ClosedFormReport;
use crate::scalar::{rational, Binomials, Rational};
use crate::series::{
    from_egf_counts, riccati_counts, solve_linear_ode, solve_riccati_like, trig_series, RiccatiKind, Series,
    TrigKind,
};
use crate::table::{balanced_columns, root_balanced_columns, CountTable, TableKind, Variety};

pub fn plane_series(order: usize) -> Series<Rational> {
    solve_riccati_like(RiccatiKind::PlaneZ, order)
}

/// `z_0, ..., z_{n_max}`.
pub fn plane_counts(n_max: usize) -> Result<Vec<BigInt>> {
    riccati_counts(RiccatiKind::PlaneZ, n_max, &Binomials::new(n_max))
}

pub fn root_balanced_table_pl(k_max: usize, n_max: usize) -> Result<CountTable> {
    let binom = Binomials::new(n_max);
    let columns = root_balanced_columns(Variety::Plane12.split_rule(), k_max, n_max, &binom)?;
    Ok(CountTable::from_columns(Variety::Plane12, TableKind::RootBalanced, n_max, columns))
}

/// `2Z - 1`: a marked subtree next to an ordered, possibly empty, sibling,
/// minus the double-counted lone-child arrangement.
fn removal_factor(order: usize) -> Series<Rational> {
    plane_series(order)
        .scale(&rational(2, 1))
        .sub(&Series::constant(rational(1, 1), order))
}

pub fn balanced_table_pl(k_max: usize, n_max: usize) -> Result<CountTable> {
    let roots = root_balanced_table_pl(k_max, n_max)?;
    let root_columns: Vec<_> = (0..=k_max).map(|k| roots.column(k)).collect();
    let mut f = plane_counts(n_max)?;
    for z in f.iter_mut() {
        *z *= 2;
    }
    f[0] -= 1;
    let columns = balanced_columns(&f, &root_columns, n_max, &Binomials::new(n_max))?;
    Ok(CountTable::from_columns(Variety::Plane12, TableKind::AllBalanced, n_max, columns))
}

pub fn balanced_series_pl(k: usize, order: usize) -> Result<Series<Rational>> {
    let binom = Binomials::new(order + 1);
    let columns = root_balanced_columns(Variety::Plane12.split_rule(), k, order + 1, &binom)?;
    let r_prime = from_egf_counts(&columns[k]).derivative()?;
    solve_linear_ode(&removal_factor(order), &r_prime, Rational::zero(), order)
}

/// Numerator of the leaf generating function after angle addition:
/// `(1/4) cos(sqrt3 x) + (1/12) sqrt3 sin(sqrt3 x) + x/2 - 1/4`.
pub fn leaf_numerator_pl(order: usize) -> Result<Series<Rational>> {
    let c = trig_series(TrigKind::ScaledCos, &rational(3, 1), order)?;
    let s = trig_series(TrigKind::ScaledSin, &rational(3, 1), order)?;
    Ok(c.scale(&rational(1, 4))
        .add(&s.scale(&rational(3, 12)))
        .add(&Series::x(order).scale(&rational(1, 2)))
        .sub(&Series::constant(rational(1, 4), order)))
}

/// `cos^2(sqrt3 x / 2 + pi/6) = (1 + cos(sqrt3 x + pi/3)) / 2`.
pub fn leaf_denominator_pl(order: usize) -> Result<Series<Rational>> {
    let c = trig_series(TrigKind::ScaledCos, &rational(3, 1), order)?;
    let s = trig_series(TrigKind::ScaledSin, &rational(3, 1), order)?;
    Ok(Series::constant(rational(1, 1), order)
        .add(&c.scale(&rational(1, 2)))
        .sub(&s.scale(&rational(3, 2)))
        .scale(&rational(1, 2)))
}

pub fn leaf_closed_form_pl(order: usize) -> Result<Series<Rational>> {
    leaf_numerator_pl(order)?.div(&leaf_denominator_pl(order)?)
}

pub fn closed_form_check_pl(order: usize) -> Result<ClosedFormReport> {
    Ok(ClosedFormReport::compare(
        "plane leaves",
        &balanced_series_pl(0, order)?,
        &leaf_closed_form_pl(order)?,
        order,
    ))
}

pub fn limit_constant_pl(precision_digits: usize, n_max: usize, levels: usize) -> Result<LimitConstant> {
    check_precision(precision_digits)?;
    check_extrapolation_range(n_max, levels)?;
    let sizes = extrapolation_sizes(n_max, levels);
    let table = balanced_table_pl(0, n_max)?;
    let trees = plane_counts(n_max)?;
    let samples = vertex_fraction_samples(&table.column(0), &trees, &sizes);
    let empirical = extrapolate(&samples, levels, precision_digits)?;
    let c = NamedConstant::C0Pl;
    Ok(LimitConstant::new(c.name(), c.closed_form(), empirical))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::egf_counts;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn counts() {
        assert_eq!(plane_counts(6).unwrap(), ints(&[1, 1, 1, 3, 9, 39, 189]));
    }

    #[test]
    fn integer_and_series_routes_agree() {
        assert_eq!(plane_counts(60).unwrap(), egf_counts(&plane_series(60), "plane").unwrap());
        let table = balanced_table_pl(3, 30).unwrap();
        for k in 0..=3 {
            let series = egf_counts(&balanced_series_pl(k, 30).unwrap(), "balanced").unwrap();
            assert_eq!(table.column(k), series, "rank {k}");
        }
    }

    #[test]
    fn root_balanced_examples() {
        let t = root_balanced_table_pl(1, 4).unwrap();
        assert_eq!(t.get(1, 0), BigInt::from(1));
        assert_eq!(t.get(2, 1), BigInt::from(1));
        assert_eq!(t.get(3, 1), BigInt::from(2));
    }

    #[test]
    fn balanced_examples() {
        let t = balanced_table_pl(2, 4).unwrap();
        assert_eq!(t.column(0)[1..], ints(&[1, 1, 5, 17])[..]);
        assert_eq!(t.get(1, 1), BigInt::from(0));
        assert_eq!(t.row_sum(3), BigInt::from(9));
    }

    #[test]
    fn closed_form() {
        assert_eq!(leaf_denominator_pl(3).unwrap().coeff(0), Some(&rational(3, 4)));
        assert_eq!(leaf_closed_form_pl(3).unwrap().coeff(0), Some(&rational(0, 1)));
        assert!(closed_form_check_pl(40).unwrap().passed());
        let from_closed = egf_counts(&leaf_closed_form_pl(4).unwrap(), "leaves").unwrap();
        assert_eq!(from_closed, ints(&[0, 1, 1, 5, 17]));
    }
}
