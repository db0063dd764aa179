//! Arbitrary-precision constants, Richardson extrapolation and growth-law
//! checks.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use astro_float::{Consts, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::{factorials, rational, to_decimal_string, Rational};

pub const DEFAULT_PRECISION: usize = 50;
pub const DEFAULT_LEVELS: usize = 3;
/// Largest size used for extrapolation; the ladder halves down from it.
pub const DEFAULT_EXTRAPOLATION_N: usize = 400;
pub const MIN_PRECISION: usize = 30;

const ROUNDING: RoundingMode = RoundingMode::ToEven;
const GUARD_BITS: usize = 64;

/// Matching tolerance between a closed-form constant and its extrapolation.
pub fn constant_tolerance() -> Rational {
    rational(1, 1_000_000)
}

/// Binary floating-point value carried at (at least) `digits` decimal digits.
#[derive(Debug, Clone)]
pub struct BigFloat {
    inner: astro_float::BigFloat,
    digits: usize,
}

fn bits_for(digits: usize) -> usize {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + GUARD_BITS
}

fn consts() -> Consts {
    Consts::new().expect("constant cache allocation")
}

impl BigFloat {
    fn wrap(inner: astro_float::BigFloat, digits: usize) -> Self {
        debug_assert!(!inner.is_nan(), "arithmetic produced NaN");
        BigFloat { inner, digits }
    }

    pub fn digits(&self) -> usize {
        self.digits
    }

    fn bits(&self) -> usize {
        bits_for(self.digits)
    }

    pub fn from_int(n: &BigInt, digits: usize) -> Self {
        let p = bits_for(digits);
        if n.is_zero() {
            return Self::wrap(astro_float::BigFloat::from_word(0, p), digits);
        }
        let (sign, words) = n.to_u64_digits();
        let sign = if sign == num_bigint::Sign::Minus { Sign::Neg } else { Sign::Pos };
        let exponent = (words.len() * 64) as astro_float::Exponent;
        let mut inner = astro_float::BigFloat::from_words(&words, sign, exponent);
        inner.set_precision(p, ROUNDING).expect("valid precision");
        Self::wrap(inner, digits)
    }

    pub fn from_rational(q: &Rational, digits: usize) -> Self {
        let num = Self::from_int(q.numer(), digits);
        let den = Self::from_int(q.denom(), digits);
        num.div(&den)
    }

    pub fn pi(digits: usize) -> Self {
        Self::wrap(consts().pi(bits_for(digits), ROUNDING), digits)
    }

    pub fn sqrt(&self) -> Self {
        Self::wrap(self.inner.sqrt(self.bits(), ROUNDING), self.digits)
    }

    pub fn sqrt3(digits: usize) -> Self {
        Self::from_int(&BigInt::from(3), digits).sqrt()
    }

    pub fn add(&self, other: &Self) -> Self {
        let digits = self.digits.min(other.digits);
        Self::wrap(self.inner.add(&other.inner, bits_for(digits), ROUNDING), digits)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let digits = self.digits.min(other.digits);
        Self::wrap(self.inner.sub(&other.inner, bits_for(digits), ROUNDING), digits)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let digits = self.digits.min(other.digits);
        Self::wrap(self.inner.mul(&other.inner, bits_for(digits), ROUNDING), digits)
    }

    pub fn div(&self, other: &Self) -> Self {
        let digits = self.digits.min(other.digits);
        Self::wrap(self.inner.div(&other.inner, bits_for(digits), ROUNDING), digits)
    }

    pub fn powi(&self, n: usize) -> Self {
        Self::wrap(self.inner.powi(n, self.bits(), ROUNDING), self.digits)
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.inner.abs(), self.digits)
    }

    pub fn neg(&self) -> Self {
        Self::wrap(self.inner.neg(), self.digits)
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// The exact rational value of the stored binary float.
    pub fn to_rational(&self) -> Rational {
        let Some((words, _, sign, exponent, _)) = self.inner.as_raw_parts() else {
            return Rational::zero();
        };
        if self.inner.is_zero() {
            return Rational::zero();
        }
        let mantissa = words
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, &w| (acc << 64u32) + BigUint::from(w));
        let mut value = BigInt::from(mantissa);
        if sign == Sign::Neg {
            value = -value;
        }
        let shift = exponent as i64 - (words.len() * 64) as i64;
        if shift >= 0 {
            Rational::from_integer(value << shift as usize)
        } else {
            Rational::new(value, BigInt::one() << (-shift) as usize)
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_rational().to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal rendering with `sig` significant digits.
    pub fn to_decimal(&self, sig: usize) -> String {
        to_decimal_string(&self.to_rational(), sig)
    }

    /// `|self - other| < tol`
    pub fn within(&self, other: &BigFloat, tol: &Rational) -> bool {
        self.sub(other).abs().to_rational() < *tol
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.inner.cmp(&other.inner).map(|c| c.cmp(&0))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(self.digits))
    }
}

/// `sum_i pi_poly[i] pi^i + inv_pi / pi + sqrt3_over_pi * sqrt(3) / pi`
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedForm {
    pub pi_poly: Vec<Rational>,
    pub inv_pi: Rational,
    pub sqrt3_over_pi: Rational,
}

impl ClosedForm {
    pub fn rational(q: Rational) -> Self {
        ClosedForm { pi_poly: vec![q], inv_pi: Rational::zero(), sqrt3_over_pi: Rational::zero() }
    }

    /// The exact value when no power of `pi` or `sqrt(3)` is involved.
    pub fn as_rational(&self) -> Option<Rational> {
        let transcendental = self.pi_poly.iter().skip(1).any(|c| !c.is_zero())
            || !self.inv_pi.is_zero()
            || !self.sqrt3_over_pi.is_zero();
        if transcendental {
            return None;
        }
        Some(self.pi_poly.first().cloned().unwrap_or_else(Rational::zero))
    }

    pub fn eval(&self, digits: usize) -> BigFloat {
        let pi = BigFloat::pi(digits);
        let mut acc = BigFloat::from_int(&BigInt::zero(), digits);
        let mut power = BigFloat::from_int(&BigInt::one(), digits);
        for c in &self.pi_poly {
            if !c.is_zero() {
                acc = acc.add(&power.mul(&BigFloat::from_rational(c, digits)));
            }
            power = power.mul(&pi);
        }
        if !self.inv_pi.is_zero() {
            acc = acc.add(&BigFloat::from_rational(&self.inv_pi, digits).div(&pi));
        }
        if !self.sqrt3_over_pi.is_zero() {
            let term = BigFloat::from_rational(&self.sqrt3_over_pi, digits).mul(&BigFloat::sqrt3(digits));
            acc = acc.add(&term.div(&pi));
        }
        acc
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = Vec::new();
        for (i, c) in self.pi_poly.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            terms.push(match i {
                0 => format!("{c}"),
                1 => format!("({c})*pi"),
                _ => format!("({c})*pi^{i}"),
            });
        }
        if !self.inv_pi.is_zero() {
            terms.push(format!("({})/pi", self.inv_pi));
        }
        if !self.sqrt3_over_pi.is_zero() {
            terms.push(format!("({})*sqrt(3)/pi", self.sqrt3_over_pi));
        }
        if terms.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&terms.join(" + "))
    }
}

/// Constants available through [`constant`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedConstant {
    /// Leaf fraction, non-plane 1-2 trees.
    C0Np,
    /// Rank-1 balanced fraction, non-plane 1-2 trees.
    C1Np,
    /// Rank-2 balanced fraction, non-plane 1-2 trees.
    C2Np,
    /// Leaf fraction, plane 1-2 trees.
    C0Pl,
    /// Lower end of the bracket on the limiting balanced fraction of
    /// decreasing binary trees.
    LLower,
    LUpper,
}

impl NamedConstant {
    pub const ALL: [NamedConstant; 6] = [
        NamedConstant::C0Np,
        NamedConstant::C1Np,
        NamedConstant::C2Np,
        NamedConstant::C0Pl,
        NamedConstant::LLower,
        NamedConstant::LUpper,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedConstant::C0Np => "C0_np",
            NamedConstant::C1Np => "C1_np",
            NamedConstant::C2Np => "C2_np",
            NamedConstant::C0Pl => "C0_pl",
            NamedConstant::LLower => "L_lower",
            NamedConstant::LUpper => "L_upper",
        }
    }

    pub fn closed_form(self) -> ClosedForm {
        let zero = Rational::zero;
        match self {
            NamedConstant::C0Np => ClosedForm {
                pi_poly: vec![rational(1, 1)],
                inv_pi: rational(-2, 1),
                sqrt3_over_pi: zero(),
            },
            NamedConstant::C1Np => ClosedForm {
                pi_poly: vec![rational(-1, 1), rational(1, 4), rational(1, 24)],
                inv_pi: zero(),
                sqrt3_over_pi: zero(),
            },
            NamedConstant::C2Np => ClosedForm {
                pi_poly: vec![
                    rational(-8, 1),
                    rational(9, 4),
                    rational(1, 3),
                    rational(-3, 64),
                    rational(-7, 1920),
                    rational(1, 2304),
                    rational(1, 32256),
                ],
                inv_pi: rational(-2, 1),
                sqrt3_over_pi: zero(),
            },
            NamedConstant::C0Pl => ClosedForm {
                pi_poly: vec![rational(2, 3)],
                inv_pi: zero(),
                sqrt3_over_pi: rational(-1, 2),
            },
            NamedConstant::LLower => ClosedForm::rational(rational(6684, 10_000)),
            NamedConstant::LUpper => ClosedForm::rational(rational(66_965, 100_000)),
        }
    }
}

impl FromStr for NamedConstant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NamedConstant::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownConstant(s.to_string()))
    }
}

/// Evaluates a named constant at `digits` decimal digits.
pub fn constant(name: &str, digits: usize) -> Result<BigFloat> {
    Ok(name.parse::<NamedConstant>()?.closed_form().eval(digits))
}

/// Richardson extrapolation of `value(n)` to `n -> infinity`, assuming an
/// expansion in powers of `1/n`.
///
/// Uses the `levels + 1` entries with the largest `n`; the tableau is built
/// in exact arithmetic and only the final value is rounded.
pub fn extrapolate(seq: &[(usize, Rational)], levels: usize, digits: usize) -> Result<BigFloat> {
    Ok(BigFloat::from_rational(&extrapolate_exact(seq, levels)?, digits))
}

pub fn extrapolate_exact(seq: &[(usize, Rational)], levels: usize) -> Result<Rational> {
    let needed = levels + 1;
    if levels == 0 || seq.len() < needed {
        return Err(Error::TooFewPoints { needed: needed.max(2), got: seq.len() });
    }
    let mut points = seq.to_vec();
    points.sort_by_key(|(n, _)| *n);
    let points = &points[points.len() - needed..];
    if points.windows(2).any(|w| w[0].0 == w[1].0) || points[0].0 == 0 {
        return Err(Error::InvalidArgument("extrapolation sizes must be distinct and positive".into()));
    }
    let sizes: Vec<BigInt> = points.iter().map(|(n, _)| BigInt::from(*n)).collect();
    let mut row: Vec<Rational> = points.iter().map(|(_, v)| v.clone()).collect();
    // Neville's scheme in h = 1/n evaluated at h = 0:
    // T[i][j] = T[i][j-1] + (T[i][j-1] - T[i-1][j-1]) * n[i-j] / (n[i] - n[i-j])
    for j in 1..needed {
        let next: Vec<Rational> = (j..needed)
            .map(|i| {
                let hi = &row[i - j + 1];
                let lo = &row[i - j];
                let weight = Rational::new(sizes[i - j].clone(), &sizes[i] - &sizes[i - j]);
                hi + (hi - lo) * weight
            })
            .collect();
        row = next;
    }
    Ok(row.pop().expect("one entry remains"))
}

/// Geometric ladder `n_max / 2^levels, ..., n_max / 2, n_max`.
pub fn extrapolation_sizes(n_max: usize, levels: usize) -> Vec<usize> {
    (0..=levels).rev().map(|j| n_max >> j).collect()
}

/// Which counting sequence an asymptotic law refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthLaw {
    /// `E_n ~ n! (4/pi) (2/pi)^n`
    Euler,
    /// `z_n ~ n! (3 sqrt(3) / (2 pi))^(n+1)`
    Plane,
}

/// Exact count divided by its leading asymptotic form.
pub fn asymptotic_ratio_check(kind: GrowthLaw, n: usize, digits: usize) -> Result<BigFloat> {
    let fact = BigFloat::from_int(&factorials(n)[n], digits);
    let pi = BigFloat::pi(digits);
    let (count, model) = match kind {
        GrowthLaw::Euler => {
            let e = crate::nonplane12::euler_numbers(n)?;
            let two = BigFloat::from_int(&BigInt::from(2), digits);
            let four = BigFloat::from_int(&BigInt::from(4), digits);
            let model = fact.mul(&four.div(&pi)).mul(&two.div(&pi).powi(n));
            (e[n].clone(), model)
        }
        GrowthLaw::Plane => {
            let z = crate::plane12::plane_counts(n)?;
            let three = BigFloat::from_int(&BigInt::from(3), digits);
            let two = BigFloat::from_int(&BigInt::from(2), digits);
            let base = three.mul(&BigFloat::sqrt3(digits)).div(&two.mul(&pi));
            (z[n].clone(), fact.mul(&base.powi(n + 1)))
        }
    };
    Ok(BigFloat::from_int(&count, digits).div(&model))
}

/// A limiting fraction with both its closed form and a numerical estimate
/// extrapolated from exact counts.
#[derive(Debug, Clone)]
pub struct LimitConstant {
    pub name: String,
    pub closed_form: ClosedForm,
    pub value: BigFloat,
    pub empirical: BigFloat,
    pub abs_gap: BigFloat,
}

impl LimitConstant {
    pub(crate) fn new(name: &str, closed_form: ClosedForm, empirical: BigFloat) -> Self {
        let value = closed_form.eval(empirical.digits());
        let abs_gap = value.sub(&empirical).abs();
        LimitConstant { name: name.to_string(), closed_form, value, empirical, abs_gap }
    }

    pub fn within(&self, tol: &Rational) -> bool {
        self.abs_gap.to_rational() < *tol
    }
}

/// `count[n] / (n * trees[n])` at each extrapolation size.
pub(crate) fn vertex_fraction_samples(counts: &[BigInt], trees: &[BigInt], sizes: &[usize]) -> Vec<(usize, Rational)> {
    sizes
        .iter()
        .map(|&n| (n, Rational::new(counts[n].clone(), &trees[n] * BigInt::from(n))))
        .collect()
}

pub(crate) fn check_precision(digits: usize) -> Result<()> {
    if digits < MIN_PRECISION {
        return Err(Error::InvalidArgument(format!(
            "precision must be at least {MIN_PRECISION} digits, got {digits}"
        )));
    }
    Ok(())
}

pub(crate) fn check_extrapolation_range(n_max: usize, levels: usize) -> Result<()> {
    if n_max >> levels == 0 {
        return Err(Error::InvalidArgument(format!(
            "n_max = {n_max} is too small for {levels} extrapolation levels"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    const PI_40: &str = "3.141592653589793238462643383279502884197";
    const SQRT3_40: &str = "1.732050807568877293527446341505872366942";

    fn truncate_to(s: &str, len: usize) -> &str {
        &s[..len]
    }

    #[test]
    fn pi_and_sqrt3_reference_digits() {
        let pi = BigFloat::pi(DEFAULT_PRECISION).to_decimal(45);
        assert_eq!(truncate_to(&pi, PI_40.len()), PI_40);
        let s3 = BigFloat::sqrt3(DEFAULT_PRECISION).to_decimal(45);
        assert_eq!(truncate_to(&s3, SQRT3_40.len()), SQRT3_40);
    }

    #[test]
    fn rational_round_trip() {
        let q = rational(-7, 3);
        let x = BigFloat::from_rational(&q, 40);
        let back = x.to_rational();
        assert!((back - q).abs() < rational(1, 1_000_000_000_000_000_000));
        assert_eq!(BigFloat::from_int(&BigInt::from(12345), 30).to_rational(), rational(12345, 1));
    }

    #[test]
    fn named_constants() {
        let c1 = constant("C1_np", 50).unwrap().to_decimal(10);
        assert_eq!(c1, "0.1966316801");
        let c0pl = constant("C0_pl", 50).unwrap().to_decimal(9);
        assert_eq!(c0pl, "0.391002219");
        let c2 = constant("C2_np", 50).unwrap().to_decimal(10);
        assert_eq!(c2, "0.07590131772");
        let c0 = constant("C0_np", 50).unwrap().to_decimal(11);
        assert_eq!(c0, "0.36338022763");
        let lower = constant("L_lower", 50).unwrap().to_rational() - rational(6684, 10_000);
        assert!(lower.abs() < rational(1, 10).pow(45));
        assert_eq!(constant("nope", 50).unwrap_err(), Error::UnknownConstant("nope".into()));
        for c in NamedConstant::ALL {
            let v = c.closed_form().eval(50).to_rational();
            assert!(v > Rational::zero() && v < Rational::one(), "{}", c.name());
        }
    }

    #[test]
    fn extrapolation_basics() {
        let constant_seq: Vec<_> = [50, 100, 200, 400].iter().map(|&n| (n, rational(5, 7))).collect();
        assert_eq!(extrapolate_exact(&constant_seq, 3).unwrap(), rational(5, 7));

        let linear: Vec<_> = [10, 20, 40].iter().map(|&n| (n, rational(2, 9) + rational(3, n as i64))).collect();
        assert_eq!(extrapolate_exact(&linear, 1).unwrap(), rational(2, 9));
        assert_eq!(extrapolate_exact(&linear, 2).unwrap(), rational(2, 9));

        let dec_leaves: Vec<_> = [50, 100, 200, 400]
            .iter()
            .map(|&n| (n, rational(n as i64 + 1, 3 * n as i64)))
            .collect();
        let est = extrapolate(&dec_leaves, 3, 50).unwrap();
        assert!(est.within(&BigFloat::from_rational(&rational(1, 3), 50), &rational(1, 100_000_000)));

        assert_eq!(extrapolate_exact(&linear, 3), Err(Error::TooFewPoints { needed: 4, got: 3 }));
        assert!(extrapolate_exact(&linear, 0).is_err());
    }

    #[test]
    fn ladder() {
        assert_eq!(extrapolation_sizes(400, 3), vec![50, 100, 200, 400]);
    }

    #[test]
    fn growth_laws() {
        let e5 = asymptotic_ratio_check(GrowthLaw::Euler, 5, 30).unwrap().to_f64();
        assert!(e5 > 0.9 && e5 < 1.1, "{e5}");
        let e40 = asymptotic_ratio_check(GrowthLaw::Euler, 40, 50).unwrap().to_rational();
        assert!((e40 - Rational::one()).abs() < rational(1, 1_000_000_000));
        let z40 = asymptotic_ratio_check(GrowthLaw::Plane, 40, 50).unwrap().to_rational();
        assert!((z40 - Rational::one()).abs() < rational(1, 1_000_000));
    }

    #[test]
    fn closed_form_display() {
        assert_eq!(NamedConstant::C0Np.closed_form().to_string(), "1 + (-2)/pi");
        assert_eq!(NamedConstant::C0Pl.closed_form().to_string(), "2/3 + (-1/2)*sqrt(3)/pi");
    }
}
