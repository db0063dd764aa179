//! Truncated power series with exact coefficients.
//!
//! A [`Series`] of order `N` knows the coefficients of `x^0 ..= x^N`; every
//! operation returns a result whose order is bounded by the orders of its
//! inputs, so no coefficient past the truncation point is ever invented.
//! Series used as exponential generating functions keep the ordinary
//! coefficient `a_n / n!`; see [`egf_counts`] for the integer view.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{as_integer, factorials, Binomials, Coeff, Rational};

/// Number of coefficients past the claimed degree that [`polynomial_of`]
/// requires to be present and checks for zero.
pub const POLY_GUARD_WINDOW: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct Series<T> {
    coeffs: Vec<T>,
}

/// The two first-order nonlinear equations solved term by term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RiccatiKind {
    /// `2y' = 1 + y^2`, `y(0) = 1`; the generating function `tan x + sec x`.
    EulerY,
    /// `Z' = Z^2 - Z + 1`, `Z(0) = 1`.
    PlaneZ,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrigKind {
    Sin,
    Cos,
    /// `sin(sqrt(c) x) / sqrt(c)`
    ScaledSin,
    /// `cos(sqrt(c) x)`
    ScaledCos,
}

impl<T: Coeff> Series<T> {
    /// Polynomial padded with zeros up to `order`.
    pub fn from_poly(coeffs: Vec<T>, order: usize) -> Result<Self> {
        if coeffs.len() > order + 1 {
            return Err(Error::OrderTooSmall { len: coeffs.len(), order });
        }
        let mut coeffs = coeffs;
        coeffs.resize(order + 1, T::zero());
        Ok(Series { coeffs })
    }

    /// Series whose known coefficients are exactly `coeffs`; order is `len - 1`.
    ///
    /// Panics on an empty vector.
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the constant term");
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![T::zero(); order + 1] }
    }

    pub fn constant(c: T, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The monomial `x`.
    pub fn x(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = T::one();
        }
        s
    }

    /// `1 / (1 - x)`.
    pub fn geometric(order: usize) -> Self {
        Series { coeffs: vec![T::one(); order + 1] }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^i`, or `None` past the truncation order.
    pub fn coeff(&self, i: usize) -> Option<&T> {
        self.coeffs.get(i)
    }

    /// Drops coefficients above `order`.
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Series { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|i| self.coeffs[i].clone() + other.coeffs[i].clone())
            .collect();
        Series { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|i| self.coeffs[i].clone() - other.coeffs[i].clone())
            .collect();
        Series { coeffs }
    }

    pub fn neg(&self) -> Self {
        Series { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn scale(&self, c: &T) -> Self {
        Series { coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect() }
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| {
                (0..=n).fold(T::zero(), |acc, i| {
                    acc + self.coeffs[i].clone() * other.coeffs[n - i].clone()
                })
            })
            .collect();
        Series { coeffs }
    }

    /// `self / divisor`; the divisor needs a nonzero constant term.
    pub fn div(&self, divisor: &Self) -> Result<Self> {
        let b0 = divisor.coeffs[0].clone();
        if b0.is_zero() {
            return Err(Error::DivisionImpossible);
        }
        let order = self.order().min(divisor.order());
        let mut q: Vec<T> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let acc = (1..=n).fold(self.coeffs[n].clone(), |acc, i| {
                acc - divisor.coeffs[i].clone() * q[n - i].clone()
            });
            q.push(acc / b0.clone());
        }
        Ok(Series { coeffs: q })
    }

    pub fn derivative(&self) -> Result<Self> {
        if self.order() == 0 {
            return Err(Error::EmptyOrder);
        }
        let coeffs = (1..=self.order())
            .map(|i| self.coeffs[i].clone() * T::from_count(i))
            .collect();
        Ok(Series { coeffs })
    }

    /// Antiderivative with constant term `c`; the order grows by one.
    pub fn antiderivative(&self, c: T) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(c);
        for (i, a) in self.coeffs.iter().enumerate() {
            coeffs.push(a.clone() / T::from_count(i + 1));
        }
        Series { coeffs }
    }

    /// Value of the truncated polynomial at `x`.
    pub fn eval_truncated(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }
}

/// Solves `A' = f A + g` with `A(0) = a0` up to order `order`.
///
/// The coefficient of `x^(n+1)` is fixed by the coefficient of `x^n` on the
/// right, which only involves `A` up to index `n`.
pub fn solve_linear_ode<T: Coeff>(f: &Series<T>, g: &Series<T>, a0: T, order: usize) -> Result<Series<T>> {
    let required = order.saturating_sub(1);
    let actual = f.order().min(g.order());
    if order > 0 && actual < required {
        return Err(Error::InsufficientOrder { required, actual });
    }
    let mut a: Vec<T> = Vec::with_capacity(order + 1);
    a.push(a0);
    for n in 0..order {
        let rhs = (0..=n).fold(g.coeffs[n].clone(), |acc, i| {
            if f.coeffs[i].is_zero() {
                acc
            } else {
                acc + f.coeffs[i].clone() * a[n - i].clone()
            }
        });
        a.push(rhs / T::from_count(n + 1));
    }
    Ok(Series { coeffs: a })
}

/// Solves one of the two fixed quadratic equations to `order`.
pub fn solve_riccati_like<T: Coeff>(kind: RiccatiKind, order: usize) -> Series<T> {
    let mut y: Vec<T> = Vec::with_capacity(order + 1);
    y.push(T::one());
    for n in 0..order {
        let square = (0..=n).fold(T::zero(), |acc, i| acc + y[i].clone() * y[n - i].clone());
        let unit = if n == 0 { T::one() } else { T::zero() };
        let next = match kind {
            RiccatiKind::EulerY => (unit + square) / T::from_count(2 * (n + 1)),
            RiccatiKind::PlaneZ => (unit + square - y[n].clone()) / T::from_count(n + 1),
        };
        y.push(next);
    }
    Series { coeffs: y }
}

/// `A' = f A + g` on exponential counts: `f`, `g` and the result hold
/// `n! [x^n]`, so `a_{n+1} = g_n + sum_i C(n, i) f_i a_{n-i}` stays integral.
pub fn solve_linear_ode_counts(f: &[BigInt], g: &[BigInt], a0: BigInt, n_max: usize, binom: &Binomials) -> Result<Vec<BigInt>> {
    let actual = f.len().min(g.len());
    if n_max > 0 && actual < n_max {
        return Err(Error::InsufficientOrder { required: n_max - 1, actual: actual.saturating_sub(1) });
    }
    let mut a: Vec<BigInt> = Vec::with_capacity(n_max + 1);
    a.push(a0);
    for n in 0..n_max {
        let mut next = g[n].clone();
        for i in 0..=n {
            if !f[i].is_zero() && !a[n - i].is_zero() {
                next += binom.get(n, i) * &f[i] * &a[n - i];
            }
        }
        a.push(next);
    }
    Ok(a)
}

/// Exponential counts `n! [x^n]` of [`solve_riccati_like`], by integer
/// recurrence.
pub fn riccati_counts(kind: RiccatiKind, n_max: usize, binom: &Binomials) -> Result<Vec<BigInt>> {
    let mut y: Vec<BigInt> = Vec::with_capacity(n_max + 1);
    y.push(BigInt::one());
    for n in 0..n_max {
        let mut square = if n == 0 { BigInt::one() } else { BigInt::zero() };
        for i in 0..=n {
            square += binom.get(n, i) * &y[i] * &y[n - i];
        }
        let next = match kind {
            RiccatiKind::EulerY => {
                let (half, rem) = square.div_rem(&BigInt::from(2));
                if !rem.is_zero() {
                    return Err(Error::NonIntegral { what: "Euler number", n: n + 1 });
                }
                half
            }
            RiccatiKind::PlaneZ => square - &y[n],
        };
        y.push(next);
    }
    Ok(y)
}

/// Maclaurin series of sine/cosine, optionally of `sqrt(c) x` with the
/// square root cleared so every coefficient stays in `T`.
pub fn trig_series<T: Coeff>(kind: TrigKind, c: &T, order: usize) -> Result<Series<T>> {
    let base = match kind {
        TrigKind::Sin | TrigKind::Cos => T::one(),
        TrigKind::ScaledSin | TrigKind::ScaledCos => {
            if *c <= T::zero() {
                return Err(Error::NonPositiveScale);
            }
            c.clone()
        }
    };
    let odd = matches!(kind, TrigKind::Sin | TrigKind::ScaledSin);
    let mut coeffs = vec![T::zero(); order + 1];
    // term = (-base)^m / i!, walked upward in i.
    let mut inv_fact = T::one();
    let mut power = T::one();
    for (i, slot) in coeffs.iter_mut().enumerate() {
        if i > 0 {
            inv_fact = inv_fact / T::from_count(i);
        }
        let matches_parity = (i % 2 == 1) == odd;
        if matches_parity {
            *slot = power.clone() * inv_fact.clone();
            power = power * -base.clone();
        }
    }
    Ok(Series { coeffs })
}

/// Certifies that `a` is a polynomial of degree at most `max_deg` and returns
/// its coefficients `0..=max_deg`.
pub fn polynomial_of<T: Coeff>(a: &Series<T>, max_deg: usize) -> Result<Vec<T>> {
    let required = max_deg + POLY_GUARD_WINDOW;
    if a.order() < required {
        return Err(Error::InsufficientOrder { required, actual: a.order() });
    }
    if let Some(index) = (max_deg + 1..=a.order()).find(|&i| !a.coeffs[i].is_zero()) {
        return Err(Error::NotAPolynomial { index, max_deg });
    }
    Ok(a.coeffs[..=max_deg].to_vec())
}

pub fn eval_at_one<T: Coeff>(poly: &[T]) -> T {
    poly.iter().fold(T::zero(), |acc, c| acc + c.clone())
}

/// `n! [x^n]` for every known coefficient, which must all be integers.
pub fn egf_counts(a: &Series<Rational>, what: &'static str) -> Result<Vec<BigInt>> {
    let fact = factorials(a.order());
    a.coeffs
        .iter()
        .zip(&fact)
        .enumerate()
        .map(|(n, (c, f))| as_integer(&(c * f)).ok_or(Error::NonIntegral { what, n }))
        .collect()
}

/// Series with ordinary coefficients `counts[n] / n!`.
pub fn from_egf_counts(counts: &[BigInt]) -> Series<Rational> {
    assert!(!counts.is_empty());
    let fact = factorials(counts.len() - 1);
    let coeffs = counts
        .iter()
        .zip(&fact)
        .map(|(c, f)| Rational::new(c.clone(), f.clone()))
        .collect();
    Series { coeffs }
}

/// `(1 - x)^2` as a series of the given order.
pub fn one_minus_x_squared<T: Coeff>(order: usize) -> Series<T> {
    let two = T::one() + T::one();
    let mut coeffs = vec![T::one(), -two, T::one()];
    coeffs.truncate(order + 1);
    Series::from_poly(coeffs, order).expect("truncated to fit")
}

impl<T: Coeff> std::ops::Add for &Series<T> {
    type Output = Series<T>;
    fn add(self, rhs: Self) -> Series<T> {
        Series::add(self, rhs)
    }
}

impl<T: Coeff> std::ops::Sub for &Series<T> {
    type Output = Series<T>;
    fn sub(self, rhs: Self) -> Series<T> {
        Series::sub(self, rhs)
    }
}

impl<T: Coeff> std::ops::Mul for &Series<T> {
    type Output = Series<T>;
    fn mul(self, rhs: Self) -> Series<T> {
        Series::mul(self, rhs)
    }
}

impl<T: Coeff> std::ops::Neg for &Series<T> {
    type Output = Series<T>;
    fn neg(self) -> Series<T> {
        Series::neg(self)
    }
}

impl<T: Coeff + One> Series<T> {
    /// `1 - x`
    pub fn one_minus_x(order: usize) -> Self {
        let mut s = Self::constant(T::one(), order);
        if order >= 1 {
            s.coeffs[1] = -T::one();
        }
        s
    }
}
