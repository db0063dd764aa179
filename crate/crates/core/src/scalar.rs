//! Scalar abstraction for series coefficients and exact integer helpers.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, Zero};

/// Exact fraction of arbitrary-precision integers, always stored reduced
/// with a positive denominator.
pub type Rational = BigRational;

/// Requirements on a power-series coefficient type.
///
/// Implemented for exact rationals as well as `f32`/`f64`; the counting code
/// only ever instantiates it with [`Rational`].
pub trait Coeff:
    Clone + Debug + PartialEq + PartialOrd + Num + Neg<Output = Self> + FromPrimitive + Send + Sync
{
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("usize fits every coefficient type")
    }
}

impl<T> Coeff for T where
    T: Clone
        + Debug
        + PartialEq
        + PartialOrd
        + Num
        + Neg<Output = T>
        + FromPrimitive
        + Send
        + Sync
{
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rational_from_int(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// `0!, 1!, ..., n_max!` as exact integers.
pub fn factorials(n_max: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut acc = BigInt::one();
    out.push(acc.clone());
    for n in 1..=n_max {
        acc *= n;
        out.push(acc.clone());
    }
    out
}

/// Returns the integer `q` if `q` has denominator one.
pub fn as_integer(q: &Rational) -> Option<BigInt> {
    if q.denom().is_one() {
        Some(q.numer().clone())
    } else {
        None
    }
}

/// Exact Pascal triangle `C(n, i)` for `0 <= i <= n <= n_max`.
#[derive(Debug, Clone)]
pub struct Binomials {
    rows: Vec<Vec<BigInt>>,
}

impl Binomials {
    pub fn new(n_max: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n_max + 1);
        rows.push(vec![BigInt::one()]);
        for n in 1..=n_max {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(BigInt::one());
            for i in 1..n {
                row.push(&prev[i - 1] + &prev[i]);
            }
            row.push(BigInt::one());
            rows.push(row);
        }
        Binomials { rows }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `C(n, i)`; panics if `n` exceeds the table.
    pub fn get(&self, n: usize, i: usize) -> &BigInt {
        &self.rows[n][i]
    }
}

/// Renders a rational as a decimal with `sig` significant digits, rounding
/// half to even. The output is advisory; the fraction is authoritative.
pub fn to_decimal_string(q: &Rational, sig: usize) -> String {
    let sig = sig.max(1);
    if q.is_zero() {
        return "0".to_string();
    }
    let negative = q.is_negative();
    let q = q.abs();
    let ten = BigInt::from(10);

    // Find the decimal exponent e with 10^e <= q < 10^(e+1).
    let digits_num = q.numer().to_string().len() as i64;
    let digits_den = q.denom().to_string().len() as i64;
    let mut e = digits_num - digits_den;
    let pow10 = |k: i64| -> Rational {
        if k >= 0 {
            Rational::from_integer(num_traits::pow(ten.clone(), k as usize))
        } else {
            Rational::new(BigInt::one(), num_traits::pow(ten.clone(), (-k) as usize))
        }
    };
    if q < pow10(e) {
        e -= 1;
    }

    // Scale so that the integer part holds exactly `sig` digits.
    let shift = sig as i64 - 1 - e;
    let scaled = &q * pow10(shift);
    let (mut int, rem): (BigInt, BigInt) = scaled.numer().div_rem(scaled.denom());
    let twice: BigInt = rem * 2;
    match twice.cmp(scaled.denom()) {
        std::cmp::Ordering::Greater => int += 1,
        std::cmp::Ordering::Equal if int.is_odd() => int += 1,
        _ => {}
    }
    let mut shift = shift;
    let mut s = int.to_string();
    if s.len() > sig {
        // Rounding carried into a new digit, e.g. 9.99 -> 10.0.
        s.pop();
        shift -= 1;
    }

    let body = if shift <= 0 {
        let mut s = s;
        s.extend(std::iter::repeat_n('0', (-shift) as usize));
        s
    } else {
        let shift = shift as usize;
        if shift >= s.len() {
            format!("0.{}{}", "0".repeat(shift - s.len()), s)
        } else {
            let (a, b) = s.split_at(s.len() - shift);
            format!("{a}.{b}")
        }
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}
