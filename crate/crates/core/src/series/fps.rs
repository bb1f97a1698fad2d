//! Truncated formal power series with exact integer coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::compositions::{all_compositions, for_each_partition};
use super::schroeder::schroeder_large_upto;
use crate::error::CountError;

/// Coefficients `c_0 ..= c_N` of a power series truncated after `t^N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series {
    coeffs: Vec<BigInt>,
}

impl Series {
    /// `coeffs` must hold at least the constant term.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a series keeps at least c_0");
        Series { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Series::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Highest retained power.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    pub fn truncated(&self, order: usize) -> Series {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, BigInt::zero());
        Series { coeffs }
    }

    /// The series `t`.
    pub fn identity(order: usize) -> Series {
        let mut coeffs = vec![BigInt::zero(); order + 1];
        if order >= 1 {
            coeffs[1] = BigInt::one();
        }
        Series { coeffs }
    }

    /// `sum_n n! t^n`, meaningful only as a formal series.
    pub fn factorials(order: usize) -> Series {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut f = BigInt::one();
        coeffs.push(f.clone());
        for k in 1..=order {
            f *= k;
            coeffs.push(f.clone());
        }
        Series { coeffs }
    }

    /// Product truncated at the smaller order.
    pub fn mul_truncated(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        let mut coeffs = vec![BigInt::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                coeffs[i + j] += a * b;
            }
        }
        Series { coeffs }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// `B(t) = t R(t)`: coefficient `k` is `S_{k-1}`, coefficient 0 is 0.
pub fn series_b(order: usize) -> Series {
    let mut coeffs = vec![BigInt::zero()];
    coeffs.extend(
        schroeder_large_upto(order.saturating_sub(1))
            .into_iter()
            .take(order)
            .map(BigInt::from),
    );
    Series { coeffs }
}

/// Taylor coefficients of `g(t) = t(1 - t)/(1 + t)`.
pub fn taylor_g(i: usize) -> i64 {
    match i {
        0 => 0,
        1 => 1,
        _ if i.is_multiple_of(2) => -2,
        _ => 2,
    }
}

pub fn series_g(order: usize) -> Series {
    Series::new((0..=order).map(|i| BigInt::from(taylor_g(i))).collect())
}

fn check_operands(outer: &Series, inner: &Series) -> Result<usize, CountError> {
    if !inner.coeffs[0].is_zero() {
        return Err(CountError::NonzeroConstant);
    }
    Ok(outer.order().min(inner.order()))
}

/// `outer(inner(t))` by the composition formula
///
/// ```text
/// [t^n] (A o B) = sum_{m=1}^{n} a_m sum_{compositions (s_1..s_m) of n} b_{s_1} .. b_{s_m}
/// ```
///
/// The inner sum only depends on how often each part value occurs, so the
/// compositions are visited one partition at a time and weighted by the
/// number of orderings `m! / prod_i (mult_i)!`. Cost grows with the number
/// of partitions of `N`; orders up to a few dozen are quick.
pub fn series_compose(outer: &Series, inner: &Series) -> Result<Series, CountError> {
    let order = check_operands(outer, inner)?;
    let factorials = Series::factorials(order);
    let mut coeffs = vec![outer.coeffs[0].clone()];
    for n in 1..=order {
        let mut total = BigInt::zero();
        for_each_partition(n, |mult, parts| {
            let a = &outer.coeffs[parts];
            if a.is_zero() {
                return;
            }
            let mut product = BigInt::one();
            let mut denominator = BigInt::one();
            for (value, &k) in mult.iter().enumerate().skip(1) {
                if k == 0 {
                    continue;
                }
                let b = &inner.coeffs[value];
                if b.is_zero() {
                    return;
                }
                product *= num_traits::pow(b.clone(), k);
                denominator *= factorials.coeff(k);
            }
            let orderings = factorials.coeff(parts) / denominator;
            total += a * orderings * product;
        });
        coeffs.push(total);
    }
    Ok(Series { coeffs })
}

/// Independent route to [`series_compose`]: Horner evaluation
/// `a_0 + B(a_1 + B(a_2 + ...))` with truncated products.
pub fn series_compose_horner(outer: &Series, inner: &Series) -> Result<Series, CountError> {
    let order = check_operands(outer, inner)?;
    let inner = inner.truncated(order);
    let mut acc = Series::new(vec![outer.coeffs[order].clone()]).truncated(order);
    for k in (0..order).rev() {
        acc = acc.mul_truncated(&inner);
        acc.coeffs[0] += &outer.coeffs[k];
    }
    Ok(acc)
}

/// `[t^n] (A o B)` by enumerating every composition of `n`. `outer[m]` is
/// `a_m` and `inner[i]` is `b_i`; both must reach index `n`.
pub fn composition_sum(outer: &[BigInt], inner: &[BigInt], n: usize) -> BigInt {
    all_compositions(n)
        .map(|c| {
            let product: BigInt = c.parts().iter().map(|&s| &inner[s]).product();
            &outer[c.len()] * product
        })
        .sum()
}

/// Coefficients `a_0 ..= a_N` of `A(t) = E(g(t))`, `E` the factorial series.
pub fn a_via_series(order: usize) -> Series {
    series_compose(&Series::factorials(order), &series_g(order))
        .expect("g has zero constant term")
}
