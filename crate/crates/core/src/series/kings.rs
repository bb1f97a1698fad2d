//! Closed formulas for `a_n`, the number of permutation matrices with no two
//! 1s diagonally adjacent (non-attacking kings, one per row and column).

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::compositions::compositions;

/// Exact rational with a positive denominator, always in lowest terms.
pub type ExactRational = BigRational;

fn factorial(k: usize) -> BigInt {
    (1..=k).map(BigInt::from).product()
}

/// `C(a, b)`, zero whenever `b < 0` or `b > a`.
pub fn binomial(a: i64, b: i64) -> BigInt {
    if b < 0 || b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc = acc * (a - i) / (i + 1);
    }
    acc
}

/// Number of compositions of `n` into `m` parts with exactly `ones` parts
/// equal to 1: choose where the 1s go, then split the rest into parts >= 2.
fn compositions_with_ones(n: usize, m: usize, ones: usize) -> BigInt {
    let rest = m - ones;
    if rest == 0 {
        return if n == m { BigInt::one() } else { BigInt::zero() };
    }
    // Parts >= 2 summing to n - ones: subtract 1 from each, then an ordinary
    // composition of n - ones - rest into `rest` parts.
    let reduced = n as i64 - ones as i64 - rest as i64;
    binomial(m as i64, ones as i64) * binomial(reduced - 1, rest as i64 - 1)
}

/// `a_n = (-1)^n sum_{m=1}^{n} m! (-2)^m sum_{c in C(n,m)} 2^{-c_1}` where
/// `c_1` counts the parts of `c` equal to 1.
///
/// Runs on scaled integers: each composition contributes `2^{n - c_1}`, and
/// the total is divided by `2^n` once at the end. The compositions of each
/// `C(n,m)` are counted by how many 1-parts they have rather than listed.
pub fn a_formula(n: usize) -> BigUint {
    assert!(n >= 1, "the formula starts at n = 1");
    let mut total = BigInt::zero();
    let mut m_factorial = BigInt::one();
    for m in 1..=n {
        m_factorial *= m;
        let scaled_inner: BigInt = (0..=m)
            .map(|ones| compositions_with_ones(n, m, ones) << (n - ones))
            .sum();
        total += &m_factorial * num_traits::pow(BigInt::from(-2), m) * scaled_inner;
    }
    if n % 2 == 1 {
        total = -total;
    }
    let scale = BigInt::one() << n;
    let (q, r) = total.div_rem(&scale);
    assert!(r.is_zero() && !q.is_negative(), "a_{n} must be a non-negative integer");
    q.to_biguint().expect("non-negative")
}

/// One outer term of [`a_formula`] in exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaTerm {
    pub parts: usize,
    /// `sum_{c in C(n,m)} 2^{-c_1}`.
    pub inner: ExactRational,
    /// `(-1)^n m! (-2)^m * inner`.
    pub term: ExactRational,
}

/// The outer terms of [`a_formula`], enumerating every composition and
/// summing in exact rationals. `2^(n-1)` compositions, so keep `n` modest.
pub fn a_formula_terms(n: usize) -> Vec<FormulaTerm> {
    assert!(n >= 1, "the formula starts at n = 1");
    let half = ExactRational::new(BigInt::one(), BigInt::from(2));
    let sign = if n.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    (1..=n)
        .map(|m| {
            let inner = compositions(n, m)
                .expect("1 <= m <= n")
                .map(|c| num_traits::pow(half.clone(), c.multiplicity(1)))
                .fold(ExactRational::zero(), |acc, x| acc + x);
            let weight = &sign * factorial(m) * num_traits::pow(BigInt::from(-2), m);
            let term = &inner * ExactRational::from_integer(weight);
            FormulaTerm {
                parts: m,
                inner,
                term,
            }
        })
        .collect()
}

/// `a_n = sum_{k=0}^{n} (n-k)! sum_{i=0}^{k} (-1)^k C(n-k, i) C(n-i-1, k-i)`.
pub fn a_abramson_moser(n: usize) -> BigUint {
    assert!(n >= 1, "the formula starts at n = 1");
    let n = n as i64;
    let mut total = BigInt::zero();
    for k in 0..=n {
        let inner: BigInt = (0..=k)
            .map(|i| binomial(n - k, i) * binomial(n - i - 1, k - i))
            .sum();
        let signed = if k % 2 == 0 { inner } else { -inner };
        total += factorial((n - k) as usize) * signed;
    }
    match total.sign() {
        Sign::Minus => panic!("a_{n} came out negative"),
        _ => total.to_biguint().expect("non-negative"),
    }
}

/// True when the denominator of `x` is a power of two.
pub fn is_dyadic(x: &ExactRational) -> bool {
    let d = x.denom();
    d.is_positive() && (d & (d - BigInt::one())).is_zero()
}
