//! Brute-force counts over the symmetric group.
//!
//! Every permutation of `[n]` is visited once and classified with cheap
//! predicates: left merging on value ranges for fullness, a running maximum
//! for indecomposability, and a neighbouring-column test for no-growth.

use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::CountError;
use crate::perm::Permutation;
use crate::series::composition_sum;
use crate::tiling::is_full_fast;

/// Largest `n` the enumerators accept.
pub const MAX_N: usize = 12;
/// Largest `n` for [`verify_factorial_identity`].
pub const MAX_IDENTITY_N: usize = 10;

fn check_n(n: usize, max: usize) -> Result<(), CountError> {
    if (1..=max).contains(&n) {
        Ok(())
    } else {
        Err(CountError::OutOfRange { n, min: 1, max })
    }
}

/// Rearranges `v` into its lexicographic successor; false at the last one.
fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|&x| x > v[i]).expect("v[i+1] > v[i]");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// All permutations of `[n]` in lexicographic order.
pub fn permutations(n: usize) -> impl Iterator<Item = Permutation> {
    let mut next = Some(Permutation::identity(n));
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut succ = current.clone();
        if next_permutation(succ.values_mut()) {
            next = Some(succ);
        }
        Some(current)
    })
}

/// Visits every permutation of `[n]` once, in lexicographic order.
pub fn enumerate_permutations(
    n: usize,
    mut visitor: impl FnMut(&Permutation),
) -> Result<(), CountError> {
    check_n(n, MAX_N)?;
    let mut p = Permutation::identity(n);
    loop {
        visitor(&p);
        if !next_permutation(p.values_mut()) {
            return Ok(());
        }
    }
}

/// Splits the enumeration by first value into `n` independent jobs on the
/// current rayon pool. Every permutation is visited exactly once, in no
/// particular order.
pub fn enumerate_permutations_parallel(
    n: usize,
    visitor: impl Fn(&Permutation) + Sync,
) -> Result<(), CountError> {
    check_n(n, MAX_N)?;
    (1..=n as u32).into_par_iter().for_each(|first| {
        let mut p = block_start(n, first);
        loop {
            visitor(&p);
            if !next_permutation(&mut p.values_mut()[1..]) {
                break;
            }
        }
    });
    Ok(())
}

/// Smallest permutation of `[n]` starting with `first`.
fn block_start(n: usize, first: u32) -> Permutation {
    let mut values = Vec::with_capacity(n);
    values.push(first);
    values.extend((1..=n as u32).filter(|&v| v != first));
    Permutation::from_vec_unchecked(values)
}

/// Neighbouring columns whose values differ by one put two 1s diagonally
/// adjacent; nothing else can make a permutation matrix grow.
pub fn is_no_growth_fast(values: &[u32]) -> bool {
    values.windows(2).all(|w| w[0].abs_diff(w[1]) >= 2)
}

fn is_indecomposable_fast(values: &[u32]) -> bool {
    let mut max = 0;
    for (i, &v) in values[..values.len() - 1].iter().enumerate() {
        max = max.max(v as usize);
        if max == i + 1 {
            return false;
        }
    }
    true
}

/// The three tallies gathered in one pass.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub full: u64,
    pub full_indecomposable: u64,
    pub no_growth: u64,
}

impl Tally {
    fn observe(mut self, values: &[u32]) -> Self {
        if is_full_fast(values) {
            self.full += 1;
            if is_indecomposable_fast(values) {
                self.full_indecomposable += 1;
            }
        }
        if is_no_growth_fast(values) {
            self.no_growth += 1;
        }
        self
    }

    fn merge(self, other: Tally) -> Tally {
        Tally {
            full: self.full + other.full,
            full_indecomposable: self.full_indecomposable + other.full_indecomposable,
            no_growth: self.no_growth + other.no_growth,
        }
    }
}

/// Classifies every permutation of `[n]`.
pub fn tally(n: usize, parallel: bool) -> Result<Tally, CountError> {
    check_n(n, MAX_N)?;
    if !parallel {
        let mut t = Tally::default();
        enumerate_permutations(n, |p| t = t.observe(p.values()))?;
        return Ok(t);
    }
    Ok((1..=n as u32)
        .into_par_iter()
        .map(|first| {
            let mut p = block_start(n, first);
            let mut t = Tally::default();
            loop {
                t = t.observe(p.values());
                if !next_permutation(&mut p.values_mut()[1..]) {
                    return t;
                }
            }
        })
        .reduce(Tally::default, Tally::merge))
}

/// `p_n`, the number of full permutations of `[n]`.
pub fn count_full(n: usize) -> Result<BigUint, CountError> {
    Ok(tally(n, false)?.full.into())
}

/// `q_n`, the number of full indecomposable permutations of `[n]`.
pub fn count_full_indecomposable(n: usize) -> Result<BigUint, CountError> {
    Ok(tally(n, false)?.full_indecomposable.into())
}

/// `a_n`, the number of no-growth permutations of `[n]`.
pub fn count_no_growth(n: usize) -> Result<BigUint, CountError> {
    Ok(tally(n, false)?.no_growth.into())
}

/// Counts for one `n` and how long they took.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub n: usize,
    pub p_n: BigUint,
    pub q_n: BigUint,
    pub a_n: BigUint,
    pub elapsed: Duration,
}

/// Flat form of a [`CountReport`] for CSV and JSON. All counts fit in 64
/// bits for `n <= 12`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRecord {
    pub n: usize,
    pub p_n: u64,
    pub q_n: u64,
    pub a_n: u64,
    pub elapsed_ms: u64,
}

impl CountReport {
    pub fn record(&self) -> CountRecord {
        let small = |x: &BigUint| u64::try_from(x).expect("counts below 12! fit in u64");
        CountRecord {
            n: self.n,
            p_n: small(&self.p_n),
            q_n: small(&self.q_n),
            a_n: small(&self.a_n),
            elapsed_ms: self.elapsed.as_millis() as u64,
        }
    }
}

pub fn count_report(n: usize, parallel: bool) -> Result<CountReport, CountError> {
    let start = Instant::now();
    let t = tally(n, parallel)?;
    Ok(CountReport {
        n,
        p_n: t.full.into(),
        q_n: t.full_indecomposable.into(),
        a_n: t.no_growth.into(),
        elapsed: start.elapsed(),
    })
}

/// Both sides of
/// `n! = sum_{m=1}^{n} a_m sum_{c in C(n,m)} prod_j p_{c_j}`
/// from the given `p_1..p_n` and `a_1..a_n` (index 0 ignored).
pub fn factorial_identity_sides(
    n: usize,
    p: &[BigUint],
    a: &[BigUint],
) -> Result<(BigUint, BigUint), CountError> {
    for seq in [p, a] {
        if seq.len() <= n {
            return Err(CountError::TooFewTerms {
                needed: n + 1,
                got: seq.len(),
            });
        }
    }
    let to_int = |s: &[BigUint]| -> Vec<BigInt> { s.iter().cloned().map(BigInt::from).collect() };
    let rhs = composition_sum(&to_int(a), &to_int(p), n);
    let lhs: BigUint = (1..=n).map(BigUint::from).product();
    Ok((lhs, rhs.to_biguint().expect("sum of non-negative terms")))
}

/// The factorial identity with `p` and `a` counted by brute force.
pub fn verify_factorial_identity(n: usize) -> Result<(BigUint, BigUint), CountError> {
    check_n(n, MAX_IDENTITY_N)?;
    let mut p = vec![BigUint::default()];
    let mut a = vec![BigUint::default()];
    for k in 1..=n {
        let t = tally(k, true)?;
        p.push(t.full.into());
        a.push(t.no_growth.into());
    }
    factorial_identity_sides(n, &p, &a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Mutex;

    fn listed(n: usize) -> Vec<String> {
        let mut out = Vec::new();
        enumerate_permutations(n, |p| out.push(p.to_string().replace(' ', ""))).unwrap();
        out
    }

    #[test]
    fn lexicographic_visits() {
        assert_eq!(listed(3), ["123", "132", "213", "231", "312", "321"]);
        assert_eq!(listed(1), ["1"]);
        assert_eq!(listed(4).len(), 24);
        assert_eq!(permutations(4).count(), 24);
        assert!(matches!(
            enumerate_permutations(0, |_| {}),
            Err(CountError::OutOfRange { .. })
        ));
        assert!(enumerate_permutations(13, |_| {}).is_err());
    }

    #[test]
    fn parallel_visits_each_once() {
        let seen = Mutex::new(Vec::new());
        enumerate_permutations_parallel(5, |p| seen.lock().unwrap().push(p.clone())).unwrap();
        let mut seen = seen.into_inner().unwrap();
        seen.sort();
        assert_eq!(seen, permutations(5).collect::<Vec<_>>());
    }

    #[test]
    fn small_counts() {
        let u = |x: u32| BigUint::from(x);
        assert_eq!(count_full(1).unwrap(), u(1));
        assert_eq!(count_full(3).unwrap(), u(6));
        assert_eq!(count_full(4).unwrap(), u(22));
        assert_eq!(count_full_indecomposable(2).unwrap(), u(1));
        assert_eq!(count_full_indecomposable(4).unwrap(), u(11));
        assert_eq!(count_full_indecomposable(5).unwrap(), u(45));
        assert_eq!(count_no_growth(2).unwrap(), u(0));
        assert_eq!(count_no_growth(4).unwrap(), u(2));
        assert_eq!(count_no_growth(5).unwrap(), u(14));
    }

    #[test]
    fn factorial_identity_small() {
        let u = |x: u32| BigUint::from(x);
        let p = [0, 1, 2, 6, 22].map(u);
        let a = [0, 1, 0, 0, 2].map(u);
        // 1*22 + 0 + 0 + 2*1
        assert_eq!(factorial_identity_sides(4, &p, &a).unwrap(), (u(24), u(24)));
        assert_eq!(verify_factorial_identity(1).unwrap(), (u(1), u(1)));
        assert_eq!(verify_factorial_identity(5).unwrap(), (u(120), u(120)));
        assert!(matches!(
            factorial_identity_sides(5, &p, &a),
            Err(CountError::TooFewTerms { .. })
        ));
        assert!(verify_factorial_identity(11).is_err());
    }

    #[test]
    fn report_record() {
        let r = count_report(4, false).unwrap();
        let rec = r.record();
        assert_eq!((rec.n, rec.p_n, rec.q_n, rec.a_n), (4, 22, 11, 2));
    }
}
