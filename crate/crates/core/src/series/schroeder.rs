use num_bigint::BigUint;
use num_traits::One;

/// Large Schröder numbers `S_0 ..= S_k` from
/// `c_{n+1} = c_n + sum_{j=0}^{n} c_j c_{n-j}`, `c_0 = 1`.
pub fn schroeder_large_upto(k: usize) -> Vec<BigUint> {
    let mut c: Vec<BigUint> = Vec::with_capacity(k + 1);
    c.push(BigUint::one());
    for n in 0..k {
        let convolution: BigUint = (0..=n).map(|j| &c[j] * &c[n - j]).sum();
        let next = &c[n] + convolution;
        c.push(next);
    }
    c
}

pub fn schroeder_large(k: usize) -> BigUint {
    schroeder_large_upto(k).pop().expect("at least S_0")
}

/// Little Schröder numbers: `s_0 = 1`, `s_k = S_k / 2` for `k >= 1`.
pub fn schroeder_little_upto(k: usize) -> Vec<BigUint> {
    let two = BigUint::from(2u8);
    schroeder_large_upto(k)
        .into_iter()
        .enumerate()
        .map(|(i, s)| {
            if i == 0 {
                s
            } else {
                debug_assert!((&s % &two) == BigUint::default());
                s / &two
            }
        })
        .collect()
}

pub fn schroeder_little(k: usize) -> BigUint {
    schroeder_little_upto(k).pop().expect("at least s_0")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(v: Vec<BigUint>) -> Vec<u64> {
        v.into_iter().map(|x| u64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn large_values() {
        assert_eq!(
            small(schroeder_large_upto(8)),
            [1, 2, 6, 22, 90, 394, 1806, 8558, 41586]
        );
        assert_eq!(schroeder_large(7), BigUint::from(8558u32));
        assert_eq!(schroeder_large(0), BigUint::from(1u32));
    }

    #[test]
    fn little_values() {
        assert_eq!(small(schroeder_little_upto(5)), [1, 1, 3, 11, 45, 197]);
        assert_eq!(schroeder_little(7), BigUint::from(4279u32));
    }

    #[test]
    fn halving_is_exact() {
        let big = schroeder_large_upto(60);
        let little = schroeder_little_upto(60);
        for k in 1..=60 {
            assert_eq!(&little[k] * 2u32, big[k]);
        }
    }
}
