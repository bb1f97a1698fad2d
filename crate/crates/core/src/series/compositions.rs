use std::fmt;

use crate::error::CountError;

/// An ordered list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Option<Self> {
        (!parts.is_empty() && parts.iter().all(|&p| p >= 1)).then_some(Composition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// How many parts equal `value`.
    pub fn multiplicity(&self, value: usize) -> usize {
        self.parts.iter().filter(|&&p| p == value).count()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Compositions of `n` into exactly `m` parts in lexicographic order.
#[derive(Clone, Debug)]
pub struct Compositions {
    next: Option<Vec<usize>>,
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let current = self.next.take()?;
        let m = current.len();
        // Bump the rightmost part (other than the last) that still leaves
        // room: everything after it resets to 1s and the last part absorbs
        // the rest.
        let mut tail = current[m - 1];
        for i in (0..m.saturating_sub(1)).rev() {
            let slots = m - 1 - i;
            if tail > slots {
                let mut succ = current.clone();
                succ[i] += 1;
                succ[i + 1..m - 1].iter_mut().for_each(|p| *p = 1);
                succ[m - 1] = tail - 1 - (slots - 1);
                self.next = Some(succ);
                break;
            }
            tail += current[i];
        }
        Some(Composition { parts: current })
    }
}

pub fn compositions(n: usize, m: usize) -> Result<Compositions, CountError> {
    if m == 0 || m > n {
        return Err(CountError::PartCount { m, n });
    }
    let mut first = vec![1; m];
    first[m - 1] = n - m + 1;
    Ok(Compositions { next: Some(first) })
}

/// All `2^(n-1)` compositions of `n`, grouped by number of parts.
pub fn all_compositions(n: usize) -> impl Iterator<Item = Composition> {
    (1..=n).flat_map(move |m| compositions(n, m).expect("1 <= m <= n"))
}

/// Calls `visit(multiplicities, parts)` once per partition of `n`, where
/// `multiplicities[i]` counts the parts equal to `i` (index 0 unused).
pub fn for_each_partition(n: usize, mut visit: impl FnMut(&[usize], usize)) {
    fn walk(
        remaining: usize,
        largest: usize,
        mult: &mut Vec<usize>,
        parts: usize,
        visit: &mut dyn FnMut(&[usize], usize),
    ) {
        if remaining == 0 {
            visit(mult, parts);
            return;
        }
        for part in (1..=largest.min(remaining)).rev() {
            mult[part] += 1;
            walk(remaining - part, part, mult, parts + 1, visit);
            mult[part] -= 1;
        }
    }
    let mut mult = vec![0; n + 1];
    walk(n, n, &mut mult, 0, &mut visit);
}
