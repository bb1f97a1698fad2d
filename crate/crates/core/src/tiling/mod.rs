//! Tile merging and the bracketing of permutations.
//!
//! Instead of mutating single cells, merging joins two diagonally adjacent
//! square tiles into one. Each tile is tracked as a [`Meld`] over a run of
//! positions, so the whole process runs on the one-line notation without
//! touching a grid. Two melds are diagonally adjacent exactly when they are
//! neighbours in the list and their values together form a run of
//! consecutive integers.

mod meld;

pub use meld::{parse_meld, serialize_meld, Kind, Meld, Node};

use crate::error::TilingError;
use crate::percolation::{FinalConfiguration, Tile};
use crate::perm::{Permutation, Word};

/// Scan direction for [`merge_run`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Left,
    Right,
}

/// Final melds of a merging run, left to right, and the tiles they encode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeOutcome {
    pub melds: Vec<Meld>,
    pub full: bool,
    pub tiles: FinalConfiguration,
}

impl MergeOutcome {
    fn new(n: usize, melds: Vec<Meld>) -> Self {
        let tiles = melds
            .iter()
            .map(|m| Tile {
                row: n - m.max() as usize + 1,
                col: *m.span().start(),
                size: m.len(),
            })
            .collect();
        MergeOutcome {
            full: melds.len() == 1,
            tiles: FinalConfiguration::from_tiles(n, tiles),
            melds,
        }
    }

    /// The single meld of a full permutation.
    pub fn root(&self) -> Option<&Meld> {
        match self.melds.as_slice() {
            [root] => Some(root),
            _ => None,
        }
    }

    /// Serialized melds, one per final tile.
    pub fn bracketings(&self) -> Vec<String> {
        self.melds.iter().map(serialize_meld).collect()
    }
}

fn singletons(p: &Permutation) -> Vec<Meld> {
    p.values()
        .iter()
        .enumerate()
        .map(|(i, &v)| Meld::leaf(v, i + 1))
        .collect()
}

/// Merges the pair at `i, i + 1` in place if possible.
fn try_merge_at(melds: &mut Vec<Meld>, i: usize) -> bool {
    if Meld::merge_kind(&melds[i], &melds[i + 1]).is_none() {
        return false;
    }
    let right = melds.remove(i + 1);
    let left = std::mem::replace(&mut melds[i], Meld::leaf(0, 0));
    melds[i] = Meld::join(left, right).unwrap_or_else(|_| unreachable!("checked mergeable"));
    true
}

/// Left or right merging: scan the meld list from one end, merge the first
/// mergeable neighbouring pair, and start the scan over. Stops when a full
/// scan finds nothing to merge.
pub fn merge_run(p: &Permutation, direction: Direction) -> MergeOutcome {
    let mut melds = singletons(p);
    loop {
        let pairs = melds.len().saturating_sub(1);
        let merged = match direction {
            Direction::Left => (0..pairs).any(|i| try_merge_at(&mut melds, i)),
            Direction::Right => (0..pairs).rev().any(|i| try_merge_at(&mut melds, i)),
        };
        if !merged {
            break;
        }
    }
    MergeOutcome::new(p.len(), melds)
}

/// A single left-to-right pass in which a freshly merged meld is merged
/// again with its right neighbour whenever possible; passes repeat until
/// one makes no merge. Produces `[4 [(2 3) 1]]` for `4231`, which breaks
/// the alternation property that [`merge_run`] guarantees. Kept for
/// demonstration only.
pub fn merge_eager(p: &Permutation) -> MergeOutcome {
    let mut melds = singletons(p);
    loop {
        let mut merged_any = false;
        let mut i = 0;
        while i + 1 < melds.len() {
            if try_merge_at(&mut melds, i) {
                merged_any = true;
            } else {
                i += 1;
            }
        }
        if !merged_any {
            break;
        }
    }
    MergeOutcome::new(p.len(), melds)
}

/// Value ranges `(min, max)` of the melds left merging ends with, computed
/// with a stack and no tree. Equivalent to [`merge_run`] with
/// [`Direction::Left`]: a restarted scan always finds its next pair at or
/// just after the last merge, which is exactly the top of the stack.
pub fn left_merge_ranges(values: &[u32]) -> Vec<(u32, u32)> {
    let mut stack: Vec<(u32, u32)> = Vec::with_capacity(values.len());
    for &v in values {
        let mut top = (v, v);
        while let Some(&(lo, hi)) = stack.last() {
            if hi + 1 == top.0 || lo == top.1 + 1 {
                top = (lo.min(top.0), hi.max(top.1));
                stack.pop();
            } else {
                break;
            }
        }
        stack.push(top);
    }
    stack
}

/// Allocation-free fullness test for enumeration hot loops, `n <= 64`.
pub fn is_full_fast(values: &[u32]) -> bool {
    let mut stack = [(0u32, 0u32); 64];
    let mut depth = 0;
    for &v in values {
        let mut top = (v, v);
        while depth > 0 {
            let (lo, hi) = stack[depth - 1];
            if hi + 1 == top.0 || lo == top.1 + 1 {
                top = (lo.min(top.0), hi.max(top.1));
                depth -= 1;
            } else {
                break;
            }
        }
        stack[depth] = top;
        depth += 1;
    }
    depth == 1
}

/// Kind of the root of the left bracketing of a full permutation.
pub fn top_level_kind(p: &Permutation) -> Result<Kind, TilingError> {
    if p.len() == 1 {
        return Err(TilingError::Singleton);
    }
    let outcome = merge_run(p, Direction::Left);
    outcome
        .root()
        .and_then(Meld::kind)
        .ok_or(TilingError::NotFull)
}

/// Indecomposable components of a full permutation read off its left
/// bracketing: while the root is Round its right child is the last
/// component, and the left child is peeled next.
pub fn components_via_bracketing(p: &Permutation) -> Result<Vec<Word>, TilingError> {
    let outcome = merge_run(p, Direction::Left);
    let mut node = outcome.root().ok_or(TilingError::NotFull)?;
    let mut components = Vec::new();
    while let Some(n) = node.node().filter(|n| n.kind() == Kind::Round) {
        components.push(n.right());
        node = n.left();
    }
    components.push(node);
    Ok(components
        .into_iter()
        .rev()
        .map(|m| Word::new(m.leaves()).expect("leaves are distinct"))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_permutation;

    fn perm(s: &str) -> Permutation {
        parse_permutation(s).unwrap()
    }

    fn left(s: &str) -> Vec<String> {
        merge_run(&perm(s), Direction::Left).bracketings()
    }

    fn right(s: &str) -> Vec<String> {
        merge_run(&perm(s), Direction::Right).bracketings()
    }

    #[test]
    fn bracketings_of_small_examples() {
        assert_eq!(left("1324"), ["((1 [3 2]) 4)"]);
        assert_eq!(right("1324"), ["(1 ([3 2] 4))"]);
        assert_eq!(left("4231"), ["[[4 (2 3)] 1]"]);
        assert_eq!(left("312645798"), ["((([3 (1 2)] [6 (4 5)]) 7) [9 8])"]);
        assert_eq!(left("213"), ["([2 1] 3)"]);
        assert_eq!(left("2413"), ["2", "4", "1", "3"]);
    }

    #[test]
    fn eager_examples() {
        assert_eq!(merge_eager(&perm("4231")).bracketings(), ["[4 [(2 3) 1]]"]);
        assert_eq!(merge_eager(&perm("1324")).bracketings(), ["(1 ([3 2] 4))"]);
        assert_eq!(merge_eager(&perm("21")).bracketings(), ["[2 1]"]);
        assert_eq!(left("21"), ["[2 1]"]);
    }

    #[test]
    fn partial_merges_give_tiles() {
        let out = merge_run(&perm("34152"), Direction::Left);
        assert!(!out.full);
        let sizes: usize = out.tiles.sizes().iter().sum();
        assert_eq!(sizes, 5);
        assert_eq!(out.melds.iter().flat_map(Meld::leaves).collect::<Vec<_>>(), vec![3, 4, 1, 5, 2]);
    }

    #[test]
    fn top_level_kinds() {
        assert_eq!(top_level_kind(&perm("1324")), Ok(Kind::Round));
        assert_eq!(top_level_kind(&perm("21")), Ok(Kind::Square));
        assert_eq!(top_level_kind(&perm("4231")), Ok(Kind::Square));
        assert_eq!(top_level_kind(&perm("1")), Err(TilingError::Singleton));
        assert_eq!(top_level_kind(&perm("2413")), Err(TilingError::NotFull));
    }

    #[test]
    fn components_from_bracketing() {
        let compact = |s: &str| -> Vec<String> {
            components_via_bracketing(&perm(s))
                .unwrap()
                .iter()
                .map(Word::compact)
                .collect()
        };
        assert_eq!(compact("312645798"), ["312", "645", "7", "98"]);
        assert_eq!(compact("213"), ["21", "3"]);
        assert_eq!(compact("4231"), ["4231"]);
        assert_eq!(compact("1"), ["1"]);
        assert_eq!(
            components_via_bracketing(&perm("2413")),
            Err(TilingError::NotFull)
        );
    }

    #[test]
    fn stack_matches_scan() {
        for s in ["1324", "4231", "34152", "2413", "312645798", "1"] {
            let p = perm(s);
            let ranges: Vec<(u32, u32)> = merge_run(&p, Direction::Left)
                .melds
                .iter()
                .map(|m| (m.min(), m.max()))
                .collect();
            assert_eq!(left_merge_ranges(p.values()), ranges);
            assert_eq!(is_full_fast(p.values()), ranges.len() == 1);
        }
    }
}
