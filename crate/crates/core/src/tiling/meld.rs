use std::fmt;
use std::ops::RangeInclusive;

use crate::error::TilingError;

/// Node kind of a meld. `Round` joins a lower block to the higher block on
/// its right, `Square` a higher block to the lower block on its right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Kind {
    Round,
    Square,
}

impl Kind {
    pub fn toggled(self) -> Kind {
        match self {
            Kind::Round => Kind::Square,
            Kind::Square => Kind::Round,
        }
    }
}

/// A bracketed run of consecutive positions whose values form a run of
/// consecutive integers. Encodes a square tile built by merging.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Meld {
    Leaf { value: u32, position: usize },
    Node(Box<Node>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Node {
    kind: Kind,
    left: Meld,
    right: Meld,
    min: u32,
    max: u32,
    start: usize,
    end: usize,
}

impl Node {
    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn left(&self) -> &Meld {
        &self.left
    }

    pub fn right(&self) -> &Meld {
        &self.right
    }
}

impl Meld {
    pub fn leaf(value: u32, position: usize) -> Meld {
        Meld::Leaf { value, position }
    }

    pub fn min(&self) -> u32 {
        match self {
            Meld::Leaf { value, .. } => *value,
            Meld::Node(n) => n.min,
        }
    }

    pub fn max(&self) -> u32 {
        match self {
            Meld::Leaf { value, .. } => *value,
            Meld::Node(n) => n.max,
        }
    }

    /// 1-based positions covered in the permutation.
    pub fn span(&self) -> RangeInclusive<usize> {
        match self {
            Meld::Leaf { position, .. } => *position..=*position,
            Meld::Node(n) => n.start..=n.end,
        }
    }

    pub fn len(&self) -> usize {
        self.span().count()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn kind(&self) -> Option<Kind> {
        match self {
            Meld::Leaf { .. } => None,
            Meld::Node(n) => Some(n.kind),
        }
    }

    pub fn node(&self) -> Option<&Node> {
        match self {
            Meld::Leaf { .. } => None,
            Meld::Node(n) => Some(n),
        }
    }

    /// The kind a merger of `left` and `right` would get, if they can merge:
    /// adjacent positions and jointly consecutive values.
    pub fn merge_kind(left: &Meld, right: &Meld) -> Option<Kind> {
        if *right.span().start() != *left.span().end() + 1 {
            return None;
        }
        if left.max() + 1 == right.min() {
            Some(Kind::Round)
        } else if left.min() == right.max() + 1 {
            Some(Kind::Square)
        } else {
            None
        }
    }

    /// Merges two neighbouring melds, or hands them back when they cannot
    /// be merged.
    pub fn join(left: Meld, right: Meld) -> Result<Meld, (Meld, Meld)> {
        match Meld::merge_kind(&left, &right) {
            Some(kind) => Ok(Meld::Node(Box::new(Node {
                kind,
                min: left.min().min(right.min()),
                max: left.max().max(right.max()),
                start: *left.span().start(),
                end: *right.span().end(),
                left,
                right,
            }))),
            None => Err((left, right)),
        }
    }

    /// Leaf values in position order.
    pub fn leaves(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.len());
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<u32>) {
        match self {
            Meld::Leaf { value, .. } => out.push(*value),
            Meld::Node(n) => {
                n.left.collect_leaves(out);
                n.right.collect_leaves(out);
            }
        }
    }

    /// Every non-leaf node's right child is a leaf or of the other kind.
    pub fn right_children_alternate(&self) -> bool {
        self.children_alternate(|n| &n.right)
    }

    /// Every non-leaf node's left child is a leaf or of the other kind.
    pub fn left_children_alternate(&self) -> bool {
        self.children_alternate(|n| &n.left)
    }

    fn children_alternate(&self, pick: fn(&Node) -> &Meld) -> bool {
        match self {
            Meld::Leaf { .. } => true,
            Meld::Node(n) => {
                pick(n).kind() != Some(n.kind)
                    && n.left.children_alternate(pick)
                    && n.right.children_alternate(pick)
            }
        }
    }

    /// Swaps children at every node, toggles every kind, and sends position
    /// `i` to `n + 1 - i`. This is the meld of the reversed permutation read
    /// the other way round.
    pub fn mirrored(&self, n: usize) -> Meld {
        match self {
            Meld::Leaf { value, position } => Meld::leaf(*value, n + 1 - position),
            Meld::Node(node) => Meld::Node(Box::new(Node {
                kind: node.kind.toggled(),
                left: node.right.mirrored(n),
                right: node.left.mirrored(n),
                min: node.min,
                max: node.max,
                start: n + 1 - node.end,
                end: n + 1 - node.start,
            })),
        }
    }

    /// Checks the structural rules on every node: contiguous positions,
    /// consecutive values, and the kind matching the min/max relation.
    pub fn is_well_formed(&self) -> bool {
        match self {
            Meld::Leaf { .. } => true,
            Meld::Node(n) => {
                n.left.is_well_formed()
                    && n.right.is_well_formed()
                    && Meld::merge_kind(&n.left, &n.right) == Some(n.kind)
                    && n.start == *n.left.span().start()
                    && n.end == *n.right.span().end()
                    && n.min == n.left.min().min(n.right.min())
                    && n.max == n.left.max().max(n.right.max())
                    && (n.max - n.min) as usize + 1 == n.end - n.start + 1
            }
        }
    }
}

/// `(l r)` for Round, `[l r]` for Square, one space between siblings.
impl fmt::Display for Meld {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Meld::Leaf { value, .. } => write!(f, "{value}"),
            Meld::Node(n) => {
                let (open, close) = match n.kind {
                    Kind::Round => ('(', ')'),
                    Kind::Square => ('[', ']'),
                };
                write!(f, "{open}{} {}{close}", n.left, n.right)
            }
        }
    }
}

pub fn serialize_meld(m: &Meld) -> String {
    m.to_string()
}

/// Parses the bracketing grammar
/// `meld := INT | "(" meld " " meld ")" | "[" meld " " meld "]"`,
/// byte-exact. Leaves are numbered from position `first_position`; the
/// bracket kinds must agree with the values.
pub fn parse_meld(text: &str, first_position: usize) -> Result<Meld, TilingError> {
    let mut parser = Parser {
        bytes: text.as_bytes(),
        at: 0,
        next_position: first_position,
    };
    let meld = parser.meld()?;
    if parser.at != parser.bytes.len() {
        return Err(TilingError::Syntax(parser.at));
    }
    Ok(meld)
}

struct Parser<'a> {
    bytes: &'a [u8],
    at: usize,
    next_position: usize,
}

impl Parser<'_> {
    fn expect(&mut self, b: u8) -> Result<(), TilingError> {
        if self.bytes.get(self.at) == Some(&b) {
            self.at += 1;
            Ok(())
        } else {
            Err(TilingError::Syntax(self.at))
        }
    }

    fn meld(&mut self) -> Result<Meld, TilingError> {
        let (kind, close) = match self.bytes.get(self.at) {
            Some(b'(') => (Kind::Round, b')'),
            Some(b'[') => (Kind::Square, b']'),
            Some(b) if b.is_ascii_digit() && *b != b'0' => return self.leaf(),
            _ => return Err(TilingError::Syntax(self.at)),
        };
        let open_at = self.at;
        self.at += 1;
        let left = self.meld()?;
        self.expect(b' ')?;
        let right = self.meld()?;
        self.expect(close)?;
        let text = String::from_utf8_lossy(&self.bytes[open_at..self.at]).into_owned();
        match Meld::join(left, right) {
            Ok(m) if m.kind() == Some(kind) => Ok(m),
            _ => Err(TilingError::NotAMeld(text)),
        }
    }

    fn leaf(&mut self) -> Result<Meld, TilingError> {
        let start = self.at;
        while self.bytes.get(self.at).is_some_and(u8::is_ascii_digit) {
            self.at += 1;
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.at]).expect("ascii digits");
        let value = digits.parse().map_err(|_| TilingError::Syntax(start))?;
        let position = self.next_position;
        self.next_position += 1;
        Ok(Meld::leaf(value, position))
    }
}
