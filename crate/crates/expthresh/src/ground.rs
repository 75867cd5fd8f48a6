//! Labeled ground sets and subsets represented as bitmasks.
//!
//! A ground set of n elements maps labels to indices `0..n`; a [`Mask`] is
//! a subset stored as bits of a `u128`, so n can reach 128 — enough to keep
//! copy-expanded ground sets representable while exhaustive enumeration is
//! gated separately by [`enumeration_cap`].

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Hard upper bound on ground-set size (masks are `u128`).
pub const MAX_GROUND: usize = 128;

/// Default cap on n for operations that enumerate all 2^n subsets.
pub const DEFAULT_ENUM_CAP: usize = 24;

/// Environment variable that overrides [`DEFAULT_ENUM_CAP`].
pub const ENUM_CAP_VAR: &str = "EXPTHRESH_ENUM_CAP";

/// Effective cap on exhaustive 2^n enumeration.
///
/// Reads `EXPTHRESH_ENUM_CAP` once per process; malformed or out-of-range
/// values fall back to the default. The cap can never exceed 64: beyond
/// that, exhaustive enumeration is hopeless anyway.
pub fn enumeration_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(ENUM_CAP_VAR)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&v| v >= 1 && v <= 64)
            .unwrap_or(DEFAULT_ENUM_CAP)
    })
}

/// A subset of a ground set, one bit per element index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Mask(pub u128);

impl Mask {
    /// The empty subset.
    pub const EMPTY: Mask = Mask(0);

    /// Subset containing every index below `n`.
    pub fn full(n: usize) -> Mask {
        debug_assert!(n <= MAX_GROUND);
        if n == MAX_GROUND {
            Mask(u128::MAX)
        } else {
            Mask((1u128 << n) - 1)
        }
    }

    /// Subset containing only `index`.
    pub fn singleton(index: usize) -> Mask {
        debug_assert!(index < MAX_GROUND);
        Mask(1u128 << index)
    }

    /// Subset from explicit indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Mask {
        let mut bits = 0u128;
        for i in indices {
            debug_assert!(i < MAX_GROUND);
            bits |= 1u128 << i;
        }
        Mask(bits)
    }

    /// Number of elements.
    pub fn size(self) -> usize {
        self.0.count_ones() as usize
    }

    /// True if the subset is empty.
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// True if `index` is a member.
    pub fn contains(self, index: usize) -> bool {
        index < MAX_GROUND && self.0 >> index & 1 == 1
    }

    /// True if every element of `self` lies in `other`.
    pub fn is_subset_of(self, other: Mask) -> bool {
        self.0 & !other.0 == 0
    }

    /// Set union.
    pub fn union(self, other: Mask) -> Mask {
        Mask(self.0 | other.0)
    }

    /// Set intersection.
    pub fn intersection(self, other: Mask) -> Mask {
        Mask(self.0 & other.0)
    }

    /// Elements of `self` not in `other`.
    pub fn difference(self, other: Mask) -> Mask {
        Mask(self.0 & !other.0)
    }

    /// Member indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }
}

/// Masks order by size first, then lexicographically on their sorted index
/// lists, so `{0,3} < {1,2}` and every listing of subsets is canonical.
impl Ord for Mask {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size().cmp(&other.size()).then_with(|| {
            if self.0 == other.0 {
                Ordering::Equal
            } else {
                // The lowest differing index decides: whoever has it comes
                // first in ascending-lex order.
                let diff = self.0 ^ other.0;
                let low = diff & diff.wrapping_neg();
                if self.0 & low != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        })
    }
}

impl PartialOrd for Mask {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (pos, i) in self.indices().enumerate() {
            if pos > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// An ordered, labeled ground set.
///
/// Element order is fixed at construction; indices into it are what masks
/// refer to, and label lookup is by exact string match.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    /// Builds a ground set from distinct, nonempty labels.
    pub fn new<I, S>(labels: I) -> Result<GroundSet>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyGround);
        }
        if labels.len() > MAX_GROUND {
            return Err(Error::GroundTooLarge {
                got: labels.len(),
                cap: MAX_GROUND,
            });
        }
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() {
                return Err(Error::Parse("empty ground label".into()));
            }
            if labels[..i].contains(label) {
                return Err(Error::DuplicateLabel {
                    label: label.clone(),
                });
            }
        }
        Ok(GroundSet { labels })
    }

    /// Ground set labeled `1..=n`.
    pub fn numbered(n: usize) -> Result<GroundSet> {
        GroundSet::new((1..=n).map(|i| i.to_string()))
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false: empty ground sets cannot be constructed.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// All element labels in index order.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Label of element `index`.
    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    /// Index of `label`, if present.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Mask holding every element.
    pub fn full_mask(&self) -> Mask {
        Mask::full(self.len())
    }

    /// Mask from labels; rejects unknown ones.
    pub fn mask_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Mask> {
        let mut mask = Mask::EMPTY;
        for label in labels {
            let label = label.as_ref();
            match self.index_of(label) {
                Some(i) => mask = mask.union(Mask::singleton(i)),
                None => {
                    return Err(Error::UnknownLabel {
                        label: label.to_string(),
                    })
                }
            }
        }
        Ok(mask)
    }

    /// Labels of a mask's members, in index order.
    pub fn labels_of(&self, mask: Mask) -> Vec<String> {
        debug_assert!(mask.is_subset_of(self.full_mask()));
        mask.indices().map(|i| self.labels[i].clone()).collect()
    }
}
