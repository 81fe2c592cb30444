//! Scalar abstraction for edge weights.
//!
//! Every algorithm in the crate is written against [`Weight`], so the same code
//! runs on `f64` graphs read from disk, on exact integer graphs used by the
//! test suites, and on unsigned hop counts.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_traits::Num;
use serde::{Deserialize, Serialize};

/// An edge weight. Values must be totally ordered in practice (no NaN).
pub trait Weight:
    Num + Copy + PartialOrd + Debug + Display + FromStr + Send + Sync + 'static
{
    /// Total comparison. Panics on incomparable values, which the graph
    /// constructor rejects up front.
    #[inline]
    fn cmp_total(&self, other: &Self) -> Ordering {
        self.partial_cmp(other)
            .expect("edge weights must be totally ordered")
    }

    #[inline]
    fn is_negative_weight(&self) -> bool {
        *self < Self::zero()
    }

    /// `true` unless the value is NaN.
    #[inline]
    fn is_comparable(&self) -> bool {
        self.partial_cmp(self).is_some()
    }
}

impl Weight for f32 {}
impl Weight for f64 {}
impl Weight for i32 {}
impl Weight for i64 {}
impl Weight for u32 {}
impl Weight for u64 {}
impl Weight for usize {}

/// Lexicographic `(weight, hops)` key.
///
/// Ordering paths by weight first and edge count second is the integer
/// analogue of adding an infinitesimal ε′ to every edge: among equally heavy
/// paths the one with fewer edges wins, and every edge strictly increases the
/// key even when its weight is zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathKey<W> {
    pub weight: W,
    pub hops: usize,
}

impl<W: Weight> PathKey<W> {
    pub fn zero() -> Self {
        PathKey {
            weight: W::zero(),
            hops: 0,
        }
    }

    /// Key of this path extended (or prefixed) by one edge of weight `w`.
    #[inline]
    pub fn extend(self, w: W) -> Self {
        PathKey {
            weight: self.weight + w,
            hops: self.hops + 1,
        }
    }
}

impl<W: Weight> Eq for PathKey<W> {}

impl<W: Weight> PartialOrd for PathKey<W> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<W: Weight> Ord for PathKey<W> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight
            .cmp_total(&other.weight)
            .then(self.hops.cmp(&other.hops))
    }
}

/// Smaller of two optional distances, `None` meaning infinity.
pub fn min_dist<W: Weight>(a: Option<W>, b: Option<W>) -> Option<W> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if y < x { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}
