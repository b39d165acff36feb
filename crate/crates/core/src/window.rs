use serde::{Deserialize, Serialize};

use crate::Domain;

/// A closed integer interval `[lo, hi]`; empty when `lo > hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub const fn new(lo: i64, hi: i64) -> Self {
        Window { lo, hi }
    }

    /// `[-radius, radius]`.
    pub const fn symmetric(radius: i64) -> Self {
        Window {
            lo: -radius,
            hi: radius,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn len(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            (self.hi - self.lo + 1) as usize
        }
    }

    pub fn contains(&self, n: i64) -> bool {
        self.lo <= n && n <= self.hi
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + Clone {
        self.lo..=self.hi
    }

    /// Intersection with the exponents admitted by `domain`.
    pub fn clip(&self, domain: Domain) -> Self {
        match domain {
            Domain::Poly => Window {
                lo: self.lo.max(0),
                hi: self.hi,
            },
            Domain::Laurent => *self,
        }
    }

    pub fn widen(&self, by: i64) -> Self {
        Window {
            lo: self.lo - by,
            hi: self.hi + by,
        }
    }

    pub fn hull(&self, other: &Window) -> Self {
        Window {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }
}

impl From<[i64; 2]> for Window {
    fn from([lo, hi]: [i64; 2]) -> Self {
        Window { lo, hi }
    }
}

impl From<Window> for [i64; 2] {
    fn from(w: Window) -> Self {
        [w.lo, w.hi]
    }
}
