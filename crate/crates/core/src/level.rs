//! Half-integer level and point indices, stored as doubled integers.

use std::fmt;

/// A level or point index in half-integer steps: `twice = 2*value`.
///
/// Even values are whole levels (`k`), odd values are half levels (`k+1/2`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LevelIndex {
    pub twice: u32,
}

impl LevelIndex {
    pub fn whole(k: u32) -> Self {
        LevelIndex { twice: 2 * k }
    }

    /// The half level `k + 1/2`.
    pub fn half(k: u32) -> Self {
        LevelIndex { twice: 2 * k + 1 }
    }

    pub fn from_twice(twice: u32) -> Self {
        LevelIndex { twice }
    }

    pub fn is_half(&self) -> bool {
        self.twice % 2 == 1
    }

    /// Integer part: `k` for both `k` and `k+1/2`.
    pub fn floor(&self) -> u32 {
        self.twice / 2
    }

    /// Number of diagram strands of the ambient algebra at this level:
    /// `k` for level `k`, `k+1` for level `k+1/2`.
    pub fn strands(&self) -> u32 {
        (self.twice + 1) / 2
    }

    pub fn prev(&self) -> LevelIndex {
        LevelIndex {
            twice: self.twice - 1,
        }
    }

    pub fn next(&self) -> LevelIndex {
        LevelIndex {
            twice: self.twice + 1,
        }
    }

    /// Parses "3", "3.5" or "3+1/2".
    pub fn parse(s: &str) -> Option<LevelIndex> {
        let s = s.trim();
        if let Some(k) = s.strip_suffix("+1/2") {
            return k.trim().parse::<u32>().ok().map(LevelIndex::half);
        }
        if let Some(k) = s.strip_suffix(".5") {
            return k.trim().parse::<u32>().ok().map(LevelIndex::half);
        }
        s.parse::<u32>().ok().map(LevelIndex::whole)
    }
}

impl fmt::Display for LevelIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_half() {
            write!(f, "{}+1/2", self.floor())
        } else {
            write!(f, "{}", self.floor())
        }
    }
}
