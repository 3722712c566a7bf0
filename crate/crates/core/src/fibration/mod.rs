//! Genus-one Lefschetz fibrations over the disk as words of vanishing cycles.
//!
//! A fibration is recorded by the ordered list of its vanishing cycles,
//! position 0 being the first singular fiber met when traversing the base
//! in the chosen orientation. Each singular fiber contributes the Dehn twist
//! about its vanishing cycle, and the boundary monodromy is the ordered
//! product of those twists.

mod hurwitz;
mod search;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::mcg::{CurveClass, Handedness, McgError, UnimodularMatrix};

pub use hurwitz::{
    hurwitz_canonical, hurwitz_canonical_with, hurwitz_move, hurwitz_move_with, CanonicalForm,
    HurwitzDirection,
};
pub use search::{
    curve_alphabet, search_factorizations, search_factorizations_with, sl2_ball, Quotient,
    SearchLimits, SearchResult,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FibrationError {
    #[error("Hurwitz move index {index} out of range for a word of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("search exceeded its node limit of {limit}; {} words found before stopping", partial.len())]
    ResourceLimit {
        limit: usize,
        partial: Vec<VanishingCycleWord>,
    },
    #[error("coefficient bound must be at least 1")]
    ZeroBound,
    #[error(transparent)]
    Mcg(#[from] McgError),
}

/// Order in which the twists of successive singular fibers are multiplied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CompositionOrder {
    /// `[c1, ..., cm] -> T_cm * ... * T_c1`.
    #[default]
    LaterOnLeft,
    /// `[c1, ..., cm] -> T_c1 * ... * T_cm`.
    LaterOnRight,
}

impl CompositionOrder {
    pub fn flipped(self) -> Self {
        match self {
            CompositionOrder::LaterOnLeft => CompositionOrder::LaterOnRight,
            CompositionOrder::LaterOnRight => CompositionOrder::LaterOnLeft,
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            CompositionOrder::LaterOnLeft => {
                "[c1..cm] -> T_cm * ... * T_c1 (later fibers on the left)"
            }
            CompositionOrder::LaterOnRight => {
                "[c1..cm] -> T_c1 * ... * T_cm (later fibers on the right)"
            }
        }
    }

    /// Appends `next` to a running product.
    pub fn push(self, acc: &UnimodularMatrix, next: &UnimodularMatrix) -> UnimodularMatrix {
        match self {
            CompositionOrder::LaterOnLeft => next.compose(acc),
            CompositionOrder::LaterOnRight => acc.compose(next),
        }
    }

    /// Product of two consecutive blocks, `first` then `second`.
    pub fn join(self, first: &UnimodularMatrix, second: &UnimodularMatrix) -> UnimodularMatrix {
        self.push(first, second)
    }
}

/// Twist handedness together with composition order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct Convention {
    pub handedness: Handedness,
    pub order: CompositionOrder,
}

impl Convention {
    /// Right-handed twists, later fibers composed on the left.
    pub const STANDARD: Convention = Convention {
        handedness: Handedness::Right,
        order: CompositionOrder::LaterOnLeft,
    };

    /// Left-handed twists, later fibers composed on the right. The other
    /// setting under which the reference family has twist-power boundary
    /// monodromy.
    pub const MIRROR: Convention = Convention {
        handedness: Handedness::Left,
        order: CompositionOrder::LaterOnRight,
    };

    pub fn twist(&self, v: &CurveClass) -> UnimodularMatrix {
        self.handedness.twist(v)
    }
}

/// Ordered vanishing cycles of a genus-one Lefschetz fibration.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct VanishingCycleWord(Vec<CurveClass>);

impl VanishingCycleWord {
    pub fn new(cycles: Vec<CurveClass>) -> Self {
        Self(cycles)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn from_pairs(pairs: &[(i64, i64)]) -> Result<Self, McgError> {
        pairs
            .iter()
            .map(|&(p, q)| CurveClass::new(p, q))
            .collect::<Result<_, _>>()
            .map(Self)
    }

    pub fn cycles(&self) -> &[CurveClass] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, CurveClass> {
        self.0.iter()
    }

    pub fn into_inner(self) -> Vec<CurveClass> {
        self.0
    }

    /// Applies `g` to every cycle.
    pub fn act(&self, g: &UnimodularMatrix) -> Self {
        Self(self.0.iter().map(|c| g.act(c)).collect())
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut cycles = self.0.clone();
        cycles.extend_from_slice(&other.0);
        Self(cycles)
    }
}

impl fmt::Display for VanishingCycleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for c in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromIterator<CurveClass> for VanishingCycleWord {
    fn from_iter<I: IntoIterator<Item = CurveClass>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Base {
    Disk,
    /// A compact surface of the given genus with the given number of
    /// boundary circles. Representable, but outside what the certifier
    /// accepts.
    Surface {
        genus: u32,
        boundary_components: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FibrationSpec {
    pub fiber_genus: u32,
    pub base: Base,
    pub word: VanishingCycleWord,
}

impl FibrationSpec {
    /// Genus-one fibration over the disk.
    pub fn over_disk(word: VanishingCycleWord) -> Self {
        Self {
            fiber_genus: 1,
            base: Base::Disk,
            word,
        }
    }
}

pub fn total_monodromy(word: &VanishingCycleWord) -> UnimodularMatrix {
    total_monodromy_with(word, Convention::STANDARD)
}

pub fn total_monodromy_with(word: &VanishingCycleWord, conv: Convention) -> UnimodularMatrix {
    word.iter().fold(UnimodularMatrix::identity(), |acc, c| {
        conv.order.push(&acc, &conv.twist(c))
    })
}

/// Euler characteristic of the total space of a genus-`g` Lefschetz
/// fibration over the disk with `mu` singular fibers.
pub fn euler_characteristic_open(genus: u32, mu: usize) -> i64 {
    2 * (2 - 2 * i64::from(genus)) + mu as i64
}
