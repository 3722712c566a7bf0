//! Reference fibrations with known completions.
//!
//! Two families are recognized: a single vanishing cycle `b`, whose
//! completion is `S^1 x S^3 # CP2bar`, and the words
//!
//! ```text
//! a + (4k-1)b,  a + 4jb for j = k-1 down to 1-k,  a - (4k-1)b,  n copies of b
//! ```
//!
//! for `k >= 1`, whose completion is `(2k+1) CP2 # n CP2bar` with boundary
//! monodromy a twist power about `b` of absolute exponent `10k - 1 - n`.

use serde::Serialize;

use crate::fibration::VanishingCycleWord;
use crate::mcg::CurveClass;

/// Prime summands appearing in the reference completions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Summand {
    #[serde(rename = "CP2")]
    Cp2,
    #[serde(rename = "CP2bar")]
    Cp2Bar,
    #[serde(rename = "S1xS3")]
    S1xS3,
}

impl Summand {
    pub fn euler_characteristic(self) -> i64 {
        match self {
            Summand::Cp2 | Summand::Cp2Bar => 3,
            Summand::S1xS3 => 0,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Summand::Cp2 => "CP2",
            Summand::Cp2Bar => "CP2bar",
            Summand::S1xS3 => "S1xS3",
        }
    }
}

/// Connected sum of prime summands, with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConnectedSum(pub Vec<(Summand, u64)>);

impl ConnectedSum {
    /// `chi(A # B) = chi(A) + chi(B) - 2`.
    pub fn euler_characteristic(&self) -> i64 {
        let pieces: u64 = self.0.iter().map(|(_, k)| k).sum();
        let total: i64 = self
            .0
            .iter()
            .map(|(s, k)| s.euler_characteristic() * *k as i64)
            .sum();
        if pieces == 0 {
            // Empty connected sum is S^4.
            return 2;
        }
        total - 2 * (pieces as i64 - 1)
    }

    pub fn name(&self) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .filter(|(_, k)| *k > 0)
            .map(|(s, k)| {
                if *k == 1 {
                    s.label().to_string()
                } else {
                    format!("{k}{}", s.label())
                }
            })
            .collect();
        if parts.is_empty() {
            "S4".to_string()
        } else {
            parts.join(" # ")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ReferenceFibration {
    SingleB,
    OddCp2Family { k: u64, n: u64 },
}

impl ReferenceFibration {
    pub fn word(&self) -> VanishingCycleWord {
        match self {
            ReferenceFibration::SingleB => VanishingCycleWord::new(vec![CurveClass::b()]),
            ReferenceFibration::OddCp2Family { k, n } => family_word(*k, *n),
        }
    }

    /// The closed manifold the completion is known to be.
    pub fn completion(&self) -> ConnectedSum {
        match self {
            ReferenceFibration::SingleB => {
                ConnectedSum(vec![(Summand::S1xS3, 1), (Summand::Cp2Bar, 1)])
            }
            ReferenceFibration::OddCp2Family { k, n } => {
                let mut parts = vec![(Summand::Cp2, 2 * k + 1)];
                if *n > 0 {
                    parts.push((Summand::Cp2Bar, *n));
                }
                ConnectedSum(parts)
            }
        }
    }

    /// Expected absolute exponent of the boundary twist power.
    pub fn expected_abs_exponent(&self) -> i64 {
        match self {
            ReferenceFibration::SingleB => 1,
            ReferenceFibration::OddCp2Family { k, n } => 10 * *k as i64 - 1 - *n as i64,
        }
    }

    pub fn recognize(word: &VanishingCycleWord) -> Option<Self> {
        if *word == ReferenceFibration::SingleB.word() {
            return Some(ReferenceFibration::SingleB);
        }
        recognize_family(word).map(|(k, n)| ReferenceFibration::OddCp2Family { k, n })
    }
}

/// The word for `(2k+1) CP2 # n CP2bar`; `k >= 1`.
pub fn family_word(k: u64, n: u64) -> VanishingCycleWord {
    assert!(k >= 1, "family is defined for k >= 1");
    let k = k as i64;
    let mut pairs = vec![(1, 4 * k - 1)];
    pairs.extend((1 - k..=k - 1).rev().map(|j| (1, 4 * j)));
    pairs.push((1, -(4 * k - 1)));
    pairs.extend(std::iter::repeat_n((0, 1), n as usize));
    VanishingCycleWord::from_pairs(&pairs).expect("family cycles are primitive")
}

fn recognize_family(word: &VanishingCycleWord) -> Option<(u64, u64)> {
    let first = word.cycles().first()?;
    if first.p() != &1.into() {
        return None;
    }
    let q: i64 = first.q().try_into().ok()?;
    if q < 3 || (q + 1) % 4 != 0 {
        return None;
    }
    let k = ((q + 1) / 4) as u64;
    let base_len = 2 * k as usize + 1;
    let n = word.len().checked_sub(base_len)? as u64;
    (family_word(k, n) == *word).then_some((k, n))
}
