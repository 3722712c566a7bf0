use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use serde::Serialize;

use super::{CompositionOrder, Convention, FibrationError, VanishingCycleWord};
use crate::mcg::CurveClass;

/// Elementary Hurwitz transposition of positions `i` and `i + 1`.
///
/// Under the standard convention, with `[.., x, y, ..]` at `i, i+1`:
///
/// * `Right` gives `[.., y, T_y(x), ..]`
/// * `Left` gives `[.., T_x^-1(y), x, ..]`
///
/// The two are mutually inverse at the same index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HurwitzDirection {
    Left,
    Right,
}

impl HurwitzDirection {
    pub fn inverse(self) -> Self {
        match self {
            HurwitzDirection::Left => HurwitzDirection::Right,
            HurwitzDirection::Right => HurwitzDirection::Left,
        }
    }
}

pub fn hurwitz_move(
    word: &VanishingCycleWord,
    index: usize,
    direction: HurwitzDirection,
) -> Result<VanishingCycleWord, FibrationError> {
    hurwitz_move_with(word, index, direction, Convention::STANDARD)
}

pub fn hurwitz_move_with(
    word: &VanishingCycleWord,
    index: usize,
    direction: HurwitzDirection,
    conv: Convention,
) -> Result<VanishingCycleWord, FibrationError> {
    let len = word.len();
    if index + 1 >= len {
        return Err(FibrationError::IndexOutOfRange { index, len });
    }
    let mut cycles = word.cycles().to_vec();
    let (x, y) = (&cycles[index], &cycles[index + 1]);
    // With later factors on the left the pair contributes T_y T_x, and
    // T_y T_x = T_{T_y x} T_y = T_x T_{T_x^-1 y}. With later factors on the
    // right the roles of T and T^-1 swap.
    let (first, second) = match (direction, conv.order) {
        (HurwitzDirection::Right, CompositionOrder::LaterOnLeft) => {
            (y.clone(), conv.twist(y).act(x))
        }
        (HurwitzDirection::Right, CompositionOrder::LaterOnRight) => {
            (y.clone(), conv.twist(y).inverse().act(x))
        }
        (HurwitzDirection::Left, CompositionOrder::LaterOnLeft) => {
            (conv.twist(x).inverse().act(y), x.clone())
        }
        (HurwitzDirection::Left, CompositionOrder::LaterOnRight) => {
            (conv.twist(x).act(y), x.clone())
        }
    };
    cycles[index] = first;
    cycles[index + 1] = second;
    Ok(VanishingCycleWord::new(cycles))
}

/// Outcome of a budgeted Hurwitz canonical-form search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonicalForm {
    pub word: VanishingCycleWord,
    /// Words visited over all rounds.
    pub explored: usize,
    /// True when some round stopped at the budget with unexplored frontier,
    /// so `word` is only the best found.
    pub budget_exhausted: bool,
}

/// Ordering used to pick canonical representatives: smaller maximal
/// coordinate first, then lexicographic. Unlike plain lexicographic order
/// this is a well-order on words of fixed length.
pub(crate) fn canonical_key(word: &VanishingCycleWord) -> (BigInt, &[CurveClass]) {
    let height = word
        .iter()
        .map(CurveClass::height)
        .max()
        .unwrap_or_default();
    (height, word.cycles())
}

/// Breadth-first exploration of the Hurwitz orbit of `start`, visiting at
/// most `budget` words. Returns visited words in discovery order and whether
/// the frontier was non-empty when the budget ran out.
pub(crate) fn orbit_bfs(
    start: &VanishingCycleWord,
    budget: usize,
    conv: Convention,
) -> (Vec<VanishingCycleWord>, bool) {
    let mut seen: HashSet<VanishingCycleWord> = HashSet::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    order.push(start.clone());
    queue.push_back(start.clone());
    let mut truncated = false;
    'outer: while let Some(w) = queue.pop_front() {
        for i in 0..w.len().saturating_sub(1) {
            for dir in [HurwitzDirection::Left, HurwitzDirection::Right] {
                let next = hurwitz_move_with(&w, i, dir, conv).expect("index in range");
                if seen.contains(&next) {
                    continue;
                }
                if seen.len() >= budget {
                    truncated = true;
                    break 'outer;
                }
                seen.insert(next.clone());
                order.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    (order, truncated)
}

pub fn hurwitz_canonical(word: &VanishingCycleWord, budget: usize) -> CanonicalForm {
    hurwitz_canonical_with(word, budget, Convention::STANDARD)
}

/// Least word (by height, then lexicographically) reachable from `word` by
/// Hurwitz moves.
///
/// Each round explores up to `budget` words breadth-first from the current
/// best and moves to the least word seen; rounds repeat until the best word
/// is its own round minimum. That fixed point makes the result idempotent at
/// a fixed budget even when the orbit is infinite.
pub fn hurwitz_canonical_with(
    word: &VanishingCycleWord,
    budget: usize,
    conv: Convention,
) -> CanonicalForm {
    let budget = budget.max(1);
    let mut current = word.clone();
    let mut explored = 0;
    let mut budget_exhausted = false;
    loop {
        let (visited, truncated) = orbit_bfs(&current, budget, conv);
        explored += visited.len();
        budget_exhausted |= truncated;
        let best = visited
            .into_iter()
            .min_by(|x, y| canonical_key(x).cmp(&canonical_key(y)))
            .expect("orbit contains its start");
        if best == current {
            return CanonicalForm {
                word: current,
                explored,
                budget_exhausted,
            };
        }
        current = best;
    }
}
