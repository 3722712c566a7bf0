//! Bounded search for twist factorizations of a fixed monodromy.

use std::collections::{BTreeSet, HashMap};

use num_integer::Integer;
use serde::Serialize;

use super::hurwitz::{canonical_key, orbit_bfs};
use super::{CompositionOrder, Convention, FibrationError, VanishingCycleWord};
use crate::mcg::{CurveClass, UnimodularMatrix};

/// Equivalence applied to the raw set of factorizations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quotient {
    #[default]
    None,
    /// Global conjugation by elements of the centralizer of the target with
    /// entries bounded by the coefficient bound.
    Conjugation,
    /// Hurwitz equivalence, detected by budgeted orbit exploration.
    Hurwitz,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Partial words enumerated plus half-words stored before giving up.
    pub max_nodes: usize,
    /// Orbit budget per word for the Hurwitz quotient.
    pub hurwitz_budget: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self {
            max_nodes: 20_000_000,
            hurwitz_budget: 2_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    /// One representative per class, sorted.
    pub words: Vec<VanishingCycleWord>,
    /// Number of raw factorizations in each representative's class.
    pub class_sizes: Vec<usize>,
    /// Number of factorizations before quotienting.
    pub raw_count: usize,
    pub nodes: usize,
    /// Set when some Hurwitz orbit exploration hit its budget, in which case
    /// classes may be split.
    pub quotient_incomplete: bool,
}

/// Canonical primitive classes with both coordinates bounded by `bound` in
/// absolute value, sorted.
pub fn curve_alphabet(bound: u32) -> Vec<CurveClass> {
    let b = i64::from(bound);
    let mut out = Vec::new();
    if b >= 1 {
        out.push(CurveClass::a());
    }
    for q in 1..=b {
        for p in -b..=b {
            if p.gcd(&q) == 1 {
                out.push(CurveClass::new(p, q).expect("coprime"));
            }
        }
    }
    out.sort();
    out
}

/// All elements of `SL(2,Z)` with entries bounded by `bound` in absolute
/// value, sorted.
pub fn sl2_ball(bound: u32) -> Vec<UnimodularMatrix> {
    let b = i64::from(bound);
    let mut out = Vec::new();
    for a in -b..=b {
        for bb in -b..=b {
            for c in -b..=b {
                if a == 0 {
                    if bb * c == -1 {
                        for d in -b..=b {
                            out.push(UnimodularMatrix::from_rows([[a, bb], [c, d]]));
                        }
                    }
                } else {
                    let num = 1 + bb * c;
                    if num % a == 0 && (num / a).abs() <= b {
                        out.push(UnimodularMatrix::from_rows([[a, bb], [c, num / a]]));
                    }
                }
            }
        }
    }
    out.sort();
    out
}

pub fn search_factorizations(
    target: &UnimodularMatrix,
    length: usize,
    bound: u32,
    quotient: Quotient,
) -> Result<SearchResult, FibrationError> {
    search_factorizations_with(
        target,
        length,
        bound,
        quotient,
        Convention::STANDARD,
        SearchLimits::default(),
    )
}

/// Every word of `length` curve classes from [`curve_alphabet`]`(bound)`
/// whose total monodromy is `target`, optionally up to equivalence.
///
/// Lengths below four use depth-first enumeration of the first `length - 1`
/// letters with a table lookup for the last; longer words meet in the
/// middle on a split of the word.
pub fn search_factorizations_with(
    target: &UnimodularMatrix,
    length: usize,
    bound: u32,
    quotient: Quotient,
    conv: Convention,
    limits: SearchLimits,
) -> Result<SearchResult, FibrationError> {
    if bound == 0 {
        return Err(FibrationError::ZeroBound);
    }
    let mut searcher = Searcher::new(target, bound, conv, limits.max_nodes);
    let raw = searcher.run(length)?;
    let raw: Vec<VanishingCycleWord> = raw.into_iter().collect();
    let raw_count = raw.len();
    let (classes, quotient_incomplete) = match quotient {
        Quotient::None => ((0..raw.len()).map(|i| vec![i]).collect(), false),
        Quotient::Conjugation => (conjugation_classes(&raw, target, bound), false),
        Quotient::Hurwitz => hurwitz_classes(&raw, conv, limits.hurwitz_budget),
    };
    let mut reps: Vec<(VanishingCycleWord, usize)> = classes
        .into_iter()
        .map(|members| {
            let rep = members
                .iter()
                .map(|&i| &raw[i])
                .min_by(|x, y| canonical_key(x).cmp(&canonical_key(y)))
                .expect("non-empty class")
                .clone();
            (rep, members.len())
        })
        .collect();
    reps.sort();
    let (words, class_sizes) = reps.into_iter().unzip();
    Ok(SearchResult {
        words,
        class_sizes,
        raw_count,
        nodes: searcher.nodes,
        quotient_incomplete,
    })
}

struct Searcher<'a> {
    target: &'a UnimodularMatrix,
    conv: Convention,
    alphabet: Vec<(CurveClass, UnimodularMatrix)>,
    by_twist: HashMap<UnimodularMatrix, CurveClass>,
    max_nodes: usize,
    nodes: usize,
    found: BTreeSet<VanishingCycleWord>,
}

impl<'a> Searcher<'a> {
    fn new(target: &'a UnimodularMatrix, bound: u32, conv: Convention, max_nodes: usize) -> Self {
        let alphabet: Vec<_> = curve_alphabet(bound)
            .into_iter()
            .map(|c| {
                let t = conv.twist(&c);
                (c, t)
            })
            .collect();
        let by_twist = alphabet
            .iter()
            .map(|(c, t)| (t.clone(), c.clone()))
            .collect();
        Self {
            target,
            conv,
            alphabet,
            by_twist,
            max_nodes,
            nodes: 0,
            found: BTreeSet::new(),
        }
    }

    fn tick(&mut self) -> Result<(), FibrationError> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(FibrationError::ResourceLimit {
                limit: self.max_nodes,
                partial: self.found.iter().cloned().collect(),
            });
        }
        Ok(())
    }

    /// The matrix `x` with `join(prefix, x) = target`.
    fn residual(&self, prefix: &UnimodularMatrix) -> UnimodularMatrix {
        match self.conv.order {
            CompositionOrder::LaterOnLeft => self.target.compose(&prefix.inverse()),
            CompositionOrder::LaterOnRight => prefix.inverse().compose(self.target),
        }
    }

    fn run(&mut self, length: usize) -> Result<BTreeSet<VanishingCycleWord>, FibrationError> {
        if length == 0 {
            if self.target.is_identity() {
                self.found.insert(VanishingCycleWord::empty());
            }
        } else if length < 4 {
            let mut prefix = Vec::with_capacity(length);
            self.dfs_with_lookup(&mut prefix, &UnimodularMatrix::identity(), length)?;
        } else {
            self.meet_in_the_middle(length)?;
        }
        Ok(std::mem::take(&mut self.found))
    }

    fn dfs_with_lookup(
        &mut self,
        prefix: &mut Vec<CurveClass>,
        product: &UnimodularMatrix,
        length: usize,
    ) -> Result<(), FibrationError> {
        self.tick()?;
        if prefix.len() + 1 == length {
            let need = self.residual(product);
            if let Some(last) = self.by_twist.get(&need) {
                let mut w = prefix.clone();
                w.push(last.clone());
                self.found.insert(VanishingCycleWord::new(w));
            }
            return Ok(());
        }
        for k in 0..self.alphabet.len() {
            let next = self.conv.order.push(product, &self.alphabet[k].1);
            prefix.push(self.alphabet[k].0.clone());
            self.dfs_with_lookup(prefix, &next, length)?;
            prefix.pop();
        }
        Ok(())
    }

    fn enumerate_halves(
        &mut self,
        prefix: &mut Vec<usize>,
        product: &UnimodularMatrix,
        length: usize,
        out: &mut Vec<(Vec<usize>, UnimodularMatrix)>,
    ) -> Result<(), FibrationError> {
        self.tick()?;
        if prefix.len() == length {
            out.push((prefix.clone(), product.clone()));
            return Ok(());
        }
        for k in 0..self.alphabet.len() {
            let next = self.conv.order.push(product, &self.alphabet[k].1);
            prefix.push(k);
            self.enumerate_halves(prefix, &next, length, out)?;
            prefix.pop();
        }
        Ok(())
    }

    fn meet_in_the_middle(&mut self, length: usize) -> Result<(), FibrationError> {
        let head_len = length / 2;
        let tail_len = length - head_len;
        let mut tails = Vec::new();
        self.enumerate_halves(
            &mut Vec::new(),
            &UnimodularMatrix::identity(),
            tail_len,
            &mut tails,
        )?;
        let mut by_product: HashMap<UnimodularMatrix, Vec<Vec<usize>>> = HashMap::new();
        for (word, product) in tails {
            by_product.entry(product).or_default().push(word);
        }
        let mut heads = Vec::new();
        self.enumerate_halves(
            &mut Vec::new(),
            &UnimodularMatrix::identity(),
            head_len,
            &mut heads,
        )?;
        for (head, product) in heads {
            let need = self.residual(&product);
            if let Some(matches) = by_product.get(&need) {
                for tail in matches {
                    let word = head
                        .iter()
                        .chain(tail.iter())
                        .map(|&k| self.alphabet[k].0.clone())
                        .collect();
                    self.found.insert(word);
                }
            }
        }
        Ok(())
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }

    fn union(&mut self, i: usize, j: usize) {
        let (ri, rj) = (self.find(i), self.find(j));
        if ri != rj {
            self.0[ri.max(rj)] = ri.min(rj);
        }
    }

    fn classes(mut self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for i in 0..n {
            let r = self.find(i);
            groups.entry(r).or_default().push(i);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }
}

fn conjugation_classes(
    raw: &[VanishingCycleWord],
    target: &UnimodularMatrix,
    bound: u32,
) -> Vec<Vec<usize>> {
    let centralizer: Vec<_> = sl2_ball(bound)
        .into_iter()
        .filter(|g| !g.is_identity() && g.compose(target) == target.compose(g))
        .collect();
    let mut uf = UnionFind::new(raw.len());
    for (i, w) in raw.iter().enumerate() {
        for g in &centralizer {
            if let Ok(j) = raw.binary_search(&w.act(g)) {
                uf.union(i, j);
            }
        }
    }
    uf.classes()
}

fn hurwitz_classes(
    raw: &[VanishingCycleWord],
    conv: Convention,
    budget: usize,
) -> (Vec<Vec<usize>>, bool) {
    let mut uf = UnionFind::new(raw.len());
    let mut incomplete = false;
    for (i, w) in raw.iter().enumerate() {
        let (orbit, truncated) = orbit_bfs(w, budget, conv);
        incomplete |= truncated;
        for v in &orbit {
            if let Ok(j) = raw.binary_search(v) {
                uf.union(i, j);
            }
        }
    }
    (uf.classes(), incomplete)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibration::total_monodromy;
    use crate::mcg::twist_matrix;

    fn word(pairs: &[(i64, i64)]) -> VanishingCycleWord {
        VanishingCycleWord::from_pairs(pairs).unwrap()
    }

    #[test]
    fn alphabet_sizes() {
        // (1,0); q=1: p in -1..=1.
        assert_eq!(curve_alphabet(1).len(), 4);
        // q=1: 5, q=2: p odd in -2..=2 -> 2, plus (1,0).
        assert_eq!(curve_alphabet(2).len(), 8);
        assert!(curve_alphabet(0).is_empty());
    }

    #[test]
    fn sl2_ball_matches_brute_force() {
        let mut brute = Vec::new();
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                for c in -2i64..=2 {
                    for d in -2i64..=2 {
                        if a * d - b * c == 1 {
                            brute.push(UnimodularMatrix::from_rows([[a, b], [c, d]]));
                        }
                    }
                }
            }
        }
        brute.sort();
        assert_eq!(sl2_ball(2), brute);
    }

    #[test]
    fn single_twist_has_unique_length_one_factorization() {
        let r =
            search_factorizations(&twist_matrix(&CurveClass::b()), 1, 3, Quotient::None).unwrap();
        assert_eq!(r.words, vec![word(&[(0, 1)])]);
    }

    #[test]
    fn elliptic_target_has_no_length_one_factorization() {
        let target = UnimodularMatrix::from_rows([[0, -1], [1, 1]]);
        for b in 1..5 {
            assert!(search_factorizations(&target, 1, b, Quotient::None)
                .unwrap()
                .words
                .is_empty());
        }
    }

    #[test]
    fn family_word_is_found() {
        let target = UnimodularMatrix::from_rows([[1, 0], [-9, 1]]);
        let r = search_factorizations(&target, 3, 4, Quotient::None).unwrap();
        assert!(r.words.contains(&word(&[(1, 3), (1, 0), (1, -3)])));
        for w in &r.words {
            assert_eq!(total_monodromy(w), target);
        }
    }

    #[test]
    fn length_zero() {
        let id = UnimodularMatrix::identity();
        assert_eq!(
            search_factorizations(&id, 0, 1, Quotient::None)
                .unwrap()
                .words,
            vec![word(&[])]
        );
        let t = twist_matrix(&CurveClass::a());
        assert!(search_factorizations(&t, 0, 1, Quotient::None)
            .unwrap()
            .words
            .is_empty());
    }

    #[test]
    fn meet_in_the_middle_agrees_with_lookup_dfs_at_length_four() {
        // Compare against the product of DFS-enumerated length-3 prefixes
        // with each possible last letter.
        let target = total_monodromy(&word(&[(0, 1), (1, 0), (0, 1), (1, 0)]));
        let mitm = search_factorizations(&target, 4, 1, Quotient::None).unwrap();
        let alphabet = curve_alphabet(1);
        let mut brute = Vec::new();
        for a in &alphabet {
            for b in &alphabet {
                for c in &alphabet {
                    for d in &alphabet {
                        let w = VanishingCycleWord::new(vec![
                            a.clone(),
                            b.clone(),
                            c.clone(),
                            d.clone(),
                        ]);
                        if total_monodromy(&w) == target {
                            brute.push(w);
                        }
                    }
                }
            }
        }
        brute.sort();
        assert_eq!(mitm.words, brute);
        assert!(!brute.is_empty());
    }

    #[test]
    fn resource_limit_reports_partial() {
        let target = UnimodularMatrix::identity();
        let limits = SearchLimits {
            max_nodes: 50,
            hurwitz_budget: 10,
        };
        let err =
            search_factorizations_with(&target, 3, 3, Quotient::None, Convention::STANDARD, limits)
                .unwrap_err();
        assert!(matches!(
            err,
            FibrationError::ResourceLimit { limit: 50, .. }
        ));
    }

    #[test]
    fn zero_bound_rejected() {
        let id = UnimodularMatrix::identity();
        assert_eq!(
            search_factorizations(&id, 1, 0, Quotient::None),
            Err(FibrationError::ZeroBound)
        );
    }

    #[test]
    fn quotients_only_merge() {
        let target = total_monodromy(&word(&[(0, 1), (1, 0)]));
        let plain = search_factorizations(&target, 2, 2, Quotient::None).unwrap();
        for q in [Quotient::Conjugation, Quotient::Hurwitz] {
            let r = search_factorizations(&target, 2, 2, q).unwrap();
            assert_eq!(r.raw_count, plain.words.len());
            assert_eq!(r.class_sizes.iter().sum::<usize>(), plain.words.len());
            assert!(r.words.len() <= plain.words.len());
            for w in &r.words {
                assert!(plain.words.contains(w));
            }
        }
        // Every length-2 factorization of an order-6 element within B = 2 is
        // Hurwitz equivalent to [b, a].
        let h = search_factorizations(&target, 2, 2, Quotient::Hurwitz).unwrap();
        assert_eq!(h.words.len(), 1);
        assert!(!h.quotient_incomplete);
    }
}
