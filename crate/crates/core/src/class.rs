//! Concept classes, samples, menus and finite-support distributions.
//!
//! A [`ConceptClass`] is a finite set of words of a fixed length over
//! non-negative integer labels. Domain points are the coordinate indices
//! `0..domain_size`. Classes are kept in canonical form: words sorted
//! lexicographically with duplicates removed, so two classes are equal iff
//! they contain the same words.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Label = u32;

/// A single hypothesis restricted to the domain, one label per coordinate.
pub type Word = Vec<Label>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ConceptClass {
    domain_size: usize,
    words: Vec<Word>,
}

impl ConceptClass {
    pub fn new(domain_size: usize, words: impl IntoIterator<Item = Word>) -> Result<Self> {
        let mut words: Vec<Word> = words.into_iter().collect();
        for (i, w) in words.iter().enumerate() {
            if w.len() != domain_size {
                return Err(Error::Precondition(format!(
                    "hypothesis #{i} has length {}, expected {domain_size}",
                    w.len()
                )));
            }
        }
        words.sort();
        words.dedup();
        Ok(ConceptClass { domain_size, words })
    }

    pub(crate) fn from_sorted_unchecked(domain_size: usize, words: Vec<Word>) -> Self {
        debug_assert!(words.windows(2).all(|w| w[0] < w[1]));
        ConceptClass { domain_size, words }
    }

    pub fn empty(domain_size: usize) -> Self {
        ConceptClass { domain_size, words: Vec::new() }
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn word(&self, index: usize) -> &[Label] {
        &self.words[index]
    }

    pub fn index_of(&self, word: &[Label]) -> Option<usize> {
        self.words.binary_search_by(|w| w.as_slice().cmp(word)).ok()
    }

    pub fn contains(&self, word: &[Label]) -> bool {
        self.index_of(word).is_some()
    }

    /// Distinct labels used anywhere in the class.
    pub fn labels(&self) -> BTreeSet<Label> {
        self.words.iter().flatten().copied().collect()
    }

    /// Number of distinct labels used, at least 1.
    pub fn alphabet_size(&self) -> usize {
        self.labels().len().max(1)
    }

    /// Distinct labels appearing at one coordinate.
    pub fn column(&self, x: usize) -> BTreeSet<Label> {
        self.words.iter().map(|w| w[x]).collect()
    }

    pub fn is_binary(&self) -> bool {
        self.words.iter().flatten().all(|&y| y <= 1)
    }

    pub fn check_index(&self, x: usize) -> Result<()> {
        if x < self.domain_size {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: x, domain_size: self.domain_size })
        }
    }

    /// The class `{h|_S : h ∈ H}` over `|S|` coordinates. Repeated indices are allowed.
    pub fn project(&self, seq: &[usize]) -> Result<ConceptClass> {
        for &x in seq {
            self.check_index(x)?;
        }
        let words = self.words.iter().map(|w| seq.iter().map(|&x| w[x]).collect());
        ConceptClass::new(seq.len(), words)
    }

    /// `|H|_S|` without materializing the projection as a class.
    pub fn projection_size(&self, seq: &[usize]) -> usize {
        let set: HashSet<Vec<Label>> =
            self.words.iter().map(|w| seq.iter().map(|&x| w[x]).collect()).collect();
        set.len()
    }

    pub fn filter(&self, mut keep: impl FnMut(&[Label]) -> bool) -> ConceptClass {
        let words = self.words.iter().filter(|w| keep(w)).cloned().collect();
        ConceptClass::from_sorted_unchecked(self.domain_size, words)
    }

    pub fn without(&self, index: usize) -> ConceptClass {
        let mut words = self.words.clone();
        words.remove(index);
        ConceptClass::from_sorted_unchecked(self.domain_size, words)
    }

    /// Relabel the used alphabet onto `0..p` preserving the label order.
    pub fn reintern(&self) -> ConceptClass {
        let map: BTreeMap<Label, Label> =
            self.labels().into_iter().enumerate().map(|(i, y)| (y, i as Label)).collect();
        let words = self.words.iter().map(|w| w.iter().map(|y| map[y]).collect());
        ConceptClass::new(self.domain_size, words).expect("lengths preserved")
    }

    pub fn consistent_with(&self, word: &[Label], sample: &Sample) -> bool {
        sample.iter().all(|e| word[e.x] == e.y)
    }

    /// True iff some hypothesis agrees with every example of `sample`.
    pub fn is_realizable(&self, sample: &Sample) -> Result<bool> {
        sample.check_indices(self.domain_size)?;
        Ok(self.words.iter().any(|w| self.consistent_with(w, sample)))
    }

    /// True iff some hypothesis has zero error on every positive-probability atom.
    pub fn distribution_is_realizable(&self, dist: &FiniteDistribution) -> bool {
        let support: Vec<LabeledExample> = dist.support().collect();
        if support.iter().any(|e| e.x >= self.domain_size) {
            return false;
        }
        self.words.iter().any(|w| support.iter().all(|e| w[e.x] == e.y))
    }
}

impl fmt::Debug for ConceptClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConceptClass(n={}, {:?})", self.domain_size, self.words)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LabeledExample {
    pub x: usize,
    pub y: Label,
}

impl LabeledExample {
    pub fn new(x: usize, y: Label) -> Self {
        LabeledExample { x, y }
    }
}

/// An ordered sequence of labeled examples; repeats are allowed and meaningful.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Sample(pub Vec<LabeledExample>);

impl Sample {
    pub fn new(examples: Vec<LabeledExample>) -> Self {
        Sample(examples)
    }

    pub fn from_pairs(pairs: &[(usize, Label)]) -> Self {
        Sample(pairs.iter().map(|&(x, y)| LabeledExample { x, y }).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, LabeledExample> {
        self.0.iter()
    }

    pub fn get(&self, i: usize) -> LabeledExample {
        self.0[i]
    }

    pub fn check_indices(&self, domain_size: usize) -> Result<()> {
        match self.0.iter().find(|e| e.x >= domain_size) {
            Some(e) => Err(Error::IndexOutOfRange { index: e.x, domain_size }),
            None => Ok(()),
        }
    }

    /// The sample with position `i` deleted.
    pub fn without(&self, i: usize) -> Sample {
        let mut v = self.0.clone();
        v.remove(i);
        Sample(v)
    }

    pub fn select(&self, positions: &[usize]) -> Sample {
        Sample(positions.iter().map(|&i| self.0[i]).collect())
    }

    pub fn points(&self) -> Vec<usize> {
        self.0.iter().map(|e| e.x).collect()
    }

    pub fn distinct(&self) -> Vec<LabeledExample> {
        let set: BTreeSet<LabeledExample> = self.0.iter().copied().collect();
        set.into_iter().collect()
    }
}

impl FromIterator<LabeledExample> for Sample {
    fn from_iter<I: IntoIterator<Item = LabeledExample>>(iter: I) -> Self {
        Sample(iter.into_iter().collect())
    }
}

/// A map from domain points to label sets of size at most `p`.
/// Points without an entry map to the empty set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Menu {
    p: usize,
    entries: BTreeMap<usize, BTreeSet<Label>>,
}

impl Menu {
    pub fn new(p: usize) -> Self {
        Menu { p, entries: BTreeMap::new() }
    }

    pub fn size_bound(&self) -> usize {
        self.p
    }

    pub fn set(&mut self, x: usize, labels: BTreeSet<Label>) -> Result<()> {
        if labels.len() > self.p {
            return Err(Error::Precondition(format!(
                "menu entry for x={x} has {} labels, more than p={}",
                labels.len(),
                self.p
            )));
        }
        self.entries.insert(x, labels);
        Ok(())
    }

    pub fn get(&self, x: usize) -> Option<&BTreeSet<Label>> {
        self.entries.get(&x)
    }

    pub fn allows(&self, x: usize, y: Label) -> bool {
        self.entries.get(&x).is_some_and(|s| s.contains(&y))
    }

    pub fn entries(&self) -> &BTreeMap<usize, BTreeSet<Label>> {
        &self.entries
    }

    /// Largest list actually stored (0 for an empty menu).
    pub fn max_list_size(&self) -> usize {
        self.entries.values().map(BTreeSet::len).max().unwrap_or(0)
    }

    /// True iff `y ∈ μ(x)` for every example.
    pub fn realizes(&self, sample: &Sample) -> bool {
        sample.iter().all(|e| self.allows(e.x, e.y))
    }

    /// Pointwise union of two menus; the size bound adds up.
    pub fn union(&self, other: &Menu) -> Menu {
        let mut entries = self.entries.clone();
        for (x, ys) in &other.entries {
            entries.entry(*x).or_default().extend(ys.iter().copied());
        }
        Menu { p: self.p + other.p, entries }
    }
}

pub fn is_menu_realizable(sample: &Sample, menu: &Menu) -> bool {
    menu.realizes(sample)
}

const PROBABILITY_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct FiniteDistribution {
    atoms: Vec<(LabeledExample, f64)>,
}

impl FiniteDistribution {
    pub fn new(atoms: Vec<(LabeledExample, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::Precondition("distribution has no atoms".into()));
        }
        for (i, (_, p)) in atoms.iter().enumerate() {
            if !p.is_finite() || *p < 0.0 {
                return Err(Error::Precondition(format!("atom #{i} has invalid probability {p}")));
            }
        }
        let total: f64 = atoms.iter().map(|(_, p)| p).sum();
        if (total - 1.0).abs() > PROBABILITY_TOLERANCE {
            return Err(Error::Precondition(format!("probabilities sum to {total}, not 1")));
        }
        Ok(FiniteDistribution { atoms })
    }

    pub fn uniform(examples: &[LabeledExample]) -> Result<Self> {
        let p = 1.0 / examples.len() as f64;
        let atoms: Vec<_> = examples.iter().map(|&e| (e, p)).collect();
        // Equal shares of 1/k may miss 1 by a few ulps; renormalize the last atom.
        let mut atoms = atoms;
        if let Some(last) = atoms.last_mut() {
            let head: f64 = (examples.len() as f64 - 1.0) * p;
            last.1 = 1.0 - head;
        }
        FiniteDistribution::new(atoms)
    }

    pub fn atoms(&self) -> &[(LabeledExample, f64)] {
        &self.atoms
    }

    /// Positive-probability atoms with their probabilities.
    pub fn positive_atoms(&self) -> impl Iterator<Item = (LabeledExample, f64)> + '_ {
        self.atoms.iter().copied().filter(|(_, p)| *p > 0.0)
    }

    pub fn support(&self) -> impl Iterator<Item = LabeledExample> + '_ {
        self.positive_atoms().map(|(e, _)| e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn projection_of_hexagon_to_circle_coordinate() {
        let hex = catalog::hexagon();
        let p = hex.project(&[0]).unwrap();
        assert_eq!(p.words(), &[vec![1], vec![3], vec![5]]);
    }

    #[test]
    fn projection_to_empty_sequence() {
        let p = catalog::hexagon().project(&[]).unwrap();
        assert_eq!(p.domain_size(), 0);
        assert_eq!(p.words(), &[Vec::<Label>::new()]);
    }

    #[test]
    fn repeated_index_projection() {
        let cube = catalog::boolean_cube(3);
        let p = cube.project(&[1, 1]).unwrap();
        assert_eq!(p.words(), &[vec![0, 0], vec![1, 1]]);
    }

    #[test]
    fn projection_rejects_bad_index() {
        let err = catalog::hexagon().project(&[2]).unwrap_err();
        assert_eq!(err, Error::IndexOutOfRange { index: 2, domain_size: 2 });
    }

    #[test]
    fn realizability() {
        let hex = catalog::hexagon();
        assert!(hex.is_realizable(&Sample::from_pairs(&[(0, 1), (1, 2)])).unwrap());
        assert!(!hex.is_realizable(&Sample::from_pairs(&[(0, 1), (1, 4)])).unwrap());
        assert!(hex.is_realizable(&Sample::default()).unwrap());
        // contradictory duplicate
        assert!(!hex.is_realizable(&Sample::from_pairs(&[(0, 1), (0, 3)])).unwrap());
        assert!(hex.is_realizable(&Sample::from_pairs(&[(0, 1), (0, 1)])).unwrap());
        assert!(hex.is_realizable(&Sample::from_pairs(&[(5, 1)])).is_err());
    }

    #[test]
    fn menu_realizability() {
        let mut mu = Menu::new(2);
        mu.set(0, [1, 3].into_iter().collect()).unwrap();
        assert!(is_menu_realizable(&Sample::from_pairs(&[(0, 1)]), &mu));
        assert!(!is_menu_realizable(&Sample::from_pairs(&[(0, 5)]), &mu));
        assert!(is_menu_realizable(&Sample::default(), &mu));
        assert!(mu.set(1, [1, 2, 3].into_iter().collect()).is_err());
    }

    #[test]
    fn distribution_realizability() {
        let hex = catalog::hexagon();
        let d = FiniteDistribution::uniform(&[LabeledExample::new(0, 1), LabeledExample::new(1, 2)])
            .unwrap();
        assert!(hex.distribution_is_realizable(&d));
        let d = FiniteDistribution::uniform(&[LabeledExample::new(0, 1), LabeledExample::new(1, 4)])
            .unwrap();
        assert!(!hex.distribution_is_realizable(&d));
        let d = FiniteDistribution::new(vec![(LabeledExample::new(1, 6), 1.0)]).unwrap();
        assert!(hex.distribution_is_realizable(&d));
        // zero-probability atoms are ignored
        let d = FiniteDistribution::new(vec![
            (LabeledExample::new(0, 1), 1.0),
            (LabeledExample::new(1, 4), 0.0),
        ])
        .unwrap();
        assert!(hex.distribution_is_realizable(&d));
    }

    #[test]
    fn distribution_validation() {
        assert!(FiniteDistribution::new(vec![(LabeledExample::new(0, 1), 0.5)]).is_err());
        assert!(FiniteDistribution::new(vec![(LabeledExample::new(0, 1), -0.5),
            (LabeledExample::new(0, 2), 1.5)]).is_err());
    }

    #[test]
    fn canonical_form_dedups() {
        let c = ConceptClass::new(2, vec![vec![1, 2], vec![1, 2], vec![0, 0]]).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.word(0), &[0, 0]);
        assert!(ConceptClass::new(2, vec![vec![1]]).is_err());
    }
}
