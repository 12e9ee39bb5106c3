//! Exact shattering dimensions: VC, Natarajan, DS and exponential.
//!
//! All four searches walk index sequences of increasing length `n` and stop
//! at the first length with no shattered sequence. Every dimension here is
//! monotone: a shattered sequence stays shattered after deleting a
//! coordinate. For N-, VC- and DS-shattering this is immediate (project the
//! witness cube or pseudo-cube); for E-shattering it follows from Shearer's
//! inequality `|H|^(n-1) <= prod_j |H|_{S-j}|`.
//!
//! Only strictly increasing sequences are searched. A repeated index forces
//! equal symbols on the two copies, so the projection has no pair of words
//! differing only at one copy (kills N- and DS-shattering) and has the same
//! size as the shorter sequence without the repeat (kills E-shattering).
//!
//! Witnesses are the lexicographically smallest shattered sequence; the
//! candidate scan may run on the ambient rayon pool without changing results.

use std::collections::{BTreeSet, VecDeque};

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::budget::Budget;
use crate::class::{ConceptClass, Label, Word};
use crate::error::{Error, Result};
use crate::oig::OneInclusionGraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Dimension {
    pub value: usize,
    /// Lexicographically smallest shattered index sequence of length `value`.
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NatarajanWitness {
    pub points: Vec<usize>,
    pub f: Vec<Label>,
    pub g: Vec<Label>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    /// `None` when the class uses labels other than 0 and 1.
    pub vc: Option<usize>,
    pub natarajan: usize,
    pub ds: usize,
    pub exponential: usize,
    pub witnesses: Witnesses,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witnesses {
    pub vc: Option<Vec<usize>>,
    pub natarajan: NatarajanWitness,
    pub ds: Vec<usize>,
    pub exponential: Vec<usize>,
}

/// Every word has an `i`-neighbor for every coordinate `i`.
pub fn is_pseudo_cube(class: &ConceptClass) -> bool {
    if class.is_empty() {
        return false;
    }
    let g = OneInclusionGraph::build(class).expect("non-empty");
    g.edges().iter().all(|e| e.members.len() >= 2)
}

/// The largest sub-class that is a pseudo-cube (possibly empty).
///
/// Peels words lacking a neighbor in some direction until none remain. The
/// pseudo-cube property is closed under unions, so the survivor contains
/// every pseudo-cube sub-class.
pub fn pseudo_cube_core(class: &ConceptClass) -> ConceptClass {
    if class.is_empty() {
        return class.clone();
    }
    let g = OneInclusionGraph::build(class).expect("non-empty");
    let mut alive_in_edge: Vec<usize> = g.edges().iter().map(|e| e.members.len()).collect();
    let mut alive = vec![true; class.len()];
    let mut queued = vec![false; class.len()];
    let mut queue = VecDeque::new();
    for v in 0..class.len() {
        if g.incident(v).iter().any(|&e| alive_in_edge[e] < 2) {
            queued[v] = true;
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        alive[v] = false;
        for &e in g.incident(v) {
            alive_in_edge[e] -= 1;
            if alive_in_edge[e] == 1 {
                let survivor = g.edges()[e].members.iter().copied().find(|&u| alive[u]);
                if let Some(u) = survivor {
                    if !queued[u] {
                        queued[u] = true;
                        queue.push_back(u);
                    }
                }
            }
        }
    }
    class.filter_indexed(|i| alive[i])
}

impl ConceptClass {
    fn filter_indexed(&self, keep: impl Fn(usize) -> bool) -> ConceptClass {
        let words: Vec<Word> =
            self.words().iter().enumerate().filter(|(i, _)| keep(*i)).map(|(_, w)| w.clone()).collect();
        ConceptClass::from_sorted_unchecked(self.domain_size(), words)
    }
}

/// Scan index sequences of length 1, 2, ... and keep the last length with a
/// witness. `check` returns `Ok(Some(_))` on a shattered sequence.
fn search_upward<W: Send>(
    domain_size: usize,
    max_len: usize,
    budget: &Budget,
    check: impl Fn(&[usize]) -> Result<Option<W>> + Sync,
) -> Result<(usize, Vec<usize>, Option<W>)> {
    let mut best: (usize, Vec<usize>, Option<W>) = (0, Vec::new(), None);
    for n in 1..=max_len.min(domain_size) {
        let candidates: Vec<Vec<usize>> = (0..domain_size).combinations(n).collect();
        budget.charge(candidates.len() as u64)?;
        let found = candidates.par_iter().find_map_first(|s| match check(s) {
            Ok(Some(w)) => Some(Ok((s.clone(), w))),
            Ok(None) => None,
            Err(e) => Some(Err(e)),
        });
        match found {
            Some(Ok((s, w))) => best = (n, s, Some(w)),
            Some(Err(e)) => return Err(e),
            None => break,
        }
    }
    Ok(best)
}

pub fn ds_dimension(class: &ConceptClass, budget: &Budget) -> Result<Dimension> {
    if class.is_empty() {
        return Err(Error::EmptyClass);
    }
    let (value, witness, _) = search_upward(class.domain_size(), usize::MAX, budget, |s| {
        budget.charge((class.len() * s.len()) as u64)?;
        let proj = class.project(s)?;
        Ok((!pseudo_cube_core(&proj).is_empty()).then_some(()))
    })?;
    Ok(Dimension { value, witness })
}

pub fn exponential_dimension(class: &ConceptClass, budget: &Budget) -> Result<Dimension> {
    if class.is_empty() {
        return Err(Error::EmptyClass);
    }
    // |H|_S| <= |H| caps the length at log2 |H|.
    let cap = usize::BITS as usize - 1 - class.len().leading_zeros() as usize;
    let (value, witness, _) = search_upward(class.domain_size(), cap, budget, |s| {
        budget.charge((class.len() * s.len()) as u64)?;
        Ok((class.projection_size(s) >= 1usize << s.len()).then_some(()))
    })?;
    Ok(Dimension { value, witness })
}

pub fn vc_dimension(class: &ConceptClass, budget: &Budget) -> Result<Dimension> {
    if class.is_empty() {
        return Err(Error::EmptyClass);
    }
    if !class.is_binary() {
        return Err(Error::Precondition("VC dimension needs labels in {0,1}".into()));
    }
    let cap = usize::BITS as usize - 1 - class.len().leading_zeros() as usize;
    let (value, witness, _) = search_upward(class.domain_size(), cap, budget, |s| {
        budget.charge((class.len() * s.len()) as u64)?;
        Ok((class.projection_size(s) == 1usize << s.len()).then_some(()))
    })?;
    Ok(Dimension { value, witness })
}

pub fn natarajan_dimension(class: &ConceptClass, budget: &Budget) -> Result<NatarajanWitness> {
    if class.is_empty() {
        return Err(Error::EmptyClass);
    }
    let cap = usize::BITS as usize - 1 - class.len().leading_zeros() as usize;
    let (_, points, fg) = search_upward(class.domain_size(), cap, budget, |s| {
        let proj = class.project(s)?;
        n_shattering_pair(&proj, budget)
    })?;
    let (f, g) = fg.unwrap_or_default();
    Ok(NatarajanWitness { points, f, g })
}

/// Look for `f, g` with `f(i) < g(i)` and the whole product
/// `{f(1),g(1)} x ... x {f(n),g(n)}` inside `proj`.
fn n_shattering_pair(proj: &ConceptClass, budget: &Budget) -> Result<Option<(Vec<Label>, Vec<Label>)>> {
    let all: Vec<&[Label]> = proj.words().iter().map(Vec::as_slice).collect();
    let mut f = Vec::new();
    let mut g = Vec::new();
    let found = extend_pairs(vec![all], proj.domain_size(), &mut f, &mut g, budget)?;
    Ok(found.then_some((f, g)))
}

/// `groups[c]` holds the words matching the pattern selected by bitmask `c`
/// on the coordinates fixed so far; every group is non-empty.
fn extend_pairs(
    groups: Vec<Vec<&[Label]>>,
    n: usize,
    f: &mut Vec<Label>,
    g: &mut Vec<Label>,
    budget: &Budget,
) -> Result<bool> {
    let k = f.len();
    if k == n {
        return Ok(true);
    }
    let mut common: Option<BTreeSet<Label>> = None;
    for grp in &groups {
        budget.charge(grp.len() as u64)?;
        let col: BTreeSet<Label> = grp.iter().map(|w| w[k]).collect();
        common = Some(match common {
            None => col,
            Some(c) => c.intersection(&col).copied().collect(),
        });
    }
    let common: Vec<Label> = common.unwrap_or_default().into_iter().collect();
    for (ai, &a) in common.iter().enumerate() {
        for &b in &common[ai + 1..] {
            let mut next = Vec::with_capacity(groups.len() * 2);
            for grp in &groups {
                next.push(grp.iter().copied().filter(|w| w[k] == a).collect::<Vec<_>>());
            }
            for grp in &groups {
                next.push(grp.iter().copied().filter(|w| w[k] == b).collect::<Vec<_>>());
            }
            f.push(a);
            g.push(b);
            if extend_pairs(next, n, f, g, budget)? {
                return Ok(true);
            }
            f.pop();
            g.pop();
        }
    }
    Ok(false)
}

pub fn dimension_report(class: &ConceptClass, budget: &Budget) -> Result<DimensionReport> {
    let nat = natarajan_dimension(class, budget)?;
    let ds = ds_dimension(class, budget)?;
    let exp = exponential_dimension(class, budget)?;
    let vc = if class.is_binary() { Some(vc_dimension(class, budget)?) } else { None };
    Ok(DimensionReport {
        vc: vc.as_ref().map(|d| d.value),
        natarajan: nat.points.len(),
        ds: ds.value,
        exponential: exp.value,
        witnesses: Witnesses {
            vc: vc.map(|d| d.witness),
            natarajan: nat,
            ds: ds.witness,
            exponential: exp.witness,
        },
    })
}
