//! Down-shifting of concept classes over `[p]^n`.
//!
//! `shift_once(H, i)` replaces every direction-`i` edge of size `s` by the
//! words with the same off-coordinate pattern and symbols `0..s` at
//! coordinate `i`. Labels are 0-based.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::budget::Budget;
use crate::class::{ConceptClass, Label};
use crate::dims::exponential_dimension;
use crate::error::{Error, Result};
use crate::oig::{shifting_avg_degree, OneInclusionGraph, Rational};

pub fn shift_once(class: &ConceptClass, direction: usize) -> Result<ConceptClass> {
    if direction >= class.domain_size() {
        return Err(Error::IndexOutOfRange { index: direction, domain_size: class.domain_size() });
    }
    let mut groups: BTreeMap<Vec<Label>, usize> = BTreeMap::new();
    for w in class.words() {
        let mut key = w.clone();
        key.remove(direction);
        *groups.entry(key).or_default() += 1;
    }
    let mut words = Vec::with_capacity(class.len());
    for (key, size) in groups {
        for s in 0..size {
            let mut w = key.clone();
            w.insert(direction, s as Label);
            words.push(w);
        }
    }
    ConceptClass::new(class.domain_size(), words)
}

/// Every word obtained by lowering one coordinate of a member is a member.
pub fn is_downward_closed(class: &ConceptClass) -> bool {
    class.words().iter().all(|w| {
        (0..w.len()).all(|i| {
            w[i] == 0 || {
                let mut lower = w.clone();
                lower[i] -= 1;
                class.contains(&lower)
            }
        })
    })
}

fn label_sum(class: &ConceptClass) -> u64 {
    class.words().iter().flatten().map(|&y| y as u64).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Fraction {
    pub num: u64,
    pub den: u64,
}

impl From<Rational> for Fraction {
    fn from(r: Rational) -> Self {
        Fraction { num: *r.numer(), den: *r.denom() }
    }
}

impl Fraction {
    pub fn to_rational(self) -> Rational {
        Rational::new(self.num, self.den)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftStep {
    pub direction: usize,
    pub changed: bool,
    pub size: usize,
    pub avd_prime_before: Fraction,
    pub avd_prime_after: Fraction,
    pub exp_dim_before: usize,
    pub exp_dim_after: usize,
    pub label_sum_before: u64,
    pub label_sum_after: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftTrace {
    /// The input after order-preserving relabeling onto `0..p`.
    pub initial: ConceptClass,
    pub steps: Vec<ShiftStep>,
    pub final_class: ConceptClass,
}

impl ShiftTrace {
    /// Checks the per-step invariants recorded in the trace.
    pub fn check_invariants(&self) -> Result<()> {
        for (k, s) in self.steps.iter().enumerate() {
            if s.avd_prime_after.to_rational() < s.avd_prime_before.to_rational() {
                return Err(Error::Verification(format!("step {k}: avd' decreased")));
            }
            if s.exp_dim_after > s.exp_dim_before {
                return Err(Error::Verification(format!("step {k}: exponential dimension grew")));
            }
            if s.changed && s.label_sum_after >= s.label_sum_before {
                return Err(Error::Verification(format!("step {k}: label sum did not decrease")));
            }
        }
        if !is_downward_closed(&self.final_class) {
            return Err(Error::Verification("fixed point is not downward closed".into()));
        }
        Ok(())
    }
}

/// Round-robin shifting over all directions until a full round changes nothing.
pub fn shift_to_fixed_point(class: &ConceptClass, budget: &Budget) -> Result<ShiftTrace> {
    if class.is_empty() {
        return Err(Error::EmptyClass);
    }
    let initial = class.reintern();
    let n = initial.domain_size();
    let mut current = initial.clone();
    let mut steps = Vec::new();
    let mut avd = shifting_avg_degree(&OneInclusionGraph::build(&current)?);
    let mut d_e = exponential_dimension(&current, budget)?.value;
    let mut sum = label_sum(&current);
    let mut unchanged_run = 0;
    let mut i = 0;
    while n > 0 && unchanged_run < n {
        budget.charge(current.len() as u64)?;
        let next = shift_once(&current, i)?;
        let changed = next != current;
        let (avd_next, d_e_next, sum_next) = if changed {
            (
                shifting_avg_degree(&OneInclusionGraph::build(&next)?),
                exponential_dimension(&next, budget)?.value,
                label_sum(&next),
            )
        } else {
            (avd, d_e, sum)
        };
        steps.push(ShiftStep {
            direction: i,
            changed,
            size: next.len(),
            avd_prime_before: avd.into(),
            avd_prime_after: avd_next.into(),
            exp_dim_before: d_e,
            exp_dim_after: d_e_next,
            label_sum_before: sum,
            label_sum_after: sum_next,
        });
        unchanged_run = if changed { 0 } else { unchanged_run + 1 };
        current = next;
        avd = avd_next;
        d_e = d_e_next;
        sum = sum_next;
        i = (i + 1) % n;
    }
    Ok(ShiftTrace { initial, steps, final_class: current })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::dims::{ds_dimension, natarajan_dimension};

    fn class(words: &[[Label; 2]]) -> ConceptClass {
        ConceptClass::new(2, words.iter().map(|w| w.to_vec())).unwrap()
    }

    #[test]
    fn dimension_jump_shift() {
        let out = shift_once(&catalog::dimension_jump(), 0).unwrap();
        assert_eq!(out, class(&[[1, 1], [0, 0], [0, 1], [1, 0], [0, 2]]));
        let b = Budget::default();
        assert_eq!(natarajan_dimension(&out, &b).unwrap().points.len(), 2);
        assert_eq!(ds_dimension(&out, &b).unwrap().value, 2);
    }

    #[test]
    fn edge_drop_shift() {
        let out = shift_once(&catalog::edge_drop(), 0).unwrap();
        assert_eq!(out, class(&[[0, 2], [0, 1], [0, 0], [1, 0]]));
        let g = OneInclusionGraph::build(&out).unwrap();
        assert_eq!(g.non_singleton_size_sum(), 5);
        assert_eq!(shifting_avg_degree(&g), Rational::new(3, 4));
    }

    #[test]
    fn downward_closed_is_fixed() {
        let c = class(&[[0, 0], [0, 1], [1, 0]]);
        assert!(is_downward_closed(&c));
        for i in 0..2 {
            assert_eq!(shift_once(&c, i).unwrap(), c);
        }
        assert!(!is_downward_closed(&class(&[[1, 1]])));
    }

    #[test]
    fn fixed_point_of_dimension_jump() {
        let t = shift_to_fixed_point(&catalog::dimension_jump(), &Budget::default()).unwrap();
        assert_eq!(t.final_class, class(&[[0, 0], [0, 1], [0, 2], [1, 0], [1, 1]]));
        assert!(is_downward_closed(&t.final_class));
        t.check_invariants().unwrap();
    }

    #[test]
    fn cube_and_hexagon_fixed_points() {
        let cube = catalog::boolean_cube(3);
        let t = shift_to_fixed_point(&cube, &Budget::default()).unwrap();
        assert_eq!(t.final_class, cube);
        assert!(t.steps.iter().all(|s| !s.changed));

        let t = shift_to_fixed_point(&catalog::hexagon(), &Budget::default()).unwrap();
        assert_eq!(t.final_class.len(), 6);
        assert!(is_downward_closed(&t.final_class));
        t.check_invariants().unwrap();
    }

    #[test]
    fn bad_direction() {
        assert!(shift_once(&catalog::hexagon(), 2).is_err());
    }
}
