//! Small named classes used throughout the tests, examples and self-test.

use itertools::Itertools;

use crate::class::{ConceptClass, Label};

/// The 2-dimensional pseudo-cube on six labels: a 6-cycle of words
/// `12, 32, 34, 54, 56, 16`, odd labels on coordinate 0 and even on coordinate 1.
pub fn hexagon() -> ConceptClass {
    ConceptClass::new(
        2,
        vec![vec![1, 2], vec![3, 2], vec![3, 4], vec![5, 4], vec![5, 6], vec![1, 6]],
    )
    .unwrap()
}

/// `{0,1}^d`.
pub fn boolean_cube(d: usize) -> ConceptClass {
    let words = (0..d).map(|_| 0..=1 as Label).multi_cartesian_product();
    if d == 0 {
        return ConceptClass::new(0, vec![vec![]]).unwrap();
    }
    ConceptClass::new(d, words).unwrap()
}

/// A class whose natarajan and DS dimensions jump from 1 to 2 under one shift.
pub fn dimension_jump() -> ConceptClass {
    ConceptClass::new(2, vec![vec![1, 1], vec![1, 0], vec![0, 1], vec![2, 0], vec![0, 2]]).unwrap()
}

/// A class whose total non-singleton edge size drops from 6 to 5 under one shift.
pub fn edge_drop() -> ConceptClass {
    ConceptClass::new(2, vec![vec![2, 2], vec![1, 1], vec![1, 0], vec![2, 0]]).unwrap()
}

pub fn singleton(word: Vec<Label>) -> ConceptClass {
    let n = word.len();
    ConceptClass::new(n, vec![word]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(hexagon().len(), 6);
        assert_eq!(boolean_cube(3).len(), 8);
        assert_eq!(boolean_cube(0).len(), 1);
        assert_eq!(dimension_jump().len(), 5);
        assert_eq!(edge_drop().len(), 4);
    }
}
