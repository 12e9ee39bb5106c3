//! Generators: the 27-vertex torus, tree classes, star unions, and random
//! classes and pseudo-cubes for property tests.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::budget::Budget;
use crate::class::{ConceptClass, Label, Word};
use crate::complex::{complex_to_pseudocube, find_alternating_square, is_good, SimplicialComplex};
use crate::dims::{ds_dimension, natarajan_dimension, pseudo_cube_core};
use crate::error::{Error, Result};

/// The period lattice `<(a, 0), (b, c)>` of a torus quotient of the
/// triangular lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Periods {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

#[derive(Clone, Debug)]
pub struct Torus {
    pub periods: Periods,
    pub complex: SimplicialComplex,
    pub class: ConceptClass,
}

/// Norm for which the lattice neighbors `(1,0), (0,1), (1,-1)` have length one.
fn norm(a: i64, b: i64) -> i64 {
    a * a + a * b + b * b
}

/// Shortest non-zero period vector, by norm.
fn systole(p: Periods) -> i64 {
    let mut best = i64::MAX;
    for i in -6..=6i64 {
        for j in -6..=6i64 {
            if (i, j) != (0, 0) {
                best = best.min(norm(i * p.a + j * p.b, j * p.c));
            }
        }
    }
    best
}

/// Index-27 period lattices compatible with the coloring `(x - y) mod 3`,
/// longest systole first.
fn torus_candidates() -> Vec<Periods> {
    let mut out = Vec::new();
    for a in (3..=27i64).step_by(3) {
        if 27 % a != 0 {
            continue;
        }
        let c = 27 / a;
        for b in 0..a {
            if (b - c).rem_euclid(3) == 0 {
                out.push(Periods { a, b, c });
            }
        }
    }
    out.sort_by_key(|&p| (-systole(p), p.a, p.b));
    out
}

fn torus_complex(p: Periods) -> Result<SimplicialComplex> {
    // reduce (x, y) into the fundamental domain 0 <= y < c, 0 <= x < a
    let reduce = |x: i64, y: i64| -> usize {
        let k = y.div_euclid(p.c);
        let (x, y) = (x - k * p.b, y - k * p.c);
        (y * p.a + x.rem_euclid(p.a)) as usize
    };
    let n = (p.a * p.c) as usize;
    let mut faces = Vec::new();
    let mut coloring = vec![0; n];
    for y in 0..p.c {
        for x in 0..p.a {
            coloring[reduce(x, y)] = (x - y).rem_euclid(3) as usize;
            faces.push(vec![reduce(x, y), reduce(x + 1, y), reduce(x, y + 1)]);
            faces.push(vec![reduce(x + 1, y), reduce(x, y + 1), reduce(x + 1, y + 1)]);
        }
    }
    SimplicialComplex::new(n, faces)?.with_coloring(coloring)
}

/// A triangulated torus with 27 vertices and 54 triangles, properly
/// 3-colored, with no alternating square. Every property is verified; the
/// first period lattice passing all checks is used.
pub fn gen_torus(budget: &Budget) -> Result<Torus> {
    let mut reasons = Vec::new();
    for periods in torus_candidates() {
        let complex = torus_complex(periods)?;
        let check = || -> Result<std::result::Result<ConceptClass, String>> {
            if complex.maximal_faces().len() != 54 || complex.dimension() != 2 {
                return Ok(Err(format!("{} faces", complex.maximal_faces().len())));
            }
            if let Some(defect) = is_good(&complex).defect {
                return Ok(Err(format!("not good: {defect:?}")));
            }
            if let Some(sq) = find_alternating_square(&complex, complex.coloring().unwrap()) {
                return Ok(Err(format!("alternating square {sq:?}")));
            }
            let class = complex_to_pseudocube(&complex)?;
            let labels = class.labels().len();
            let ds = ds_dimension(&class, budget)?.value;
            let nat = natarajan_dimension(&class, budget)?.points.len();
            if class.len() != 54 || labels != 27 || ds != 3 || nat != 1 {
                return Ok(Err(format!("{} words, {labels} labels, ds {ds}, natarajan {nat}", class.len())));
            }
            Ok(Ok(class))
        };
        match check()? {
            Ok(class) => return Ok(Torus { periods, complex, class }),
            Err(why) => reasons.push(format!("{periods:?}: {why}")),
        }
    }
    Err(Error::Verification(format!("no torus quotient passed: {}", reasons.join("; "))))
}

/// Depth-`m` truncation of the tree class over `k` points: the root is all
/// zeros and each node below depth `m` has `k` children, child `x` writing a
/// fresh label at coordinate `x`. Has `1 + k + ... + k^m` words.
pub fn gen_tree_class(k: usize, m: usize, budget: &Budget) -> Result<ConceptClass> {
    if k == 0 || m == 0 {
        return Err(Error::Precondition("branching and depth must be positive".into()));
    }
    let mut words: Vec<Word> = vec![vec![0; k]];
    let mut level = words.clone();
    let mut fresh: Label = 1;
    for _ in 0..m {
        budget.charge((level.len() * k) as u64)?;
        let mut next = Vec::with_capacity(level.len() * k);
        for w in &level {
            for x in 0..k {
                let mut child = w.clone();
                child[x] = fresh;
                fresh += 1;
                next.push(child);
            }
        }
        words.extend(next.iter().cloned());
        level = next;
    }
    ConceptClass::new(k, words)
}

/// The disjoint union of classes on concatenated domains: each word keeps
/// its values on its own block, with labels shifted apart, and takes one
/// shared star label everywhere else.
pub fn star_union(classes: &[ConceptClass]) -> Result<ConceptClass> {
    if classes.is_empty() {
        return Err(Error::Precondition("star union of no classes".into()));
    }
    let n: usize = classes.iter().map(ConceptClass::domain_size).sum();
    let mut offsets = Vec::new();
    let mut next: Label = 0;
    for c in classes {
        offsets.push(next);
        next += c.labels().last().map_or(0, |&l| l + 1);
    }
    let star = next;
    let mut words = Vec::new();
    let mut start = 0;
    for (c, &off) in classes.iter().zip(&offsets) {
        for w in c.words() {
            let mut word = vec![star; n];
            for (i, &y) in w.iter().enumerate() {
                word[start + i] = y + off;
            }
            words.push(word);
        }
        start += c.domain_size();
    }
    ConceptClass::new(n, words)
}

/// Random class on `n` points with labels `0..p` and at most `max_words` words.
pub fn random_class(rng: &mut impl Rng, n: usize, p: usize, max_words: usize) -> ConceptClass {
    let size = rng.gen_range(1..=max_words);
    let words: Vec<Word> = (0..size).map(|_| (0..n).map(|_| rng.gen_range(0..p) as Label).collect()).collect();
    ConceptClass::new(n, words).expect("fixed length")
}

/// Random `d`-dimensional pseudo-cube with at most `max_words` words, from
/// the pseudo-cube core of a random dense subset of `[p]^d`. Retries until
/// the core is non-empty and small enough.
pub fn random_pseudo_cube(rng: &mut impl Rng, d: usize, max_words: usize) -> ConceptClass {
    loop {
        let p = rng.gen_range(2..=4usize);
        let density = rng.gen_range(0.4..0.95);
        let mut all: Vec<Word> =
            (0..d).map(|_| 0..p as Label).multi_cartesian_product().filter(|_| rng.gen_bool(density)).collect();
        all.shuffle(rng);
        all.truncate(max_words * 2);
        let core = pseudo_cube_core(&ConceptClass::new(d, all).expect("fixed length"));
        if !core.is_empty() && core.len() <= max_words {
            return core;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::dims::is_pseudo_cube;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn torus_properties() {
        let t = gen_torus(&Budget::default()).unwrap();
        assert_eq!(t.complex.vertex_count(), 27);
        assert_eq!(t.class.len(), 54);
        assert_eq!(t.class.labels().len(), 27);
        assert!(is_pseudo_cube(&t.class));
    }

    #[test]
    fn candidate_lattices_respect_coloring() {
        let c = torus_candidates();
        assert!(!c.is_empty());
        for p in c {
            assert_eq!(p.a * p.c, 27);
            assert_eq!(p.a % 3, 0);
            assert_eq!((p.b - p.c).rem_euclid(3), 0);
        }
    }

    #[test]
    fn tree_sizes() {
        let b = Budget::default();
        assert_eq!(gen_tree_class(3, 2, &b).unwrap().len(), 13);
        assert_eq!(gen_tree_class(1, 1, &b).unwrap().len(), 2);
        assert_eq!(gen_tree_class(2, 4, &b).unwrap().len(), 31);
        for (k, m) in [(1, 1), (2, 2), (3, 2), (2, 3)] {
            let c = gen_tree_class(k, m, &b).unwrap();
            assert_eq!(ds_dimension(&c, &b).unwrap().value, 1, "k={k} m={m}");
        }
        assert!(gen_tree_class(0, 1, &b).is_err());
    }

    #[test]
    fn star_union_of_one_class() {
        let b = Budget::default();
        let u = star_union(&[catalog::hexagon()]).unwrap();
        assert_eq!(u, catalog::hexagon());
        assert_eq!(ds_dimension(&u, &b).unwrap().value, 2);
        assert!(star_union(&[]).is_err());
    }

    #[test]
    fn star_union_dimensions() {
        let b = Budget::default();
        let u = star_union(&[catalog::hexagon(), catalog::boolean_cube(1)]).unwrap();
        assert_eq!(u.domain_size(), 3);
        assert_eq!(u.len(), 8);
        assert_eq!(natarajan_dimension(&u, &b).unwrap().points.len(), 1);
        assert_eq!(ds_dimension(&u, &b).unwrap().value, 2);
        let v = star_union(&[catalog::boolean_cube(2), catalog::hexagon()]).unwrap();
        assert_eq!(natarajan_dimension(&v, &b).unwrap().points.len(), 2);
    }

    #[test]
    fn random_pseudo_cubes_are_pseudo_cubes() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for d in 1..=4 {
            for _ in 0..5 {
                let c = random_pseudo_cube(&mut rng, d, 60);
                assert!(is_pseudo_cube(&c));
                assert!(c.len() <= 60);
                assert_eq!(c.domain_size(), d);
            }
        }
    }
}
