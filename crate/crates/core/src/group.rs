//! Permutation groups, their coset complexes, and the two conditions under
//! which a coset complex is a good complex without empty squares.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use crate::budget::Budget;
use crate::class::ConceptClass;
use crate::complex::{complex_to_pseudocube, find_empty_square, is_good, Defect, SimplicialComplex, Square};
use crate::dims::natarajan_dimension;
use crate::error::{Error, Result};

/// A permutation of `0..degree` as its image table.
pub type Perm = Vec<u32>;

pub fn identity(degree: usize) -> Perm {
    (0..degree as u32).collect()
}

/// `(a * b)(x) = a(b(x))`.
pub fn compose(a: &Perm, b: &Perm) -> Perm {
    b.iter().map(|&x| a[x as usize]).collect()
}

/// Builds a permutation from 1-based cycles, e.g. `[[1, 2], [3, 4, 5]]`.
pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Perm> {
    let mut p = identity(degree);
    let mut seen = HashSet::new();
    for cycle in cycles {
        for (k, &a) in cycle.iter().enumerate() {
            if a == 0 || a as usize > degree {
                return Err(Error::Precondition(format!("point {a} is outside 1..={degree}")));
            }
            if !seen.insert(a) {
                return Err(Error::Precondition(format!("point {a} appears in two cycles")));
            }
            let b = cycle[(k + 1) % cycle.len()];
            p[a as usize - 1] = b - 1;
        }
    }
    Ok(p)
}

/// Closure of a generating set under composition, in breadth-first order
/// from the identity.
fn closure(degree: usize, generators: &[Perm], budget: &Budget) -> Result<Vec<Perm>> {
    for g in generators {
        let image: BTreeSet<u32> = g.iter().copied().collect();
        if g.len() != degree || image.len() != degree || image.iter().any(|&x| x as usize >= degree) {
            return Err(Error::Precondition(format!("{g:?} is not a permutation of degree {degree}")));
        }
    }
    let id = identity(degree);
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut elements = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = compose(&x, g);
            if seen.insert(y.clone()) {
                budget.charge(1)?;
                elements.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(elements)
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: BTreeMap<Perm, usize>,
}

impl FiniteGroup {
    pub fn generate(degree: usize, generators: Vec<Perm>, budget: &Budget) -> Result<Self> {
        let elements = closure(degree, &generators, budget)?;
        let index = elements.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        Ok(FiniteGroup { degree, generators, elements, index })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// The subgroup generated by `generators`, as sorted element indices.
    pub fn subgroup(&self, generators: &[Perm], budget: &Budget) -> Result<BTreeSet<usize>> {
        closure(self.degree, generators, budget)?
            .iter()
            .map(|p| {
                self.index_of(p)
                    .ok_or_else(|| Error::Precondition(format!("subgroup element {p:?} is not in the group")))
            })
            .collect()
    }
}

/// The coset complex of `group` with respect to the subgroups: one vertex per
/// left coset `gH_i`, colored `i`, and one maximal face `{gH_1, ..., gH_d}`
/// per group element `g`.
#[derive(Clone, Debug)]
pub struct CosetComplex {
    pub complex: SimplicialComplex,
    /// `(subgroup, coset elements)` for every vertex.
    pub cosets: Vec<(usize, BTreeSet<usize>)>,
    pub subgroups: Vec<BTreeSet<usize>>,
}

pub fn coset_complex(group: &FiniteGroup, subgroups: &[Vec<Perm>], budget: &Budget) -> Result<CosetComplex> {
    if subgroups.is_empty() {
        return Err(Error::Precondition("at least one subgroup is needed".into()));
    }
    let subs: Vec<BTreeSet<usize>> =
        subgroups.iter().map(|gens| group.subgroup(gens, budget)).collect::<Result<_>>()?;
    budget.charge((group.order() * subs.len()) as u64)?;
    let mut vertex_of: BTreeMap<(usize, BTreeSet<usize>), usize> = BTreeMap::new();
    let mut faces = Vec::with_capacity(group.order());
    for g in group.elements() {
        let face: Vec<(usize, BTreeSet<usize>)> = subs
            .iter()
            .enumerate()
            .map(|(i, h)| (i, h.iter().map(|&k| group.index[&compose(g, &group.elements[k])]).collect()))
            .collect();
        faces.push(face);
    }
    for face in &faces {
        for key in face {
            let next = vertex_of.len();
            vertex_of.entry(key.clone()).or_insert(next);
        }
    }
    // renumber vertices in (subgroup, coset) order for stable output
    let cosets: Vec<(usize, BTreeSet<usize>)> = vertex_of.keys().cloned().collect();
    let rank: BTreeMap<&(usize, BTreeSet<usize>), usize> = cosets.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let complex = SimplicialComplex::new(cosets.len(), faces.iter().map(|f| f.iter().map(|k| rank[k]).collect()))?
        .with_coloring(cosets.iter().map(|c| c.0).collect())?;
    Ok(CosetComplex { complex, cosets, subgroups: subs })
}

#[derive(Clone, Debug, Serialize)]
pub struct PolishReport {
    pub group_order: usize,
    pub subgroup_orders: Vec<usize>,
    pub vertices: usize,
    pub maximal_faces: usize,
    /// `(intersection of H_j for j != i) \ H_i` is non-empty, per `i`.
    pub intersection_condition: Vec<bool>,
    pub empty_square: Option<Square>,
    pub pure: bool,
    pub dimension: usize,
    pub coloring_proper: bool,
    pub replacement: bool,
    pub good: bool,
    pub defect: Option<Defect>,
    /// Natarajan dimension of the associated pseudo-cube, when the complex is good.
    pub natarajan: Option<usize>,
    #[serde(skip)]
    pub class: Option<ConceptClass>,
}

impl PolishReport {
    pub fn conditions_hold(&self) -> bool {
        self.intersection_condition.iter().all(|&b| b) && self.empty_square.is_none()
    }
}

/// Checks both group conditions and certifies the coset complex directly:
/// purity of dimension `d - 1`, the canonical coloring, and replacement.
pub fn check_polish_conditions(group: &FiniteGroup, subgroups: &[Vec<Perm>], budget: &Budget) -> Result<PolishReport> {
    let cc = coset_complex(group, subgroups, budget)?;
    let d = cc.subgroups.len();
    let all: BTreeSet<usize> = (0..group.order()).collect();
    let intersection_condition = (0..d)
        .map(|i| {
            let others = (0..d)
                .filter(|&j| j != i)
                .fold(all.clone(), |acc, j| acc.intersection(&cc.subgroups[j]).copied().collect());
            others.difference(&cc.subgroups[i]).next().is_some()
        })
        .collect();
    let report = is_good(&cc.complex);
    let empty_square = find_empty_square(&cc.complex);
    let pure = cc.complex.is_pure() && cc.complex.dimension() + 1 == d;
    let coloring_proper = !matches!(report.defect, Some(Defect::ImproperColoring { .. } | Defect::NotPure { .. }));
    let replacement = report.good || !matches!(report.defect, Some(Defect::Replacement { .. }));
    let (natarajan, class) = if report.good {
        let class = complex_to_pseudocube(&cc.complex)?;
        let n = natarajan_dimension(&class, budget)?.points.len();
        (Some(n), Some(class))
    } else {
        (None, None)
    };
    Ok(PolishReport {
        group_order: group.order(),
        subgroup_orders: cc.subgroups.iter().map(BTreeSet::len).collect(),
        vertices: cc.complex.vertex_count(),
        maximal_faces: cc.complex.maximal_faces().len(),
        intersection_condition,
        empty_square,
        pure,
        dimension: cc.complex.dimension(),
        coloring_proper,
        replacement,
        good: report.good,
        defect: report.defect,
        natarajan,
        class,
    })
}

/// `S_3` on three points with `H_1 = <(1 2)>`, `H_2 = <(1 3)>`.
pub fn s3_instance(budget: &Budget) -> Result<(FiniteGroup, Vec<Vec<Perm>>)> {
    let a = from_cycles(3, &[vec![1, 2]])?;
    let b = from_cycles(3, &[vec![1, 3]])?;
    let g = FiniteGroup::generate(3, vec![a.clone(), b.clone()], budget)?;
    Ok((g, vec![vec![a], vec![b]]))
}

/// `Z_2 x Z_2` as `<(1 2), (3 4)>` with the two factors as subgroups.
pub fn klein_instance(budget: &Budget) -> Result<(FiniteGroup, Vec<Vec<Perm>>)> {
    let a = from_cycles(4, &[vec![1, 2]])?;
    let b = from_cycles(4, &[vec![3, 4]])?;
    let g = FiniteGroup::generate(4, vec![a.clone(), b.clone()], budget)?;
    Ok((g, vec![vec![a], vec![b]]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::complex::{are_isomorphic, pseudocube_to_complex};

    #[test]
    fn cycles_and_closure() {
        let p = from_cycles(4, &[vec![1, 2, 3]]).unwrap();
        assert_eq!(p, vec![1, 2, 0, 3]);
        assert!(from_cycles(3, &[vec![1, 4]]).is_err());
        assert!(from_cycles(3, &[vec![1, 2], vec![2, 3]]).is_err());
        let s4 = FiniteGroup::generate(
            4,
            vec![from_cycles(4, &[vec![1, 2]]).unwrap(), from_cycles(4, &[vec![1, 2, 3, 4]]).unwrap()],
            &Budget::default(),
        )
        .unwrap();
        assert_eq!(s4.order(), 24);
        assert!(FiniteGroup::generate(3, vec![vec![0, 0, 1]], &Budget::default()).is_err());
    }

    #[test]
    fn budget_limits_enumeration() {
        let s5 = vec![from_cycles(5, &[vec![1, 2]]).unwrap(), from_cycles(5, &[vec![1, 2, 3, 4, 5]]).unwrap()];
        assert!(matches!(FiniteGroup::generate(5, s5, &Budget::new(50)), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn s3_gives_the_hexagon() {
        let b = Budget::default();
        let (g, subs) = s3_instance(&b).unwrap();
        let cc = coset_complex(&g, &subs, &b).unwrap();
        assert_eq!(cc.complex.vertex_count(), 6);
        assert_eq!(cc.complex.maximal_faces().len(), 6);
        let (hex, _) = pseudocube_to_complex(&catalog::hexagon()).unwrap();
        assert!(are_isomorphic(&cc.complex, &hex));
        let r = check_polish_conditions(&g, &subs, &b).unwrap();
        assert!(r.conditions_hold() && r.good && r.pure && r.replacement);
        assert_eq!(r.natarajan, Some(1));
    }

    #[test]
    fn klein_gives_the_square() {
        let b = Budget::default();
        let (g, subs) = klein_instance(&b).unwrap();
        let r = check_polish_conditions(&g, &subs, &b).unwrap();
        assert_eq!(r.intersection_condition, vec![true, true]);
        assert!(r.empty_square.is_some());
        assert!(r.good);
        assert_eq!(r.natarajan, Some(2));
        assert_eq!(r.class.unwrap().len(), 4);
    }

    #[test]
    fn subgroup_outside_group() {
        let b = Budget::default();
        let (g, _) = s3_instance(&b).unwrap();
        let foreign = vec![vec![from_cycles(3, &[vec![1, 2, 3]]).unwrap()], vec![vec![0, 1]]];
        assert!(coset_complex(&g, &foreign, &b).is_err());
    }

    #[test]
    fn one_subgroup_gives_points() {
        let b = Budget::default();
        let (g, subs) = s3_instance(&b).unwrap();
        let r = check_polish_conditions(&g, &subs[..1], &b).unwrap();
        assert_eq!(r.vertices, 3);
        assert_eq!(r.dimension, 0);
        assert!(r.good && r.intersection_condition[0]);
        // the whole group as the only subgroup leaves a single coset
        let whole = vec![g.generators().to_vec()];
        let r = check_polish_conditions(&g, &whole, &b).unwrap();
        assert!(!r.intersection_condition[0]);
        assert!(!r.replacement);
    }
}
