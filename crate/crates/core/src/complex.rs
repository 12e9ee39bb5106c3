//! Colorful simplicial complexes and their dictionary with pseudo-cubes.
//!
//! A complex is stored by its maximal faces over vertices `0..vertex_count`;
//! every subset of a maximal face is a face. A vertex in no listed face is
//! treated as a maximal face of its own.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::class::{ConceptClass, Label, Word};
use crate::dims::is_pseudo_cube;
use crate::error::{Error, Result};

pub type Face = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    maximal_faces: Vec<Face>,
    coloring: Option<Vec<usize>>,
}

impl SimplicialComplex {
    /// Builds a complex from a family of faces, keeping the inclusion-maximal ones.
    pub fn new(vertex_count: usize, faces: impl IntoIterator<Item = Face>) -> Result<Self> {
        let mut faces: Vec<Face> = faces
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .collect();
        for (i, f) in faces.iter().enumerate() {
            if let Some(&v) = f.iter().find(|&&v| v >= vertex_count) {
                return Err(Error::Precondition(format!(
                    "face #{i} uses vertex {v}, but there are only {vertex_count} vertices"
                )));
            }
            if f.is_empty() {
                return Err(Error::Precondition(format!("face #{i} is empty")));
            }
        }
        faces.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        faces.dedup();
        let mut maximal: Vec<Face> = Vec::new();
        let mut covered = vec![false; vertex_count];
        for f in faces {
            if !maximal.iter().any(|m| m.len() > f.len() && f.iter().all(|v| m.binary_search(v).is_ok())) {
                f.iter().for_each(|&v| covered[v] = true);
                maximal.push(f);
            }
        }
        maximal.extend((0..vertex_count).filter(|&v| !covered[v]).map(|v| vec![v]));
        maximal.sort();
        Ok(SimplicialComplex { vertex_count, maximal_faces: maximal, coloring: None })
    }

    /// Attaches a vertex coloring; its validity is checked by [`is_good`].
    pub fn with_coloring(mut self, coloring: Vec<usize>) -> Result<Self> {
        if coloring.len() != self.vertex_count {
            return Err(Error::Precondition(format!(
                "coloring has {} entries for {} vertices",
                coloring.len(),
                self.vertex_count
            )));
        }
        self.coloring = Some(coloring);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn maximal_faces(&self) -> &[Face] {
        &self.maximal_faces
    }

    pub fn coloring(&self) -> Option<&[usize]> {
        self.coloring.as_deref()
    }

    /// Largest face size minus one.
    pub fn dimension(&self) -> usize {
        self.maximal_faces.iter().map(Vec::len).max().unwrap_or(1) - 1
    }

    pub fn is_pure(&self) -> bool {
        self.maximal_faces.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// Sorted neighbor lists of the 1-skeleton.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.vertex_count];
        for f in &self.maximal_faces {
            for &a in f {
                for &b in f {
                    if a != b {
                        adj[a].insert(b);
                    }
                }
            }
        }
        adj.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    pub fn is_face(&self, face: &[usize]) -> bool {
        self.maximal_faces.iter().any(|m| face.iter().all(|v| m.binary_search(v).is_ok()))
    }

    /// Applies a vertex permutation (`map[old] = new`), carrying the coloring along.
    pub fn relabel(&self, map: &[usize]) -> Result<SimplicialComplex> {
        let c = SimplicialComplex::new(
            self.vertex_count,
            self.maximal_faces.iter().map(|f| f.iter().map(|&v| map[v]).collect()),
        )?;
        match &self.coloring {
            Some(r) => {
                let mut out = vec![0; self.vertex_count];
                for (v, &col) in r.iter().enumerate() {
                    out[map[v]] = col;
                }
                c.with_coloring(out)
            }
            None => Ok(c),
        }
    }
}

/// The first property of a good complex that fails, with a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "property", rename_all = "snake_case")]
pub enum Defect {
    Empty,
    NotPure { small: Face, large: Face },
    ImproperColoring { face: Face },
    NoProperColoring,
    Replacement { face: Face, vertex: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoodReport {
    pub good: bool,
    pub dimension: usize,
    pub coloring: Option<Vec<usize>>,
    pub defect: Option<Defect>,
}

/// Checks purity, proper colorability with `dimension + 1` colors, and
/// replacement. A supplied coloring is validated; otherwise one is searched for.
pub fn is_good(c: &SimplicialComplex) -> GoodReport {
    let dimension = c.dimension();
    let fail = |defect| GoodReport { good: false, dimension, coloring: None, defect: Some(defect) };
    if c.vertex_count == 0 {
        return fail(Defect::Empty);
    }
    if !c.is_pure() {
        let small = c.maximal_faces.iter().min_by_key(|f| f.len()).unwrap().clone();
        let large = c.maximal_faces.iter().max_by_key(|f| f.len()).unwrap().clone();
        return fail(Defect::NotPure { small, large });
    }
    let coloring = match &c.coloring {
        Some(r) => {
            if let Some(f) = c.maximal_faces.iter().find(|f| !is_rainbow(f, r, dimension + 1)) {
                return fail(Defect::ImproperColoring { face: f.clone() });
            }
            r.clone()
        }
        None => match find_coloring(c) {
            Some(r) => r,
            None => return fail(Defect::NoProperColoring),
        },
    };
    if let Some((face, vertex)) = replacement_failure(c) {
        return GoodReport { good: false, dimension, coloring: Some(coloring), defect: Some(Defect::Replacement { face, vertex }) };
    }
    GoodReport { good: true, dimension, coloring: Some(coloring), defect: None }
}

fn is_rainbow(face: &[usize], r: &[usize], colors: usize) -> bool {
    let mut seen = vec![false; colors];
    face.iter().all(|&v| r[v] < colors && !std::mem::replace(&mut seen[r[v]], true))
}

/// Every codimension-one face of a maximal face lies in a second maximal face.
fn replacement_failure(c: &SimplicialComplex) -> Option<(Face, usize)> {
    let mut ridges: HashMap<Face, usize> = HashMap::new();
    for f in &c.maximal_faces {
        for k in 0..f.len() {
            let mut r = f.clone();
            r.remove(k);
            *ridges.entry(r).or_default() += 1;
        }
    }
    c.maximal_faces.iter().find_map(|f| {
        (0..f.len()).find_map(|k| {
            let mut r = f.clone();
            r.remove(k);
            (ridges[&r] < 2).then(|| (f.clone(), f[k]))
        })
    })
}

/// Backtracking search for a proper coloring of a pure complex with
/// `dimension + 1` colors. Vertices are visited face by face so that the
/// last vertex of each face is forced.
pub fn find_coloring(c: &SimplicialComplex) -> Option<Vec<usize>> {
    if !c.is_pure() {
        return None;
    }
    let colors = c.dimension() + 1;
    let mut faces_of: Vec<Vec<usize>> = vec![Vec::new(); c.vertex_count];
    for (i, f) in c.maximal_faces.iter().enumerate() {
        for &v in f {
            faces_of[v].push(i);
        }
    }
    let mut order = Vec::with_capacity(c.vertex_count);
    let mut placed = vec![false; c.vertex_count];
    let mut face_seen = vec![false; c.maximal_faces.len()];
    for start in 0..c.maximal_faces.len() {
        if face_seen[start] {
            continue;
        }
        let mut queue = std::collections::VecDeque::from([start]);
        face_seen[start] = true;
        while let Some(fi) = queue.pop_front() {
            for &v in &c.maximal_faces[fi] {
                if !placed[v] {
                    placed[v] = true;
                    order.push(v);
                }
                for &g in &faces_of[v] {
                    if !face_seen[g] {
                        face_seen[g] = true;
                        queue.push_back(g);
                    }
                }
            }
        }
    }
    let adj = c.adjacency();
    let mut color = vec![usize::MAX; c.vertex_count];
    fn go(k: usize, order: &[usize], adj: &[Vec<usize>], colors: usize, color: &mut Vec<usize>) -> bool {
        let Some(&v) = order.get(k) else { return true };
        for col in 0..colors {
            if adj[v].iter().all(|&u| color[u] != col) {
                color[v] = col;
                if go(k + 1, order, adj, colors, color) {
                    return true;
                }
            }
        }
        color[v] = usize::MAX;
        false
    }
    go(0, &order, &adj, colors, &mut color).then_some(color)
}

/// Each maximal face becomes the word listing its vertices by color.
pub fn complex_to_pseudocube(c: &SimplicialComplex) -> Result<ConceptClass> {
    let report = is_good(c);
    if let Some(defect) = report.defect {
        return Err(Error::Precondition(format!("complex is not good: {defect:?}")));
    }
    let r = report.coloring.expect("good complexes are colored");
    let n = report.dimension + 1;
    let words = c.maximal_faces.iter().map(|f| {
        let mut w: Word = vec![0; n];
        for &v in f {
            w[r[v]] = v as Label;
        }
        w
    });
    let class = ConceptClass::new(n, words)?;
    if !is_pseudo_cube(&class) {
        return Err(Error::Verification("complex of a good coloring did not give a pseudo-cube".into()));
    }
    Ok(class)
}

/// Vertices are the used `(coordinate, label)` pairs in sorted order, each
/// word is a maximal face, and the coordinate is the color.
pub fn pseudocube_to_complex(class: &ConceptClass) -> Result<(SimplicialComplex, Vec<(usize, Label)>)> {
    if !is_pseudo_cube(class) {
        return Err(Error::Precondition("class is not a pseudo-cube".into()));
    }
    let pairs: Vec<(usize, Label)> = class
        .words()
        .iter()
        .flat_map(|w| w.iter().copied().enumerate())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index: BTreeMap<(usize, Label), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let faces = class.words().iter().map(|w| w.iter().enumerate().map(|(i, &y)| index[&(i, y)]).collect());
    let coloring = pairs.iter().map(|p| p.0).collect();
    let c = SimplicialComplex::new(pairs.len(), faces)?.with_coloring(coloring)?;
    let report = is_good(&c);
    if !report.good {
        return Err(Error::Verification(format!("complex of a pseudo-cube is not good: {:?}", report.defect)));
    }
    Ok((c, pairs))
}

/// A 4-cycle `v0 v1 v2 v3` of the 1-skeleton.
pub type Square = [usize; 4];

fn find_square(c: &SimplicialComplex, accept: impl Fn(&[Vec<usize>], Square) -> bool + Sync) -> Option<Square> {
    let adj = c.adjacency();
    let n = c.vertex_count;
    (0..n).into_par_iter().find_map_first(|v0| {
        for v2 in v0 + 1..n {
            let common: Vec<usize> =
                adj[v0].iter().copied().filter(|u| adj[v2].binary_search(u).is_ok()).collect();
            for (i, &v1) in common.iter().enumerate() {
                for &v3 in &common[i + 1..] {
                    if accept(&adj, [v0, v1, v2, v3]) {
                        return Some([v0, v1, v2, v3]);
                    }
                }
            }
        }
        None
    })
}

fn count_squares(c: &SimplicialComplex, accept: impl Fn(&[Vec<usize>], Square) -> bool + Sync) -> usize {
    let adj = c.adjacency();
    let n = c.vertex_count;
    // each 4-cycle is counted once, from its smallest vertex v0 and the opposite vertex v2
    (0..n)
        .into_par_iter()
        .map(|v0| {
            let mut count = 0;
            for v2 in v0 + 1..n {
                let common: Vec<usize> =
                    adj[v0].iter().copied().filter(|&u| u > v0 && adj[v2].binary_search(&u).is_ok()).collect();
                for (i, &v1) in common.iter().enumerate() {
                    for &v3 in &common[i + 1..] {
                        if accept(&adj, [v0, v1, v2, v3]) {
                            count += 1;
                        }
                    }
                }
            }
            count
        })
        .sum()
}

/// A 4-cycle whose opposite vertices share colors.
pub fn find_alternating_square(c: &SimplicialComplex, coloring: &[usize]) -> Option<Square> {
    find_square(c, |_, [a, b, x, y]| coloring[a] == coloring[x] && coloring[b] == coloring[y])
}

/// A 4-cycle with neither diagonal an edge.
pub fn find_empty_square(c: &SimplicialComplex) -> Option<Square> {
    find_square(c, |adj, [a, b, x, y]| adj[a].binary_search(&x).is_err() && adj[b].binary_search(&y).is_err())
}

/// Number of 4-cycles whose opposite vertices share colors.
pub fn count_alternating_squares(c: &SimplicialComplex, coloring: &[usize]) -> usize {
    count_squares(c, |_, [a, b, x, y]| coloring[a] == coloring[x] && coloring[b] == coloring[y])
}

/// Number of 4-cycles with neither diagonal an edge.
pub fn count_empty_squares(c: &SimplicialComplex) -> usize {
    count_squares(c, |adj, [a, b, x, y]| adj[a].binary_search(&x).is_err() && adj[b].binary_search(&y).is_err())
}

/// The class of edges `(u, v)` of a bipartite graph, left labels on
/// coordinate 0 and right labels on coordinate 1. It is a pseudo-cube
/// exactly when no vertex is a leaf.
pub fn bipartite_to_pseudocube(edges: &[(Label, Label)]) -> Result<ConceptClass> {
    if edges.is_empty() {
        return Err(Error::Precondition("graph has no edges".into()));
    }
    let class = ConceptClass::new(2, edges.iter().map(|&(u, v)| vec![u, v]))?;
    for side in 0..2 {
        let mut degree: BTreeMap<Label, usize> = BTreeMap::new();
        for w in class.words() {
            *degree.entry(w[side]).or_default() += 1;
        }
        if let Some((&leaf, _)) = degree.iter().find(|(_, &d)| d < 2) {
            let name = if side == 0 { "left" } else { "right" };
            return Err(Error::Precondition(format!("{name} vertex {leaf} is a leaf")));
        }
    }
    Ok(class)
}

/// The cycle of length `n` as a 1-dimensional complex on vertices `0..n`.
pub fn cycle_complex(n: usize) -> SimplicialComplex {
    SimplicialComplex::new(n, (0..n).map(|i| vec![i, (i + 1) % n])).expect("valid cycle")
}

/// Color-preserving isomorphism test for colored complexes. Vertices are
/// first split by iterated refinement of (color, incident face signatures);
/// the remaining ties are settled by backtracking.
pub fn are_isomorphic(a: &SimplicialComplex, b: &SimplicialComplex) -> bool {
    let (Some(ra), Some(rb)) = (a.coloring(), b.coloring()) else { return false };
    if a.vertex_count != b.vertex_count || a.maximal_faces.len() != b.maximal_faces.len() {
        return false;
    }
    let cells_a = refine(a, ra);
    let cells_b = refine(b, rb);
    let mut hist_a = cells_a.clone();
    let mut hist_b = cells_b.clone();
    hist_a.sort_unstable();
    hist_b.sort_unstable();
    if hist_a != hist_b {
        return false;
    }
    let faces_b: HashSet<&Face> = b.maximal_faces.iter().collect();
    let mut faces_of: Vec<Vec<usize>> = vec![Vec::new(); a.vertex_count];
    for (i, f) in a.maximal_faces.iter().enumerate() {
        for &v in f {
            faces_of[v].push(i);
        }
    }
    let mut order: Vec<usize> = (0..a.vertex_count).collect();
    order.sort_by_key(|&v| (cells_a.iter().filter(|&&c| c == cells_a[v]).count(), v));
    let mut map = vec![usize::MAX; a.vertex_count];
    let mut used = vec![false; b.vertex_count];

    struct Search<'s> {
        a: &'s SimplicialComplex,
        cells_a: &'s [u64],
        cells_b: &'s [u64],
        faces_b: &'s HashSet<&'s Face>,
        faces_of: &'s [Vec<usize>],
        order: &'s [usize],
    }
    impl Search<'_> {
        fn go(&self, k: usize, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            let Some(&v) = self.order.get(k) else { return true };
            for w in 0..used.len() {
                if used[w] || self.cells_b[w] != self.cells_a[v] {
                    continue;
                }
                map[v] = w;
                let consistent = self.faces_of[v].iter().all(|&fi| {
                    let f = &self.a.maximal_faces[fi];
                    if f.iter().any(|&u| map[u] == usize::MAX) {
                        return true;
                    }
                    let mut image: Face = f.iter().map(|&u| map[u]).collect();
                    image.sort_unstable();
                    self.faces_b.contains(&image)
                });
                if consistent {
                    used[w] = true;
                    if self.go(k + 1, map, used) {
                        return true;
                    }
                    used[w] = false;
                }
                map[v] = usize::MAX;
            }
            false
        }
    }
    Search { a, cells_a: &cells_a, cells_b: &cells_b, faces_b: &faces_b, faces_of: &faces_of, order: &order }
        .go(0, &mut map, &mut used)
}

/// Stable vertex invariants: colors refined by the multiset of colors of
/// co-face neighbors until the partition stops splitting.
fn refine(c: &SimplicialComplex, coloring: &[usize]) -> Vec<u64> {
    use std::hash::{Hash, Hasher};
    let mut faces_of: Vec<Vec<usize>> = vec![Vec::new(); c.vertex_count];
    for (i, f) in c.maximal_faces.iter().enumerate() {
        for &v in f {
            faces_of[v].push(i);
        }
    }
    let mut cell: Vec<u64> = coloring.iter().map(|&r| r as u64).collect();
    let mut classes = cell.iter().collect::<HashSet<_>>().len();
    loop {
        let next: Vec<u64> = (0..c.vertex_count)
            .map(|v| {
                let mut sig: Vec<Vec<u64>> = faces_of[v]
                    .iter()
                    .map(|&fi| {
                        let mut s: Vec<u64> = c.maximal_faces[fi].iter().map(|&u| cell[u]).collect();
                        s.sort_unstable();
                        s
                    })
                    .collect();
                sig.sort_unstable();
                let mut h = std::collections::hash_map::DefaultHasher::new();
                (cell[v], sig).hash(&mut h);
                h.finish()
            })
            .collect();
        let count = next.iter().collect::<HashSet<_>>().len();
        cell = next;
        if count == classes {
            return cell;
        }
        classes = count;
    }
}
