//! Abstract pure simplicial complexes and the surgeries on them: link,
//! antistar, join, one-point suspension (single and iterated), stellar
//! subdivision, connected sum, cross-polytope boundaries, plus the Euler
//! characteristic / pseudomanifold / 2-sphere recognition used to sanity
//! check every constructed sphere.
//!
//! A complex stores only its facets; lower faces are enumerated on demand.
//! Facets are sets of vertex indices of equal cardinality, kept sorted, and
//! the facet list itself is kept in lexicographic order, so equal complexes
//! are structurally equal.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{Graph, IncidenceStructure};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("vertex `{0}` not in complex")]
    BadVertex(String),
    #[error("facet {0:?} not in complex")]
    BadFacet(Vec<String>),
    #[error("vertex label sets clash on `{0}`")]
    LabelClash(String),
    #[error("matching is not a bijection between the two facets")]
    BadMatching,
    #[error("incidence is not simplicial")]
    NotSimplicial,
    #[error("facets have mixed cardinalities")]
    MixedCardinality,
    #[error("complex has no facets")]
    Empty,
}

/// Pure simplicial complex: facets of equal size over labelled vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PureComplex {
    vertex_labels: Vec<String>,
    facets: Vec<Vec<usize>>,
    facet_size: usize,
}

/// Vertex bijection between two facets, given by label pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetMatching {
    pub pairs: Vec<(String, String)>,
}

impl FacetMatching {
    pub fn new(pairs: Vec<(String, String)>) -> Self {
        FacetMatching { pairs }
    }
}

impl PureComplex {
    /// Build from labelled facets. Unused labels are not representable:
    /// the vertex set is exactly the union of the facets.
    pub fn from_labelled_facets(facets: &[Vec<&str>]) -> Result<Self, ComplexError> {
        let owned: Vec<Vec<String>> = facets
            .iter()
            .map(|f| f.iter().map(|s| s.to_string()).collect())
            .collect();
        Self::from_labelled_facets_owned(&owned)
    }

    pub fn from_labelled_facets_owned(facets: &[Vec<String>]) -> Result<Self, ComplexError> {
        if facets.is_empty() {
            return Err(ComplexError::Empty);
        }
        // Labels indexed in order of first appearance, then renamed to sorted
        // order so the result is independent of facet ordering.
        let mut labels: Vec<String> = facets.iter().flatten().cloned().collect();
        labels.sort();
        labels.dedup();
        let index: BTreeMap<&String, usize> =
            labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
        let size = facets[0].len();
        let mut indexed = Vec::with_capacity(facets.len());
        for f in facets {
            let set: BTreeSet<usize> = f.iter().map(|l| index[l]).collect();
            if set.len() != size || f.len() != size {
                return Err(ComplexError::MixedCardinality);
            }
            indexed.push(set.into_iter().collect());
        }
        Self::from_indexed(labels, indexed)
    }

    pub fn from_indexed(
        vertex_labels: Vec<String>,
        facets: Vec<Vec<usize>>,
    ) -> Result<Self, ComplexError> {
        if facets.is_empty() {
            return Err(ComplexError::Empty);
        }
        let size = facets[0].len();
        let mut normed: Vec<Vec<usize>> = Vec::with_capacity(facets.len());
        let mut used = vec![false; vertex_labels.len()];
        for f in &facets {
            let set: BTreeSet<usize> = f.iter().copied().collect();
            if set.len() != size {
                return Err(ComplexError::MixedCardinality);
            }
            for &v in &set {
                if v >= vertex_labels.len() {
                    return Err(ComplexError::BadVertex(format!("index {v}")));
                }
                used[v] = true;
            }
            normed.push(set.into_iter().collect());
        }
        normed.sort();
        normed.dedup();
        // Drop labels that occur in no facet and reindex.
        let keep: Vec<usize> = (0..vertex_labels.len()).filter(|&v| used[v]).collect();
        let remap: BTreeMap<usize, usize> =
            keep.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let labels = keep.iter().map(|&v| vertex_labels[v].clone()).collect();
        let facets = normed
            .into_iter()
            .map(|f| f.into_iter().map(|v| remap[&v]).collect())
            .collect();
        Ok(PureComplex {
            vertex_labels: labels,
            facets,
            facet_size: size,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn n_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn facet_size(&self) -> usize {
        self.facet_size
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertex_labels.iter().position(|l| l == label)
    }

    pub fn facet_as_labels(&self, f: usize) -> Vec<String> {
        self.facets[f]
            .iter()
            .map(|&v| self.vertex_labels[v].clone())
            .collect()
    }

    /// Position of a facet given by labels, if present.
    pub fn facet_index(&self, labels: &[String]) -> Option<usize> {
        let mut ids: Vec<usize> = labels
            .iter()
            .map(|l| self.vertex_index(l))
            .collect::<Option<Vec<_>>>()?;
        ids.sort();
        ids.dedup();
        self.facets.iter().position(|f| *f == ids)
    }

    fn require_vertex(&self, label: &str) -> Result<usize, ComplexError> {
        self.vertex_index(label)
            .ok_or_else(|| ComplexError::BadVertex(label.to_string()))
    }

    fn require_facet(&self, labels: &[String]) -> Result<usize, ComplexError> {
        self.facet_index(labels)
            .ok_or_else(|| ComplexError::BadFacet(labels.to_vec()))
    }

    /// Facets containing `v`, with `v` removed.
    pub fn link(&self, v: &str) -> Result<PureComplex, ComplexError> {
        let vi = self.require_vertex(v)?;
        let facets: Vec<Vec<String>> = self
            .facets
            .iter()
            .filter(|f| f.contains(&vi))
            .map(|f| {
                f.iter()
                    .filter(|&&u| u != vi)
                    .map(|&u| self.vertex_labels[u].clone())
                    .collect()
            })
            .collect();
        Self::from_labelled_facets_owned(&facets)
    }

    /// Facets avoiding `v`.
    pub fn antistar(&self, v: &str) -> Result<PureComplex, ComplexError> {
        let vi = self.require_vertex(v)?;
        let facets: Vec<Vec<String>> = self
            .facets
            .iter()
            .filter(|f| !f.contains(&vi))
            .map(|f| f.iter().map(|&u| self.vertex_labels[u].clone()).collect())
            .collect();
        if facets.is_empty() {
            return Err(ComplexError::Empty);
        }
        Self::from_labelled_facets_owned(&facets)
    }

    /// Join: all unions of one facet of `self` with one of `other`.
    pub fn join(&self, other: &PureComplex) -> Result<PureComplex, ComplexError> {
        for l in &self.vertex_labels {
            if other.vertex_labels.contains(l) {
                return Err(ComplexError::LabelClash(l.clone()));
            }
        }
        let mut facets = Vec::with_capacity(self.n_facets() * other.n_facets());
        for f in &self.facets {
            for g in &other.facets {
                let mut joint: Vec<String> =
                    f.iter().map(|&v| self.vertex_labels[v].clone()).collect();
                joint.extend(g.iter().map(|&v| other.vertex_labels[v].clone()));
                facets.push(joint);
            }
        }
        Self::from_labelled_facets_owned(&facets)
    }

    /// Fresh labels `base1, base2, ...`, skipping any that already exist.
    fn fresh_labels(&self, base: &str, count: usize) -> Vec<String> {
        let mut out = Vec::with_capacity(count);
        let mut i = 1usize;
        while out.len() < count {
            let cand = format!("{base}{i}");
            if self.vertex_index(&cand).is_none() {
                out.push(cand);
            }
            i += 1;
        }
        out
    }

    /// One-point suspension at `w`:
    /// `(ast(w) * w1) u (ast(w) * w2) u (lk(w) * {w1,w2})`.
    pub fn ops(&self, w: &str) -> Result<PureComplex, ComplexError> {
        self.require_vertex(w)?;
        let fresh = self.fresh_labels(w, 2);
        self.suspension_with(w, &fresh)
    }

    /// Iterated one-point suspension:
    /// `(ast(w) * boundary(Delta_k)) u (lk(w) * Delta_k)` with `Delta_k` a
    /// k-simplex on fresh vertices `w1..w{k+1}`.
    pub fn iterated_ops(&self, w: &str, k: usize) -> Result<PureComplex, ComplexError> {
        assert!(k >= 1, "iterated suspension needs k >= 1");
        self.require_vertex(w)?;
        let fresh = self.fresh_labels(w, k + 1);
        self.suspension_with(w, &fresh)
    }

    fn suspension_with(&self, w: &str, fresh: &[String]) -> Result<PureComplex, ComplexError> {
        let wi = self.require_vertex(w)?;
        let mut facets: Vec<Vec<String>> = Vec::new();
        let as_labels = |f: &Vec<usize>| -> Vec<String> {
            f.iter()
                .filter(|&&u| u != wi)
                .map(|&u| self.vertex_labels[u].clone())
                .collect()
        };
        for f in &self.facets {
            if f.contains(&wi) {
                // link part: joined with the whole simplex on the new vertices
                let mut g = as_labels(f);
                g.extend(fresh.iter().cloned());
                facets.push(g);
            } else {
                // antistar part: joined with each boundary facet of the simplex
                for skip in 0..fresh.len() {
                    let mut g = as_labels(f);
                    g.extend(
                        fresh
                            .iter()
                            .enumerate()
                            .filter(|&(i, _)| i != skip)
                            .map(|(_, l)| l.clone()),
                    );
                    facets.push(g);
                }
            }
        }
        Self::from_labelled_facets_owned(&facets)
    }

    /// Replace facet `f` by the cone from a new vertex over its boundary.
    pub fn stellar_subdivide(
        &self,
        facet: &[String],
        new_label: &str,
    ) -> Result<PureComplex, ComplexError> {
        let fi = self.require_facet(facet)?;
        if self.vertex_index(new_label).is_some() {
            return Err(ComplexError::LabelClash(new_label.to_string()));
        }
        let mut facets: Vec<Vec<String>> = Vec::new();
        for (i, f) in self.facets.iter().enumerate() {
            if i == fi {
                for skip in f {
                    let mut g: Vec<String> = f
                        .iter()
                        .filter(|&u| u != skip)
                        .map(|&u| self.vertex_labels[u].clone())
                        .collect();
                    g.push(new_label.to_string());
                    facets.push(g);
                }
            } else {
                facets.push(f.iter().map(|&u| self.vertex_labels[u].clone()).collect());
            }
        }
        Self::from_labelled_facets_owned(&facets)
    }

    /// Connected sum: remove `fa` from `self` and `fb` from `other`, then
    /// identify the boundary of `fb` with that of `fa` along the matching.
    /// Labels of the two complexes must otherwise be disjoint.
    pub fn connected_sum(
        &self,
        fa: &[String],
        other: &PureComplex,
        fb: &[String],
        matching: &FacetMatching,
    ) -> Result<PureComplex, ComplexError> {
        let fai = self.require_facet(fa)?;
        let fbi = other.require_facet(fb)?;
        let fa_set: BTreeSet<String> = self.facet_as_labels(fai).into_iter().collect();
        let fb_set: BTreeSet<String> = other.facet_as_labels(fbi).into_iter().collect();
        let mut map: BTreeMap<String, String> = BTreeMap::new();
        let mut targets: BTreeSet<String> = BTreeSet::new();
        for (from_a, to_b) in &matching.pairs {
            if !fa_set.contains(from_a) || !fb_set.contains(to_b) {
                return Err(ComplexError::BadMatching);
            }
            if map.insert(from_a.clone(), to_b.clone()).is_some() || !targets.insert(to_b.clone())
            {
                return Err(ComplexError::BadMatching);
            }
        }
        if map.len() != fa_set.len() || targets.len() != fb_set.len() {
            return Err(ComplexError::BadMatching);
        }
        // Vertices of `other` outside fb must not collide with `self`.
        for l in &other.vertex_labels {
            if !fb_set.contains(l) && self.vertex_labels.contains(l) {
                return Err(ComplexError::LabelClash(l.clone()));
            }
        }
        let rename: BTreeMap<&String, &String> = map.iter().map(|(a, b)| (b, a)).collect();
        let mut facets: Vec<Vec<String>> = Vec::new();
        for (i, f) in self.facets.iter().enumerate() {
            if i != fai {
                facets.push(f.iter().map(|&u| self.vertex_labels[u].clone()).collect());
            }
        }
        for (i, f) in other.facets.iter().enumerate() {
            if i == fbi {
                continue;
            }
            facets.push(
                f.iter()
                    .map(|&u| {
                        let l = &other.vertex_labels[u];
                        rename.get(l).map_or_else(|| l.clone(), |a| (*a).clone())
                    })
                    .collect(),
            );
        }
        Self::from_labelled_facets_owned(&facets)
    }

    /// Boundary of the d-dimensional cross-polytope: vertices `p1..pd` and
    /// `n1..nd`, facets all 2^d sign choices.
    pub fn crosspolytope_boundary(d: usize) -> PureComplex {
        assert!(d >= 1);
        let mut facets = Vec::with_capacity(1 << d);
        for mask in 0u32..(1 << d) {
            let f: Vec<String> = (0..d)
                .map(|i| {
                    if mask & (1 << i) == 0 {
                        format!("p{}", i + 1)
                    } else {
                        format!("n{}", i + 1)
                    }
                })
                .collect();
            facets.push(f);
        }
        Self::from_labelled_facets_owned(&facets).expect("cross-polytope facets are uniform")
    }

    /// All faces, grouped by cardinality (index 0 holds the empty face).
    fn faces_by_dim(&self) -> Vec<BTreeSet<Vec<usize>>> {
        let mut levels: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); self.facet_size + 1];
        for f in &self.facets {
            for mask in 0u64..(1 << f.len()) {
                let face: Vec<usize> = f
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &v)| v)
                    .collect();
                let card = face.len();
                levels[card].insert(face);
            }
        }
        levels
    }

    /// Alternating sum `f_0 - f_1 + f_2 - ...` over nonempty faces.
    pub fn euler_characteristic(&self) -> i64 {
        let levels = self.faces_by_dim();
        let mut chi = 0i64;
        for (card, faces) in levels.iter().enumerate().skip(1) {
            let sign = if (card - 1) % 2 == 0 { 1 } else { -1 };
            chi += sign * faces.len() as i64;
        }
        chi
    }

    /// Ridges: the (facet_size - 1)-subsets of facets.
    fn ridges(&self) -> BTreeMap<Vec<usize>, Vec<usize>> {
        let mut map: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (i, f) in self.facets.iter().enumerate() {
            for skip in 0..f.len() {
                let ridge: Vec<usize> = f
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != skip)
                    .map(|(_, &v)| v)
                    .collect();
                map.entry(ridge).or_default().push(i);
            }
        }
        map
    }

    /// Dual graph: facets adjacent when they share a ridge.
    pub fn dual_graph(&self) -> Graph {
        let mut g = Graph::new(self.n_facets());
        for (_, fs) in self.ridges() {
            for a in 0..fs.len() {
                for b in (a + 1)..fs.len() {
                    g.add_edge(fs[a], fs[b]);
                }
            }
        }
        g
    }

    /// Every ridge lies in exactly two facets and the dual graph is connected.
    pub fn is_closed_pseudomanifold(&self) -> bool {
        if self.facet_size < 2 {
            return false;
        }
        self.ridges().values().all(|fs| fs.len() == 2) && self.dual_graph().is_connected()
    }

    /// For triangle complexes: closed pseudomanifold, Euler characteristic 2,
    /// and every vertex link a single cycle.
    pub fn is_two_sphere(&self) -> bool {
        if self.facet_size != 3 {
            return false;
        }
        if !self.is_closed_pseudomanifold() || self.euler_characteristic() != 2 {
            return false;
        }
        for label in &self.vertex_labels {
            let link = match self.link(label) {
                Ok(l) => l,
                Err(_) => return false,
            };
            // link is a graph (facet_size 2); a single cycle has every degree
            // 2, is connected, and has as many edges as vertices.
            let mut g = Graph::new(link.n_vertices());
            for e in link.facets() {
                g.add_edge(e[0], e[1]);
            }
            if !(g.is_connected()
                && link.n_facets() == link.n_vertices()
                && (0..g.n_nodes()).all(|v| g.degree(v) == 2))
            {
                return false;
            }
        }
        true
    }

    /// Relabel so the facet list is lexicographically least over all vertex
    /// permutations. Backtracking with an optimistic lower bound: every
    /// partial assignment is scored by filling each facet's unassigned slots
    /// with the smallest labels still free, which can only undershoot the
    /// real completion, so branches whose bound is not below the incumbent
    /// are safe to cut. Meant for the small complexes used in tests.
    pub fn canonical_form(&self) -> PureComplex {
        let n = self.n_vertices();
        let mut best: Option<Vec<Vec<usize>>> = None;
        let mut assignment: Vec<usize> = vec![usize::MAX; n]; // old -> new
        let mut used = vec![false; n];

        fn score(
            cpx: &PureComplex,
            assignment: &[usize],
            next: usize,
        ) -> Vec<Vec<usize>> {
            let mut list: Vec<Vec<usize>> = cpx
                .facets
                .iter()
                .map(|f| {
                    let mut tuple: Vec<usize> = f
                        .iter()
                        .filter_map(|&v| (assignment[v] != usize::MAX).then(|| assignment[v]))
                        .collect();
                    let missing = f.len() - tuple.len();
                    tuple.extend(next..next + missing);
                    tuple.sort();
                    tuple
                })
                .collect();
            list.sort();
            list
        }

        fn rec(
            cpx: &PureComplex,
            assignment: &mut Vec<usize>,
            used: &mut Vec<bool>,
            next: usize,
            best: &mut Option<Vec<Vec<usize>>>,
        ) {
            let n = cpx.n_vertices();
            if let Some(b) = best {
                // completion >= optimistic bound, so equal is also hopeless
                if score(cpx, assignment, next) >= *b {
                    return;
                }
            }
            if next == n {
                let finished = score(cpx, assignment, next);
                match best {
                    Some(b) if finished >= *b => {}
                    _ => *best = Some(finished),
                }
                return;
            }
            for old in 0..n {
                if used[old] {
                    continue;
                }
                assignment[old] = next;
                used[old] = true;
                rec(cpx, assignment, used, next + 1, best);
                assignment[old] = usize::MAX;
                used[old] = false;
            }
        }
        rec(self, &mut assignment, &mut used, 0, &mut best);
        let facets = best.expect("complex is nonempty");
        let labels = (0..n).map(|i| format!("v{i}")).collect();
        PureComplex::from_indexed(labels, facets).expect("canonical facets are uniform")
    }

    pub fn is_isomorphic(&self, other: &PureComplex) -> bool {
        if self.n_vertices() != other.n_vertices()
            || self.n_facets() != other.n_facets()
            || self.facet_size != other.facet_size
        {
            return false;
        }
        self.canonical_form().facets == other.canonical_form().facets
    }
}

/// Facets of a simplicial incidence as an abstract complex, with the vertex
/// labels carried over.
pub fn boundary_complex(inc: &IncidenceStructure) -> Result<PureComplex, ComplexError> {
    if !inc.is_bounded() || !crate::geometry::is_simplicial(inc) {
        return Err(ComplexError::NotSimplicial);
    }
    let facets: Vec<Vec<String>> = (0..inc.n_facets)
        .map(|f| {
            inc.facet_vertex_set(f)
                .into_iter()
                .map(|v| inc.vertex_label(v))
                .collect()
        })
        .collect();
    PureComplex::from_labelled_facets_owned(&facets)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn octahedron() -> PureComplex {
        PureComplex::crosspolytope_boundary(3)
    }

    fn pentagon() -> PureComplex {
        PureComplex::from_labelled_facets(&[
            vec!["a", "b"],
            vec!["b", "c"],
            vec!["c", "d"],
            vec!["d", "e"],
            vec!["e", "a"],
        ])
        .unwrap()
    }

    #[test]
    fn link_of_octahedron_apex_is_a_square() {
        let link = octahedron().link("p1").unwrap();
        assert_eq!(link.facet_size(), 2);
        assert_eq!(link.n_facets(), 4);
        assert_eq!(link.n_vertices(), 4);
        let mut g = Graph::new(4);
        for e in link.facets() {
            g.add_edge(e[0], e[1]);
        }
        assert!((0..4).all(|v| g.degree(v) == 2));
    }

    #[test]
    fn join_point_segment_gives_triangle() {
        let pt = PureComplex::from_labelled_facets(&[vec!["x"]]).unwrap();
        let seg = PureComplex::from_labelled_facets(&[vec!["a", "b"]]).unwrap();
        let tri = pt.join(&seg).unwrap();
        assert_eq!(tri.facet_size(), 3);
        assert_eq!(tri.n_facets(), 1);

        let e1 = PureComplex::from_labelled_facets(&[vec!["a", "b"]]).unwrap();
        let e2 = PureComplex::from_labelled_facets(&[vec!["c", "d"]]).unwrap();
        let tet = e1.join(&e2).unwrap();
        assert_eq!((tet.facet_size(), tet.n_facets()), (4, 1));

        let square = PureComplex::from_labelled_facets(&[
            vec!["a", "b"],
            vec!["b", "c"],
            vec!["c", "d"],
            vec!["d", "a"],
        ])
        .unwrap();
        let two_pts =
            PureComplex::from_labelled_facets(&[vec!["u"], vec!["v"]]).unwrap();
        let oct = square.join(&two_pts).unwrap();
        assert!(oct.is_isomorphic(&octahedron()));
    }

    #[test]
    fn join_rejects_label_clash() {
        let a = PureComplex::from_labelled_facets(&[vec!["x", "y"]]).unwrap();
        let b = PureComplex::from_labelled_facets(&[vec!["y", "z"]]).unwrap();
        assert_eq!(a.join(&b), Err(ComplexError::LabelClash("y".into())));
    }

    #[test]
    fn suspension_of_pentagon_counts() {
        let s = pentagon().ops("a").unwrap();
        assert_eq!(s.n_vertices(), 6);
        assert_eq!(s.facet_size(), 3);
        assert_eq!(s.n_facets(), 8);
        assert!(s.is_two_sphere());
    }

    #[test]
    fn suspension_of_triangle_boundary_is_tetrahedron() {
        let tri = PureComplex::from_labelled_facets(&[
            vec!["a", "b"],
            vec!["b", "c"],
            vec!["c", "a"],
        ])
        .unwrap();
        let s = tri.ops("a").unwrap();
        assert_eq!((s.n_vertices(), s.n_facets()), (4, 4));
        assert!(s.is_two_sphere());
    }

    #[test]
    fn iterated_ops_specializes_at_k1() {
        let p = pentagon();
        let once = p.ops("b").unwrap();
        let iter1 = p.iterated_ops("b", 1).unwrap();
        assert!(once.is_isomorphic(&iter1));
    }

    #[test]
    fn iterating_ops_matches_iterated_formula() {
        let p = pentagon();
        // suspend twice on successively created vertices
        let s1 = p.ops("a").unwrap();
        let s2 = s1.ops("a1").unwrap();
        let direct = p.iterated_ops("a", 2).unwrap();
        assert!(s2.is_isomorphic(&direct));

        let tri = PureComplex::from_labelled_facets(&[
            vec!["a", "b"],
            vec!["b", "c"],
            vec!["c", "a"],
        ])
        .unwrap();
        let s1 = tri.ops("c").unwrap();
        let s2 = s1.ops("c1").unwrap();
        let s3 = s2.ops("c11").unwrap();
        let direct = tri.iterated_ops("c", 3).unwrap();
        assert!(s3.is_isomorphic(&direct));
    }

    #[test]
    fn stellar_subdivision_counts() {
        let tet = PureComplex::from_labelled_facets(&[
            vec!["a", "b", "c"],
            vec!["a", "b", "d"],
            vec!["a", "c", "d"],
            vec!["b", "c", "d"],
        ])
        .unwrap();
        let sub = tet
            .stellar_subdivide(&["a".into(), "b".into(), "c".into()], "x")
            .unwrap();
        assert_eq!(sub.n_vertices(), 5);
        assert_eq!(sub.n_facets(), 6);
        assert!(sub.is_two_sphere());
    }

    #[test]
    fn connected_sum_of_two_tetrahedra_is_a_bipyramid() {
        let t1 = PureComplex::from_labelled_facets(&[
            vec!["a", "b", "c"],
            vec!["a", "b", "d"],
            vec!["a", "c", "d"],
            vec!["b", "c", "d"],
        ])
        .unwrap();
        let t2 = PureComplex::from_labelled_facets(&[
            vec!["x", "y", "z"],
            vec!["x", "y", "w"],
            vec!["x", "z", "w"],
            vec!["y", "z", "w"],
        ])
        .unwrap();
        let m = FacetMatching::new(vec![
            ("a".into(), "x".into()),
            ("b".into(), "y".into()),
            ("c".into(), "z".into()),
        ]);
        let glued = t1
            .connected_sum(
                &["a".into(), "b".into(), "c".into()],
                &t2,
                &["x".into(), "y".into(), "z".into()],
                &m,
            )
            .unwrap();
        assert_eq!(glued.n_vertices(), 5);
        assert_eq!(glued.n_facets(), 6);
        assert!(glued.is_two_sphere());
    }

    #[test]
    fn cross_polytope_basics() {
        let square = PureComplex::crosspolytope_boundary(2);
        assert_eq!((square.n_vertices(), square.n_facets()), (4, 4));
        let oct = octahedron();
        assert_eq!((oct.n_vertices(), oct.n_facets()), (6, 8));
        assert!(oct.is_two_sphere());
        assert_eq!(oct.dual_graph().diameter().0, Some(3));
        assert_eq!(oct.euler_characteristic(), 2);
    }

    #[test]
    fn two_disjoint_triangles_are_not_a_pseudomanifold() {
        let c = PureComplex::from_labelled_facets(&[
            vec!["a", "b", "c"],
            vec!["x", "y", "z"],
        ])
        .unwrap();
        assert!(!c.is_closed_pseudomanifold());
    }

    #[test]
    fn canonical_form_identifies_relabelings() {
        let oct = octahedron();
        let relabeled = PureComplex::from_labelled_facets_owned(
            &oct.facets()
                .iter()
                .map(|f| {
                    f.iter()
                        .map(|&v| format!("z{}", (v * 5 + 1) % 7))
                        .collect::<Vec<String>>()
                })
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert!(oct.is_isomorphic(&relabeled));
        let square = PureComplex::crosspolytope_boundary(2);
        assert!(!oct.is_isomorphic(&square));
    }
}
