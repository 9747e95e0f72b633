//! Distances, diameters, non-revisiting path search, monotone path
//! distances and Hirsch-sharpness verdicts.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::PureComplex;
use crate::exact::{RVector, Rational};
use crate::geometry::{graph_of, Graph, IncidenceStructure};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("facet {0:?} not in complex")]
    BadFacet(Vec<String>),
    #[error("vertex `{0}` not found")]
    BadVertex(String),
    #[error("dual graph is disconnected")]
    Disconnected,
    #[error("objective ties on the edge between vertices {0} and {1}")]
    Tie(usize, usize),
    #[error("too many vertices for the abandoned-set encoding (limit 64)")]
    TooManyVertices,
    #[error("incidence carries no vertex coordinates")]
    NoCoordinates,
}

/// Walk in a dual graph, stored as the visited facets' vertex-label sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualPath {
    pub facets: Vec<Vec<String>>,
}

impl DualPath {
    /// Number of steps (edges), one less than the number of facets visited.
    pub fn len(&self) -> usize {
        self.facets.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Braces rendering, one facet per line.
    pub fn render(&self) -> String {
        self.facets
            .iter()
            .map(|f| format!("{{{}}}", f.join(" ")))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Diameter versus the Hirsch bound `n - d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharpnessVerdict {
    pub n: usize,
    pub d: usize,
    pub diameter: usize,
    pub hirsch_bound: i64,
    pub sharp: bool,
    /// Pair of facets (dual convention) or vertices (primal convention)
    /// realizing the diameter.
    pub witness: (Vec<String>, Vec<String>),
}

pub fn distance(g: &Graph, u: usize, v: usize) -> Option<usize> {
    g.distance(u, v)
}

pub fn diameter(g: &Graph) -> Option<usize> {
    g.diameter().0
}

/// Shortest non-revisiting dual path from facet `from` to facet `to`: once a
/// vertex has been abandoned it may never be used again. Exhaustive BFS over
/// (facet, abandoned-set) states; states dominated by an already enqueued one
/// (same facet, abandoned subset) are pruned.
pub fn nonrevisiting_path(
    l: &PureComplex,
    from: &[String],
    to: &[String],
) -> Result<Option<DualPath>, PathError> {
    let fi = l
        .facet_index(from)
        .ok_or_else(|| PathError::BadFacet(from.to_vec()))?;
    let gi = l
        .facet_index(to)
        .ok_or_else(|| PathError::BadFacet(to.to_vec()))?;
    if l.n_vertices() > 64 {
        return Err(PathError::TooManyVertices);
    }
    let dual = l.dual_graph();
    let facet_mask: Vec<u64> = l
        .facets()
        .iter()
        .map(|f| f.iter().fold(0u64, |m, &v| m | (1 << v)))
        .collect();

    // state: (facet, abandoned mask); parent links rebuild the path.
    let mut states: Vec<(usize, u64, usize)> = vec![(fi, 0, usize::MAX)];
    let mut enqueued: Vec<Vec<u64>> = vec![Vec::new(); l.n_facets()];
    enqueued[fi].push(0);
    let mut queue: VecDeque<usize> = VecDeque::new();
    queue.push_back(0);
    let mut found: Option<usize> = None;
    'bfs: while let Some(si) = queue.pop_front() {
        let (f, dead, _) = states[si];
        if f == gi {
            found = Some(si);
            break;
        }
        for g in dual.neighbors(f) {
            if facet_mask[g] & dead != 0 {
                continue;
            }
            let new_dead = dead | (facet_mask[f] & !facet_mask[g]);
            if enqueued[g].iter().any(|&m| m & new_dead == m) {
                continue; // dominated
            }
            enqueued[g].retain(|&m| new_dead & m != new_dead || m == new_dead);
            enqueued[g].push(new_dead);
            states.push((g, new_dead, si));
            if g == gi {
                found = Some(states.len() - 1);
                break 'bfs;
            }
            queue.push_back(states.len() - 1);
        }
    }
    Ok(found.map(|mut si| {
        let mut chain = Vec::new();
        while si != usize::MAX {
            chain.push(states[si].0);
            si = states[si].2;
        }
        chain.reverse();
        let path = DualPath {
            facets: chain.into_iter().map(|f| l.facet_as_labels(f)).collect(),
        };
        // Each step permanently abandons at least one vertex.
        assert!(
            path.len() as i64 <= l.n_vertices() as i64 - l.facet_size() as i64,
            "non-revisiting path longer than n - d"
        );
        path
    }))
}

/// Verdict of the non-revisiting property over all ordered facet pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonrevisitingVerdict {
    pub holds: bool,
    pub failing_pair: Option<(Vec<String>, Vec<String>)>,
}

pub fn nonrevisiting_property(l: &PureComplex) -> Result<NonrevisitingVerdict, PathError> {
    if !l.dual_graph().is_connected() {
        return Err(PathError::Disconnected);
    }
    for f in 0..l.n_facets() {
        for g in 0..l.n_facets() {
            if f == g {
                continue;
            }
            let from = l.facet_as_labels(f);
            let to = l.facet_as_labels(g);
            if nonrevisiting_path(l, &from, &to)?.is_none() {
                return Ok(NonrevisitingVerdict {
                    holds: false,
                    failing_pair: Some((from, to)),
                });
            }
        }
    }
    Ok(NonrevisitingVerdict {
        holds: true,
        failing_pair: None,
    })
}

/// Length of the shortest strictly increasing edge path for the objective
/// `c . x`. A tie on any edge the search examines is a hard error; the
/// objective is expected to be generic.
pub fn monotone_distance(
    inc: &IncidenceStructure,
    c: &RVector,
    u: usize,
    v: usize,
) -> Result<Option<usize>, PathError> {
    let coords = inc.vertex_coords.as_ref().ok_or(PathError::NoCoordinates)?;
    if u >= inc.n_vertices {
        return Err(PathError::BadVertex(format!("index {u}")));
    }
    if v >= inc.n_vertices {
        return Err(PathError::BadVertex(format!("index {v}")));
    }
    let g = graph_of(inc);
    let values: Vec<Rational> = coords.points.iter().map(|p| c.dot(p)).collect();
    let mut dist: Vec<Option<usize>> = vec![None; inc.n_vertices];
    dist[u] = Some(0);
    let mut queue = VecDeque::new();
    queue.push_back(u);
    while let Some(x) = queue.pop_front() {
        let dx = dist[x].unwrap();
        for y in g.neighbors(x) {
            match values[y].cmp(&values[x]) {
                std::cmp::Ordering::Equal => return Err(PathError::Tie(x, y)),
                std::cmp::Ordering::Greater => {
                    if dist[y].is_none() {
                        dist[y] = Some(dx + 1);
                        queue.push_back(y);
                    }
                }
                std::cmp::Ordering::Less => {}
            }
        }
    }
    Ok(dist[v])
}

/// The unique vertex maximizing `c . x`, or `None` on a tie.
pub fn unique_max(inc: &IncidenceStructure, c: &RVector) -> Option<usize> {
    let coords = inc.vertex_coords.as_ref()?;
    let values: Vec<Rational> = coords.points.iter().map(|p| c.dot(p)).collect();
    let best = values.iter().max()?;
    let winners: Vec<usize> = (0..values.len()).filter(|&i| &values[i] == best).collect();
    match winners.as_slice() {
        [only] => Some(*only),
        _ => None,
    }
}

/// Sharpness of a simplicial complex in the dual convention: `n` vertices,
/// dimension `d = facet_size`, diameter of the dual graph against `n - d`.
pub fn hirsch_sharpness(l: &PureComplex) -> Result<SharpnessVerdict, PathError> {
    let dual = l.dual_graph();
    let (diam, witness) = dual.diameter();
    let diam = diam.ok_or(PathError::Disconnected)?;
    let (wf, wg) = witness.unwrap_or((0, 0));
    let n = l.n_vertices();
    let d = l.facet_size();
    let bound = n as i64 - d as i64;
    Ok(SharpnessVerdict {
        n,
        d,
        diameter: diam,
        hirsch_bound: bound,
        sharp: diam as i64 == bound,
        witness: (l.facet_as_labels(wf), l.facet_as_labels(wg)),
    })
}

/// Sharpness of a polytope in the primal convention: `n` facets, dimension
/// `d`, diameter of the vertex graph against `n - d`.
pub fn hirsch_sharpness_incidence(
    inc: &IncidenceStructure,
) -> Result<SharpnessVerdict, PathError> {
    let g = graph_of(inc);
    let (diam, witness) = g.diameter();
    let diam = diam.ok_or(PathError::Disconnected)?;
    let (wu, wv) = witness.unwrap_or((0, 0));
    let n = inc.n_facets;
    let d = inc.dim;
    let bound = n as i64 - d as i64;
    Ok(SharpnessVerdict {
        n,
        d,
        diameter: diam,
        hirsch_bound: bound,
        sharp: diam as i64 == bound,
        witness: (vec![inc.vertex_label(wu)], vec![inc.vertex_label(wv)]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{vertices_from_halfspaces, HPolyhedron};

    fn labels(ls: &[&str]) -> Vec<String> {
        ls.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn adjacent_facets_have_a_length_one_path() {
        let oct = PureComplex::crosspolytope_boundary(3);
        let from = labels(&["p1", "p2", "p3"]);
        let to = labels(&["n1", "p2", "p3"]);
        let p = nonrevisiting_path(&oct, &from, &to).unwrap().unwrap();
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn octahedron_has_the_nonrevisiting_property() {
        let oct = PureComplex::crosspolytope_boundary(3);
        let verdict = nonrevisiting_property(&oct).unwrap();
        assert!(verdict.holds);
    }

    #[test]
    fn simplex_boundary_has_the_nonrevisiting_property() {
        let tet = PureComplex::from_labelled_facets(&[
            vec!["a", "b", "c"],
            vec!["a", "b", "d"],
            vec!["a", "c", "d"],
            vec!["b", "c", "d"],
        ])
        .unwrap();
        assert!(nonrevisiting_property(&tet).unwrap().holds);
    }

    #[test]
    fn disconnected_dual_graph_is_an_error() {
        let c = PureComplex::from_labelled_facets(&[
            vec!["a", "b", "c"],
            vec!["x", "y", "z"],
        ])
        .unwrap();
        assert_eq!(
            nonrevisiting_property(&c),
            Err(PathError::Disconnected)
        );
        // and a path between the components is absent
        let p = nonrevisiting_path(&c, &labels(&["a", "b", "c"]), &labels(&["x", "y", "z"]))
            .unwrap();
        assert!(p.is_none());
    }

    #[test]
    fn monotone_distance_on_cube_and_square() {
        let cube = vertices_from_halfspaces(&HPolyhedron::cube(3, 0, 1)).unwrap();
        let coords = cube.vertex_coords.as_ref().unwrap();
        let origin = coords
            .points
            .iter()
            .position(|p| p.is_zero())
            .unwrap();
        let ones = coords
            .points
            .iter()
            .position(|p| p.iter().all(|e| e == &Rational::one()))
            .unwrap();
        let c = RVector::from_ints(&[1, 1, 1]);
        assert_eq!(
            monotone_distance(&cube, &c, origin, ones).unwrap(),
            Some(3)
        );
        // plain distance agrees here
        assert_eq!(graph_of(&cube).distance(origin, ones), Some(3));

        let sq = vertices_from_halfspaces(&HPolyhedron::cube(2, 0, 1)).unwrap();
        let coords = sq.vertex_coords.as_ref().unwrap();
        let origin = coords.points.iter().position(|p| p.is_zero()).unwrap();
        let ones = coords
            .points
            .iter()
            .position(|p| p.iter().all(|e| e == &Rational::one()))
            .unwrap();
        assert_eq!(
            monotone_distance(&sq, &RVector::from_ints(&[1, 2]), origin, ones).unwrap(),
            Some(2)
        );
    }

    #[test]
    fn ties_are_a_hard_error() {
        let sq = vertices_from_halfspaces(&HPolyhedron::cube(2, 0, 1)).unwrap();
        let c = RVector::from_ints(&[1, 0]);
        let err = monotone_distance(&sq, &c, 0, 3);
        assert!(matches!(err, Err(PathError::Tie(_, _))));
    }

    #[test]
    fn unique_max_detects_ties() {
        let sq = vertices_from_halfspaces(&HPolyhedron::cube(2, 0, 1)).unwrap();
        assert_eq!(unique_max(&sq, &RVector::from_ints(&[1, 0])), None);
        let ones = unique_max(&sq, &RVector::from_ints(&[1, 1])).unwrap();
        let coords = sq.vertex_coords.as_ref().unwrap();
        assert!(coords.points[ones].iter().all(|e| e == &Rational::one()));
    }

    #[test]
    fn octahedron_is_hirsch_sharp() {
        let oct = PureComplex::crosspolytope_boundary(3);
        let v = hirsch_sharpness(&oct).unwrap();
        assert_eq!((v.n, v.d, v.diameter), (6, 3, 3));
        assert!(v.sharp);
    }

    #[test]
    fn cube_is_hirsch_sharp_in_the_primal_convention() {
        let cube = vertices_from_halfspaces(&HPolyhedron::cube(3, 0, 1)).unwrap();
        let v = hirsch_sharpness_incidence(&cube).unwrap();
        assert_eq!((v.n, v.d, v.diameter), (6, 3, 3));
        assert!(v.sharp);
    }

    #[test]
    fn diameter_is_invariant_under_relabeling() {
        let oct = PureComplex::crosspolytope_boundary(3);
        let renamed = PureComplex::from_labelled_facets_owned(
            &oct.facets()
                .iter()
                .map(|f| {
                    f.iter()
                        .map(|&v| format!("q{}", (v * 3 + 2) % 11))
                        .collect::<Vec<String>>()
                })
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(
            oct.dual_graph().diameter().0,
            renamed.dual_graph().diameter().0
        );
    }
}
