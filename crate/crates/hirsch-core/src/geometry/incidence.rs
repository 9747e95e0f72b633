use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::{Graph, GeometryError, HPolyhedron, Halfspace, LinearEquation, VPolytope};
use crate::exact::{affine_dim, AffineChart, RMatrix, RVector, Rational};

/// Unbounded edge: `base + t * direction`, `t >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ray {
    pub base_vertex: usize,
    pub direction: RVector,
}

/// Vertex-facet incidence of a polyhedron, together with the data needed to
/// rebuild graphs from it: vertex coordinates, one supporting halfspace per
/// facet, and the equations of the affine hull (`always_tight`, empty for
/// full-dimensional inputs). `dim` is the intrinsic dimension of the
/// polyhedron, not of the ambient space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceStructure {
    pub n_vertices: usize,
    pub n_facets: usize,
    /// `incidence[v][f]` is true when vertex `v` lies on facet `f`.
    pub incidence: Vec<Vec<bool>>,
    pub vertex_coords: Option<VPolytope>,
    pub facet_hyperplanes: Option<Vec<Halfspace>>,
    pub always_tight: Vec<LinearEquation>,
    pub rays: Vec<Ray>,
    pub dim: usize,
    /// Input points of `facets_from_vertices` that turned out not to be
    /// vertices (original indices).
    pub non_vertex_points: Vec<usize>,
}

impl IncidenceStructure {
    pub fn facet_vertex_set(&self, f: usize) -> Vec<usize> {
        (0..self.n_vertices)
            .filter(|&v| self.incidence[v][f])
            .collect()
    }

    pub fn vertex_facet_set(&self, v: usize) -> Vec<usize> {
        (0..self.n_facets)
            .filter(|&f| self.incidence[v][f])
            .collect()
    }

    /// Facet as a sorted list of vertex labels.
    pub fn facet_labels(&self, f: usize) -> Vec<String> {
        let coords = self.vertex_coords.as_ref();
        let mut labels: Vec<String> = self
            .facet_vertex_set(f)
            .into_iter()
            .map(|v| coords.map_or_else(|| format!("v{v}"), |c| c.label_of(v)))
            .collect();
        labels.sort();
        labels
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn vertex_label(&self, v: usize) -> String {
        self.vertex_coords
            .as_ref()
            .map_or_else(|| format!("v{v}"), |c| c.label_of(v))
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.vertex_coords.as_ref()?.index_of_label(label)
    }

    /// H-representation assembled from the stored facet halfspaces and hull
    /// equations. Inverse of `vertices_from_halfspaces` up to redundancy.
    pub fn to_hpolyhedron(&self) -> Result<HPolyhedron, GeometryError> {
        let planes = self
            .facet_hyperplanes
            .as_ref()
            .ok_or(GeometryError::MissingData("facet hyperplanes"))?;
        let ambient = planes
            .first()
            .map(|h| h.normal.dim())
            .or_else(|| self.always_tight.first().map(|e| e.normal.dim()))
            .ok_or(GeometryError::MissingData("constraints"))?;
        HPolyhedron::new(planes.clone(), self.always_tight.clone(), ambient)
    }

    /// Structural invariants; used by tests on every constructed incidence.
    pub fn validate(&self) -> Result<(), String> {
        for f in 0..self.n_facets {
            let verts = self.facet_vertex_set(f);
            if self.is_bounded() && verts.len() < self.dim {
                return Err(format!(
                    "facet {f} has {} vertices, need at least {}",
                    verts.len(),
                    self.dim
                ));
            }
        }
        for v in 0..self.n_vertices {
            if self.vertex_facet_set(v).len() < self.dim {
                return Err(format!("vertex {v} lies on fewer than dim facets"));
            }
        }
        if self.is_bounded() {
            for f in 0..self.n_facets {
                for g in 0..self.n_facets {
                    if f == g {
                        continue;
                    }
                    let fv: BTreeSet<usize> = self.facet_vertex_set(f).into_iter().collect();
                    let gv: BTreeSet<usize> = self.facet_vertex_set(g).into_iter().collect();
                    if fv.is_subset(&gv) {
                        return Err(format!("facet {f} contained in facet {g}"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// All facet-defining hyperplanes of `conv(points)`, found by checking every
/// spanning point subset for one-sidedness. Runs inside the affine hull, so
/// lower-dimensional inputs (segments, transportation polytopes) work; the
/// hull equations are reported in `always_tight`.
pub fn facets_from_vertices(p: &VPolytope) -> Result<IncidenceStructure, GeometryError> {
    let n = p.n_points();
    let k = affine_dim(&p.points)?;
    if k == 0 {
        return Err(GeometryError::DegenerateInput);
    }
    let chart = AffineChart::fit(&p.points)?;
    // Work in ambient coordinates when full-dimensional; otherwise in the
    // chart of the affine hull.
    let local: Vec<RVector> = if chart.is_full_dimensional() {
        p.points.clone()
    } else {
        p.points.iter().map(|q| chart.local(q)).collect()
    };

    // Enumerate supporting hyperplanes spanned by k affinely independent points.
    let mut seen: BTreeSet<Halfspace> = BTreeSet::new();
    let mut facets: Vec<(Halfspace, Vec<usize>)> = Vec::new();
    for subset in (0..n).combinations(k) {
        let base = &local[subset[0]];
        let diffs: Vec<RVector> = subset[1..].iter().map(|&i| local[i].sub(base)).collect();
        let ns = crate::exact::null_space_of(&diffs, k);
        if ns.len() != 1 {
            continue; // not affinely independent
        }
        let mut normal = ns[0].primitive_signed();
        let mut rhs = normal.dot(base);
        let mut above = false;
        let mut below = false;
        for q in &local {
            match normal.dot(q).cmp(&rhs) {
                std::cmp::Ordering::Greater => above = true,
                std::cmp::Ordering::Less => below = true,
                std::cmp::Ordering::Equal => {}
            }
            if above && below {
                break;
            }
        }
        if above && below {
            continue;
        }
        if above {
            normal = normal.neg();
            rhs = -rhs;
        }
        let hs = Halfspace::new(normal, rhs).canonical();
        if seen.insert(hs.clone()) {
            let tight: Vec<usize> = (0..n).filter(|&i| hs.tight_at(&local[i])).collect();
            facets.push((hs, tight));
        }
    }

    // A point is a vertex exactly when its tight facet normals span the hull.
    let mut is_vertex = vec![false; n];
    for i in 0..n {
        let tight_normals: Vec<RVector> = facets
            .iter()
            .filter(|(_, t)| t.contains(&i))
            .map(|(h, _)| h.normal.clone())
            .collect();
        is_vertex[i] = RMatrix::new(tight_normals)?.rank() == k;
    }
    let vertex_ids: Vec<usize> = (0..n).filter(|&i| is_vertex[i]).collect();
    let non_vertex_points: Vec<usize> = (0..n).filter(|&i| !is_vertex[i]).collect();
    let new_index: std::collections::HashMap<usize, usize> = vertex_ids
        .iter()
        .enumerate()
        .map(|(new, &old)| (old, new))
        .collect();

    // Canonical facet order: by sorted vertex-index set.
    let mut facet_entries: Vec<(Vec<usize>, Halfspace)> = facets
        .into_iter()
        .map(|(h, tight)| {
            let vs: Vec<usize> = tight
                .into_iter()
                .filter_map(|old| new_index.get(&old).copied())
                .collect();
            (vs, h)
        })
        .collect();
    facet_entries.sort();

    let n_vertices = vertex_ids.len();
    let n_facets = facet_entries.len();
    let mut incidence = vec![vec![false; n_facets]; n_vertices];
    for (f, (vs, _)) in facet_entries.iter().enumerate() {
        for &v in vs {
            incidence[v][f] = true;
        }
    }

    let hyperplanes: Vec<Halfspace> = facet_entries
        .iter()
        .map(|(_, h)| {
            if chart.is_full_dimensional() {
                h.clone()
            } else {
                let (normal, rhs) = chart.lift_hyperplane(&h.normal, &h.rhs);
                Halfspace::new(normal, rhs).canonical()
            }
        })
        .collect();
    let always_tight: Vec<LinearEquation> = if chart.is_full_dimensional() {
        Vec::new()
    } else {
        chart
            .hull_equations()
            .into_iter()
            .map(|(n, c)| LinearEquation::new(n, c).canonical())
            .collect()
    };

    let vertex_coords = VPolytope::new(
        vertex_ids.iter().map(|&i| p.points[i].clone()).collect(),
        p.labels
            .as_ref()
            .map(|ls| vertex_ids.iter().map(|&i| ls[i].clone()).collect()),
    )?;

    Ok(IncidenceStructure {
        n_vertices,
        n_facets,
        incidence,
        vertex_coords: Some(vertex_coords),
        facet_hyperplanes: Some(hyperplanes),
        always_tight,
        rays: Vec::new(),
        dim: k,
        non_vertex_points,
    })
}

/// Exact vertex (and extreme ray) enumeration of an H-polyhedron by solving
/// every rank-d tight subsystem. Redundant inequalities are dropped from the
/// incidence; only facet-defining ones remain.
pub fn vertices_from_halfspaces(h: &HPolyhedron) -> Result<IncidenceStructure, GeometryError> {
    let d = h.dim;
    let eq_rows: Vec<RVector> = h.equalities.iter().map(|e| e.normal.clone()).collect();
    let eq_rhs: Vec<Rational> = h.equalities.iter().map(|e| e.rhs.clone()).collect();

    // Inconsistent equations: empty polyhedron.
    if !h.equalities.is_empty() {
        let m = RMatrix::new(eq_rows.clone())?;
        if m.solve(&RVector::new(eq_rhs.clone())) == crate::exact::LinearSolution::Inconsistent {
            return Err(GeometryError::Infeasible);
        }
    }

    let mut all_normals = eq_rows.clone();
    all_normals.extend(h.inequalities.iter().map(|i| i.normal.clone()));
    if RMatrix::new(all_normals)?.rank() < d {
        return Err(GeometryError::NotPointed);
    }

    let eq_rank = RMatrix::new(eq_rows.clone())?.rank();
    let s = d - eq_rank;
    let n_ineq = h.inequalities.len();

    // Basic solutions: equalities plus s chosen tight inequalities.
    let mut vertex_set: BTreeSet<RVector> = BTreeSet::new();
    for subset in (0..n_ineq).combinations(s) {
        let mut rows = eq_rows.clone();
        let mut rhs = eq_rhs.clone();
        for &i in &subset {
            rows.push(h.inequalities[i].normal.clone());
            rhs.push(h.inequalities[i].rhs.clone());
        }
        if let crate::exact::LinearSolution::Unique(x) =
            RMatrix::new(rows)?.solve(&RVector::new(rhs))
        {
            if h.contains(&x) {
                vertex_set.insert(x);
            }
        }
    }
    if vertex_set.is_empty() {
        return Err(GeometryError::Infeasible);
    }
    let vertices: Vec<RVector> = vertex_set.into_iter().collect();
    let n_vertices = vertices.len();

    // Extreme rays of the recession cone: tight subsystems of rank d-1.
    let mut directions: BTreeSet<RVector> = BTreeSet::new();
    if s > 0 {
        for subset in (0..n_ineq).combinations(s - 1) {
            let mut rows = eq_rows.clone();
            for &i in &subset {
                rows.push(h.inequalities[i].normal.clone());
            }
            let ns = crate::exact::null_space_of(&rows, d);
            if ns.len() != 1 {
                continue;
            }
            let r = ns[0].primitive_signed();
            let in_cone = |v: &RVector| {
                h.inequalities.iter().all(|i| !i.normal.dot(v).is_positive())
                    && h.equalities.iter().all(|e| e.normal.dot(v).is_zero())
            };
            if in_cone(&r) {
                directions.insert(r);
            } else {
                let rn = r.neg();
                if in_cone(&rn) {
                    directions.insert(rn);
                }
            }
        }
    }

    // Unbounded edges: vertex and direction with a common tight set of rank d-1.
    let mut rays = Vec::new();
    for (vi, v) in vertices.iter().enumerate() {
        for r in &directions {
            let mut rows = eq_rows.clone();
            for i in &h.inequalities {
                if i.tight_at(v) && i.normal.dot(r).is_zero() {
                    rows.push(i.normal.clone());
                }
            }
            if RMatrix::new(rows)?.rank() == d - 1 {
                rays.push(Ray {
                    base_vertex: vi,
                    direction: r.clone(),
                });
            }
        }
    }
    rays.sort();

    // Intrinsic dimension: affine hull of vertices plus recession directions.
    let mut span_rows: Vec<RVector> = vertices[1..]
        .iter()
        .map(|v| v.sub(&vertices[0]))
        .collect();
    span_rows.extend(directions.iter().cloned());
    let k = RMatrix::new(span_rows)?.rank();

    // Facet-defining inequalities: tight set spans dimension k-1.
    // Distinct facets are keyed by (tight vertex set, tight edge set).
    let mut facet_map: Vec<((Vec<usize>, Vec<Ray>), Halfspace)> = Vec::new();
    for ineq in &h.inequalities {
        let tight_vs: Vec<usize> = (0..n_vertices)
            .filter(|&vi| ineq.tight_at(&vertices[vi]))
            .collect();
        if tight_vs.is_empty() {
            continue;
        }
        let tight_rays: Vec<Ray> = rays
            .iter()
            .filter(|ray| {
                tight_vs.contains(&ray.base_vertex) && ineq.normal.dot(&ray.direction).is_zero()
            })
            .cloned()
            .collect();
        let base = &vertices[tight_vs[0]];
        let mut rows: Vec<RVector> = tight_vs[1..]
            .iter()
            .map(|&vi| vertices[vi].sub(base))
            .collect();
        rows.extend(tight_rays.iter().map(|ray| ray.direction.clone()));
        if RMatrix::new(rows)?.rank() != k - 1 {
            continue;
        }
        let key = (tight_vs, tight_rays);
        if !facet_map.iter().any(|(k2, _)| *k2 == key) {
            facet_map.push((key, ineq.clone()));
        }
    }
    facet_map.sort_by(|a, b| a.0.cmp(&b.0));

    let n_facets = facet_map.len();
    let mut incidence = vec![vec![false; n_facets]; n_vertices];
    for (f, ((vs, _), _)) in facet_map.iter().enumerate() {
        for &v in vs {
            incidence[v][f] = true;
        }
    }
    let hyperplanes: Vec<Halfspace> = facet_map.into_iter().map(|(_, h)| h).collect();

    let vertex_coords = VPolytope::new(vertices, None)?;
    Ok(IncidenceStructure {
        n_vertices,
        n_facets,
        incidence,
        vertex_coords: Some(vertex_coords),
        facet_hyperplanes: Some(hyperplanes),
        always_tight: h.equalities.clone(),
        rays,
        dim: k,
        non_vertex_points: Vec::new(),
    })
}

/// Graph on the vertices: two are adjacent when their common tight
/// constraints span a line (rank `ambient - 1` together with the hull
/// equations) and no third vertex is tight on all of them. Rays are recorded
/// but never become graph nodes.
pub fn graph_of(inc: &IncidenceStructure) -> Graph {
    let planes = inc
        .facet_hyperplanes
        .as_ref()
        .expect("incidence carries facet hyperplanes");
    let ambient = planes
        .first()
        .map(|h| h.normal.dim())
        .or_else(|| inc.always_tight.first().map(|e| e.normal.dim()))
        .unwrap_or(inc.dim);
    let mut g = Graph::new(inc.n_vertices);
    for u in 0..inc.n_vertices {
        for v in (u + 1)..inc.n_vertices {
            let common: Vec<usize> = (0..inc.n_facets)
                .filter(|&f| inc.incidence[u][f] && inc.incidence[v][f])
                .collect();
            let mut rows: Vec<RVector> =
                inc.always_tight.iter().map(|e| e.normal.clone()).collect();
            rows.extend(common.iter().map(|&f| planes[f].normal.clone()));
            let rank = RMatrix::new(rows).expect("normals are rectangular").rank();
            if rank != ambient - 1 {
                continue;
            }
            let third = (0..inc.n_vertices)
                .filter(|&w| w != u && w != v)
                .any(|w| common.iter().all(|&f| inc.incidence[w][f]));
            if !third {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Dual graph on the facets: adjacent when the shared vertices span a ridge
/// (affine dimension `dim - 2`).
pub fn dual_graph_of(inc: &IncidenceStructure) -> Graph {
    let coords = inc
        .vertex_coords
        .as_ref()
        .expect("incidence carries vertex coordinates");
    let mut g = Graph::new(inc.n_facets);
    for f in 0..inc.n_facets {
        for f2 in (f + 1)..inc.n_facets {
            let shared: Vec<RVector> = (0..inc.n_vertices)
                .filter(|&v| inc.incidence[v][f] && inc.incidence[v][f2])
                .map(|v| coords.points[v].clone())
                .collect();
            if shared.is_empty() {
                continue;
            }
            if affine_dim(&shared).expect("nonempty") + 2 == inc.dim {
                g.add_edge(f, f2);
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> VPolytope {
        VPolytope::from_int_rows(&[&[-1, -1], &[-1, 1], &[1, -1], &[1, 1]], None).unwrap()
    }

    #[test]
    fn square_has_four_edges_as_facets() {
        let inc = facets_from_vertices(&square()).unwrap();
        assert_eq!(inc.n_facets, 4);
        assert_eq!(inc.n_vertices, 4);
        for f in 0..4 {
            assert_eq!(inc.facet_vertex_set(f).len(), 2);
        }
        inc.validate().unwrap();
        let g = graph_of(&inc);
        assert_eq!(g.n_edges(), 4);
        assert_eq!(g.diameter().0, Some(2));
    }

    #[test]
    fn simplex_has_dim_plus_one_facets_and_complete_graph() {
        let p = VPolytope::from_int_rows(
            &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]],
            None,
        )
        .unwrap();
        let inc = facets_from_vertices(&p).unwrap();
        assert_eq!(inc.n_facets, 4);
        let g = graph_of(&inc);
        assert_eq!(g.n_edges(), 6);
        assert_eq!(g.diameter().0, Some(1));
        let dg = dual_graph_of(&inc);
        assert_eq!(dg.n_edges(), 6);
    }

    #[test]
    fn interior_point_is_reported_not_dropped_silently() {
        let p = VPolytope::from_int_rows(
            &[&[-1, -1], &[-1, 1], &[1, -1], &[1, 1], &[0, 0]],
            None,
        )
        .unwrap();
        let inc = facets_from_vertices(&p).unwrap();
        assert_eq!(inc.n_vertices, 4);
        assert_eq!(inc.non_vertex_points, vec![4]);
    }

    #[test]
    fn segment_in_the_plane_uses_the_hull_chart() {
        let p = VPolytope::from_int_rows(&[&[0, 0], &[2, 2], &[1, 1]], None).unwrap();
        let inc = facets_from_vertices(&p).unwrap();
        assert_eq!(inc.dim, 1);
        assert_eq!(inc.n_vertices, 2);
        assert_eq!(inc.n_facets, 2);
        assert_eq!(inc.non_vertex_points, vec![2]);
        assert_eq!(inc.always_tight.len(), 1);
        let g = graph_of(&inc);
        assert!(g.has_edge(0, 1));
    }

    #[test]
    fn degenerate_single_point_rejected() {
        let p = VPolytope::from_int_rows(&[&[3, 4]], None).unwrap();
        assert_eq!(
            facets_from_vertices(&p),
            Err(GeometryError::DegenerateInput)
        );
    }

    #[test]
    fn cube_h_to_v() {
        let h = HPolyhedron::cube(3, 0, 1);
        let inc = vertices_from_halfspaces(&h).unwrap();
        assert_eq!(inc.n_vertices, 8);
        assert_eq!(inc.n_facets, 6);
        assert!(inc.is_bounded());
        inc.validate().unwrap();
        let g = graph_of(&inc);
        assert_eq!(g.diameter().0, Some(3));
        for v in 0..8 {
            assert_eq!(g.degree(v), 3);
        }
    }

    #[test]
    fn orthant_has_one_vertex_three_rays() {
        let inc = vertices_from_halfspaces(&HPolyhedron::orthant(3)).unwrap();
        assert_eq!(inc.n_vertices, 1);
        assert_eq!(inc.rays.len(), 3);
        assert_eq!(inc.n_facets, 3);
    }

    #[test]
    fn infeasible_and_unpointed_are_reported() {
        let dim = 1;
        let h = HPolyhedron::new(
            vec![
                Halfspace::new(RVector::from_ints(&[1]), Rational::from_int(0)),
                Halfspace::new(RVector::from_ints(&[-1]), Rational::from_int(-1)),
            ],
            Vec::new(),
            dim,
        )
        .unwrap();
        assert_eq!(vertices_from_halfspaces(&h), Err(GeometryError::Infeasible));

        let slab = HPolyhedron::new(
            vec![Halfspace::new(
                RVector::from_ints(&[1, 1]),
                Rational::from_int(1),
            )],
            Vec::new(),
            2,
        )
        .unwrap();
        assert_eq!(
            vertices_from_halfspaces(&slab),
            Err(GeometryError::NotPointed)
        );
    }

    #[test]
    fn equalities_cut_dimension() {
        // Triangle {x+y+z=1, x,y,z >= 0} in R^3.
        let h = HPolyhedron::new(
            (0..3)
                .map(|i| Halfspace::new(RVector::unit(3, i).neg(), Rational::zero()))
                .collect(),
            vec![LinearEquation::new(
                RVector::from_ints(&[1, 1, 1]),
                Rational::one(),
            )],
            3,
        )
        .unwrap();
        let inc = vertices_from_halfspaces(&h).unwrap();
        assert_eq!(inc.n_vertices, 3);
        assert_eq!(inc.dim, 2);
        assert_eq!(inc.n_facets, 3);
        let g = graph_of(&inc);
        assert_eq!(g.n_edges(), 3);
    }
}
