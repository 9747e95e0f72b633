use super::{
    facets_from_vertices, GeometryError, HPolyhedron, Halfspace, IncidenceStructure,
    LinearEquation, VPolytope,
};
use crate::exact::{RMatrix, RVector, Rational};

/// Polar dual of a polytope with the origin strictly interior: one vertex
/// `normal / rhs` per facet. Swaps the vertex-facet incidence.
pub fn polar(p: &VPolytope) -> Result<VPolytope, GeometryError> {
    let inc = facets_from_vertices(p)?;
    if !inc.always_tight.is_empty() {
        // Not full-dimensional, so it has no interior at all.
        return Err(GeometryError::OriginNotInterior);
    }
    let planes = inc.facet_hyperplanes.as_ref().expect("present for V input");
    let mut points = Vec::with_capacity(planes.len());
    for h in planes {
        if !h.rhs.is_positive() {
            return Err(GeometryError::OriginNotInterior);
        }
        points.push(h.normal.scale(&h.rhs.recip()));
    }
    VPolytope::new(points, None)
}

/// Wedge over a facet: `{(x, y) : A x <= b, y >= 0, a_f . x + y <= b_f}` in
/// dimension d+1, with one facet more than the input. The lifted copy of the
/// chosen inequality is implied by the two new ones and is dropped, so the
/// system stays irredundant.
pub fn wedge(h: &HPolyhedron, facet_index: usize) -> Result<HPolyhedron, GeometryError> {
    let f = h
        .inequalities
        .get(facet_index)
        .ok_or(GeometryError::BadFacet(facet_index))?
        .clone();
    let d = h.dim;
    let mut ineqs: Vec<Halfspace> = h
        .inequalities
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != facet_index)
        .map(|(_, i)| Halfspace::new(i.normal.extended(Rational::zero()), i.rhs.clone()))
        .collect();
    ineqs.push(Halfspace::new(
        RVector::unit(d + 1, d).neg(),
        Rational::zero(),
    ));
    ineqs.push(Halfspace::new(
        f.normal.extended(Rational::one()),
        f.rhs.clone(),
    ));
    let eqs = h
        .equalities
        .iter()
        .map(|e| LinearEquation::new(e.normal.extended(Rational::zero()), e.rhs.clone()))
        .collect();
    HPolyhedron::new(ineqs, eqs, d + 1)
}

/// Geometric one-point suspension: the hull of `P x {0}` with a raised and a
/// lowered copy of the chosen vertex. The suspended point itself is dropped
/// (it lies on the segment between its two copies).
pub fn ops_geometric(p: &VPolytope, w_index: usize) -> Result<VPolytope, GeometryError> {
    if w_index >= p.n_points() {
        return Err(GeometryError::BadVertex(format!("index {w_index}")));
    }
    let w = &p.points[w_index];
    let w_label = p.label_of(w_index);
    let mut points = Vec::with_capacity(p.n_points() + 1);
    let mut labels = Vec::with_capacity(p.n_points() + 1);
    for (i, q) in p.points.iter().enumerate() {
        if i == w_index {
            continue;
        }
        points.push(q.extended(Rational::zero()));
        labels.push(p.label_of(i));
    }
    points.push(w.extended(Rational::from_int(-1)));
    labels.push(format!("{w_label}1"));
    points.push(w.extended(Rational::from_int(1)));
    labels.push(format!("{w_label}2"));
    VPolytope::new(points, Some(labels))
}

/// Apply a nonsingular (d+1)x(d+1) matrix to the homogenized points and
/// dehomogenize. Requires the last homogeneous coordinate to keep a constant
/// sign over all points, so the polytope misses the pullback of the
/// hyperplane at infinity and the incidence structure is preserved.
pub fn projective_transform(p: &VPolytope, m: &RMatrix) -> Result<VPolytope, GeometryError> {
    let d = p.ambient_dim();
    if m.n_rows() != d + 1 || m.n_cols() != d + 1 {
        return Err(GeometryError::MixedDimensions);
    }
    if m.inverse().is_none() {
        return Err(GeometryError::SingularMatrix);
    }
    let mut sign = 0i32;
    let mut images = Vec::with_capacity(p.n_points());
    for q in &p.points {
        let hom = m.mul_vector(&q.extended(Rational::one()));
        let last = hom[d].clone();
        if last.is_zero() {
            return Err(GeometryError::PointAtInfinity);
        }
        let s = last.signum();
        if sign == 0 {
            sign = s;
        } else if s != sign {
            return Err(GeometryError::PolytopeMeetsInfinity);
        }
        let inv = last.recip();
        images.push(RVector::new(
            hom.entries()[..d].iter().map(|e| e * &inv).collect(),
        ));
    }
    VPolytope::new(images, p.labels.clone())
}

/// Forget one inequality.
pub fn remove_facet(h: &HPolyhedron, facet_index: usize) -> Result<HPolyhedron, GeometryError> {
    if facet_index >= h.inequalities.len() {
        return Err(GeometryError::BadFacet(facet_index));
    }
    let mut ineqs = h.inequalities.clone();
    ineqs.remove(facet_index);
    HPolyhedron::new(ineqs, h.equalities.clone(), h.dim)
}

/// Every facet has exactly `dim` vertices.
pub fn is_simplicial(inc: &IncidenceStructure) -> bool {
    (0..inc.n_facets).all(|f| inc.facet_vertex_set(f).len() == inc.dim)
}

/// Every vertex lies on exactly `dim` facets.
pub fn is_simple(inc: &IncidenceStructure) -> bool {
    (0..inc.n_vertices).all(|v| inc.vertex_facet_set(v).len() == inc.dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{dual_graph_of, graph_of, vertices_from_halfspaces};

    #[test]
    fn polar_of_cube_is_cross_polytope() {
        let cube = VPolytope::from_int_rows(
            &[
                &[-1, -1, -1],
                &[-1, -1, 1],
                &[-1, 1, -1],
                &[-1, 1, 1],
                &[1, -1, -1],
                &[1, -1, 1],
                &[1, 1, -1],
                &[1, 1, 1],
            ],
            None,
        )
        .unwrap();
        let cross = polar(&cube).unwrap();
        assert_eq!(cross.n_points(), 6);
        let expected: std::collections::BTreeSet<RVector> = (0..3)
            .flat_map(|i| {
                [RVector::unit(3, i), RVector::unit(3, i).neg()]
            })
            .collect();
        let got: std::collections::BTreeSet<RVector> = cross.points.iter().cloned().collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn polar_requires_interior_origin() {
        let shifted = VPolytope::from_int_rows(&[&[0, 0], &[1, 0], &[0, 1]], None).unwrap();
        assert_eq!(polar(&shifted), Err(GeometryError::OriginNotInterior));
    }

    #[test]
    fn polar_swaps_incidence() {
        let p = VPolytope::from_int_rows(&[&[-1, -1], &[2, -1], &[0, 2]], None).unwrap();
        let inc = facets_from_vertices(&p).unwrap();
        let q = polar(&p).unwrap();
        let qinc = facets_from_vertices(&q).unwrap();
        assert_eq!(inc.n_vertices, qinc.n_facets);
        assert_eq!(inc.n_facets, qinc.n_vertices);
        // graph of P is isomorphic to the dual graph of polar(P); for a
        // triangle both are complete on 3 nodes.
        assert_eq!(graph_of(&inc).n_edges(), dual_graph_of(&qinc).n_edges());
    }

    #[test]
    fn wedge_of_square_counts() {
        let sq = HPolyhedron::cube(2, 0, 1);
        let w = wedge(&sq, 0).unwrap();
        assert_eq!(w.dim, 3);
        assert_eq!(w.n_inequalities(), sq.n_inequalities() + 1);
        let inc = vertices_from_halfspaces(&w).unwrap();
        assert_eq!(inc.n_vertices, 6);
        assert_eq!(inc.n_facets, 5);
        assert!(inc.is_bounded());
    }

    #[test]
    fn wedge_bad_index() {
        let sq = HPolyhedron::cube(2, 0, 1);
        assert_eq!(wedge(&sq, 99), Err(GeometryError::BadFacet(99)));
    }

    #[test]
    fn suspension_of_segment_is_triangle() {
        let seg = VPolytope::from_int_rows(&[&[0], &[1]], None).unwrap();
        let tri = ops_geometric(&seg, 1).unwrap();
        assert_eq!(tri.n_points(), 3);
        let inc = facets_from_vertices(&tri).unwrap();
        assert_eq!(inc.n_facets, 3);
        assert_eq!(inc.dim, 2);
    }

    #[test]
    fn projective_identity_and_translation() {
        let p = VPolytope::from_int_rows(&[&[0, 0], &[1, 0], &[0, 1]], None).unwrap();
        let id = RMatrix::identity(3);
        assert_eq!(projective_transform(&p, &id).unwrap(), p);

        // Translation by (2, 3) in homogeneous form.
        let t = RMatrix::from_rows_ints(&[&[1, 0, 2], &[0, 1, 3], &[0, 0, 1]]);
        let moved = projective_transform(&p, &t).unwrap();
        assert_eq!(moved.points[0], RVector::from_ints(&[2, 3]));
        assert_eq!(moved.points[1], RVector::from_ints(&[3, 3]));
    }

    #[test]
    fn projective_rejects_bad_maps() {
        let p = VPolytope::from_int_rows(&[&[0, 0], &[1, 0], &[0, 1]], None).unwrap();
        let singular = RMatrix::from_rows_ints(&[&[1, 0, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert_eq!(
            projective_transform(&p, &singular),
            Err(GeometryError::SingularMatrix)
        );
        // Last row x - 1/2: sign differs between (0,0) and (1,0).
        let meets = RMatrix::new(vec![
            RVector::from_ints(&[1, 0, 0]),
            RVector::from_ints(&[0, 1, 0]),
            RVector::new(vec![
                Rational::from_int(1),
                Rational::zero(),
                Rational::new(-1, 2),
            ]),
        ])
        .unwrap();
        assert!(matches!(
            projective_transform(&p, &meets),
            Err(GeometryError::PolytopeMeetsInfinity) | Err(GeometryError::PointAtInfinity)
        ));
    }

    #[test]
    fn remove_facet_unbounds_the_cube() {
        let cube = HPolyhedron::cube(3, 0, 1);
        let open = remove_facet(&cube, 0).unwrap();
        assert_eq!(open.n_inequalities(), 5);
        let inc = vertices_from_halfspaces(&open).unwrap();
        assert_eq!(inc.rays.len(), 4);
        assert_eq!(inc.n_vertices, 4);
    }

    #[test]
    fn removing_redundant_inequality_keeps_vertices() {
        let mut ineqs = HPolyhedron::cube(2, 0, 1).inequalities;
        ineqs.push(Halfspace::new(
            RVector::from_ints(&[1, 1]),
            Rational::from_int(5),
        ));
        let h = HPolyhedron::new(ineqs, Vec::new(), 2).unwrap();
        let redundant_index = h.n_inequalities() - 1;
        let before = vertices_from_halfspaces(&h).unwrap();
        let after = vertices_from_halfspaces(&remove_facet(&h, redundant_index).unwrap()).unwrap();
        assert_eq!(
            before.vertex_coords.unwrap().points,
            after.vertex_coords.unwrap().points
        );
    }

    #[test]
    fn cube_is_simple_not_simplicial() {
        let inc = vertices_from_halfspaces(&HPolyhedron::cube(3, 0, 1)).unwrap();
        assert!(is_simple(&inc));
        assert!(!is_simplicial(&inc));
    }
}
