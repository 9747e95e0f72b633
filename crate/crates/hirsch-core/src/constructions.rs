//! Generators for the concrete instances studied in this crate: the
//! Klee-Walkup polytope, Klee's 3-dimensional families, cross-polytope
//! connected-sum chains, the trivially Hirsch-sharp unbounded polyhedra, the
//! Mani-Walkup complex, the Fritzsche-Holt-Klee block and glueing chains,
//! Todd's monotone counterexample, transportation polytopes and seeded 0/1
//! samples.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{boundary_complex, ComplexError, FacetMatching, PureComplex};
use crate::exact::{RMatrix, RVector, Rational};
use crate::geometry::{
    facets_from_vertices, graph_of, vertices_from_halfspaces, GeometryError, HPolyhedron,
    Halfspace, IncidenceStructure, LinearEquation, VPolytope,
};
use crate::paths::PathError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("slow/fast glueing failed: {0}")]
    MatchingFailed(String),
    #[error("construction search failed: {0}")]
    ConstructionFailed(String),
    #[error("margin vectors are inconsistent")]
    InfeasibleMargins,
    #[error("bad parameters: {0}")]
    BadInput(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Path(#[from] PathError),
}

/// A generated object together with its name, for CLI dispatch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedInstance {
    pub name: String,
    pub payload: Payload,
    pub notes: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    VPolytope(VPolytope),
    HPolyhedron(HPolyhedron),
    Complex(PureComplex),
}

/// The Klee-Walkup 4-polytope with nine vertices `w, a, ..., h`. Its graph
/// diameter in the simple (polar) form is 5 = 9 - 4.
pub fn klee_walkup_q4() -> VPolytope {
    VPolytope::from_int_rows(
        &[
            &[0, 0, 0, -2],  // w
            &[-3, 3, 1, 2],  // a
            &[3, -3, 1, 2],  // b
            &[2, -1, 1, 3],  // c
            &[-2, 1, 1, 3],  // d
            &[3, 3, -1, 2],  // e
            &[-3, -3, -1, 2],// f
            &[-1, -2, -1, 3],// g
            &[1, 2, -1, 3],  // h
        ],
        Some(
            ["w", "a", "b", "c", "d", "e", "f", "g", "h"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
        ),
    )
    .expect("the nine points are distinct")
}

/// Klee's simplicial 2-spheres with `3 + 3k + extra` vertices: a central
/// triangle, `k` antiprism bands of six triangles, and the outer triangle.
/// `extra` places one or two vertices inside the central triangle (one keeps
/// the dual diameter, two raise it by one).
pub fn klee_3sphere_family(k: usize, extra: usize) -> Result<PureComplex, ConstructError> {
    if k < 1 {
        return Err(ConstructError::BadInput("need k >= 1".into()));
    }
    if extra > 2 {
        return Err(ConstructError::BadInput("extra must be 0, 1 or 2".into()));
    }
    let vtx = |layer: usize, i: usize| format!("v{}", 3 * layer + i);
    let mut facets: Vec<Vec<String>> = vec![(0..3).map(|i| vtx(0, i)).collect()];
    for layer in 1..=k {
        for i in 0..3 {
            let a0 = vtx(layer - 1, i);
            let a1 = vtx(layer - 1, (i + 1) % 3);
            let b0 = vtx(layer, i);
            let b1 = vtx(layer, (i + 1) % 3);
            facets.push(vec![a0.clone(), a1.clone(), b0.clone()]);
            facets.push(vec![a1, b0.clone(), b1]);
        }
    }
    facets.push((0..3).map(|i| vtx(k, i)).collect());
    let mut sphere = PureComplex::from_labelled_facets_owned(&facets)?;
    if extra >= 1 {
        sphere = sphere.stellar_subdivide(
            &[vtx(0, 0), vtx(0, 1), vtx(0, 2)],
            "c1",
        )?;
    }
    if extra == 2 {
        sphere = sphere.stellar_subdivide(&[vtx(0, 0), vtx(0, 1), "c1".into()], "c2")?;
    }
    Ok(sphere)
}

fn relabel(c: &PureComplex, f: impl Fn(&str) -> String) -> PureComplex {
    let facets: Vec<Vec<String>> = c
        .facets()
        .iter()
        .map(|facet| {
            facet
                .iter()
                .map(|&v| f(&c.vertex_labels()[v]))
                .collect()
        })
        .collect();
    PureComplex::from_labelled_facets_owned(&facets).expect("relabeling keeps cardinalities")
}

/// Connected-sum chain of `copies` cross-polytope boundaries in dimension
/// `d`. Each new copy is glued along its all-plus facet onto the all-minus
/// facet of the previous one, so the free ends stay antipodal and the dual
/// diameter grows by d-1 per copy: `1 + copies (d-1)` in total.
pub fn crosspolytope_chain(d: usize, copies: usize) -> Result<PureComplex, ConstructError> {
    if d < 2 || copies < 1 {
        return Err(ConstructError::BadInput("need d >= 2 and copies >= 1".into()));
    }
    let suffixed = |c: usize| relabel(&PureComplex::crosspolytope_boundary(d), |l| format!("{l}_{c}"));
    let mut chain = suffixed(1);
    let all = |sign: char, c: usize| -> Vec<String> {
        (1..=d).map(|i| format!("{sign}{i}_{c}")).collect()
    };
    for c in 2..=copies {
        let incoming = suffixed(c);
        let seam_chain = all('n', c - 1);
        let seam_new = all('p', c);
        let matching = FacetMatching::new(
            seam_chain
                .iter()
                .cloned()
                .zip(seam_new.iter().cloned())
                .collect(),
        );
        chain = chain.connected_sum(&seam_chain, &incoming, &seam_new, &matching)?;
    }
    Ok(chain)
}

/// Simple unbounded d-polyhedra with n facets and vertex-graph diameter
/// exactly n - d: start from the orthant and repeatedly cut with a
/// hyperplane obtained by tilting a supporting hyperplane of an unbounded
/// edge at the current far vertex. The tilt parameter is halved until exact
/// re-enumeration confirms that the cut added exactly one vertex and one to
/// the diameter.
pub fn unbounded_hirsch_sharp(d: usize, n: usize) -> Result<HPolyhedron, ConstructError> {
    if d < 2 || n < d {
        return Err(ConstructError::BadInput("need n >= d >= 2".into()));
    }
    let mut cur = HPolyhedron::orthant(d);
    for target in (d + 1)..=n {
        let inc = vertices_from_halfspaces(&cur)?;
        let (u, v, ray) = far_pair_with_ray(&inc, target - 1 - d)?;
        let _ = u;
        let coords = inc.vertex_coords.as_ref().expect("has coordinates");
        let vpt = &coords.points[v];
        // Supporting hyperplane of the unbounded edge: sum of its tight
        // inequalities. Tight set has rank d-1, so the sum touches the
        // polyhedron exactly along the edge.
        let mut a = RVector::zeros(d);
        let mut b = Rational::zero();
        for ineq in &cur.inequalities {
            if ineq.tight_at(vpt) && ineq.normal.dot(&ray).is_zero() {
                a = a.add(&ineq.normal);
                b = &b + &ineq.rhs;
            }
        }
        let tilt = ray.scale(&ray.dot(&ray).recip());
        let vprime = vpt.add(&ray);
        let mut eps = Rational::one();
        let mut placed = false;
        for _ in 0..64 {
            eps = &eps * &Rational::new(1, 2);
            let normal = a.add(&tilt.scale(&eps));
            let rhs = normal.dot(&vprime);
            let mut ineqs = cur.inequalities.clone();
            ineqs.push(Halfspace::new(normal, rhs));
            let cand = HPolyhedron::new(ineqs, Vec::new(), d)?;
            if cut_is_clean(&cand, &inc, &vprime, target, d)? {
                cur = cand;
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(ConstructError::ConstructionFailed(format!(
                "no valid tilt found while adding facet {target}"
            )));
        }
    }
    Ok(cur)
}

/// Diameter witness pair (u, v) with v incident to an unbounded ray, plus
/// the ray direction. Lexicographically least among all valid choices.
fn far_pair_with_ray(
    inc: &IncidenceStructure,
    expected_diameter: usize,
) -> Result<(usize, usize, RVector), ConstructError> {
    let g = graph_of(inc);
    let (diam, _) = g.diameter();
    let diam = diam.ok_or_else(|| {
        ConstructError::ConstructionFailed("intermediate polyhedron disconnected".into())
    })?;
    if diam != expected_diameter {
        return Err(ConstructError::ConstructionFailed(format!(
            "intermediate diameter {diam}, expected {expected_diameter}"
        )));
    }
    for u in 0..inc.n_vertices {
        let dist = g.bfs(u);
        for v in 0..inc.n_vertices {
            if dist[v] != Some(diam) {
                continue;
            }
            if let Some(ray) = inc
                .rays
                .iter()
                .filter(|r| r.base_vertex == v)
                .map(|r| r.direction.clone())
                .min()
            {
                return Ok((u, v, ray));
            }
        }
    }
    Err(ConstructError::ConstructionFailed(
        "no diameter witness with an unbounded ray".into(),
    ))
}

fn cut_is_clean(
    cand: &HPolyhedron,
    before: &IncidenceStructure,
    vprime: &RVector,
    target_facets: usize,
    d: usize,
) -> Result<bool, ConstructError> {
    let inc = match vertices_from_halfspaces(cand) {
        Ok(inc) => inc,
        Err(_) => return Ok(false),
    };
    let coords = inc.vertex_coords.as_ref().expect("has coordinates");
    let old_coords = before.vertex_coords.as_ref().expect("has coordinates");
    if inc.n_vertices != before.n_vertices + 1 {
        return Ok(false);
    }
    if !coords.points.contains(vprime) {
        return Ok(false);
    }
    if !old_coords.points.iter().all(|p| coords.points.contains(p)) {
        return Ok(false);
    }
    if inc.n_facets != target_facets || !crate::geometry::is_simple(&inc) {
        return Ok(false);
    }
    if inc.rays.is_empty() {
        return Ok(false);
    }
    let g = graph_of(&inc);
    if g.diameter().0 != Some(target_facets - d) {
        return Ok(false);
    }
    // The next iteration needs a witness pair ending in a ray vertex.
    Ok(far_pair_with_ray(&inc, target_facets - d).is_ok())
}

/// Bipyramid over an octagon: both apexes joined to every octagon edge.
pub fn octagon_bipyramid(
    cycle: &[&str; 8],
    apex1: &str,
    apex2: &str,
) -> Result<PureComplex, ConstructError> {
    let mut facets = Vec::with_capacity(16);
    for i in 0..8 {
        let u = cycle[i];
        let v = cycle[(i + 1) % 8];
        facets.push(vec![u, v, apex1]);
        facets.push(vec![u, v, apex2]);
    }
    Ok(PureComplex::from_labelled_facets(&facets)?)
}

/// The Mani-Walkup two-dimensional complex K: 32 triangles forming two
/// octagonal bipyramids whose octagons share all eight vertices but no edge,
/// which obstructs any non-revisiting path between the tetrahedra `abcd` and
/// `mnop` of a completing 3-sphere.
pub fn mani_walkup_k() -> PureComplex {
    let rows: [[&str; 3]; 32] = [
        ["a", "m", "r"], ["m", "b", "r"], ["b", "n", "r"], ["n", "c", "r"],
        ["c", "o", "r"], ["o", "d", "r"], ["d", "p", "r"], ["p", "a", "r"],
        ["a", "m", "t"], ["m", "b", "t"], ["b", "n", "t"], ["n", "c", "t"],
        ["c", "o", "t"], ["o", "d", "t"], ["d", "p", "t"], ["p", "a", "t"],
        ["a", "o", "q"], ["o", "b", "q"], ["b", "p", "q"], ["p", "c", "q"],
        ["c", "m", "q"], ["m", "d", "q"], ["d", "n", "q"], ["n", "a", "q"],
        ["a", "o", "s"], ["o", "b", "s"], ["b", "p", "s"], ["p", "c", "s"],
        ["c", "m", "s"], ["m", "d", "s"], ["d", "n", "s"], ["n", "a", "s"],
    ];
    let facets: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
    PureComplex::from_labelled_facets(&facets).expect("the 32 triangles are uniform")
}

/// First octagon of the Mani-Walkup complex, with its apexes.
pub const MANI_WALKUP_OCTAGON_1: ([&str; 8], &str, &str) =
    (["a", "m", "b", "n", "c", "o", "d", "p"], "r", "t");
/// Second octagon: same vertices, shuffled so no edge repeats.
pub const MANI_WALKUP_OCTAGON_2: ([&str; 8], &str, &str) =
    (["a", "o", "b", "p", "c", "m", "d", "n"], "q", "s");

/// Boundary complex of the Klee-Walkup polytope.
pub fn klee_walkup_boundary() -> Result<PureComplex, ConstructError> {
    let inc = facets_from_vertices(&klee_walkup_q4())?;
    Ok(boundary_complex(&inc)?)
}

/// The Fritzsche-Holt-Klee block: fourth one-point suspension of the
/// Klee-Walkup boundary on the vertex `w`. A simplicial 8-sphere complex with
/// 13 vertices and 87 facets whose A- and B-tuples sit at dual distance 5.
pub fn fhk_block() -> Result<PureComplex, ConstructError> {
    Ok(klee_walkup_boundary()?.iterated_ops("w", 4)?)
}

const FHK_A: [&str; 4] = ["a", "b", "c", "d"];
const FHK_B: [&str; 4] = ["e", "f", "g", "h"];

/// The five A-tuple (or B-tuple) facets of a block copy: the base facet
/// joined with each boundary facet of the simplex on `w1..w5`.
fn fhk_tuple(base: [&str; 4], suffix: &str) -> Vec<Vec<String>> {
    (1..=5)
        .map(|skip| {
            let mut f: Vec<String> = base.iter().map(|l| format!("{l}{suffix}")).collect();
            f.extend((1..=5).filter(|&i| i != skip).map(|i| format!("w{i}{suffix}")));
            f
        })
        .collect()
}

/// Neighbor facet of `facet` through the ridge obtained by dropping `drop`.
fn neighbor_through_ridge(
    c: &PureComplex,
    facet: &[String],
    drop: &str,
) -> Result<Vec<String>, ConstructError> {
    let fi = c
        .facet_index(facet)
        .ok_or_else(|| ConstructError::MatchingFailed(format!("facet {facet:?} missing")))?;
    let ridge: Vec<String> = facet.iter().filter(|l| l.as_str() != drop).cloned().collect();
    let ridge_ids: Vec<usize> = ridge
        .iter()
        .map(|l| c.vertex_index(l).expect("ridge labels exist"))
        .collect();
    let mut hits: Vec<usize> = Vec::new();
    for (i, f) in c.facets().iter().enumerate() {
        if ridge_ids.iter().all(|v| f.contains(v)) {
            hits.push(i);
        }
    }
    match hits.as_slice() {
        [x, y] => {
            let other = if *x == fi { *y } else { *x };
            Ok(c.facet_as_labels(other))
        }
        _ => Err(ConstructError::MatchingFailed(format!(
            "ridge {ridge:?} lies in {} facets, expected 2",
            hits.len()
        ))),
    }
}

/// Classify the seam facet's neighbors by dual distance to a reference facet
/// tuple: near ("fast") or one further ("slow"). The split must be 4/4.
fn classify_seam(
    c: &PureComplex,
    seam: &[String],
    reference: &[Vec<String>],
) -> Result<(Vec<String>, Vec<String>), ConstructError> {
    let dual = c.dual_graph();
    let mut ref_dist = vec![usize::MAX; c.n_facets()];
    for rf in reference {
        let ri = c
            .facet_index(rf)
            .ok_or_else(|| ConstructError::MatchingFailed(format!("reference {rf:?} missing")))?;
        for (f, dd) in dual.bfs(ri).iter().enumerate() {
            if let Some(x) = dd {
                ref_dist[f] = ref_dist[f].min(*x);
            }
        }
    }
    let mut classified: Vec<(String, usize)> = Vec::new();
    for drop in seam {
        let nb = neighbor_through_ridge(c, seam, drop)?;
        let ni = c.facet_index(&nb).expect("neighbor exists");
        classified.push((drop.clone(), ref_dist[ni]));
    }
    let lo = classified.iter().map(|(_, d)| *d).min().unwrap();
    let hi = classified.iter().map(|(_, d)| *d).max().unwrap();
    if hi != lo + 1 {
        return Err(ConstructError::MatchingFailed(format!(
            "seam neighbor distances span {lo}..{hi}, expected two consecutive values"
        )));
    }
    let mut fast: Vec<String> = classified
        .iter()
        .filter(|(_, d)| *d == lo)
        .map(|(l, _)| l.clone())
        .collect();
    let mut slow: Vec<String> = classified
        .iter()
        .filter(|(_, d)| *d == hi)
        .map(|(l, _)| l.clone())
        .collect();
    if fast.len() != 4 || slow.len() != 4 {
        return Err(ConstructError::MatchingFailed(format!(
            "seam split {}/{} is not 4/4",
            fast.len(),
            slow.len()
        )));
    }
    fast.sort();
    slow.sort();
    Ok((fast, slow))
}

/// Chain of FHK blocks glued B-end to A-end so that fast neighbors meet slow
/// ones, keeping the result Hirsch-sharp: `13 + 5(copies-1) + stellars`
/// vertices in dimension 8. Up to eight stellar subdivisions are applied at
/// the free A/B ends, alternating between them.
pub fn fhk_chain(copies: usize, stellars: usize) -> Result<PureComplex, ConstructError> {
    if copies < 1 {
        return Err(ConstructError::BadInput("need copies >= 1".into()));
    }
    if stellars > 8 {
        return Err(ConstructError::BadInput("at most 8 stellar subdivisions".into()));
    }
    let block = fhk_block()?;
    let mut chain = block.clone();
    let a_end = fhk_tuple(FHK_A, "");
    for c in 2..=copies {
        let suffix = format!("_{c}");
        let incoming = relabel(&block, |l| format!("{l}{suffix}"));
        let prev_suffix = if c == 2 { String::new() } else { format!("_{}", c - 1) };
        let seam_chain = &fhk_tuple(FHK_B, &prev_suffix)[0];
        let seam_new = &fhk_tuple(FHK_A, &suffix)[0];
        let (fast1, slow1) = classify_seam(&chain, seam_chain, &a_end)?;
        let (fast2, slow2) = classify_seam(&incoming, seam_new, &fhk_tuple(FHK_B, &suffix))?;
        let mut pairs: Vec<(String, String)> = Vec::with_capacity(8);
        pairs.extend(fast1.into_iter().zip(slow2));
        pairs.extend(slow1.into_iter().zip(fast2));
        chain = chain.connected_sum(seam_chain, &incoming, seam_new, &FacetMatching::new(pairs))?;
        let expect = 5 * c;
        let got = chain
            .dual_graph()
            .diameter()
            .0
            .ok_or_else(|| ConstructError::MatchingFailed("chain disconnected".into()))?;
        if got != expect {
            return Err(ConstructError::MatchingFailed(format!(
                "chain diameter {got} after {c} copies, expected {expect}"
            )));
        }
    }
    // Stellar subdivisions at the two unglued ends, alternating A then B.
    let last_suffix = if copies == 1 { String::new() } else { format!("_{copies}") };
    let ends_a = fhk_tuple(FHK_A, "");
    let ends_b = fhk_tuple(FHK_B, &last_suffix);
    for s in 1..=stellars {
        let tuple = if s % 2 == 1 { &ends_a } else { &ends_b };
        let facet = tuple
            .iter()
            .find(|f| chain.facet_index(f).is_some())
            .ok_or_else(|| {
                ConstructError::ConstructionFailed("no free end facet left to subdivide".into())
            })?;
        chain = chain.stellar_subdivide(facet, &format!("t{s}"))?;
    }
    Ok(chain)
}

/// Todd's monotone counterexample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToddInstance {
    /// The 8-facet bounded 4-polytope obtained from the simple Klee-Walkup
    /// polytope by a projective transformation and one facet removal.
    pub polyhedron: HPolyhedron,
    /// Objective maximized uniquely at `v`.
    pub objective: RVector,
    pub u: RVector,
    pub v: RVector,
}

/// Build Todd's instance: take the simple polytope polar to the Klee-Walkup
/// one, pick the facet F disjoint from the distance-5 vertex pair (u, v),
/// pivot a supporting hyperplane at v slightly toward F's hyperplane (exact
/// halving search on the pivot parameter), send the pivoted hyperplane to
/// infinity and forget F's image. Every monotone path from u' to v' then has
/// length at least five.
pub fn todd_monotone_instance() -> Result<ToddInstance, ConstructError> {
    let q4 = klee_walkup_q4();
    let d = 4usize;
    // Polar: one inequality per Klee-Walkup vertex. Valid because the origin
    // is strictly interior, which the facet enumeration certifies.
    let inc = facets_from_vertices(&q4)?;
    let planes = inc.facet_hyperplanes.as_ref().expect("full-dimensional");
    if planes.iter().any(|h| !h.rhs.is_positive()) {
        return Err(ConstructError::ConstructionFailed(
            "origin is not interior to the Klee-Walkup polytope".into(),
        ));
    }
    let polar_h = HPolyhedron::new(
        q4.points
            .iter()
            .map(|p| Halfspace::new(p.clone(), Rational::one()))
            .collect(),
        Vec::new(),
        d,
    )?;

    let vertex_from = |labels: [usize; 4]| -> Result<RVector, ConstructError> {
        let rows: Vec<RVector> = labels.iter().map(|&i| q4.points[i].clone()).collect();
        let rhs = RVector::new(vec![Rational::one(); 4]);
        RMatrix::new(rows)
            .map_err(GeometryError::from)?
            .solve(&rhs)
            .unique()
            .ok_or_else(|| ConstructError::ConstructionFailed("facet system singular".into()))
    };
    // u sits on the facets named a..d, v on e..h; w's facet misses both.
    let u = vertex_from([1, 2, 3, 4])?;
    let v = vertex_from([5, 6, 7, 8])?;

    // H1: supporting at v only (sum of its four tight inequalities).
    let n1 = [5usize, 6, 7, 8]
        .iter()
        .fold(RVector::zeros(d), |acc, &i| acc.add(&q4.points[i]));
    let b1 = Rational::from_int(4);
    // H2: the hyperplane of the ninth facet F (from vertex w).
    let n2 = q4.points[0].clone();
    let b2 = Rational::one();

    let polar_vertices = vertices_from_halfspaces(&polar_h)?;
    let coords = polar_vertices.vertex_coords.as_ref().expect("coordinates");

    let mut eps = Rational::one();
    for _ in 0..64 {
        eps = &eps * &Rational::new(1, 2);
        let one_minus = Rational::one() - eps.clone();
        let n0 = n1.scale(&one_minus).add(&n2.scale(&eps));
        let b0 = &(&b1 * &one_minus) + &(&b2 * &eps);

        // H0 must miss the polytope entirely.
        if coords.points.iter().any(|y| n0.dot(y) >= b0) {
            continue;
        }
        // The open wedge beyond H1 and inside H0 must contain no
        // intersection point of four facet hyperplanes.
        if !wedge_region_clear(&polar_h, &n1, &b1, &n0, &b0)? {
            continue;
        }
        if let Some(instance) = try_todd(&polar_h, &n0, &b0, &n1, &b1, &u, &v)? {
            return Ok(instance);
        }
    }
    Err(ConstructError::ConstructionFailed(
        "no valid pivot parameter after 64 halvings".into(),
    ))
}

fn wedge_region_clear(
    h: &HPolyhedron,
    n1: &RVector,
    b1: &Rational,
    n0: &RVector,
    b0: &Rational,
) -> Result<bool, ConstructError> {
    use itertools::Itertools;
    let m = h.inequalities.len();
    for subset in (0..m).combinations(4) {
        let rows: Vec<RVector> = subset.iter().map(|&i| h.inequalities[i].normal.clone()).collect();
        let rhs = RVector::new(subset.iter().map(|&i| h.inequalities[i].rhs.clone()).collect());
        if let Some(z) = RMatrix::new(rows).map_err(GeometryError::from)?.solve(&rhs).unique() {
            if n1.dot(&z) > *b1 && n0.dot(&z) < *b0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn try_todd(
    polar_h: &HPolyhedron,
    n0: &RVector,
    b0: &Rational,
    n1: &RVector,
    b1: &Rational,
    u: &RVector,
    v: &RVector,
) -> Result<Option<ToddInstance>, ConstructError> {
    let d = polar_h.dim;
    // Projective chart sending H0 to infinity: last homogeneous coordinate
    // becomes b0 - n0 . y, positive on the polytope.
    let mut rows: Vec<RVector> = (0..d)
        .map(|i| RVector::unit(d + 1, i))
        .collect();
    rows.push(n0.neg().extended(b0.clone()));
    let m = RMatrix::new(rows).map_err(GeometryError::from)?;
    let minv = match m.inverse() {
        Some(inv) => inv,
        None => return Ok(None),
    };

    // Covariant transform of a constraint row (a, -c).
    let transform_row = |a: &RVector, c: &Rational| -> (RVector, Rational) {
        let row = a.extended(-c.clone());
        let out = minv.transpose().mul_vector(&row);
        let normal = RVector::new(out.entries()[..d].to_vec());
        let rhs = -out[d].clone();
        (normal, rhs)
    };
    let map_point = |y: &RVector| -> Option<RVector> {
        let hom = m.mul_vector(&y.extended(Rational::one()));
        let last = hom[d].clone();
        if last.is_zero() || last.is_negative() {
            return None;
        }
        let inv = last.recip();
        Some(RVector::new(
            hom.entries()[..d].iter().map(|e| e * &inv).collect(),
        ))
    };

    // Transform all nine inequalities, then forget the one from w (index 0).
    let mut ineqs: Vec<Halfspace> = Vec::new();
    for (i, ineq) in polar_h.inequalities.iter().enumerate() {
        if i == 0 {
            continue;
        }
        let (normal, rhs) = transform_row(&ineq.normal, &ineq.rhs);
        ineqs.push(Halfspace::new(normal, rhs));
    }
    let q4pp = HPolyhedron::new(ineqs, Vec::new(), d)?;
    let inc = match vertices_from_halfspaces(&q4pp) {
        Ok(inc) => inc,
        Err(_) => return Ok(None),
    };
    if !inc.is_bounded() || inc.n_facets != 8 {
        return Ok(None);
    }
    let (Some(u_img), Some(v_img)) = (map_point(u), map_point(v)) else {
        return Ok(None);
    };
    let coords = inc.vertex_coords.as_ref().expect("coordinates");
    let Some(v_idx) = coords.points.iter().position(|p| *p == v_img) else {
        return Ok(None);
    };
    if !coords.points.contains(&u_img) {
        return Ok(None);
    }

    // phi: transformed H1 functional, sign chosen so v' is the maximum.
    let (phi_raw, level) = transform_row(n1, b1);
    let objective = {
        let above = coords
            .points
            .iter()
            .enumerate()
            .any(|(i, p)| i != v_idx && phi_raw.dot(p) >= level);
        if above { phi_raw.neg() } else { phi_raw }
    };
    if crate::paths::unique_max(&inc, &objective) != Some(v_idx) {
        return Ok(None);
    }
    Ok(Some(ToddInstance {
        polyhedron: q4pp,
        objective,
        u: u_img,
        v: v_img,
    }))
}

/// Three-way axial transportation polytope in H-form: nonnegative p x q x r
/// arrays with prescribed axis sums. Lives in dimension pqr with
/// p + q + r equations.
pub fn axial_transportation(
    a: &RVector,
    b: &RVector,
    c: &RVector,
) -> Result<HPolyhedron, ConstructError> {
    let (p, q, r) = (a.dim(), b.dim(), c.dim());
    if p == 0 || q == 0 || r == 0 {
        return Err(ConstructError::BadInput("margins must be nonempty".into()));
    }
    let total = |v: &RVector| -> Rational { v.iter().sum() };
    if total(a) != total(b) || total(b) != total(c) {
        return Err(ConstructError::InfeasibleMargins);
    }
    let dim = p * q * r;
    let idx = |i: usize, j: usize, k: usize| i * q * r + j * r + k;
    let mut eqs = Vec::new();
    for i in 0..p {
        let mut n = RVector::zeros(dim);
        let mut entries = n.entries().to_vec();
        for j in 0..q {
            for k in 0..r {
                entries[idx(i, j, k)] = Rational::one();
            }
        }
        n = RVector::new(entries);
        eqs.push(LinearEquation::new(n, a[i].clone()));
    }
    for j in 0..q {
        let mut entries = vec![Rational::zero(); dim];
        for i in 0..p {
            for k in 0..r {
                entries[idx(i, j, k)] = Rational::one();
            }
        }
        eqs.push(LinearEquation::new(RVector::new(entries), b[j].clone()));
    }
    for k in 0..r {
        let mut entries = vec![Rational::zero(); dim];
        for i in 0..p {
            for j in 0..q {
                entries[idx(i, j, k)] = Rational::one();
            }
        }
        eqs.push(LinearEquation::new(RVector::new(entries), c[k].clone()));
    }
    let ineqs = (0..dim)
        .map(|t| Halfspace::new(RVector::unit(dim, t).neg(), Rational::zero()))
        .collect();
    Ok(HPolyhedron::new(ineqs, eqs, dim)?)
}

/// Three-way planar transportation polytope: prescribed plane sums
/// `sum_k x_ijk = A_ij`, `sum_j x_ijk = B_ik`, `sum_i x_ijk = C_jk`.
pub fn planar_transportation(
    a: &RMatrix,
    b: &RMatrix,
    c: &RMatrix,
) -> Result<HPolyhedron, ConstructError> {
    let (p, q) = (a.n_rows(), a.n_cols());
    let r = b.n_cols();
    if b.n_rows() != p || c.n_rows() != q || c.n_cols() != r {
        return Err(ConstructError::BadInput(
            "margin matrices must be p x q, p x r and q x r".into(),
        ));
    }
    let row_sum = |m: &RMatrix, i: usize| -> Rational { m.row(i).iter().sum() };
    let col_sum = |m: &RMatrix, j: usize| -> Rational {
        (0..m.n_rows()).map(|i| m.row(i)[j].clone()).sum()
    };
    for i in 0..p {
        if row_sum(a, i) != row_sum(b, i) {
            return Err(ConstructError::InfeasibleMargins);
        }
    }
    for j in 0..q {
        if col_sum(a, j) != row_sum(c, j) {
            return Err(ConstructError::InfeasibleMargins);
        }
    }
    for k in 0..r {
        if col_sum(b, k) != col_sum(c, k) {
            return Err(ConstructError::InfeasibleMargins);
        }
    }
    let dim = p * q * r;
    let idx = |i: usize, j: usize, k: usize| i * q * r + j * r + k;
    let mut eqs = Vec::new();
    for i in 0..p {
        for j in 0..q {
            let mut entries = vec![Rational::zero(); dim];
            for k in 0..r {
                entries[idx(i, j, k)] = Rational::one();
            }
            eqs.push(LinearEquation::new(RVector::new(entries), a.row(i)[j].clone()));
        }
    }
    for i in 0..p {
        for k in 0..r {
            let mut entries = vec![Rational::zero(); dim];
            for j in 0..q {
                entries[idx(i, j, k)] = Rational::one();
            }
            eqs.push(LinearEquation::new(RVector::new(entries), b.row(i)[k].clone()));
        }
    }
    for j in 0..q {
        for k in 0..r {
            let mut entries = vec![Rational::zero(); dim];
            for i in 0..p {
                entries[idx(i, j, k)] = Rational::one();
            }
            eqs.push(LinearEquation::new(RVector::new(entries), c.row(j)[k].clone()));
        }
    }
    let ineqs = (0..dim)
        .map(|t| Halfspace::new(RVector::unit(dim, t).neg(), Rational::zero()))
        .collect();
    Ok(HPolyhedron::new(ineqs, eqs, dim)?)
}

/// splitmix64 step; the fixed generator behind all seeded sampling here, so
/// samples reproduce across implementations.
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `m` distinct points of {0,1}^d drawn with splitmix64: each draw takes the
/// low d bits of the next output (2^d divides 2^64, so draws are uniform)
/// and repeats are skipped.
pub fn zero_one_sample(d: usize, m: usize, seed: u64) -> Result<VPolytope, ConstructError> {
    if d == 0 || d > 5 {
        return Err(ConstructError::BadInput("need 1 <= d <= 5".into()));
    }
    if m < 2 || m > (1 << d) {
        return Err(ConstructError::BadInput("need 2 <= m <= 2^d".into()));
    }
    let mut state = seed;
    let mut chosen: Vec<u64> = Vec::with_capacity(m);
    while chosen.len() < m {
        let val = splitmix64(&mut state) & ((1u64 << d) - 1);
        if !chosen.contains(&val) {
            chosen.push(val);
        }
    }
    let points = chosen
        .into_iter()
        .map(|bits| {
            RVector::new(
                (0..d)
                    .map(|i| Rational::from_int(((bits >> i) & 1) as i64))
                    .collect(),
            )
        })
        .collect();
    Ok(VPolytope::new(points, None)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{dual_graph_of, is_simple, is_simplicial};
    use crate::paths::hirsch_sharpness;

    #[test]
    fn q4_has_nine_points_in_dimension_four() {
        let q4 = klee_walkup_q4();
        assert_eq!(q4.n_points(), 9);
        assert_eq!(crate::exact::affine_dim(&q4.points).unwrap(), 4);
        assert_eq!(q4.label_of(0), "w");
        assert_eq!(q4.label_of(8), "h");
    }

    #[test]
    fn q4_facet_enumeration_matches_published_structure() {
        let inc = facets_from_vertices(&klee_walkup_q4()).unwrap();
        assert_eq!(inc.n_vertices, 9);
        assert_eq!(inc.n_facets, 27);
        assert!(is_simplicial(&inc));
        let dg = dual_graph_of(&inc);
        assert_eq!(dg.diameter().0, Some(5));
    }

    #[test]
    fn klee_family_counts() {
        let s = klee_3sphere_family(2, 0).unwrap();
        assert_eq!(s.n_vertices(), 9);
        assert_eq!(s.n_facets(), 14);
        assert!(s.is_two_sphere());
        assert_eq!(s.dual_graph().diameter().0, Some(5));
        assert!(klee_3sphere_family(0, 0).is_err());

        let s1 = klee_3sphere_family(1, 0).unwrap();
        assert_eq!(s1.n_vertices(), 6);
        assert_eq!(s1.dual_graph().diameter().0, Some(3));
    }

    #[test]
    fn crosspolytope_chain_counts_and_diameter() {
        let chain = crosspolytope_chain(3, 3).unwrap();
        assert_eq!(chain.n_vertices(), 12);
        assert_eq!(chain.dual_graph().diameter().0, Some(7));
        assert!(chain.is_two_sphere());

        let single = crosspolytope_chain(4, 1).unwrap();
        assert_eq!(single.dual_graph().diameter().0, Some(4));
        assert_eq!(single.n_vertices(), 8);
    }

    #[test]
    fn unbounded_family_small_cases() {
        let h = unbounded_hirsch_sharp(2, 2).unwrap();
        let inc = vertices_from_halfspaces(&h).unwrap();
        assert_eq!(inc.n_vertices, 1);
        assert_eq!(graph_of(&inc).diameter().0, Some(0));

        let h = unbounded_hirsch_sharp(2, 4).unwrap();
        let inc = vertices_from_halfspaces(&h).unwrap();
        assert_eq!(inc.n_facets, 4);
        assert!(is_simple(&inc));
        assert!(!inc.is_bounded());
        assert_eq!(graph_of(&inc).diameter().0, Some(2));
    }

    #[test]
    fn mani_walkup_structure() {
        let k = mani_walkup_k();
        assert_eq!(k.n_facets(), 32);
        assert_eq!(k.n_vertices(), 12);
        let (oct1, r, t) = MANI_WALKUP_OCTAGON_1;
        let bp1 = octagon_bipyramid(&oct1, r, t).unwrap();
        assert_eq!(bp1.n_facets(), 16);
        assert!(bp1.is_two_sphere());
        assert_eq!(k.dual_graph().n_components(), 2);
    }

    #[test]
    fn fhk_block_counts() {
        let b = fhk_block().unwrap();
        assert_eq!(b.n_vertices(), 13);
        assert_eq!(b.facet_size(), 8);
        assert_eq!(b.n_facets(), 87);
        let v = hirsch_sharpness(&b).unwrap();
        assert_eq!(v.diameter, 5);
        assert!(v.sharp);
    }

    #[test]
    fn transportation_polytopes() {
        let ones2 = RVector::from_ints(&[1, 1]);
        let h = axial_transportation(&ones2, &ones2, &ones2).unwrap();
        let inc = vertices_from_halfspaces(&h).unwrap();
        assert_eq!(inc.dim, 4);
        assert!(inc.n_facets <= 8);

        let bad = axial_transportation(&ones2, &ones2, &RVector::from_ints(&[1, 2]));
        assert_eq!(bad, Err(ConstructError::InfeasibleMargins));
    }

    #[test]
    fn zero_one_samples_are_deterministic() {
        let a = zero_one_sample(3, 8, 42).unwrap();
        let b = zero_one_sample(3, 8, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.n_points(), 8);
        // all eight points of the cube
        let inc = facets_from_vertices(&a).unwrap();
        assert_eq!(inc.n_vertices, 8);
        assert_eq!(inc.n_facets, 6);
        assert!(zero_one_sample(3, 1, 0).is_err());
        assert!(zero_one_sample(6, 4, 0).is_err());
    }
}
