use serde::{Deserialize, Serialize};

use super::GeometryError;
use crate::exact::{RVector, Rational};

/// One inequality `normal . x <= rhs`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Halfspace {
    pub normal: RVector,
    pub rhs: Rational,
}

impl Halfspace {
    pub fn new(normal: RVector, rhs: Rational) -> Self {
        Halfspace { normal, rhs }
    }

    /// Scale by a positive rational so all coefficients are coprime integers.
    /// Positive scaling preserves the halfspace, so this is a canonical form.
    pub fn canonical(&self) -> Halfspace {
        let joint = self.normal.extended(self.rhs.clone()).primitive_positive_scale();
        let d = self.normal.dim();
        Halfspace {
            normal: RVector::new(joint.entries()[..d].to_vec()),
            rhs: joint[d].clone(),
        }
    }

    pub fn eval(&self, x: &RVector) -> Rational {
        self.normal.dot(x)
    }

    pub fn satisfies(&self, x: &RVector) -> bool {
        self.eval(x) <= self.rhs
    }

    pub fn tight_at(&self, x: &RVector) -> bool {
        self.eval(x) == self.rhs
    }
}

/// One equation `normal . x = rhs`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LinearEquation {
    pub normal: RVector,
    pub rhs: Rational,
}

impl LinearEquation {
    pub fn new(normal: RVector, rhs: Rational) -> Self {
        LinearEquation { normal, rhs }
    }

    /// Canonical form for equations also fixes the sign: the first nonzero
    /// coefficient becomes positive.
    pub fn canonical(&self) -> LinearEquation {
        let joint = self.normal.extended(self.rhs.clone());
        let prim = joint.primitive_signed();
        let d = self.normal.dim();
        LinearEquation {
            normal: RVector::new(prim.entries()[..d].to_vec()),
            rhs: prim[d].clone(),
        }
    }

    pub fn holds_at(&self, x: &RVector) -> bool {
        self.normal.dot(x) == self.rhs
    }
}

/// Polyhedron `{x : A x <= b, E x = f}` over the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HPolyhedron {
    pub inequalities: Vec<Halfspace>,
    pub equalities: Vec<LinearEquation>,
    pub dim: usize,
}

impl HPolyhedron {
    /// Canonicalizes every constraint and drops exact duplicates (keeping
    /// first occurrences, so facet indices stay meaningful to the caller).
    pub fn new(
        inequalities: Vec<Halfspace>,
        equalities: Vec<LinearEquation>,
        dim: usize,
    ) -> Result<Self, GeometryError> {
        let mut ineqs: Vec<Halfspace> = Vec::new();
        for h in inequalities {
            if h.normal.dim() != dim {
                return Err(GeometryError::MixedDimensions);
            }
            if h.normal.is_zero() {
                return Err(GeometryError::ZeroNormal);
            }
            let c = h.canonical();
            if !ineqs.contains(&c) {
                ineqs.push(c);
            }
        }
        let mut eqs: Vec<LinearEquation> = Vec::new();
        for e in equalities {
            if e.normal.dim() != dim {
                return Err(GeometryError::MixedDimensions);
            }
            if e.normal.is_zero() {
                return Err(GeometryError::ZeroNormal);
            }
            let c = e.canonical();
            if !eqs.contains(&c) {
                eqs.push(c);
            }
        }
        Ok(HPolyhedron {
            inequalities: ineqs,
            equalities: eqs,
            dim,
        })
    }

    pub fn n_inequalities(&self) -> usize {
        self.inequalities.len()
    }

    pub fn contains(&self, x: &RVector) -> bool {
        self.inequalities.iter().all(|h| h.satisfies(x))
            && self.equalities.iter().all(|e| e.holds_at(x))
    }

    /// Axis-aligned box `lo <= x_i <= hi` in the given dimension.
    pub fn cube(dim: usize, lo: i64, hi: i64) -> Self {
        let mut ineqs = Vec::new();
        for i in 0..dim {
            ineqs.push(Halfspace::new(RVector::unit(dim, i), Rational::from_int(hi)));
            ineqs.push(Halfspace::new(
                RVector::unit(dim, i).neg(),
                Rational::from_int(-lo),
            ));
        }
        HPolyhedron::new(ineqs, Vec::new(), dim).expect("cube constraints are valid")
    }

    /// Nonnegative orthant `x_i >= 0`.
    pub fn orthant(dim: usize) -> Self {
        let ineqs = (0..dim)
            .map(|i| Halfspace::new(RVector::unit(dim, i).neg(), Rational::zero()))
            .collect();
        HPolyhedron::new(ineqs, Vec::new(), dim).expect("orthant constraints are valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonicalization_deduplicates_scaled_copies() {
        let dim = 2;
        let a = Halfspace::new(RVector::from_ints(&[2, 4]), Rational::from_int(6));
        let b = Halfspace::new(
        	RVector::new(vec![Rational::new(1, 1), Rational::new(2, 1)]),
        	Rational::from_int(3),
        );
        let h = HPolyhedron::new(vec![a, b], Vec::new(), dim).unwrap();
        assert_eq!(h.n_inequalities(), 1);
        assert_eq!(h.inequalities[0].normal, RVector::from_ints(&[1, 2]));
        assert_eq!(h.inequalities[0].rhs, Rational::from_int(3));
    }

    #[test]
    fn zero_normal_rejected() {
        let z = Halfspace::new(RVector::zeros(2), Rational::one());
        assert_eq!(
            HPolyhedron::new(vec![z], Vec::new(), 2),
            Err(GeometryError::ZeroNormal)
        );
    }

    #[test]
    fn equation_sign_is_fixed() {
        let e = LinearEquation::new(RVector::from_ints(&[-2, 4]), Rational::from_int(-6));
        let c = e.canonical();
        assert_eq!(c.normal, RVector::from_ints(&[1, -2]));
        assert_eq!(c.rhs, Rational::from_int(3));
    }
}
