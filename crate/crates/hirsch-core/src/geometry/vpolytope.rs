use serde::{Deserialize, Serialize};

use super::GeometryError;
use crate::exact::RVector;

/// Polytope given as the convex hull of finitely many rational points.
///
/// Points need not all be vertices; facet enumeration reports the interior
/// ones separately.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VPolytope {
    pub points: Vec<RVector>,
    pub labels: Option<Vec<String>>,
}

impl VPolytope {
    pub fn new(points: Vec<RVector>, labels: Option<Vec<String>>) -> Result<Self, GeometryError> {
        if points.is_empty() {
            return Err(GeometryError::EmptyPolytope);
        }
        let d = points[0].dim();
        if points.iter().any(|p| p.dim() != d) {
            return Err(GeometryError::MixedDimensions);
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(GeometryError::DuplicatePoint(i));
            }
        }
        if let Some(ls) = &labels {
            if ls.len() != points.len() {
                return Err(GeometryError::LabelCountMismatch);
            }
        }
        Ok(VPolytope { points, labels })
    }

    pub fn from_int_rows(rows: &[&[i64]], labels: Option<Vec<String>>) -> Result<Self, GeometryError> {
        VPolytope::new(
            rows.iter().map(|r| RVector::from_ints(r)).collect(),
            labels,
        )
    }

    pub fn ambient_dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn n_points(&self) -> usize {
        self.points.len()
    }

    /// Display name of a point: the stored label, or `v{i}`.
    pub fn label_of(&self, i: usize) -> String {
        match &self.labels {
            Some(ls) => ls[i].clone(),
            None => format!("v{i}"),
        }
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        match &self.labels {
            Some(ls) => ls.iter().position(|l| l == label),
            None => label
                .strip_prefix('v')
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|&i| i < self.points.len()),
        }
    }
}
