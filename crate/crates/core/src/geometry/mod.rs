//! Order and chain polytopes, slices, total unimodularity, and exact
//! (mixed) volumes of small rational polytopes.

pub mod constraints;
pub mod hull;
pub mod volume;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};

pub use constraints::{
    chain_polytope, is_totally_unimodular, order_polytope, slices, vertices, vertices_with,
    ConstraintSystem,
};
pub use volume::{
    af_defect, minkowski_combination, mixed_volume, stanley_af_instance, verify_sta_pol, volume,
    AfDefect, AfInstance, StaPol, VolumeReport,
};

/// A polytope given by (a superset of) its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexPolytope {
    vertices: Vec<Vec<BigRational>>,
    ambient: usize,
    /// Coordinates declared constant; they define the axis-aligned hull.
    fixedmask: Vec<bool>,
}

impl VertexPolytope {
    /// Deduplicates and declares every constant coordinate fixed.
    pub fn new(points: Vec<Vec<BigRational>>) -> Result<Self> {
        let ambient = Self::check_points(&points)?;
        let fixedmask = (0..ambient)
            .map(|j| points.iter().all(|p| p[j] == points[0][j]))
            .collect();
        Self::with_fixedmask(points, fixedmask)
    }

    pub fn from_integer_points(points: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            points
                .iter()
                .map(|p| p.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect())
                .collect(),
        )
    }

    pub fn with_fixedmask(mut points: Vec<Vec<BigRational>>, fixedmask: Vec<bool>) -> Result<Self> {
        let ambient = Self::check_points(&points)?;
        if fixedmask.len() != ambient {
            return Err(Error::DimensionMismatch(format!(
                "fixedmask of length {} for ambient dimension {ambient}",
                fixedmask.len()
            )));
        }
        for (j, &f) in fixedmask.iter().enumerate() {
            if f && points.iter().any(|p| p[j] != points[0][j]) {
                return Err(Error::DimensionMismatch(format!(
                    "coordinate {j} is marked fixed but varies"
                )));
            }
        }
        points.sort();
        points.dedup();
        Ok(VertexPolytope {
            vertices: points,
            ambient,
            fixedmask,
        })
    }

    fn check_points(points: &[Vec<BigRational>]) -> Result<usize> {
        let Some(first) = points.first() else {
            return Err(Error::precondition("a polytope needs at least one point"));
        };
        let d = first.len();
        if points.iter().any(|p| p.len() != d) {
            return Err(Error::DimensionMismatch("points of different lengths".into()));
        }
        Ok(d)
    }

    pub fn vertices(&self) -> &[Vec<BigRational>] {
        &self.vertices
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn fixedmask(&self) -> &[bool] {
        &self.fixedmask
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Number of coordinates not declared fixed.
    pub fn claimed_dim(&self) -> usize {
        self.fixedmask.iter().filter(|&&f| !f).count()
    }

    /// Coordinates on which the points actually differ.
    pub fn varying_coords(&self) -> Vec<usize> {
        let v0 = &self.vertices[0];
        (0..self.ambient)
            .filter(|&j| self.vertices.iter().any(|p| p[j] != v0[j]))
            .collect()
    }

    /// Points scaled by a common denominator and restricted to `coords`.
    /// Returns the integer points and the denominator.
    pub(crate) fn integer_projection(&self, coords: &[usize]) -> Result<(Vec<Vec<i128>>, BigInt)> {
        let mut den = BigInt::one();
        for p in &self.vertices {
            for &j in coords {
                den = den.lcm(p[j].denom());
            }
        }
        let mut out = Vec::with_capacity(self.vertices.len());
        for p in &self.vertices {
            let mut row = Vec::with_capacity(coords.len());
            for &j in coords {
                let v = p[j].numer() * (&den / p[j].denom());
                let v = v.to_i128().filter(|v| v.abs() < 1 << 40).ok_or_else(|| {
                    Error::CapExceeded {
                        what: "coordinate magnitude after clearing denominators",
                        limit: 1 << 40,
                        got: usize::MAX,
                        flag: "smaller inputs",
                    }
                })?;
                row.push(v);
            }
            out.push(row);
        }
        out.sort();
        out.dedup();
        debug_assert!(den.is_positive());
        Ok((out, den))
    }
}
