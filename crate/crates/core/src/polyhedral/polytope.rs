//! Polyhedra `{p + x : a_i . x >= b_i}` analysed through their homogenization.

use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::cone::RationalCone;
use crate::error::{Error, Result};
use crate::num::{dot_rat, primitive, rat_from_int, Int, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfSpace {
    pub normal: Vec<Rat>,
    pub offset: Rat,
}

impl HalfSpace {
    /// `normal . x >= offset`.
    pub fn new(normal: Vec<Rat>, offset: Rat) -> Self {
        Self { normal, offset }
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        dot_rat(&self.normal, x) >= self.offset
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    basepoint: Vec<Rat>,
    halfspaces: Vec<HalfSpace>,
    /// Vertices of the minimal faces, translated by the basepoint, sorted.
    vertices: Vec<Vec<Rat>>,
    recession_rays: Vec<Vec<Int>>,
    lineality: Vec<Vec<Int>>,
}

/// Integer row `(a * l, -b * l)` for the homogenized inequality.
fn homogenize(h: &HalfSpace) -> Vec<Int> {
    let l = h.normal.iter().chain(core::iter::once(&h.offset)).fold(Int::one(), |l, x| l.lcm(x.denom()));
    let lr = rat_from_int(&l);
    let mut row: Vec<Int> = h.normal.iter().map(|x| (x * &lr).to_integer()).collect();
    row.push(-(&h.offset * &lr).to_integer());
    primitive(&row)
}

pub fn polytope_from_halfspaces(basepoint: Vec<Rat>, halfspaces: Vec<HalfSpace>) -> Result<Polytope> {
    let d = basepoint.len();
    if let Some(h) = halfspaces.iter().find(|h| h.normal.len() != d) {
        return Err(Error::DimensionMismatch { expected: d, got: h.normal.len() });
    }
    let mut rows: Vec<Vec<Int>> = halfspaces.iter().map(homogenize).collect();
    let mut s = alloc::vec![Int::zero(); d + 1];
    s[d] = Int::one();
    rows.push(s);
    let cone = RationalCone::from_inequalities(&rows, &[], d + 1)?;
    let mut vertices = Vec::new();
    let mut recession_rays = Vec::new();
    for r in cone.rays() {
        if r[d].is_positive() {
            let den = rat_from_int(&r[d]);
            vertices.push((0..d).map(|i| rat_from_int(&r[i]) / &den + &basepoint[i]).collect::<Vec<Rat>>());
        } else {
            recession_rays.push(r[..d].to_vec());
        }
    }
    vertices.sort();
    let lineality = cone.lineality().iter().map(|l| l[..d].to_vec()).collect();
    Ok(Polytope { basepoint, halfspaces, vertices, recession_rays, lineality })
}

impl Polytope {
    pub fn dim(&self) -> usize {
        self.basepoint.len()
    }

    pub fn basepoint(&self) -> &[Rat] {
        &self.basepoint
    }

    pub fn halfspaces(&self) -> &[HalfSpace] {
        &self.halfspaces
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.recession_rays.is_empty() && self.lineality.is_empty()
    }

    /// Vertices when the polyhedron is pointed; otherwise representatives of its
    /// minimal faces.
    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    pub fn recession_rays(&self) -> &[Vec<Int>] {
        &self.recession_rays
    }

    pub fn recession_lineality(&self) -> &[Vec<Int>] {
        &self.lineality
    }

    pub fn contains(&self, p: &[Rat]) -> bool {
        if p.len() != self.dim() {
            return false;
        }
        let x: Vec<Rat> = p.iter().zip(&self.basepoint).map(|(a, b)| a - b).collect();
        self.halfspaces.iter().all(|h| h.contains(&x))
    }
}
