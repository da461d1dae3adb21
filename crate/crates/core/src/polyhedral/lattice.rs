use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{combine, hnf_coordinates, row_hnf, solve_combination};
use crate::num::{primitive, primitive_of_rat, rat_vec, Int, Rat};

/// A sublattice of `Z^d`, stored by its canonical Hermite basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    ambient: usize,
    basis: Vec<Vec<Int>>,
}

impl Lattice {
    pub fn full(d: usize) -> Self {
        let basis = (0..d)
            .map(|i| (0..d).map(|j| Int::from((i == j) as i64)).collect())
            .collect();
        Self { ambient: d, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Int>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        v.len() == self.ambient && hnf_coordinates(&self.basis, v).is_some()
    }

    /// Integer coordinates in the stored basis.
    pub fn coords(&self, v: &[Int]) -> Option<Vec<Int>> {
        if v.len() != self.ambient {
            return None;
        }
        hnf_coordinates(&self.basis, v)
    }

    /// Rational coordinates of a vector of `L (x) Q`.
    pub fn rational_coords(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, got: v.len() });
        }
        let b: Vec<Vec<Rat>> = self.basis.iter().map(|x| rat_vec(x)).collect();
        solve_combination(&b, v).ok_or(Error::NotInLatticeSpan)
    }

    pub fn from_coords(&self, c: &[Int]) -> Vec<Int> {
        combine(&self.basis, c, self.ambient)
    }

    pub fn is_sublattice_of(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|b| other.contains(b))
    }
}

pub fn lattice_span(vectors: &[Vec<Int>], d: usize) -> Result<Lattice> {
    if let Some(v) = vectors.iter().find(|v| v.len() != d) {
        return Err(Error::DimensionMismatch { expected: d, got: v.len() });
    }
    Ok(Lattice { ambient: d, basis: row_hnf(vectors, d) })
}

/// The primitive element of `l` on the open ray through `v`.
pub fn primitive_vector(v: &[Rat], l: &Lattice) -> Result<Vec<Int>> {
    if v.iter().all(Zero::is_zero) {
        return Err(Error::ZeroVector);
    }
    let c = l.rational_coords(v)?;
    let p = primitive_of_rat(&c);
    Ok(l.from_coords(&p))
}

/// Primitive integer multiple of an integer vector, preserving direction.
pub fn primitive_int(v: &[Int]) -> Vec<Int> {
    primitive(v)
}

/// Lexicographic comparison key helper: the first nonzero entry is positive.
pub fn normalize_line(v: &[Int]) -> Vec<Int> {
    let p = primitive(v);
    match p.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => p.iter().map(|y| -y).collect(),
        _ => p,
    }
}
