//! Membership in a finitely generated monoid `N g_1 + ... + N g_k`.
//!
//! Let `F` be the facet normals of `cone(g)` and `l = sum F`. Then `l` vanishes on
//! the lineality space `Lin` of the cone and is strictly positive on every
//! generator outside it, so in any representation `v = sum c_i g_i` the
//! coefficient of such a generator satisfies `c_i <= l(v) / l(g_i)`. Generators
//! inside `Lin` generate a group (a strictly positive relation among them always
//! exists), so their coefficients may be taken in `Z` and shifted to be
//! nonnegative afterwards. The search enumerates the bounded coefficients and
//! decides the remainder by an integer linear solve.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::cone::RationalCone;
use crate::error::{Error, Result};
use crate::linalg::{int_solve, row_hnf, hnf_coordinates};
use crate::num::{dot_int, Int};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    /// Nonnegative coefficients, one per generator, recombining to the query.
    Member(Vec<Int>),
    NotMember,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Self::Member(_))
    }

    pub fn certificate(&self) -> Option<&[Int]> {
        match self {
            Self::Member(c) => Some(c),
            Self::NotMember => None,
        }
    }
}

/// Precomputed data for repeated membership queries against one generating set.
#[derive(Debug, Clone)]
pub struct MonoidOracle {
    dim: usize,
    gens: Vec<Vec<Int>>,
    cone: RationalCone,
    lattice_hnf: Vec<Vec<Int>>,
    grading: Vec<Int>,
    /// Indices of generators in the lineality space.
    lin_idx: Vec<usize>,
    /// Remaining generators sorted by decreasing degree, with their degrees.
    rest: Vec<(usize, Int)>,
    /// Strictly positive integer relation among the lineality generators.
    relation: Vec<Int>,
}

impl MonoidOracle {
    pub fn new(gens: &[Vec<Int>], dim: usize) -> Result<Self> {
        let cone = RationalCone::from_generators(gens, dim)?;
        let mut grading = vec![Int::zero(); dim];
        for f in cone.facet_normals() {
            for (a, b) in grading.iter_mut().zip(f) {
                *a += b;
            }
        }
        let mut lin_idx = Vec::new();
        let mut rest = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            let deg = dot_int(&grading, g);
            if deg.is_zero() {
                if g.iter().any(|x| !x.is_zero()) {
                    lin_idx.push(i);
                }
            } else {
                rest.push((i, deg));
            }
        }
        rest.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        let relation = positive_relation(&lin_idx.iter().map(|&i| gens[i].clone()).collect::<Vec<_>>(), dim)?;
        Ok(Self {
            dim,
            gens: gens.to_vec(),
            lattice_hnf: row_hnf(gens, dim),
            cone,
            grading,
            lin_idx,
            rest,
            relation,
        })
    }

    pub fn cone(&self) -> &RationalCone {
        &self.cone
    }

    /// Linear form positive on every generator outside the lineality space.
    pub fn grading(&self) -> &[Int] {
        &self.grading
    }

    pub fn lineality_generators(&self) -> &[usize] {
        &self.lin_idx
    }

    pub fn decide(&self, v: &[Int]) -> Result<Membership> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: v.len() });
        }
        if !self.cone.contains(v) || hnf_coordinates(&self.lattice_hnf, v).is_none() {
            return Ok(Membership::NotMember);
        }
        let total = dot_int(&self.grading, v);
        let lin_gens: Vec<Vec<Int>> = self.lin_idx.iter().map(|&i| self.gens[i].clone()).collect();
        let mut coeffs = vec![Int::zero(); self.rest.len()];
        let mut residual = v.to_vec();
        if let Some(d) = self.search(0, &total, &mut coeffs, &mut residual, &lin_gens) {
            let mut cert = vec![Int::zero(); self.gens.len()];
            for ((i, _), c) in self.rest.iter().zip(&coeffs) {
                cert[*i] = c.clone();
            }
            // shift the group part to nonnegative coefficients
            let mut t = Int::zero();
            for (di, pi) in d.iter().zip(&self.relation) {
                if di.is_negative() {
                    let need = (-di + pi - Int::from(1)) / pi;
                    if need > t {
                        t = need;
                    }
                }
            }
            for ((&i, di), pi) in self.lin_idx.iter().zip(&d).zip(&self.relation) {
                cert[i] = di + &t * pi;
            }
            return Ok(Membership::Member(cert));
        }
        Ok(Membership::NotMember)
    }

    fn search(
        &self,
        k: usize,
        remaining: &Int,
        coeffs: &mut Vec<Int>,
        residual: &mut Vec<Int>,
        lin_gens: &[Vec<Int>],
    ) -> Option<Vec<Int>> {
        if k == self.rest.len() {
            if !remaining.is_zero() {
                return None;
            }
            return int_solve(lin_gens, residual);
        }
        let (gi, deg) = &self.rest[k];
        let g = &self.gens[*gi];
        let max = remaining / deg;
        if k + 1 == self.rest.len() && !(remaining % deg).is_zero() {
            return None;
        }
        // try large coefficients first: the last generator must absorb the rest exactly
        let mut c = max.clone();
        loop {
            for (r, x) in residual.iter_mut().zip(g) {
                *r -= &c * x;
            }
            coeffs[k] = c.clone();
            let rem = remaining - &c * deg;
            if let Some(d) = self.search(k + 1, &rem, coeffs, residual, lin_gens) {
                return Some(d);
            }
            for (r, x) in residual.iter_mut().zip(g) {
                *r += &c * x;
            }
            if c.is_zero() {
                break;
            }
            c -= 1;
            if k + 1 == self.rest.len() {
                break;
            }
        }
        coeffs[k] = Int::zero();
        None
    }
}

/// Strictly positive integer relation among generators of a group of vectors.
fn positive_relation(gens: &[Vec<Int>], dim: usize) -> Result<Vec<Int>> {
    let m = gens.len();
    if m == 0 {
        return Ok(Vec::new());
    }
    let ineqs: Vec<Vec<Int>> = (0..m).map(|i| (0..m).map(|j| Int::from((i == j) as i64)).collect()).collect();
    let eqs: Vec<Vec<Int>> = (0..dim).map(|j| gens.iter().map(|g| g[j].clone()).collect()).collect();
    let c = RationalCone::from_inequalities(&ineqs, &eqs, m)?;
    let mut p = vec![Int::zero(); m];
    for r in c.rays() {
        for (a, b) in p.iter_mut().zip(r) {
            *a += b;
        }
    }
    if p.iter().any(|x| !x.is_positive()) {
        return Err(Error::Internal("lineality generators admit no positive relation".into()));
    }
    Ok(p)
}

pub fn monoid_membership(v: &[Int], gens: &[Vec<Int>]) -> Result<Membership> {
    if let Some(g) = gens.iter().find(|g| g.len() != v.len()) {
        return Err(Error::DimensionMismatch { expected: v.len(), got: g.len() });
    }
    MonoidOracle::new(gens, v.len())?.decide(v)
}
