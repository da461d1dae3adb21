//! Polyhedral cones by the double description method.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{inverse, rref};
use crate::num::{dot_int, dot_rat_int, primitive, primitive_of_rat, rat_vec, Int, Rat};

struct BitSet(Vec<u64>);

impl BitSet {
    fn new(n: usize) -> Self {
        Self(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Self) -> Self {
        Self(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn superset_of(&self, o: &Self) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| b & !a == 0)
    }
}

/// `s * u - t * v`, made primitive.
fn lin_comb(s: &Int, u: &[Int], t: &Int, v: &[Int]) -> Vec<Int> {
    let w: Vec<Int> = u.iter().zip(v).map(|(a, b)| s * a - t * b).collect();
    primitive(&w)
}

/// Extreme rays and a lineality basis of `{x in Q^n : a . x >= 0 for every a}`.
pub fn double_description(ineqs: &[Vec<Int>], n: usize) -> (Vec<Vec<Int>>, Vec<Vec<Int>>) {
    let mut lin: Vec<Vec<Int>> = (0..n)
        .map(|i| (0..n).map(|j| Int::from((i == j) as i64)).collect())
        .collect();
    let mut rays: Vec<Vec<Int>> = Vec::new();
    let ineqs: Vec<&Vec<Int>> = ineqs.iter().filter(|a| a.iter().any(|x| !x.is_zero())).collect();
    for (k, a) in ineqs.iter().enumerate() {
        if let Some(p) = lin.iter().position(|l| !dot_int(a, l).is_zero()) {
            let mut l0 = lin.swap_remove(p);
            let mut s = dot_int(a, &l0);
            if s.is_negative() {
                l0 = l0.iter().map(|x| -x).collect();
                s = -s;
            }
            for l in lin.iter_mut() {
                let t = dot_int(a, l);
                if !t.is_zero() {
                    *l = lin_comb(&s, l, &t, &l0);
                }
            }
            for r in rays.iter_mut() {
                let t = dot_int(a, r);
                if !t.is_zero() {
                    *r = lin_comb(&s, r, &t, &l0);
                }
            }
            rays.push(l0);
            continue;
        }
        let vals: Vec<Int> = rays.iter().map(|r| dot_int(a, r)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            continue;
        }
        // zero sets against the inequalities processed so far (including this one)
        let zsets: Vec<BitSet> = rays
            .iter()
            .map(|r| {
                let mut z = BitSet::new(k + 1);
                for (i, b) in ineqs[..=k].iter().enumerate() {
                    if dot_int(b, r).is_zero() {
                        z.set(i);
                    }
                }
                z
            })
            .collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let mut next: Vec<Vec<Int>> = (0..rays.len()).filter(|&i| !vals[i].is_negative()).map(|i| rays[i].clone()).collect();
        for &p in &pos {
            for &q in &neg {
                let common = zsets[p].and(&zsets[q]);
                let adjacent = (0..rays.len()).all(|r| r == p || r == q || !zsets[r].superset_of(&common));
                if adjacent {
                    // vals[p] > 0 > vals[q]
                    next.push(lin_comb(&vals[p], &rays[q], &vals[q], &rays[p]));
                }
            }
        }
        rays = next;
    }
    (rays, lin)
}

/// Canonical basis of a subspace: reduced echelon rows scaled to primitive integers.
pub fn canonical_subspace(vs: &[Vec<Int>], n: usize) -> Vec<Vec<Int>> {
    let r: Vec<Vec<Rat>> = vs.iter().map(|v| rat_vec(v)).collect();
    rref(&r, n).0.iter().map(|row| primitive_of_rat(row)).collect()
}

/// Orthogonal projection onto the complement of `span(sub)`.
fn project_away(v: &[Int], sub: &[Vec<Int>], gram_inv: &[Vec<Rat>]) -> Vec<Int> {
    if sub.is_empty() {
        return v.to_vec();
    }
    let b: Vec<Rat> = sub.iter().map(|s| dot_rat_int(&rat_vec(s), v)).collect();
    let mut out = rat_vec(v);
    for (i, s) in sub.iter().enumerate() {
        let c: Rat = (0..sub.len()).fold(Rat::zero(), |acc, j| acc + &gram_inv[i][j] * &b[j]);
        for (o, x) in out.iter_mut().zip(s) {
            *o -= &c * Rat::from_integer(x.clone());
        }
    }
    primitive_of_rat(&out)
}

fn canonical_rays(rays: &[Vec<Int>], lin: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let gram: Vec<Vec<Rat>> = lin
        .iter()
        .map(|a| lin.iter().map(|b| Rat::from_integer(dot_int(a, b))).collect())
        .collect();
    let gi = if lin.is_empty() { Vec::new() } else { inverse(&gram).expect("independent lineality basis") };
    let set: BTreeSet<Vec<Int>> = rays
        .iter()
        .map(|r| project_away(r, lin, &gi))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    set.into_iter().collect()
}

fn with_negatives(rays: &[Vec<Int>], lin: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let mut g = rays.to_vec();
    for l in lin {
        g.push(l.clone());
        g.push(l.iter().map(|x| -x).collect());
    }
    g
}

/// A closed polyhedral cone in `Q^n` in canonical form: primitive sorted rays
/// orthogonal to the lineality space, and the matching primitive facet normals
/// orthogonal to the space of equations. Two cones are equal iff their canonical
/// forms are.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalCone {
    dim: usize,
    rays: Vec<Vec<Int>>,
    lineality: Vec<Vec<Int>>,
    facets: Vec<Vec<Int>>,
    equations: Vec<Vec<Int>>,
}

impl RationalCone {
    fn assemble(dim: usize, rays: &[Vec<Int>], lin: &[Vec<Int>], facets: &[Vec<Int>], eqs: &[Vec<Int>]) -> Self {
        let lineality = canonical_subspace(lin, dim);
        let equations = canonical_subspace(eqs, dim);
        Self {
            dim,
            rays: canonical_rays(rays, &lineality),
            facets: canonical_rays(facets, &equations),
            lineality,
            equations,
        }
    }

    fn check(vs: &[Vec<Int>], dim: usize) -> Result<()> {
        match vs.iter().find(|v| v.len() != dim) {
            Some(v) => Err(Error::DimensionMismatch { expected: dim, got: v.len() }),
            None => Ok(()),
        }
    }

    /// `cone(gens)`, the set of nonnegative combinations.
    pub fn from_generators(gens: &[Vec<Int>], dim: usize) -> Result<Self> {
        Self::check(gens, dim)?;
        let (f, e) = double_description(gens, dim);
        let (r, l) = double_description(&with_negatives(&f, &e), dim);
        Ok(Self::assemble(dim, &r, &l, &f, &e))
    }

    pub fn from_rational_generators(gens: &[Vec<Rat>], dim: usize) -> Result<Self> {
        let g: Vec<Vec<Int>> = gens.iter().map(|v| primitive_of_rat(v)).collect();
        Self::from_generators(&g, dim)
    }

    /// `{x : a . x >= 0 for a in ineqs, e . x = 0 for e in eqs}`.
    pub fn from_inequalities(ineqs: &[Vec<Int>], eqs: &[Vec<Int>], dim: usize) -> Result<Self> {
        Self::check(ineqs, dim)?;
        Self::check(eqs, dim)?;
        let (r, l) = double_description(&with_negatives(ineqs, eqs), dim);
        let (f, e) = double_description(&with_negatives(&r, &l), dim);
        Ok(Self::assemble(dim, &r, &l, &f, &e))
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_generators(&[], dim).expect("no generators")
    }

    pub fn full(dim: usize) -> Self {
        Self::from_inequalities(&[], &[], dim).expect("no inequalities")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<Int>] {
        &self.lineality
    }

    /// Primitive inner normals of the facets, orthogonal to the equations.
    pub fn facet_normals(&self) -> &[Vec<Int>] {
        &self.facets
    }

    /// Basis of the linear forms vanishing on the cone.
    pub fn equations(&self) -> &[Vec<Int>] {
        &self.equations
    }

    /// Rays together with both signs of each lineality vector.
    pub fn generators(&self) -> Vec<Vec<Int>> {
        with_negatives(&self.rays, &self.lineality)
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn linear_dim(&self) -> usize {
        self.dim - self.equations.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        v.len() == self.dim
            && self.equations.iter().all(|e| dot_int(e, v).is_zero())
            && self.facets.iter().all(|f| !dot_int(f, v).is_negative())
    }

    pub fn contains_rat(&self, v: &[Rat]) -> bool {
        v.len() == self.dim
            && self.equations.iter().all(|e| dot_rat_int(v, e).is_zero())
            && self.facets.iter().all(|f| !dot_rat_int(v, f).is_negative())
    }

    /// Whether `v` lies in the relative interior.
    pub fn in_relative_interior(&self, v: &[Int]) -> bool {
        self.contains(v) && self.facets.iter().all(|f| dot_int(f, v).is_positive())
    }
}

/// `{phi : phi . v >= 0 for all v in c}`, recomputed from the generators.
pub fn dual_cone(c: &RationalCone) -> RationalCone {
    RationalCone::from_inequalities(&c.generators(), &[], c.dim()).expect("dimensions agree")
}

/// Minimal half-space description: facet normals, then each equation with both signs.
pub fn cone_facets(c: &RationalCone) -> Vec<Vec<Int>> {
    let mut out = c.facets.clone();
    for e in &c.equations {
        out.push(e.clone());
        out.push(e.iter().map(|x| -x).collect());
    }
    out
}
