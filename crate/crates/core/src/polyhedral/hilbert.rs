//! Hilbert bases of `C ∩ L`.
//!
//! The cone is written in lattice coordinates, its lineality is split off along
//! an adapted basis, and the remaining pointed cone is triangulated by pulling a
//! ray. Every irreducible element is then a ray or a lattice point of the half-open
//! fundamental parallelepiped of some simplex; the candidates are filtered down to
//! the irreducible ones.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::cone::RationalCone;
use super::lattice::Lattice;
use crate::error::{Error, Result};
use crate::linalg::{abs_det, adapted_basis, combine, hnf_reduce, inverse, rank_int, row_hnf, saturate, solve_combination_int};
use crate::num::{dot_int, rat_floor, rat_from_int, Int, Rat};

/// Bound on the total number of parallelepiped points examined.
pub const MAX_PARALLELEPIPED_POINTS: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertBasis {
    /// Irreducible elements, reduced modulo the lineality lattice and sorted.
    pub elements: Vec<Vec<Int>>,
    /// Basis of `L ∩ lin(C)`.
    pub lineality: Vec<Vec<Int>>,
}

/// Hilbert basis of the pointed monoid `C ∩ L`.
pub fn hilbert_basis(c: &RationalCone, l: &Lattice) -> Result<Vec<Vec<Int>>> {
    let hb = hilbert_basis_with_lineality(c, l)?;
    if !hb.lineality.is_empty() {
        return Err(Error::NotPointed);
    }
    Ok(hb.elements)
}

fn int_coords(basis: &[Vec<Int>], v: &[Int]) -> Result<Vec<Int>> {
    let c = solve_combination_int(basis, v).ok_or(Error::NotInLatticeSpan)?;
    c.iter()
        .map(|x| if x.is_integer() { Ok(x.to_integer()) } else { Err(Error::Internal("non-integral coordinates".into())) })
        .collect()
}

/// Hilbert basis of `C ∩ L` modulo the lineality lattice, together with that lattice.
pub fn hilbert_basis_with_lineality(c: &RationalCone, l: &Lattice) -> Result<HilbertBasis> {
    let d = c.dim();
    if l.ambient_dim() != d {
        return Err(Error::DimensionMismatch { expected: d, got: l.ambient_dim() });
    }
    let b = l.basis();
    let m = b.len();
    // C in lattice coordinates.
    let ineqs: Vec<Vec<Int>> = c.facet_normals().iter().map(|f| b.iter().map(|r| dot_int(r, f)).collect()).collect();
    let eqs: Vec<Vec<Int>> = c.equations().iter().map(|e| b.iter().map(|r| dot_int(r, e)).collect()).collect();
    let cl = RationalCone::from_inequalities(&ineqs, &eqs, m)?;

    let span = saturate(&cl.generators(), m);
    let s = span.len();
    let lin_in_span: Vec<Vec<Int>> = saturate(cl.lineality(), m)
        .iter()
        .map(|v| int_coords(&span, v))
        .collect::<Result<_>>()?;
    let k = lin_in_span.len();
    let q = s - k;
    let u = adapted_basis(&lin_in_span, s);
    let u_rat: Vec<Vec<Rat>> = (0..s).map(|i| (0..s).map(|j| rat_from_int(&u[j][i])).collect()).collect();
    let u_inv = if s == 0 { Vec::new() } else { inverse(&u_rat).ok_or_else(|| Error::Internal("adapted basis not invertible".into()))? };
    let to_quotient = |v: &[Int]| -> Result<Vec<Int>> {
        let sc = int_coords(&span, v)?;
        Ok((0..q)
            .map(|i| (0..s).fold(Rat::zero(), |acc, j| acc + &u_inv[i][j] * rat_from_int(&sc[j])).to_integer())
            .collect())
    };
    let to_ambient = |y: &[Int], first: usize| -> Vec<Int> {
        let mut sc = vec![Int::zero(); s];
        for (i, yi) in y.iter().enumerate() {
            for (x, uij) in sc.iter_mut().zip(&u[first + i]) {
                *x += yi * uij;
            }
        }
        let lat = combine(&span, &sc, m);
        combine(b, &lat, d)
    };

    let lineality: Vec<Vec<Int>> = row_hnf(&(0..k).map(|i| {
        let mut e = vec![Int::zero(); k];
        e[i] = Int::from(1);
        to_ambient(&e, q)
    }).collect::<Vec<_>>(), d);

    let pointed_rays: Vec<Vec<Int>> = cl.rays().iter().map(|r| to_quotient(r)).collect::<Result<_>>()?;
    let pointed = RationalCone::from_generators(&pointed_rays, q)?;
    let elements_q = pointed_hilbert_basis(&pointed)?;
    let mut out: BTreeSet<Vec<Int>> = BTreeSet::new();
    for e in &elements_q {
        let v = to_ambient(e, 0);
        out.insert(hnf_reduce(&lineality, &v));
    }
    Ok(HilbertBasis { elements: out.into_iter().collect(), lineality })
}

/// Simplices (as index sets into `rays`) of a pulling triangulation of `cone(rays)`.
/// The rays must be the extreme rays of a pointed cone.
pub fn pulling_triangulation(rays: &[Vec<Int>]) -> Vec<Vec<usize>> {
    if rays.is_empty() {
        return vec![Vec::new()];
    }
    let n = rays[0].len();
    let k = rank_int(rays, n);
    if rays.len() == k {
        return vec![(0..rays.len()).collect()];
    }
    let c = RationalCone::from_generators(rays, n).expect("uniform dimension");
    let mut out = Vec::new();
    for f in c.facet_normals() {
        if dot_int(f, &rays[0]).is_zero() {
            continue;
        }
        let face: Vec<usize> = (0..rays.len()).filter(|&i| dot_int(f, &rays[i]).is_zero()).collect();
        let face_rays: Vec<Vec<Int>> = face.iter().map(|&i| rays[i].clone()).collect();
        for simplex in pulling_triangulation(&face_rays) {
            let mut s: Vec<usize> = vec![0];
            s.extend(simplex.iter().map(|&j| face[j]));
            out.push(s);
        }
    }
    out
}

/// Lattice points of the half-open parallelepiped `{sum t_i s_i : 0 <= t_i < 1}` of a
/// full-rank simplex.
fn parallelepiped_points(simplex: &[Vec<Int>], budget: &mut usize) -> Result<Vec<Vec<Int>>> {
    let q = simplex.len();
    let det = abs_det(simplex);
    let count: usize = det.clone().try_into().unwrap_or(usize::MAX);
    if count > *budget {
        return Err(Error::TooLarge { what: "parallelepiped point count", size: count, max: MAX_PARALLELEPIPED_POINTS });
    }
    *budget -= count;
    let h = row_hnf(simplex, q);
    let diag: Vec<usize> = (0..q).map(|i| h[i][i].clone().try_into().expect("bounded by det")).collect();
    let srat: Vec<Vec<Rat>> = simplex.iter().map(|r| r.iter().map(rat_from_int).collect()).collect();
    // row vector x = lambda * S, so lambda = x * S^{-1}
    let sinv = inverse(&srat).ok_or_else(|| Error::Internal("degenerate simplex".into()))?;
    let mut out = Vec::with_capacity(count);
    let mut idx = vec![0usize; q];
    loop {
        let x: Vec<Int> = idx.iter().map(|&i| Int::from(i)).collect();
        let mut y = x.clone();
        for i in 0..q {
            let lam = (0..q).fold(Rat::zero(), |a, j| a + rat_from_int(&x[j]) * &sinv[j][i]);
            let fl = rat_floor(&lam);
            if !fl.is_zero() {
                for (yj, sj) in y.iter_mut().zip(&simplex[i]) {
                    *yj -= &fl * sj;
                }
            }
        }
        out.push(y);
        let mut pos = 0;
        loop {
            if pos == q {
                return Ok(out);
            }
            idx[pos] += 1;
            if idx[pos] < diag[pos] {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Hilbert basis of `C ∩ Z^q` for a pointed cone `C`.
pub fn pointed_hilbert_basis(c: &RationalCone) -> Result<Vec<Vec<Int>>> {
    if !c.is_pointed() {
        return Err(Error::NotPointed);
    }
    let rays = c.rays().to_vec();
    if rays.is_empty() {
        return Ok(Vec::new());
    }
    let n = c.dim();
    let k = c.linear_dim();
    // Express everything inside the saturated span so that simplices are full rank.
    let span = saturate(&rays, n);
    let local: Vec<Vec<Int>> = rays.iter().map(|r| int_coords(&span, r)).collect::<Result<_>>()?;
    debug_assert_eq!(span.len(), k);
    let local_cone = RationalCone::from_generators(&local, k)?;
    let mut candidates: BTreeSet<Vec<Int>> = local.iter().cloned().collect();
    let mut budget = MAX_PARALLELEPIPED_POINTS;
    for simplex in pulling_triangulation(&local) {
        let srays: Vec<Vec<Int>> = simplex.iter().map(|&i| local[i].clone()).collect();
        for p in parallelepiped_points(&srays, &mut budget)? {
            if p.iter().any(|x| !x.is_zero()) {
                candidates.insert(p);
            }
        }
    }
    let cand: Vec<Vec<Int>> = candidates.into_iter().collect();
    let mut basis = Vec::new();
    for x in &cand {
        let reducible = cand.iter().any(|g| {
            if g == x {
                return false;
            }
            let diff: Vec<Int> = x.iter().zip(g).map(|(a, b)| a - b).collect();
            local_cone.contains(&diff)
        });
        if !reducible {
            basis.push(combine(&span, x, n));
        }
    }
    basis.sort();
    Ok(basis)
}
