//! Exact linear algebra over Q and Z: echelon forms, kernels, lattice bases.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::num::{ext_gcd, primitive_of_rat, rat_from_int, rat_vec, Int, Rat};

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Vec<Rat>], ncols: usize) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank_rat(rows: &[Vec<Rat>], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

pub fn rank_int(rows: &[Vec<Int>], ncols: usize) -> usize {
    let r: Vec<Vec<Rat>> = rows.iter().map(|v| rat_vec(v)).collect();
    rank_rat(&r, ncols)
}

/// Basis of `{x : <row, x> = 0 for every row}`.
pub fn nullspace_rat(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let (m, pivots) = rref(rows, ncols);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rat::zero(); ncols];
        v[free] = Rat::one();
        for (row, &p) in m.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        out.push(v);
    }
    out
}

/// Primitive integer basis of the rational kernel of an integer matrix.
pub fn nullspace_int(rows: &[Vec<Int>], ncols: usize) -> Vec<Vec<Int>> {
    let r: Vec<Vec<Rat>> = rows.iter().map(|v| rat_vec(v)).collect();
    nullspace_rat(&r, ncols).iter().map(|v| primitive_of_rat(v)).collect()
}

/// Coefficients `c` with `sum c_i * vectors[i] = target`, if any. The vectors
/// need not be independent; the returned solution then sets free coefficients to 0.
pub fn solve_combination(vectors: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    let k = vectors.len();
    let d = target.len();
    let rows: Vec<Vec<Rat>> = (0..d)
        .map(|j| {
            let mut row: Vec<Rat> = vectors.iter().map(|v| v[j].clone()).collect();
            row.push(target[j].clone());
            row
        })
        .collect();
    let (m, pivots) = rref(&rows, k + 1);
    if pivots.contains(&k) {
        return None;
    }
    let mut c = vec![Rat::zero(); k];
    for (row, &p) in m.iter().zip(&pivots) {
        c[p] = row[k].clone();
    }
    Some(c)
}

pub fn solve_combination_int(vectors: &[Vec<Int>], target: &[Int]) -> Option<Vec<Rat>> {
    let v: Vec<Vec<Rat>> = vectors.iter().map(|x| rat_vec(x)).collect();
    solve_combination(&v, &rat_vec(target))
}

/// Inverse of a square rational matrix.
pub fn inverse(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let rows: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            row
        })
        .collect();
    let (red, pivots) = rref(&rows, 2 * n);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Canonical Hermite normal form (row style) of the integer span of `rows`:
/// upper echelon, positive pivots, entries above each pivot reduced into `[0, pivot)`.
pub fn row_hnf(rows: &[Vec<Int>], ncols: usize) -> Vec<Vec<Int>> {
    let mut m: Vec<Vec<Int>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        for k in r + 1..m.len() {
            if m[k][c].is_zero() {
                continue;
            }
            let a = m[r][c].clone();
            let b = m[k][c].clone();
            let (g, x, y) = ext_gcd(&a, &b);
            let (ag, bg) = (&a / &g, &b / &g);
            let new_r: Vec<Int> = (0..ncols).map(|j| &x * &m[r][j] + &y * &m[k][j]).collect();
            let new_k: Vec<Int> = (0..ncols).map(|j| -&bg * &m[r][j] + &ag * &m[k][j]).collect();
            m[r] = new_r;
            m[k] = new_k;
        }
        if m[r][c].is_zero() {
            continue;
        }
        if m[r][c].is_negative() {
            for x in m[r].iter_mut() {
                *x = -&*x;
            }
        }
        let p = m[r][c].clone();
        for i in 0..r {
            let q = m[i][c].div_floor(&p);
            if !q.is_zero() {
                for j in 0..ncols {
                    let t = &q * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m.retain(|row| row.iter().any(|x| !x.is_zero()));
    m
}

/// Integer coefficients of `v` in an HNF basis, or `None` if `v` is not in the lattice.
pub fn hnf_coordinates(hnf: &[Vec<Int>], v: &[Int]) -> Option<Vec<Int>> {
    let mut res = v.to_vec();
    let mut coeffs = Vec::with_capacity(hnf.len());
    for row in hnf {
        let p = row.iter().position(|x| !x.is_zero())?;
        let (q, rem) = res[p].div_rem(&row[p]);
        if !rem.is_zero() {
            return None;
        }
        for (x, y) in res.iter_mut().zip(row) {
            *x -= &q * y;
        }
        coeffs.push(q);
    }
    if res.iter().all(Zero::is_zero) {
        Some(coeffs)
    } else {
        None
    }
}

/// Reduces `v` modulo an HNF lattice: each pivot coordinate lands in `[0, pivot)`.
pub fn hnf_reduce(hnf: &[Vec<Int>], v: &[Int]) -> Vec<Int> {
    let mut res = v.to_vec();
    for row in hnf {
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        let q = res[p].div_floor(&row[p]);
        if !q.is_zero() {
            for (x, y) in res.iter_mut().zip(row) {
                *x -= &q * y;
            }
        }
    }
    res
}

/// Unimodular `U` (returned as its columns) with `A * U = [H | 0]`; the second
/// value is the number of nonzero columns. Columns `rank..n` span `ker A ∩ Z^n`.
pub fn unimodular_kernel(a: &[Vec<Int>], n: usize) -> (Vec<Vec<Int>>, usize) {
    // Work on columns of A so that column operations are row operations here.
    let mut cols: Vec<Vec<Int>> = (0..n).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect();
    let mut u: Vec<Vec<Int>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { Int::one() } else { Int::zero() }).collect())
        .collect();
    let m = a.len();
    let mut c = 0;
    for i in 0..m {
        if c == n {
            break;
        }
        for j in c + 1..n {
            if cols[j][i].is_zero() {
                continue;
            }
            let x0 = cols[c][i].clone();
            let y0 = cols[j][i].clone();
            let (g, x, y) = ext_gcd(&x0, &y0);
            let (ag, bg) = (&x0 / &g, &y0 / &g);
            let comb = |p: &Vec<Int>, q: &Vec<Int>, s: &Int, t: &Int| -> Vec<Int> {
                p.iter().zip(q).map(|(a, b)| s * a + t * b).collect()
            };
            let nc = comb(&cols[c], &cols[j], &x, &y);
            let nj = comb(&cols[c], &cols[j], &(-&bg), &ag);
            cols[c] = nc;
            cols[j] = nj;
            let uc = comb(&u[c], &u[j], &x, &y);
            let uj = comb(&u[c], &u[j], &(-&bg), &ag);
            u[c] = uc;
            u[j] = uj;
        }
        if !cols[c][i].is_zero() {
            c += 1;
        }
    }
    (u, c)
}

/// Lattice basis (HNF) of `ker A ∩ Z^n`.
pub fn int_kernel(a: &[Vec<Int>], n: usize) -> Vec<Vec<Int>> {
    let (u, rank) = unimodular_kernel(a, n);
    row_hnf(&u[rank..], n)
}

/// HNF basis of `Z^n ∩ span_Q(vectors)`.
pub fn saturate(vectors: &[Vec<Int>], n: usize) -> Vec<Vec<Int>> {
    if rank_int(vectors, n) == 0 {
        return Vec::new();
    }
    let perp = nullspace_int(vectors, n);
    if perp.is_empty() {
        let id: Vec<Vec<Int>> = (0..n)
            .map(|j| (0..n).map(|i| if i == j { Int::one() } else { Int::zero() }).collect())
            .collect();
        return id;
    }
    int_kernel(&perp, n)
}

/// Columns of a unimodular matrix whose first columns complete `sub` and whose last
/// `sub.len()` columns span the saturated sublattice `sub` of `Z^n`.
pub fn adapted_basis(sub: &[Vec<Int>], n: usize) -> Vec<Vec<Int>> {
    let perp = if sub.is_empty() {
        (0..n)
            .map(|j| (0..n).map(|i| if i == j { Int::one() } else { Int::zero() }).collect())
            .collect()
    } else {
        nullspace_int(sub, n)
    };
    if perp.is_empty() {
        // sub is all of Z^n
        return (0..n)
            .map(|j| (0..n).map(|i| if i == j { Int::one() } else { Int::zero() }).collect())
            .collect();
    }
    unimodular_kernel(&perp, n).0
}

/// Integer coefficients `x` with `sum x_i * gens[i] = target`, if any.
pub fn int_solve(gens: &[Vec<Int>], target: &[Int]) -> Option<Vec<Int>> {
    let k = gens.len();
    let d = target.len();
    let a: Vec<Vec<Int>> = (0..d).map(|i| gens.iter().map(|g| g[i].clone()).collect()).collect();
    let (u, rank) = unimodular_kernel(&a, k);
    // H = A * U, column echelon in its first `rank` columns.
    let h: Vec<Vec<Int>> = u[..rank]
        .iter()
        .map(|col| (0..d).map(|i| a[i].iter().zip(col).map(|(x, y)| x * y).sum()).collect())
        .collect();
    let mut res = target.to_vec();
    let mut y = Vec::with_capacity(rank);
    for col in &h {
        let p = col.iter().position(|x| !x.is_zero())?;
        if res[..p].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let (q, r) = res[p].div_rem(&col[p]);
        if !r.is_zero() {
            return None;
        }
        for (x, c) in res.iter_mut().zip(col) {
            *x -= &q * c;
        }
        y.push(q);
    }
    if res.iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut x = vec![Int::zero(); k];
    for (yc, col) in y.iter().zip(&u) {
        for (xi, ui) in x.iter_mut().zip(col) {
            *xi += yc * ui;
        }
    }
    Some(x)
}

/// Rational coordinates helper: `sum_i c_i * basis_i`.
pub fn combine(basis: &[Vec<Int>], coeffs: &[Int], n: usize) -> Vec<Int> {
    let mut out = vec![Int::zero(); n];
    for (b, c) in basis.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(b) {
            *o += c * x;
        }
    }
    out
}

pub fn combine_rat(basis: &[Vec<Int>], coeffs: &[Rat], n: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); n];
    for (b, c) in basis.iter().zip(coeffs) {
        for (o, x) in out.iter_mut().zip(b) {
            *o += c * rat_from_int(x);
        }
    }
    out
}

/// Absolute determinant of a square integer matrix.
pub fn abs_det(m: &[Vec<Int>]) -> Int {
    let h = row_hnf(m, m.len());
    if h.len() < m.len() {
        return Int::zero();
    }
    h.iter().enumerate().fold(Int::one(), |d, (i, r)| d * &r[i])
}
