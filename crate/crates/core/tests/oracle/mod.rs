//! Slow reference computations on small machine integers, sharing no code with the
//! library: cone membership by Caratheodory subsets with Cramer's rule, and
//! Hilbert bases and monoid membership by enumeration in a box.
#![allow(dead_code)]

use std::collections::BTreeSet;

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &v)| v).collect()).collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Whether `x` is a nonnegative combination of the columns `s` (which must be
/// linearly independent for a `true` to be produced).
fn nonneg_combination(s: &[&Vec<i64>], x: &[i64]) -> bool {
    let d = x.len();
    let r = s.len();
    for rows in subsets(d, r) {
        let a: Vec<Vec<i128>> = rows.iter().map(|&i| s.iter().map(|g| g[i] as i128).collect()).collect();
        let dt = det(&a);
        if dt == 0 {
            continue;
        }
        // Cramer: c_j = det(A_j) / det(A)
        let mut c = Vec::with_capacity(r);
        for j in 0..r {
            let mut aj = a.clone();
            for (t, &i) in rows.iter().enumerate() {
                aj[t][j] = x[i] as i128;
            }
            c.push(det(&aj));
        }
        // c / dt must be >= 0 and reproduce every coordinate
        if c.iter().any(|&v| v * dt.signum() < 0) {
            return false;
        }
        return (0..d).all(|i| s.iter().zip(&c).map(|(g, &cj)| g[i] as i128 * cj).sum::<i128>() == x[i] as i128 * dt);
    }
    false
}

pub fn in_cone(gens: &[Vec<i64>], x: &[i64]) -> bool {
    if x.iter().all(|&v| v == 0) {
        return true;
    }
    let nz: Vec<&Vec<i64>> = gens.iter().filter(|g| g.iter().any(|&v| v != 0)).collect();
    (1..=x.len().min(nz.len())).any(|k| subsets(nz.len(), k).iter().any(|s| nonneg_combination(&s.iter().map(|&i| nz[i]).collect::<Vec<_>>(), x)))
}

/// All integer points of `[lo, hi]^d`.
pub fn box_points(d: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out.into_iter().flat_map(|p| (lo..=hi).map(move |v| { let mut q = p.clone(); q.push(v); q })).collect();
    }
    out
}

/// Hilbert basis of `cone(gens) ∩ Z^d` for generators with nonnegative entries.
pub fn brute_hilbert(gens: &[Vec<i64>], d: usize) -> BTreeSet<Vec<i64>> {
    let hi: Vec<i64> = (0..d).map(|i| gens.iter().map(|g| g[i]).sum()).collect();
    let mut pts: Vec<Vec<i64>> = vec![vec![]];
    for &h in &hi {
        pts = pts.into_iter().flat_map(|p| (0..=h).map(move |v| { let mut q = p.clone(); q.push(v); q })).collect();
    }
    let inside: Vec<Vec<i64>> = pts.into_iter().filter(|p| p.iter().any(|&v| v != 0) && in_cone(gens, p)).collect();
    let set: BTreeSet<Vec<i64>> = inside.iter().cloned().collect();
    inside
        .iter()
        .filter(|x| {
            !inside.iter().any(|y| {
                y != *x && y.iter().zip(x.iter()).all(|(a, b)| a <= b) && set.contains(&x.iter().zip(y).map(|(a, b)| a - b).collect::<Vec<_>>())
            })
        })
        .cloned()
        .collect()
}

/// Membership of `x` in `N gens` for generators with nonnegative entries, none zero.
pub fn brute_member(gens: &[Vec<i64>], x: &[i64]) -> bool {
    if x.iter().any(|&v| v < 0) {
        return false;
    }
    if x.iter().all(|&v| v == 0) {
        return true;
    }
    gens.iter().any(|g| {
        let y: Vec<i64> = x.iter().zip(g).map(|(a, b)| a - b).collect();
        g.iter().any(|&v| v != 0) && brute_member(gens, &y)
    })
}
