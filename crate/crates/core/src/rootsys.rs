//! Root data of a reductive group: a product of simple Dynkin types and a central torus.
//!
//! Weights are written in the fundamental-weight basis of each simple factor,
//! followed by standard coordinates of the central torus. Covectors use the dual
//! basis (simple coroots, then the dual central basis), so the coroot pairing
//! `<alpha_i^vee, w>` is simply the `i`-th coordinate of `w`.
//!
//! Simple roots are numbered as in Bourbaki's tables, with one exception: for
//! `G2` the first simple root is the long one and the second the short one.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{inverse, solve_combination};
use crate::num::{dot_rat, rat, rat_from_int, Int, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DynkinType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl DynkinType {
    pub fn from_char(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => Self::A,
            'B' => Self::B,
            'C' => Self::C,
            'D' => Self::D,
            'E' => Self::E,
            'F' => Self::F,
            'G' => Self::G,
            _ => return None,
        })
    }

    pub fn as_char(self) -> char {
        match self {
            Self::A => 'A',
            Self::B => 'B',
            Self::C => 'C',
            Self::D => 'D',
            Self::E => 'E',
            Self::F => 'F',
            Self::G => 'G',
        }
    }

    pub fn admits_rank(self, rank: usize) -> bool {
        match self {
            Self::A => rank >= 1,
            Self::B | Self::C => rank >= 2,
            Self::D => rank >= 3,
            Self::E => (6..=8).contains(&rank),
            Self::F => rank == 4,
            Self::G => rank == 2,
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimpleFactor {
    pub kind: DynkinType,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    pub factors: Vec<SimpleFactor>,
    pub central_rank: usize,
}

impl GroupSpec {
    pub fn new(factors: &[(DynkinType, usize)], central_rank: usize) -> Self {
        Self {
            factors: factors.iter().map(|&(kind, rank)| SimpleFactor { kind, rank }).collect(),
            central_rank,
        }
    }

    pub fn torus(rank: usize) -> Self {
        Self::new(&[], rank)
    }

    pub fn validate(&self) -> Result<()> {
        for (i, f) in self.factors.iter().enumerate() {
            if !f.kind.admits_rank(f.rank) {
                return Err(Error::InvalidFactor { factor: i, kind: f.kind.as_char(), rank: f.rank });
            }
        }
        Ok(())
    }

    pub fn semisimple_rank(&self) -> usize {
        self.factors.iter().map(|f| f.rank).sum()
    }

    pub fn dim(&self) -> usize {
        self.semisimple_rank() + self.central_rank
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.factors.iter().map(|x| format!("{}{}", x.kind, x.rank)).collect();
        if self.central_rank > 0 {
            parts.push(format!("T{}", self.central_rank));
        }
        if parts.is_empty() {
            parts.push(String::from("1"));
        }
        write!(f, "{}", parts.join(" x "))
    }
}

/// A weight in fundamental-weight coordinates (plus central coordinates).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightVec(pub Vec<Rat>);

/// A covector in simple-coroot coordinates (plus dual central coordinates).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CovectorVec(pub Vec<Rat>);

impl WeightVec {
    pub fn from_ints(v: &[Int]) -> Self {
        Self(v.iter().map(rat_from_int).collect())
    }

    pub fn from_i64(v: &[i64]) -> Self {
        Self(v.iter().map(|&x| rat(x, 1)).collect())
    }

    pub fn to_ints(&self) -> Option<Vec<Int>> {
        self.0.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl CovectorVec {
    pub fn from_i64(v: &[i64]) -> Self {
        Self(v.iter().map(|&x| rat(x, 1)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scaled(&self, s: &Rat) -> Self {
        Self(self.0.iter().map(|x| x * s).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

/// A set of simple-root indices `Sigma`, naming the standard parabolic `P_Sigma`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParabolicSet {
    pub roots: BTreeSet<usize>,
}

impl ParabolicSet {
    pub fn new(roots: impl IntoIterator<Item = usize>) -> Self {
        Self { roots: roots.into_iter().collect() }
    }

    pub fn borel() -> Self {
        Self::default()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.roots.contains(&i)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.roots.is_subset(&other.roots)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self { roots: self.roots.intersection(&other.roots).copied().collect() }
    }

    pub fn difference(&self, other: &Self) -> Self {
        Self { roots: self.roots.difference(&other.roots).copied().collect() }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.roots.iter().copied()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootData {
    pub spec: GroupSpec,
    /// `cartan[i][j] = <alpha_i^vee, alpha_j>`.
    pub cartan: Vec<Vec<Int>>,
    pub simple_roots: Vec<WeightVec>,
    pub simple_coroots: Vec<CovectorVec>,
    pub fundamental_weights: Vec<WeightVec>,
    /// Invariant form on weight coordinates.
    pub sym_form: Vec<Vec<Rat>>,
    /// Factor index of each simple root.
    pub factor_of: Vec<usize>,
    cartan_inverse: Vec<Vec<Rat>>,
}

/// Squared lengths and off-diagonal inner products of the simple roots of one factor.
fn factor_gram(kind: DynkinType, n: usize) -> Vec<Vec<Rat>> {
    let mut g = vec![vec![Rat::zero(); n]; n];
    let bond = |g: &mut Vec<Vec<Rat>>, i: usize, j: usize, v: Rat| {
        g[i][j] = v.clone();
        g[j][i] = v;
    };
    let two = rat(2, 1);
    match kind {
        DynkinType::A => {
            for i in 0..n {
                g[i][i] = two.clone();
            }
            for i in 1..n {
                bond(&mut g, i - 1, i, rat(-1, 1));
            }
        }
        DynkinType::B => {
            for i in 0..n {
                g[i][i] = if i + 1 == n { rat(1, 1) } else { two.clone() };
            }
            for i in 1..n {
                bond(&mut g, i - 1, i, rat(-1, 1));
            }
        }
        DynkinType::C => {
            for i in 0..n {
                g[i][i] = if i + 1 == n { two.clone() } else { rat(1, 1) };
            }
            for i in 1..n {
                let v = if i + 1 == n { rat(-1, 1) } else { rat(-1, 2) };
                bond(&mut g, i - 1, i, v);
            }
        }
        DynkinType::D => {
            for i in 0..n {
                g[i][i] = two.clone();
            }
            for i in 1..n - 1 {
                bond(&mut g, i - 1, i, rat(-1, 1));
            }
            bond(&mut g, n - 3, n - 1, rat(-1, 1));
        }
        DynkinType::E => {
            for i in 0..n {
                g[i][i] = two.clone();
            }
            // Bourbaki: 1-3-4-5-6-..., with 2 attached to 4.
            bond(&mut g, 0, 2, rat(-1, 1));
            bond(&mut g, 1, 3, rat(-1, 1));
            for i in 3..n {
                bond(&mut g, i - 1, i, rat(-1, 1));
            }
        }
        DynkinType::F => {
            g[0][0] = two.clone();
            g[1][1] = two.clone();
            g[2][2] = rat(1, 1);
            g[3][3] = rat(1, 1);
            bond(&mut g, 0, 1, rat(-1, 1));
            bond(&mut g, 1, 2, rat(-1, 1));
            bond(&mut g, 2, 3, rat(-1, 2));
        }
        DynkinType::G => {
            g[0][0] = two;
            g[1][1] = rat(2, 3);
            bond(&mut g, 0, 1, rat(-1, 1));
        }
    }
    g
}

impl RootData {
    pub fn new(spec: GroupSpec) -> Result<Self> {
        spec.validate()?;
        let r = spec.semisimple_rank();
        let n = spec.dim();
        let mut gram = vec![vec![Rat::zero(); r]; r];
        let mut factor_of = Vec::with_capacity(r);
        let mut off = 0;
        for (fi, f) in spec.factors.iter().enumerate() {
            let g = factor_gram(f.kind, f.rank);
            for i in 0..f.rank {
                for j in 0..f.rank {
                    gram[off + i][off + j] = g[i][j].clone();
                }
                factor_of.push(fi);
            }
            off += f.rank;
        }
        let cartan_rat: Vec<Vec<Rat>> = (0..r)
            .map(|i| (0..r).map(|j| rat(2, 1) * &gram[i][j] / &gram[i][i]).collect())
            .collect();
        let cartan: Vec<Vec<Int>> = cartan_rat
            .iter()
            .map(|row| row.iter().map(|x| x.to_integer()).collect())
            .collect();
        let cartan_inverse = if r == 0 { Vec::new() } else { inverse(&cartan_rat).expect("Cartan matrices are invertible") };

        let simple_roots: Vec<WeightVec> = (0..r)
            .map(|j| {
                let mut w = vec![Rat::zero(); n];
                for i in 0..r {
                    w[i] = cartan_rat[i][j].clone();
                }
                WeightVec(w)
            })
            .collect();
        let unit = |i: usize| {
            let mut v = vec![Rat::zero(); n];
            v[i] = Rat::one();
            v
        };
        let simple_coroots = (0..r).map(|i| CovectorVec(unit(i))).collect();
        let fundamental_weights = (0..r).map(|i| WeightVec(unit(i))).collect();

        // (w, w') = n^T S n' with n = A^{-1} w the root coordinates.
        let mut sym_form = vec![vec![Rat::zero(); n]; n];
        for a in 0..r {
            for b in 0..r {
                let mut s = Rat::zero();
                for i in 0..r {
                    if cartan_inverse[i][a].is_zero() {
                        continue;
                    }
                    for j in 0..r {
                        s += &cartan_inverse[i][a] * &gram[i][j] * &cartan_inverse[j][b];
                    }
                }
                sym_form[a][b] = s;
            }
        }
        for c in r..n {
            sym_form[c][c] = Rat::one();
        }
        Ok(Self { spec, cartan, simple_roots, simple_coroots, fundamental_weights, sym_form, factor_of, cartan_inverse })
    }

    pub fn rank(&self) -> usize {
        self.spec.semisimple_rank()
    }

    pub fn dim(&self) -> usize {
        self.spec.dim()
    }

    pub fn all_roots(&self) -> ParabolicSet {
        ParabolicSet::new(0..self.rank())
    }

    /// Coordinate range of factor `f` in weight coordinates.
    pub fn factor_range(&self, f: usize) -> core::ops::Range<usize> {
        let start: usize = self.spec.factors[..f].iter().map(|x| x.rank).sum();
        start..start + self.spec.factors[f].rank
    }

    pub fn check_len(&self, len: usize) -> Result<()> {
        if len == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.dim(), got: len })
        }
    }

    /// Expansion of `w` in simple roots; fails when `w` has a central component.
    pub fn root_coefficients(&self, w: &WeightVec) -> Result<Vec<Rat>> {
        self.check_len(w.len())?;
        let r = self.rank();
        if w.0[r..].iter().any(|x| !x.is_zero()) {
            return Err(Error::NotInRootSpan);
        }
        Ok((0..r).map(|i| (0..r).fold(Rat::zero(), |s, j| s + &self.cartan_inverse[i][j] * &w.0[j])).collect())
    }

    /// Weight with the given simple-root coefficients.
    pub fn from_root_coefficients(&self, coeffs: &[Rat]) -> WeightVec {
        let mut w = vec![Rat::zero(); self.dim()];
        for (j, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, x) in w.iter_mut().enumerate().take(self.rank()) {
                *x += c * rat_from_int(&self.cartan[i][j]);
            }
        }
        WeightVec(w)
    }

    pub fn root_combination(&self, coeffs: &[i64]) -> WeightVec {
        let c: Vec<Rat> = coeffs.iter().map(|&x| rat(x, 1)).collect();
        self.from_root_coefficients(&c)
    }

    pub fn support(&self, w: &WeightVec) -> Result<BTreeSet<usize>> {
        let c = self.root_coefficients(w)?;
        Ok(c.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect())
    }

    pub fn levi_root_subset(&self, p: &ParabolicSet) -> BTreeSet<usize> {
        p.roots.clone()
    }

    pub fn symmetric_form(&self, a: &WeightVec, b: &WeightVec) -> Result<Rat> {
        self.check_len(a.len())?;
        self.check_len(b.len())?;
        let n = self.dim();
        let mut s = Rat::zero();
        for i in 0..n {
            if a.0[i].is_zero() {
                continue;
            }
            s += &a.0[i] * dot_rat(&self.sym_form[i], &b.0);
        }
        Ok(s)
    }

    /// Orthogonality of two simple roots.
    pub fn simple_roots_orthogonal(&self, i: usize, j: usize) -> bool {
        self.cartan[i][j].is_zero()
    }

    pub fn root_label(&self, i: usize) -> String {
        format!("a{}", i + 1)
    }

    /// Weight expressed in simple roots, when it lies in their rational span.
    pub fn in_root_span(&self, w: &WeightVec) -> bool {
        self.root_coefficients(w).is_ok()
    }

    /// Whether `w` is a rational combination of `others` (used for `Span_Q` tests).
    pub fn in_span(w: &WeightVec, others: &[WeightVec]) -> bool {
        let o: Vec<Vec<Rat>> = others.iter().map(|x| x.0.clone()).collect();
        solve_combination(&o, &w.0).is_some()
    }
}

pub fn pairing(c: &CovectorVec, w: &WeightVec) -> Result<Rat> {
    if c.len() != w.len() {
        return Err(Error::DimensionMismatch { expected: c.len(), got: w.len() });
    }
    Ok(dot_rat(&c.0, &w.0))
}
