//! Weight monoids: finitely generated monoids of dominant weights.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{hnf_reduce, rank_int};
use crate::num::{dot_int, Int};
use crate::polyhedral::{hilbert_basis_with_lineality, lattice_span, Lattice, Membership, MonoidOracle, RationalCone};
use crate::rootsys::{ParabolicSet, RootData, WeightVec};

/// Largest lattice rank for which saturation is decided.
pub const MAX_SATURATION_RANK: usize = 6;

#[derive(Debug, Clone)]
pub struct WeightMonoid {
    root_data: RootData,
    generators: Vec<Vec<Int>>,
    /// Simple roots for which the generators are required to be dominant.
    levi: ParabolicSet,
    raw: bool,
    lattice: Lattice,
    oracle: MonoidOracle,
    invertible: Lattice,
    minimal: Vec<Vec<Int>>,
}

impl WeightMonoid {
    /// Monoid of dominant weights generated by `gens`.
    pub fn new(root_data: &RootData, gens: &[Vec<Int>]) -> Result<Self> {
        Self::build(root_data, gens, root_data.all_roots(), false)
    }

    /// Monoid whose generators need only be dominant for the roots in `levi`.
    pub fn with_levi(root_data: &RootData, gens: &[Vec<Int>], levi: ParabolicSet) -> Result<Self> {
        Self::build(root_data, gens, levi, false)
    }

    /// Monoid with no dominance requirement, for purely polyhedral use.
    pub fn raw(root_data: &RootData, gens: &[Vec<Int>]) -> Result<Self> {
        Self::build(root_data, gens, ParabolicSet::borel(), true)
    }

    pub fn from_weights(root_data: &RootData, gens: &[WeightVec]) -> Result<Self> {
        let ints = gens
            .iter()
            .map(|w| w.to_ints().ok_or_else(|| Error::InvalidMonoid("generator has non-integral coordinates".into())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(root_data, &ints)
    }

    fn build(root_data: &RootData, gens: &[Vec<Int>], levi: ParabolicSet, raw: bool) -> Result<Self> {
        let d = root_data.dim();
        for g in gens {
            root_data.check_len(g.len())?;
        }
        if let Some(&r) = levi.roots.iter().find(|&&r| r >= root_data.rank()) {
            return Err(Error::InvalidMonoid(alloc::format!("simple root index {} out of range", r)));
        }
        for (index, g) in gens.iter().enumerate() {
            if let Some(root) = levi.iter().find(|&r| g[r].is_negative()) {
                return Err(Error::NotDominant { index, root });
            }
        }
        let lattice = lattice_span(gens, d)?;
        let oracle = MonoidOracle::new(gens, d)?;
        let lin_gens: Vec<Vec<Int>> = oracle.lineality_generators().iter().map(|&i| gens[i].clone()).collect();
        // M ∩ -M is the group generated by the generators lying in the lineality space.
        let invertible = lattice_span(&lin_gens, d)?;
        let mut m = Self {
            root_data: root_data.clone(),
            generators: gens.to_vec(),
            levi,
            raw,
            lattice,
            oracle,
            invertible,
            minimal: Vec::new(),
        };
        m.minimal = m.compute_minimal()?;
        Ok(m)
    }

    fn compute_minimal(&self) -> Result<Vec<Vec<Int>>> {
        let grading = self.oracle.grading();
        let noninv: Vec<&Vec<Int>> = self.generators.iter().filter(|g| dot_int(grading, g).is_positive()).collect();
        let mut out = BTreeSet::new();
        for g in &noninv {
            let mut reducible = false;
            for h in &noninv {
                let diff: Vec<Int> = g.iter().zip(h.iter()).map(|(a, b)| a - b).collect();
                if dot_int(grading, &diff).is_positive() && self.oracle.decide(&diff)?.is_member() {
                    reducible = true;
                    break;
                }
            }
            if !reducible {
                out.insert(self.canonical_mod_invertibles(g));
            }
        }
        Ok(out.into_iter().collect())
    }

    pub fn root_data(&self) -> &RootData {
        &self.root_data
    }

    pub fn generators(&self) -> &[Vec<Int>] {
        &self.generators
    }

    pub fn levi(&self) -> &ParabolicSet {
        &self.levi
    }

    pub fn is_raw(&self) -> bool {
        self.raw
    }

    pub fn dim(&self) -> usize {
        self.root_data.dim()
    }

    /// The lattice `X` spanned by the monoid.
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn cone(&self) -> &RationalCone {
        self.oracle.cone()
    }

    /// `M ∩ -M`.
    pub fn invertible_part(&self) -> &Lattice {
        &self.invertible
    }

    /// Irreducible non-invertible elements modulo invertibles, one canonical
    /// representative each, sorted.
    pub fn minimal_generators(&self) -> &[Vec<Int>] {
        &self.minimal
    }

    pub fn canonical_mod_invertibles(&self, v: &[Int]) -> Vec<Int> {
        hnf_reduce(self.invertible.basis(), v)
    }

    pub fn membership(&self, v: &[Int]) -> Result<Membership> {
        self.oracle.decide(v)
    }

    pub fn contains(&self, v: &[Int]) -> Result<bool> {
        Ok(self.oracle.decide(v)?.is_member())
    }

    /// Linear form that is positive exactly on the non-invertible part of the cone's generators.
    pub fn grading(&self) -> &[Int] {
        self.oracle.grading()
    }

    /// `M + Z mu`, the weight monoid of the localization at `mu`.
    pub fn localize(&self, mu: &[Int]) -> Result<Self> {
        if !self.contains(mu)? {
            return Err(Error::NotInMonoid);
        }
        let mut gens = self.generators.clone();
        let neg: Vec<Int> = mu.iter().map(|x| -x).collect();
        if !gens.contains(&neg) && mu.iter().any(|x| !x.is_zero()) {
            gens.push(neg);
        }
        let levi = if self.raw {
            ParabolicSet::borel()
        } else {
            ParabolicSet::new(self.levi.iter().filter(|&r| mu[r].is_zero()))
        };
        Self::build(&self.root_data, &gens, levi, self.raw)
    }

    /// Same set of weights (mutual membership of generators).
    pub fn same_set(&self, other: &Self) -> Result<bool> {
        if self.dim() != other.dim() {
            return Ok(false);
        }
        for g in &other.generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        for g in &self.generators {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether `M = cone(M) ∩ X` for the lattice `X` spanned by `M`.
    pub fn is_saturated(&self) -> Result<bool> {
        self.is_saturated_in(&self.lattice)
    }

    /// Whether `M = cone(M) ∩ L` for a lattice `L` containing `M`.
    pub fn is_saturated_in(&self, l: &Lattice) -> Result<bool> {
        if !self.lattice.is_sublattice_of(l) {
            return Ok(false);
        }
        if l.rank() > MAX_SATURATION_RANK {
            return Err(Error::TooLarge { what: "lattice rank", size: l.rank(), max: MAX_SATURATION_RANK });
        }
        let hb = hilbert_basis_with_lineality(self.cone(), l)?;
        for v in &hb.elements {
            if !self.contains(v)? {
                return Ok(false);
            }
        }
        for l in &hb.lineality {
            let neg: Vec<Int> = l.iter().map(|x| -x).collect();
            if !self.contains(l)? || !self.contains(&neg)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Coordinates belonging to a group of simple factors plus central directions.
    pub fn block(&self, factors: &BTreeSet<usize>, central: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for &f in factors {
            out.extend(self.root_data.factor_range(f));
        }
        let r = self.root_data.rank();
        out.extend(central.iter().map(|c| r + c));
        out
    }

    /// Whether `M = M_1 + M_2` with `M_i` supported in the two coordinate blocks of
    /// the split. Equivalently, both coordinate projections map `M` into itself.
    pub fn is_decomposable(&self, factors: &BTreeSet<usize>, central: &BTreeSet<usize>) -> Result<bool> {
        let nf = self.root_data.spec.factors.len();
        let nc = self.root_data.spec.central_rank;
        if factors.iter().any(|&f| f >= nf) || central.iter().any(|&c| c >= nc) {
            return Err(Error::InvalidMonoid("split refers to a missing factor or central direction".into()));
        }
        let first = self.block(factors, central);
        if first.is_empty() || first.len() == self.dim() {
            return Err(Error::InvalidMonoid("split is not a bipartition".into()));
        }
        for g in &self.generators {
            let p1: Vec<Int> = (0..self.dim()).map(|i| if first.contains(&i) { g[i].clone() } else { Int::zero() }).collect();
            let p2: Vec<Int> = g.iter().zip(&p1).map(|(a, b)| a - b).collect();
            if !self.contains(&p1)? || !self.contains(&p2)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Simple factors and central directions on which every generator vanishes.
    pub fn trivial_factors(&self) -> TrivialParts {
        let rd = &self.root_data;
        let factors = (0..rd.spec.factors.len())
            .filter(|&f| self.generators.iter().all(|g| rd.factor_range(f).all(|i| g[i].is_zero())))
            .collect();
        let central = (0..rd.spec.central_rank)
            .filter(|&c| self.generators.iter().all(|g| g[rd.rank() + c].is_zero()))
            .collect();
        TrivialParts { factors, central }
    }

    /// Rank of `M ∩ -M`.
    pub fn invertible_rank(&self) -> usize {
        self.invertible.rank()
    }

    /// Rank of the lattice spanned by the minimal generators and the invertibles.
    pub fn generated_rank(&self) -> usize {
        let mut v = self.minimal.clone();
        v.extend(self.invertible.basis().iter().cloned());
        rank_int(&v, self.dim())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TrivialParts {
    pub factors: BTreeSet<usize>,
    pub central: BTreeSet<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::int_vec;
    use crate::rootsys::{DynkinType, GroupSpec};

    fn iv(rows: &[&[i64]]) -> Vec<Vec<Int>> {
        rows.iter().map(|r| int_vec(r)).collect()
    }

    fn torus(n: usize) -> RootData {
        RootData::new(GroupSpec::torus(n)).unwrap()
    }

    fn a1() -> RootData {
        RootData::new(GroupSpec::new(&[(DynkinType::A, 1)], 0)).unwrap()
    }

    #[test]
    fn invertible_parts() {
        let t = torus(2);
        assert_eq!(WeightMonoid::raw(&t, &iv(&[&[1, 0], &[0, 1]])).unwrap().invertible_rank(), 0);
        let m = WeightMonoid::raw(&t, &iv(&[&[1, 0], &[-1, 0], &[0, 1]])).unwrap();
        assert_eq!(m.invertible_part().basis(), &iv(&[&[1, 0]])[..]);
        let m = WeightMonoid::raw(&t, &iv(&[&[2, 3], &[-2, -3], &[1, 1]])).unwrap();
        assert_eq!(m.invertible_part().basis(), &iv(&[&[2, 3]])[..]);
    }

    #[test]
    fn minimal_generators() {
        let m = WeightMonoid::new(&a1(), &iv(&[&[2]])).unwrap();
        assert_eq!(m.minimal_generators(), &iv(&[&[2]])[..]);
        let m = WeightMonoid::raw(&torus(1), &iv(&[&[2], &[3], &[5]])).unwrap();
        assert_eq!(m.minimal_generators(), &iv(&[&[2], &[3]])[..]);
        let m = WeightMonoid::raw(&torus(2), &iv(&[&[1, 0], &[-1, 0], &[1, 1]])).unwrap();
        assert_eq!(m.minimal_generators(), &iv(&[&[0, 1]])[..]);
    }

    #[test]
    fn dominance_enforced() {
        let e = WeightMonoid::new(&a1(), &iv(&[&[2], &[-2]])).unwrap_err();
        assert_eq!(e, Error::NotDominant { index: 1, root: 0 });
        assert!(WeightMonoid::raw(&a1(), &iv(&[&[2], &[-2]])).is_ok());
    }

    #[test]
    fn localization() {
        let m = WeightMonoid::new(&a1(), &iv(&[&[2]])).unwrap();
        let l = m.localize(&int_vec(&[2])).unwrap();
        assert_eq!(l.invertible_rank(), 1);
        assert!(l.levi().is_empty());
        assert!(l.minimal_generators().is_empty());
        assert_eq!(m.localize(&int_vec(&[1])).unwrap_err(), Error::NotInMonoid);

        let q = WeightMonoid::raw(&torus(2), &iv(&[&[1, 0], &[0, 1]])).unwrap();
        let l1 = q.localize(&int_vec(&[1, 0])).unwrap();
        assert_eq!(l1.invertible_part().basis(), &iv(&[&[1, 0]])[..]);
        assert!(l1.localize(&int_vec(&[1, 0])).unwrap().same_set(&l1).unwrap());
        let twice = l1.localize(&int_vec(&[0, 1])).unwrap();
        let once = q.localize(&int_vec(&[1, 1])).unwrap();
        assert!(twice.same_set(&once).unwrap());
    }

    #[test]
    fn saturation() {
        let t2 = torus(2);
        assert!(WeightMonoid::raw(&t2, &iv(&[&[1, 0], &[0, 1]])).unwrap().is_saturated().unwrap());
        assert!(!WeightMonoid::raw(&torus(1), &iv(&[&[2], &[3]])).unwrap().is_saturated().unwrap());
        // (1,1) is missing from Z^2, but it is not in the lattice spanned by the generators
        let m = WeightMonoid::raw(&t2, &iv(&[&[1, 0], &[1, 2]])).unwrap();
        assert!(!m.is_saturated_in(&Lattice::full(2)).unwrap());
        assert!(m.is_saturated().unwrap());
        let m = WeightMonoid::raw(&t2, &iv(&[&[1, 0], &[1, 1], &[1, 3]])).unwrap();
        assert!(!m.is_saturated().unwrap());
        // Z(2,0) + N(1,1): saturated in its own lattice
        assert!(WeightMonoid::raw(&t2, &iv(&[&[2, 0], &[-2, 0], &[1, 1]])).unwrap().is_saturated().unwrap());
        let big = torus(7);
        let id: Vec<Vec<Int>> = (0..7).map(|i| (0..7).map(|j| Int::from((i == j) as i64)).collect()).collect();
        assert!(matches!(WeightMonoid::raw(&big, &id).unwrap().is_saturated(), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn decomposability_and_trivial_factors() {
        let rd = RootData::new(GroupSpec::new(&[(DynkinType::A, 1), (DynkinType::A, 1)], 1)).unwrap();
        let f0: BTreeSet<usize> = [0].into_iter().collect();
        let none = BTreeSet::new();
        let m = WeightMonoid::new(&rd, &iv(&[&[2, 0, 0], &[0, 2, 0]])).unwrap();
        assert!(m.is_decomposable(&f0, &none).unwrap());
        let m = WeightMonoid::new(&rd, &iv(&[&[2, 2, 0]])).unwrap();
        assert!(!m.is_decomposable(&f0, &none).unwrap());
        let m = WeightMonoid::new(&rd, &iv(&[&[2, 0, 0]])).unwrap();
        let t = m.trivial_factors();
        assert_eq!(t.factors, [1].into_iter().collect());
        assert_eq!(t.central, [0].into_iter().collect());
        let m = WeightMonoid::new(&rd, &iv(&[&[1, 1, 1]])).unwrap();
        assert!(m.trivial_factors().factors.is_empty());
        assert!(m.trivial_factors().central.is_empty());

        let c2a1 = RootData::new(GroupSpec::new(&[(DynkinType::C, 2), (DynkinType::A, 1)], 0)).unwrap();
        let m = WeightMonoid::new(&c2a1, &iv(&[&[1, 0, 1], &[0, 1, 0]])).unwrap();
        assert!(!m.is_decomposable(&f0, &none).unwrap());
    }
}
