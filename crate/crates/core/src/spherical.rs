//! Invariants of a spherical variety computable from its weight monoid and
//! spherical roots: valuation cone, root types, hidden divisors and roots.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{inverse, rank_int};
use crate::monoid::WeightMonoid;
use crate::num::{content, dot_rat_int, rat, rat_from_int, Int, Rat};
use crate::polyhedral::{Lattice, RationalCone};
use crate::rootsys::{DynkinType, GroupSpec, ParabolicSet, RootData, WeightVec};

/// A rational linear form on `X`, given by its values on the canonical basis of `X`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Functional(pub Vec<Rat>);

impl Functional {
    pub fn zero(rank: usize) -> Self {
        Self(vec![Rat::zero(); rank])
    }

    /// Restriction of the simple coroot `alpha^vee` to `X`.
    pub fn coroot(x: &Lattice, alpha: usize) -> Self {
        Self(x.basis().iter().map(|b| rat_from_int(&b[alpha])).collect())
    }

    /// Restriction of an ambient covector to `X`.
    pub fn from_ambient(x: &Lattice, c: &[Rat]) -> Self {
        Self(x.basis().iter().map(|b| dot_rat_int(c, b)).collect())
    }

    /// Value on an element of `X (x) Q`.
    pub fn eval(&self, x: &Lattice, v: &[Int]) -> Result<Rat> {
        let v: Vec<Rat> = v.iter().map(rat_from_int).collect();
        self.eval_rat(x, &v)
    }

    pub fn eval_rat(&self, x: &Lattice, v: &[Rat]) -> Result<Rat> {
        let c = x.rational_coords(v)?;
        Ok(c.iter().zip(&self.0).fold(Rat::zero(), |s, (a, b)| s + a * b))
    }

    /// The ambient covector of least norm restricting to this form.
    pub fn ambient_extension(&self, x: &Lattice) -> Vec<Rat> {
        let b = x.basis();
        let d = x.ambient_dim();
        if b.is_empty() {
            return vec![Rat::zero(); d];
        }
        let gram: Vec<Vec<Rat>> = b
            .iter()
            .map(|u| b.iter().map(|v| rat_from_int(&u.iter().zip(v).map(|(p, q)| p * q).sum::<Int>())).collect())
            .collect();
        let gi = inverse(&gram).expect("basis vectors are independent");
        let y: Vec<Rat> = (0..b.len()).map(|i| (0..b.len()).fold(Rat::zero(), |s, j| s + &gi[i][j] * &self.0[j])).collect();
        (0..d).map(|k| b.iter().zip(&y).fold(Rat::zero(), |s, (bi, yi)| s + yi * rat_from_int(&bi[k]))).collect()
    }

    pub fn scaled(&self, s: &Rat) -> Self {
        Self(self.0.iter().map(|x| x * s).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

/// A `B`-stable prime divisor described combinatorially: its valuation restricted
/// to `X` and the simple roots `Sigma` of its stabilizer `P_Sigma`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Divisor {
    pub phi: Functional,
    pub stabilizer: ParabolicSet,
}

impl Divisor {
    /// `D` is moved by the minimal parabolic of `alpha`.
    pub fn moved_by(&self, alpha: usize) -> bool {
        !self.stabilizer.contains(alpha)
    }
}

/// Spherical roots, as integer weights lying in `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphericalRootSet {
    roots: Vec<Vec<Int>>,
}

impl SphericalRootSet {
    /// Checks primitivity in `X`, membership in the root span, pairwise
    /// non-positivity of the invariant form and linear independence.
    pub fn new(m: &WeightMonoid, roots: Vec<Vec<Int>>) -> Result<Self> {
        let rd = m.root_data();
        let x = m.lattice();
        for (i, g) in roots.iter().enumerate() {
            rd.check_len(g.len())?;
            let Some(c) = x.coords(g) else {
                return Err(Error::InvalidSphericalRoots(format!("root {} is not in the lattice", i + 1)));
            };
            if !content(&c).is_one() {
                return Err(Error::InvalidSphericalRoots(format!("root {} is not primitive in the lattice", i + 1)));
            }
            if !rd.in_root_span(&WeightVec::from_ints(g)) {
                return Err(Error::InvalidSphericalRoots(format!("root {} has a central component", i + 1)));
            }
        }
        for i in 0..roots.len() {
            for j in 0..i {
                if roots[i] == roots[j] {
                    return Err(Error::InvalidSphericalRoots(format!("roots {} and {} coincide", j + 1, i + 1)));
                }
                let p = rd.symmetric_form(&WeightVec::from_ints(&roots[i]), &WeightVec::from_ints(&roots[j]))?;
                if p.is_positive() {
                    return Err(Error::InvalidSphericalRoots(format!("roots {} and {} form an acute angle", j + 1, i + 1)));
                }
            }
        }
        if rank_int(&roots, rd.dim()) < roots.len() {
            return Err(Error::InvalidSphericalRoots("roots are linearly dependent".into()));
        }
        Ok(Self { roots })
    }

    pub fn roots(&self) -> &[Vec<Int>] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.roots.iter().any(|r| r.as_slice() == v)
    }
}

/// `cone(Psi)` in coordinates on the basis of `X`.
pub fn tail_cone(m: &WeightMonoid, psi: &SphericalRootSet) -> Result<RationalCone> {
    let x = m.lattice();
    let coords: Vec<Vec<Int>> = psi
        .roots()
        .iter()
        .map(|g| x.coords(g).ok_or(Error::NotInLatticeSpan))
        .collect::<Result<_>>()?;
    RationalCone::from_generators(&coords, x.rank())
}

/// `V = -dual(cone(Psi))`, as functionals given by their values on the basis of `X`.
pub fn valuation_cone(m: &WeightMonoid, psi: &SphericalRootSet) -> Result<RationalCone> {
    let t = tail_cone(m, psi)?;
    let neg: Vec<Vec<Int>> = t.generators().iter().map(|g| g.iter().map(|x| -x).collect()).collect();
    RationalCone::from_inequalities(&neg, &[], t.dim())
}

/// Primitive elements of `X` that vanish on a wall of `v` and are non-positive on `v`,
/// sorted. Elements are returned as ambient weights.
pub fn spherical_roots_of_cone(v: &RationalCone, x: &Lattice) -> Result<Vec<Vec<Int>>> {
    if v.dim() != x.rank() {
        return Err(Error::DimensionMismatch { expected: x.rank(), got: v.dim() });
    }
    if !v.is_full_dimensional() {
        return Err(Error::InvalidSphericalRoots("valuation cone is not full-dimensional".into()));
    }
    let mut out: Vec<Vec<Int>> = v
        .facet_normals()
        .iter()
        .map(|n| {
            let c: Vec<Int> = n.iter().map(|t| -t).collect();
            x.from_coords(&c)
        })
        .collect();
    out.sort();
    Ok(out)
}

/// `Pi^a`: active simple roots orthogonal to the sum of the minimal generators.
pub fn compute_pi_a(m: &WeightMonoid) -> Result<ParabolicSet> {
    let mu = mu_hat(m);
    let loc = m.localize(&mu)?;
    if loc.invertible_part() != m.lattice() {
        return Err(Error::Internal("localizing at the sum of minimal generators does not give the whole lattice".into()));
    }
    Ok(ParabolicSet::new(m.levi().iter().filter(|&a| mu[a].is_zero())))
}

/// Sum of the minimal generators.
pub fn mu_hat(m: &WeightMonoid) -> Vec<Int> {
    let mut mu = vec![Int::zero(); m.dim()];
    for g in m.minimal_generators() {
        for (a, b) in mu.iter_mut().zip(g) {
            *a += b;
        }
    }
    mu
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RootType {
    A,
    B,
    C,
    D,
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Self::A => 'a',
            Self::B => 'b',
            Self::C => 'c',
            Self::D => 'd',
        };
        write!(f, "{}", c)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RootTypeTable {
    pub types: BTreeMap<usize, RootType>,
    /// Partner of each type-d root that has one (recorded in both directions).
    pub partners: BTreeMap<usize, usize>,
}

impl RootTypeTable {
    pub fn of_type(&self, t: RootType) -> ParabolicSet {
        ParabolicSet::new(self.types.iter().filter(|(_, &v)| v == t).map(|(&k, _)| k))
    }
}

fn simple_root_int(rd: &RootData, a: usize) -> Vec<Int> {
    rd.simple_roots[a].to_ints().expect("simple roots are integral")
}

pub fn classify_root_types(m: &WeightMonoid, psi: &SphericalRootSet) -> Result<RootTypeTable> {
    let rd = m.root_data();
    let pi_a = compute_pi_a(m)?;
    let mut t = RootTypeTable::default();
    for a in m.levi().iter() {
        let alpha = simple_root_int(rd, a);
        let twice: Vec<Int> = alpha.iter().map(|x| x * Int::from(2)).collect();
        let in_psi = psi.contains(&alpha);
        let twice_in = psi.contains(&twice);
        if in_psi && twice_in {
            return Err(Error::InvalidSphericalRoots(format!("both {0} and 2{0} are spherical roots", rd.root_label(a))));
        }
        let ty = if pi_a.contains(a) {
            if in_psi || twice_in {
                return Err(Error::InvalidDatum(format!("{} is of type a but lies in the spherical roots", rd.root_label(a))));
            }
            RootType::A
        } else if in_psi {
            RootType::B
        } else if twice_in {
            RootType::C
        } else {
            RootType::D
        };
        t.types.insert(a, ty);
    }
    let x = m.lattice();
    let d_roots = t.of_type(RootType::D);
    for a in d_roots.iter() {
        let mut found = Vec::new();
        for b in d_roots.iter() {
            if a == b || !rd.cartan[a][b].is_zero() {
                continue;
            }
            if x.basis().iter().any(|v| v[a] != v[b]) {
                continue;
            }
            let sum: Vec<Int> = simple_root_int(rd, a).iter().zip(simple_root_int(rd, b)).map(|(p, q)| p + q).collect();
            let half_ok = sum.iter().all(|v| (v % Int::from(2)).is_zero());
            let half: Vec<Int> = sum.iter().map(|v| v / Int::from(2)).collect();
            if psi.contains(&sum) || (half_ok && psi.contains(&half)) {
                found.push(b);
            }
        }
        match found.len() {
            0 => {}
            1 => {
                t.partners.insert(a, found[0]);
            }
            _ => {
                return Err(Error::InvalidDatum(format!("{} has several partner roots", rd.root_label(a))));
            }
        }
    }
    Ok(t)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LemmaForm {
    /// A simple root.
    Simple(usize),
    /// Twice a simple root.
    Double(usize),
    /// `k (alpha_i + alpha_j)` for orthogonal simple roots, `k` in `{1, 1/2}`.
    Pair(usize, usize, Rat),
    None,
}

impl fmt::Display for LemmaForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Simple(_) => write!(f, "simple"),
            Self::Double(_) => write!(f, "double"),
            Self::Pair(_, _, k) => write!(f, "pair({})", crate::num::format_rat(k)),
            Self::None => write!(f, "none"),
        }
    }
}

pub fn lemma_form(rd: &RootData, gamma: &[Int]) -> LemmaForm {
    let Ok(c) = rd.root_coefficients(&WeightVec::from_ints(gamma)) else {
        return LemmaForm::None;
    };
    let nz: Vec<usize> = (0..c.len()).filter(|&i| !c[i].is_zero()).collect();
    match nz.as_slice() {
        [i] if c[*i] == rat(1, 1) => LemmaForm::Simple(*i),
        [i] if c[*i] == rat(2, 1) => LemmaForm::Double(*i),
        [i, j] if c[*i] == c[*j] && (c[*i] == rat(1, 1) || c[*i] == rat(1, 2)) && rd.simple_roots_orthogonal(*i, *j) => {
            LemmaForm::Pair(*i, *j, c[*i].clone())
        }
        _ => LemmaForm::None,
    }
}

pub fn lemma_forms(psi: &SphericalRootSet, rd: &RootData) -> Vec<LemmaForm> {
    psi.roots().iter().map(|g| lemma_form(rd, g)).collect()
}

/// Divisors containing the zero locus of every non-invertible `B`-eigenfunction:
/// positive on all minimal generators and zero on the invertible lattice.
pub fn hidden_divisors(m: &WeightMonoid, divisors: &[Divisor]) -> Result<BTreeSet<usize>> {
    let x = m.lattice();
    let mut out = BTreeSet::new();
    'outer: for (i, d) in divisors.iter().enumerate() {
        for b in m.invertible_part().basis() {
            if !d.phi.eval(x, b)?.is_zero() {
                continue 'outer;
            }
        }
        for g in m.minimal_generators() {
            if !d.phi.eval(x, g)?.is_positive() {
                continue 'outer;
            }
        }
        out.insert(i);
    }
    Ok(out)
}

/// Indices of hidden spherical roots: every divisor is moved by some root of the
/// support, and the root has none of the special forms.
pub fn hidden_spherical_roots(m: &WeightMonoid, psi: &SphericalRootSet, divisors: &[Divisor]) -> Result<BTreeSet<usize>> {
    let rd = m.root_data();
    let mut out = BTreeSet::new();
    for (i, g) in psi.roots().iter().enumerate() {
        if lemma_form(rd, g) != LemmaForm::None {
            continue;
        }
        let supp = rd.support(&WeightVec::from_ints(g))?;
        if divisors.iter().all(|d| supp.iter().any(|&a| d.moved_by(a))) {
            out.insert(i);
        }
    }
    Ok(out)
}

/// Diagnostic: when `Pi^a` together with the supports of the spherical roots covers
/// all simple roots, the supports alone should already do so.
pub fn support_coverage_warning(m: &WeightMonoid, psi: &SphericalRootSet, pi_a: &ParabolicSet) -> Result<Option<String>> {
    let rd = m.root_data();
    let mut supp = BTreeSet::new();
    for g in psi.roots() {
        supp.extend(rd.support(&WeightVec::from_ints(g))?);
    }
    let all: BTreeSet<usize> = m.levi().roots.clone();
    let with_a: BTreeSet<usize> = supp.union(&pi_a.roots).copied().collect();
    if with_a == all && supp != all {
        return Ok(Some(String::from("supports of the spherical roots do not cover the simple roots outside type a")));
    }
    Ok(None)
}

/// One of the exceptional configurations of spherical roots admitting a hidden root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalTriple {
    pub item: u8,
    /// Multiplier of the first root in item 1.
    pub k: Option<u8>,
    pub spec: GroupSpec,
    /// Spherical roots as simple-root coefficient vectors.
    pub psi: Vec<Vec<Rat>>,
    pub pi_a: ParabolicSet,
}

fn coeffs(v: &[i64], den: i64) -> Vec<Rat> {
    v.iter().map(|&x| rat(x, den)).collect()
}

/// `alpha_1 + 2(alpha_2 + ... + alpha_{n-1}) + alpha_n` in `C_n`, then `offset` zeros.
fn c_long(n: usize, offset: usize, lead: usize) -> Vec<i64> {
    let mut v = vec![0i64; n + offset];
    for i in 0..n {
        v[lead + i] = if i == 0 || i + 1 == n { 1 } else { 2 };
    }
    v
}

/// The stored triples, with `C_n` instantiated at rank `n >= 2`.
pub fn exceptional_triples(n: usize) -> Vec<ExceptionalTriple> {
    let mut out = Vec::new();
    let upper = ParabolicSet::new(2..n);
    for k in [1u8, 2] {
        let mut first = vec![0i64; n];
        first[0] = k as i64;
        out.push(ExceptionalTriple {
            item: 1,
            k: Some(k),
            spec: GroupSpec::new(&[(DynkinType::C, n)], 0),
            psi: vec![coeffs(&first, 1), coeffs(&c_long(n, 0, 0), 1)],
            pi_a: upper.clone(),
        });
    }
    out.push(ExceptionalTriple {
        item: 2,
        k: None,
        spec: GroupSpec::new(&[(DynkinType::G, 2)], 0),
        psi: vec![coeffs(&[0, 1], 1), coeffs(&[1, 1], 1)],
        pi_a: ParabolicSet::borel(),
    });
    let mut first = vec![0i64; n + 1];
    first[0] = 1;
    first[n] = 1;
    out.push(ExceptionalTriple {
        item: 3,
        k: None,
        spec: GroupSpec::new(&[(DynkinType::C, n), (DynkinType::A, 1)], 0),
        psi: vec![coeffs(&first, 1), coeffs(&c_long(n, 1, 0), 1)],
        pi_a: upper,
    });
    out.push(ExceptionalTriple {
        item: 4,
        k: None,
        spec: GroupSpec::new(&[(DynkinType::B, 4)], 0),
        psi: vec![coeffs(&[0, 1, 2, 3], 1), coeffs(&[1, 1, 1, 1], 1)],
        pi_a: ParabolicSet::new([1, 2]),
    });
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TripleMatch {
    pub item: u8,
    pub k: Option<u8>,
}

/// Which stored triple, if any, the data instantiates. Central tori are ignored and
/// the two factors of item 3 may come in either order.
pub fn match_exceptional_triple(rd: &RootData, psi: &[Vec<Int>], pi_a: &ParabolicSet) -> Option<TripleMatch> {
    let kinds: Vec<(DynkinType, usize)> = rd.spec.factors.iter().map(|f| (f.kind, f.rank)).collect();
    let given: BTreeSet<Vec<Rat>> = psi
        .iter()
        .map(|g| rd.root_coefficients(&WeightVec::from_ints(g)))
        .collect::<Result<_>>()
        .ok()?;
    // reorder simple roots of item 3 when the A1 factor comes first
    let (n, perm): (usize, Vec<usize>) = match kinds.as_slice() {
        [(DynkinType::C, n)] => (*n, (0..*n).collect()),
        [(DynkinType::C, n), (DynkinType::A, 1)] => (*n, (0..=*n).collect()),
        [(DynkinType::A, 1), (DynkinType::C, n)] => (*n, (1..=*n).chain(core::iter::once(0)).collect()),
        [(DynkinType::G, 2)] => (2, vec![0, 1]),
        [(DynkinType::B, 4)] => (2, vec![0, 1, 2, 3]),
        _ => return None,
    };
    for t in exceptional_triples(n.max(2)) {
        let t_kinds: Vec<(DynkinType, usize)> = t.spec.factors.iter().map(|f| (f.kind, f.rank)).collect();
        let mut sorted_kinds = kinds.clone();
        sorted_kinds.sort();
        let mut sorted_t = t_kinds.clone();
        sorted_t.sort();
        if sorted_kinds != sorted_t || psi.len() != t.psi.len() {
            continue;
        }
        // perm[i] = position in the caller's numbering of the stored root i
        let mapped: BTreeSet<Vec<Rat>> = t
            .psi
            .iter()
            .map(|c| {
                let mut v = vec![Rat::zero(); c.len()];
                for (i, x) in c.iter().enumerate() {
                    v[perm[i]] = x.clone();
                }
                v
            })
            .collect();
        let mapped_a = ParabolicSet::new(t.pi_a.iter().map(|i| perm[i]));
        if mapped == given && &mapped_a == pi_a {
            return Some(TripleMatch { item: t.item, k: t.k });
        }
    }
    None
}

/// Integer weight with the given simple-root coefficients.
pub fn weight_of_coefficients(rd: &RootData, c: &[Rat]) -> Option<Vec<Int>> {
    rd.from_root_coefficients(c).to_ints()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::int_vec;

    fn rd(f: &[(DynkinType, usize)], c: usize) -> RootData {
        RootData::new(GroupSpec::new(f, c)).unwrap()
    }

    fn ivs(rows: &[&[i64]]) -> Vec<Vec<Int>> {
        rows.iter().map(|r| int_vec(r)).collect()
    }

    #[test]
    fn valuation_cone_of_sl2_mod_t() {
        let r = rd(&[(DynkinType::A, 1)], 0);
        let m = WeightMonoid::new(&r, &ivs(&[&[2]])).unwrap();
        let psi = SphericalRootSet::new(&m, ivs(&[&[2]])).unwrap();
        let v = valuation_cone(&m, &psi).unwrap();
        assert_eq!(v.rays(), &ivs(&[&[-1]])[..]);
        assert_eq!(spherical_roots_of_cone(&v, m.lattice()).unwrap(), ivs(&[&[2]]));
        let empty = SphericalRootSet::new(&m, Vec::new()).unwrap();
        let v = valuation_cone(&m, &empty).unwrap();
        assert_eq!(v, RationalCone::full(1));
        assert!(spherical_roots_of_cone(&v, m.lattice()).unwrap().is_empty());
    }

    #[test]
    fn g2_round_trip_and_types() {
        let r = rd(&[(DynkinType::G, 2)], 0);
        let m = WeightMonoid::new(&r, &ivs(&[&[1, 0], &[0, 1]])).unwrap();
        let a2 = r.root_combination(&[0, 1]).to_ints().unwrap();
        let a12 = r.root_combination(&[1, 1]).to_ints().unwrap();
        let psi = SphericalRootSet::new(&m, vec![a2.clone(), a12.clone()]).unwrap();
        let v = valuation_cone(&m, &psi).unwrap();
        assert_eq!(v.facet_normals().len(), 2);
        let mut expect = vec![a2, a12];
        expect.sort();
        assert_eq!(spherical_roots_of_cone(&v, m.lattice()).unwrap(), expect);
        let t = classify_root_types(&m, &psi).unwrap();
        assert_eq!(t.types[&1], RootType::B);
        assert_eq!(t.types[&0], RootType::D);
        assert_eq!(lemma_forms(&psi, &r)[0], LemmaForm::Simple(1));
        assert_eq!(lemma_forms(&psi, &r)[1], LemmaForm::None);
    }

    #[test]
    fn pi_a_examples() {
        let r = rd(&[(DynkinType::A, 1)], 0);
        let m = WeightMonoid::new(&r, &ivs(&[&[2]])).unwrap();
        assert!(compute_pi_a(&m).unwrap().is_empty());
        let r2 = rd(&[(DynkinType::A, 1), (DynkinType::A, 1)], 0);
        let m = WeightMonoid::new(&r2, &ivs(&[&[2, 0]])).unwrap();
        assert_eq!(compute_pi_a(&m).unwrap(), ParabolicSet::new([1]));
        for n in 2..5 {
            let c = rd(&[(DynkinType::C, n)], 0);
            let mut w1 = vec![0i64; n];
            w1[0] = 2;
            let mut w2 = vec![0i64; n];
            w2[1] = 1;
            let m = WeightMonoid::new(&c, &ivs(&[&w1, &w2])).unwrap();
            assert_eq!(compute_pi_a(&m).unwrap(), ParabolicSet::new(2..n));
        }
    }

    #[test]
    fn types_for_sl2_data() {
        let r = rd(&[(DynkinType::A, 1)], 0);
        let m = WeightMonoid::new(&r, &ivs(&[&[2]])).unwrap();
        let b = classify_root_types(&m, &SphericalRootSet::new(&m, ivs(&[&[2]])).unwrap()).unwrap();
        assert_eq!(b.types[&0], RootType::B);
        let d = classify_root_types(&m, &SphericalRootSet::new(&m, Vec::new()).unwrap()).unwrap();
        assert_eq!(d.types[&0], RootType::D);
        assert!(d.partners.is_empty());
        let m4 = WeightMonoid::new(&r, &ivs(&[&[4]])).unwrap();
        let c = classify_root_types(&m4, &SphericalRootSet::new(&m4, ivs(&[&[4]])).unwrap()).unwrap();
        assert_eq!(c.types[&0], RootType::C);
    }

    #[test]
    fn partners_of_the_quadric() {
        let r = rd(&[(DynkinType::A, 1), (DynkinType::A, 1)], 0);
        let m = WeightMonoid::new(&r, &ivs(&[&[1, 1]])).unwrap();
        let psi = SphericalRootSet::new(&m, ivs(&[&[1, 1]])).unwrap();
        let t = classify_root_types(&m, &psi).unwrap();
        assert_eq!(t.partners.get(&0), Some(&1));
        assert_eq!(t.partners.get(&1), Some(&0));
        assert_eq!(lemma_form(&r, &int_vec(&[1, 1])), LemmaForm::Pair(0, 1, rat(1, 2)));
        assert_eq!(lemma_form(&r, &int_vec(&[4, 0])), LemmaForm::Double(0));
    }

    #[test]
    fn invalid_root_sets() {
        let r = rd(&[(DynkinType::A, 2)], 0);
        let m = WeightMonoid::new(&r, &ivs(&[&[1, 0], &[0, 1]])).unwrap();
        // alpha_1 and alpha_1 + alpha_2 make an acute angle
        let a1 = r.root_combination(&[1, 0]).to_ints().unwrap();
        let a12 = r.root_combination(&[1, 1]).to_ints().unwrap();
        assert!(SphericalRootSet::new(&m, vec![a1.clone(), a12]).is_err());
        let twice: Vec<Int> = a1.iter().map(|x| x * Int::from(2)).collect();
        assert!(SphericalRootSet::new(&m, vec![twice]).is_err());
        let rc = rd(&[(DynkinType::A, 1)], 1);
        let mc = WeightMonoid::new(&rc, &ivs(&[&[1, 0], &[0, 1]])).unwrap();
        assert!(SphericalRootSet::new(&mc, ivs(&[&[0, 1]])).is_err());
    }

    #[test]
    fn triple_matching() {
        let g2 = rd(&[(DynkinType::G, 2)], 0);
        let psi = vec![g2.root_combination(&[0, 1]).to_ints().unwrap(), g2.root_combination(&[1, 1]).to_ints().unwrap()];
        assert_eq!(match_exceptional_triple(&g2, &psi, &ParabolicSet::borel()), Some(TripleMatch { item: 2, k: None }));
        let b4 = rd(&[(DynkinType::B, 4)], 0);
        let psi = vec![b4.root_combination(&[0, 1, 2, 3]).to_ints().unwrap(), b4.root_combination(&[1, 1, 1, 1]).to_ints().unwrap()];
        assert_eq!(match_exceptional_triple(&b4, &psi, &ParabolicSet::new([1, 2])), Some(TripleMatch { item: 4, k: None }));
        assert_eq!(match_exceptional_triple(&b4, &psi, &ParabolicSet::new([1])), None);
        let a2 = rd(&[(DynkinType::A, 2)], 0);
        assert_eq!(match_exceptional_triple(&a2, &[], &ParabolicSet::borel()), None);
        let a1c3 = rd(&[(DynkinType::A, 1), (DynkinType::C, 3)], 1);
        let psi = vec![
            a1c3.root_combination(&[1, 1, 0, 0]).to_ints().unwrap(),
            a1c3.root_combination(&[0, 1, 2, 1]).to_ints().unwrap(),
        ];
        assert_eq!(match_exceptional_triple(&a1c3, &psi, &ParabolicSet::new([3])), Some(TripleMatch { item: 3, k: None }));
    }
}
