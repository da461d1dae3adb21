//! Recovery of the `B`-divisors of a spherical variety, with their valuations
//! and stabilizers, from the weight monoid and the spherical roots.
//!
//! Divisors moved by roots of type c or d are read off directly from the root
//! types. The remaining ones (the `G`-stable divisors and those moved by roots of
//! type b) are found by a recursion over subsets `I` of the minimal generators:
//! the node `I` looks at the localization `X^+ + sum_{i in I} Z mu_i` and finds
//! the divisors `D` whose zero set of generators `{i : phi_D(mu_i) = 0}` is exactly
//! `I`. Nodes are visited from the largest subset down, so every divisor found at
//! a strict superset is known when a node is processed.

mod validate;

pub use validate::{validate_luna_datum, ValidationReport, Violation, ViolationKind};

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{nullspace_int, rank_int};
use crate::monoid::WeightMonoid;
use crate::num::{primitive, rat, rat_from_int, Int, Rat};
use crate::polyhedral::{polytope_from_halfspaces, HalfSpace, Polytope, RationalCone};
use crate::rootsys::{ParabolicSet, RootData, WeightVec};
use crate::spherical::{
    classify_root_types, compute_pi_a, Divisor, Functional, RootType, RootTypeTable, SphericalRootSet,
};

/// Largest number of minimal generators handled by the subset recursion.
pub const MAX_MINIMAL_GENERATORS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DivisorSource {
    /// Found at a node whose Levi part consists of type-a roots only.
    Rank1 { node: Vec<usize> },
    /// One of the two divisors moved by a b-root found at its own node.
    BPair { root: usize, node: Vec<usize> },
    /// Complement of a known divisor in the pair moved by a b-root.
    BComplement { root: usize, node: Vec<usize> },
    TypeC { root: usize },
    TypeD { root: usize },
    TypeDPair { first: usize, second: usize },
    /// Supplied by the caller.
    Given,
}

impl DivisorSource {
    pub fn tag(&self) -> &'static str {
        match self {
            Self::Rank1 { .. } => "rank-one node",
            Self::BPair { .. } => "b-root pair",
            Self::BComplement { .. } => "b-root complement",
            Self::TypeC { .. } => "type c",
            Self::TypeD { .. } => "type d",
            Self::TypeDPair { .. } => "type d pair",
            Self::Given => "given",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BDivisorRecord {
    pub id: usize,
    /// Values of `phi_D` on the canonical basis of `X`.
    pub phi: Functional,
    /// `phi_D` as a combination of simple coroots, when the construction provides one.
    pub coroot_form: Option<Vec<Rat>>,
    pub stabilizer: ParabolicSet,
    pub source: DivisorSource,
}

impl BDivisorRecord {
    pub fn divisor(&self) -> Divisor {
        Divisor { phi: self.phi.clone(), stabilizer: self.stabilizer.clone() }
    }

    pub fn is_g_stable(&self, pi: &ParabolicSet) -> bool {
        &self.stabilizer == pi
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeCase {
    /// The localized monoid is a group.
    OneA,
    /// Invertibles of corank at least two.
    OneB,
    /// Invertibles of corank one.
    OneC,
    Two,
    /// `rejected_two` is set when the node has the shape of case 2 but a known
    /// divisor pairs positively with the b-root.
    Three { rejected_two: bool },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeTrace {
    pub subset: Vec<usize>,
    pub levi: ParabolicSet,
    pub invertible_rank: usize,
    pub case: NodeCase,
    /// Ids (in the final numbering) of the divisors found at this node.
    pub found: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct LunaDatum {
    pub monoid: WeightMonoid,
    pub psi: SphericalRootSet,
    pub pi_a: ParabolicSet,
    pub types: RootTypeTable,
    pub divisors: Vec<BDivisorRecord>,
    pub warnings: Vec<String>,
    pub trace: Vec<NodeTrace>,
}

impl LunaDatum {
    pub fn root_data(&self) -> &RootData {
        self.monoid.root_data()
    }

    pub fn plain_divisors(&self) -> Vec<Divisor> {
        self.divisors.iter().map(BDivisorRecord::divisor).collect()
    }

    /// A datum from caller-supplied divisors, for validation.
    pub fn from_parts(monoid: WeightMonoid, psi: SphericalRootSet, divisors: Vec<Divisor>) -> Result<Self> {
        let types = classify_root_types(&monoid, &psi)?;
        let pi_a = compute_pi_a(&monoid)?;
        let divisors = divisors
            .into_iter()
            .enumerate()
            .map(|(id, d)| BDivisorRecord { id, phi: d.phi, coroot_form: None, stabilizer: d.stabilizer, source: DivisorSource::Given })
            .collect();
        Ok(Self { monoid, psi, pi_a, types, divisors, warnings: Vec::new(), trace: Vec::new() })
    }
}

/// A divisor found during the recursion, before numbering.
#[derive(Debug, Clone)]
struct Found {
    phi: Functional,
    coroot_form: Option<Vec<Rat>>,
    source: DivisorSource,
    mask: u32,
}

fn unit_coroot(len: usize, a: usize, c: Rat) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); len];
    v[a] = c;
    v
}

fn bits(mask: u32, k: usize) -> Vec<usize> {
    (0..k).filter(|i| mask & (1 << i) != 0).collect()
}

/// Output of the subset recursion.
pub struct PrimeRecovery {
    pub divisors: Vec<BDivisorRecord>,
    pub warnings: Vec<String>,
    pub trace: Vec<NodeTrace>,
}

/// `D'`: the `G`-stable divisors and the divisors moved by roots of type b, with
/// stabilizers filled in.
pub fn recover_prime(m: &WeightMonoid, psi: &SphericalRootSet) -> Result<PrimeRecovery> {
    let types = classify_root_types(m, psi)?;
    let pi_a = compute_pi_a(m)?;
    let rd = m.root_data();
    let x = m.lattice();
    let rank = x.rank();
    let mus = m.minimal_generators();
    let k = mus.len();
    if k > MAX_MINIMAL_GENERATORS {
        return Err(Error::TooLarge { what: "number of minimal generators", size: k, max: MAX_MINIMAL_GENERATORS });
    }
    let pi_b = types.of_type(RootType::B);
    let mut warnings = Vec::new();
    let mut found: Vec<Found> = Vec::new();
    let mut traces: Vec<(u32, NodeTrace, Vec<usize>)> = Vec::new();

    let mut masks: Vec<u32> = (0..(1u32 << k)).collect();
    masks.sort_by(|a, b| b.count_ones().cmp(&a.count_ones()).then(a.cmp(b)));
    let alpha_in_x = |a: usize| -> Vec<Int> { rd.simple_roots[a].to_ints().expect("integral") };

    for &mask in &masks {
        let subset = bits(mask, k);
        let mut mu_i = vec![Int::zero(); m.dim()];
        let mut gens = m.generators().to_vec();
        for &i in &subset {
            for (a, b) in mu_i.iter_mut().zip(&mus[i]) {
                *a += b;
            }
            gens.push(mus[i].iter().map(|v| -v).collect());
        }
        let levi = ParabolicSet::new(m.levi().iter().filter(|&a| mu_i[a].is_zero()));
        let cone = RationalCone::from_generators(&gens, m.dim())?;
        let inv_rank = cone.lineality().len();
        // divisors found at strict supersets of this node
        let above: Vec<usize> = (0..found.len()).filter(|&d| found[d].mask & mask == mask && found[d].mask != mask).collect();
        let mut new: Vec<Found> = Vec::new();
        let case;
        if levi == pi_a {
            if inv_rank == rank {
                case = NodeCase::OneA;
            } else if inv_rank + 2 <= rank {
                case = NodeCase::OneB;
            } else {
                case = NodeCase::OneC;
                new.push(case_one_c(m, &cone, mus, &subset, mask)?);
            }
        } else {
            let extra = levi.difference(&pi_a);
            let two_shape = extra.len() == 1 && pi_a.is_subset(&levi) && pi_b.contains(*extra.roots.iter().next().expect("one root"));
            let mut two_ok = false;
            if two_shape {
                let a = *extra.roots.iter().next().expect("one root");
                let alpha = alpha_in_x(a);
                two_ok = true;
                for &d in &above {
                    if found[d].phi.eval(x, &alpha)?.is_positive() {
                        two_ok = false;
                    }
                }
                if two_ok {
                    let phi = Functional::coroot(x, a).scaled(&rat(1, 2));
                    for _ in 0..2 {
                        new.push(Found {
                            phi: phi.clone(),
                            coroot_form: Some(unit_coroot(rd.rank(), a, rat(1, 2))),
                            source: DivisorSource::BPair { root: a, node: subset.clone() },
                            mask,
                        });
                    }
                }
            }
            if two_ok {
                case = NodeCase::Two;
            } else {
                case = NodeCase::Three { rejected_two: two_shape };
                let mut values: BTreeSet<Functional> = BTreeSet::new();
                let mut forms: Vec<(Functional, Option<Vec<Rat>>, usize)> = Vec::new();
                for a in levi.intersection(&pi_b).iter() {
                    if (0..k).filter(|j| !subset.contains(j)).any(|j| !mus[j][a].is_positive()) {
                        continue;
                    }
                    let alpha = alpha_in_x(a);
                    let mut hits = Vec::new();
                    for &d in &above {
                        if found[d].phi.eval(x, &alpha)?.is_one() {
                            hits.push(d);
                        }
                    }
                    if hits.len() != 1 {
                        continue;
                    }
                    let d = &found[hits[0]];
                    let phi = Functional::coroot(x, a).sub(&d.phi);
                    let cf = d.coroot_form.as_ref().map(|c| {
                        let mut v = unit_coroot(rd.rank(), a, Rat::one());
                        for (p, q) in v.iter_mut().zip(c) {
                            *p -= q;
                        }
                        v
                    });
                    if values.insert(phi.clone()) {
                        forms.push((phi, cf, a));
                    }
                }
                for (phi, cf, a) in forms {
                    new.push(Found { phi, coroot_form: cf, source: DivisorSource::BComplement { root: a, node: subset.clone() }, mask });
                }
            }
        }
        let start = found.len();
        found.extend(new);
        let idx: Vec<usize> = (start..found.len()).collect();
        traces.push((mask, NodeTrace { subset, levi, invertible_rank: inv_rank, case, found: Vec::new() }, idx));
    }

    // consistency: every divisor must vanish exactly on the generators of its node
    for f in &found {
        for (i, mu) in mus.iter().enumerate() {
            let v = f.phi.eval(x, mu)?;
            let expect_zero = f.mask & (1 << i) != 0;
            if v.is_negative() || (v.is_zero() != expect_zero) {
                warnings.push(format!(
                    "divisor found at node {:?} takes value {} on minimal generator {}",
                    bits(f.mask, k),
                    crate::num::format_rat(&v),
                    i + 1
                ));
            }
        }
    }

    let pi = m.levi().clone();
    let records = finish_records(m, &found, &pi, &pi_b)?;
    // map raw indices to final ids
    let mut trace = Vec::new();
    for (_, mut t, idx) in traces {
        t.found = idx.iter().map(|&i| records.1[i]).collect();
        t.found.sort();
        trace.push(t);
    }
    Ok(PrimeRecovery { divisors: records.0, warnings, trace })
}

/// Sorts the found divisors canonically and assigns ids; returns the records and
/// the id of each raw divisor.
fn finish_records(
    m: &WeightMonoid,
    found: &[Found],
    pi: &ParabolicSet,
    pi_b: &ParabolicSet,
) -> Result<(Vec<BDivisorRecord>, Vec<usize>)> {
    let x = m.lattice();
    let rd = m.root_data();
    let mut recs: Vec<(BDivisorRecord, usize)> = Vec::new();
    for (i, f) in found.iter().enumerate() {
        let mut moved = BTreeSet::new();
        for b in pi_b.iter() {
            let beta = rd.simple_roots[b].to_ints().expect("integral");
            if f.phi.eval(x, &beta)?.is_one() {
                moved.insert(b);
            }
        }
        let stabilizer = ParabolicSet::new(pi.iter().filter(|r| !moved.contains(r)));
        recs.push((
            BDivisorRecord { id: 0, phi: f.phi.clone(), coroot_form: f.coroot_form.clone(), stabilizer, source: f.source.clone() },
            i,
        ));
    }
    recs.sort_by(|a, b| {
        (&a.0.stabilizer, &a.0.phi, &a.0.source).cmp(&(&b.0.stabilizer, &b.0.phi, &b.0.source)).then(a.1.cmp(&b.1))
    });
    let mut ids = vec![0; found.len()];
    let mut out = Vec::with_capacity(recs.len());
    for (id, (mut r, raw)) in recs.into_iter().enumerate() {
        r.id = id;
        ids[raw] = id;
        out.push(r);
    }
    Ok((out, ids))
}

fn case_one_c(m: &WeightMonoid, cone: &RationalCone, mus: &[Vec<Int>], subset: &[usize], mask: u32) -> Result<Found> {
    let x = m.lattice();
    let rank = x.rank();
    // lineality in X-coordinates; phi spans its annihilator
    let lin: Vec<Vec<Int>> = cone
        .lineality()
        .iter()
        .map(|l| {
            let c = x.rational_coords(&l.iter().map(rat_from_int).collect::<Vec<_>>())?;
            Ok(crate::num::primitive_of_rat(&c))
        })
        .collect::<Result<_>>()?;
    let ann = nullspace_int(&lin, rank);
    if ann.len() != 1 || rank_int(&lin, rank) + 1 != rank {
        return Err(Error::Internal("corank-one node without a unique annihilator".into()));
    }
    let mut phi: Vec<Int> = primitive(&ann[0]);
    let coords: Vec<Vec<Int>> = mus.iter().map(|mu| x.coords(mu).ok_or(Error::NotInLatticeSpan)).collect::<Result<_>>()?;
    let val = |phi: &[Int], c: &[Int]| -> Int { phi.iter().zip(c).map(|(a, b)| a * b).sum() };
    if coords.iter().any(|c| val(&phi, c).is_negative()) {
        phi = phi.iter().map(|v| -v).collect();
    }
    let outside: Vec<usize> = (0..mus.len()).filter(|j| !subset.contains(j)).collect();
    let ones: Vec<usize> = outside.iter().copied().filter(|&j| val(&phi, &coords[j]).is_one()).collect();
    if ones.is_empty() {
        return Err(Error::InvalidMonoid(format!(
            "no minimal generator outside {:?} generates the quotient by the invertibles",
            subset.iter().map(|i| i + 1).collect::<Vec<_>>()
        )));
    }
    let inv: Vec<Vec<Int>> = cone.lineality().to_vec();
    for &j in &ones[1..] {
        let diff: Vec<Rat> = mus[j].iter().zip(&mus[ones[0]]).map(|(a, b)| rat_from_int(&(a - b))).collect();
        let li: Vec<Vec<Rat>> = inv.iter().map(|v| v.iter().map(rat_from_int).collect()).collect();
        if crate::linalg::solve_combination(&li, &diff).is_none() {
            return Err(Error::InvalidMonoid("generating classes of a corank-one localization are not unique".into()));
        }
    }
    if let Some(&j) = outside.iter().find(|&&j| val(&phi, &coords[j]).is_zero()) {
        return Err(Error::InvalidMonoid(format!("minimal generator {} becomes invertible in a corank-one localization", j + 1)));
    }
    Ok(Found {
        phi: Functional(phi.iter().map(rat_from_int).collect()),
        coroot_form: None,
        source: DivisorSource::Rank1 { node: subset.to_vec() },
        mask,
    })
}

/// Divisors moved by roots of type c or d. Stabilizers are set from the type.
pub fn recover_cd_divisors(m: &WeightMonoid, table: &RootTypeTable) -> Result<Vec<BDivisorRecord>> {
    let x = m.lattice();
    let rd = m.root_data();
    let pi = m.levi();
    let pi_b = table.of_type(RootType::B);
    let mut out = Vec::new();
    for (&a, &t) in &table.types {
        match t {
            RootType::C => {
                let phi = Functional::coroot(x, a).scaled(&rat(1, 2));
                for b in pi_b.iter() {
                    if phi.eval(x, &rd.simple_roots[b].to_ints().expect("integral"))?.is_one() {
                        return Err(Error::InvalidDatum(format!(
                            "divisor of the c-root {} would also be moved by the b-root {}",
                            rd.root_label(a),
                            rd.root_label(b)
                        )));
                    }
                }
                out.push(BDivisorRecord {
                    id: 0,
                    phi,
                    coroot_form: Some(unit_coroot(rd.rank(), a, rat(1, 2))),
                    stabilizer: ParabolicSet::new(pi.iter().filter(|&r| r != a)),
                    source: DivisorSource::TypeC { root: a },
                });
            }
            RootType::D => {
                let partner = table.partners.get(&a).copied();
                if let Some(b) = partner {
                    if table.partners.get(&b) != Some(&a) {
                        return Err(Error::InvalidDatum(format!("partner relation of {} is not symmetric", rd.root_label(a))));
                    }
                    if b < a {
                        continue;
                    }
                }
                let stabilizer = ParabolicSet::new(pi.iter().filter(|&r| r != a && Some(r) != partner));
                let source = match partner {
                    Some(b) => DivisorSource::TypeDPair { first: a, second: b },
                    None => DivisorSource::TypeD { root: a },
                };
                out.push(BDivisorRecord {
                    id: 0,
                    phi: Functional::coroot(x, a),
                    coroot_form: Some(unit_coroot(rd.rank(), a, Rat::one())),
                    stabilizer,
                    source,
                });
            }
            _ => {}
        }
    }
    Ok(out)
}

/// Stabilizer of a divisor from its valuation and origin.
pub fn stabilizer_of(rec: &BDivisorRecord, m: &WeightMonoid, table: &RootTypeTable) -> Result<ParabolicSet> {
    let pi = m.levi();
    let x = m.lattice();
    let rd = m.root_data();
    let remove = |s: &[usize]| ParabolicSet::new(pi.iter().filter(|r| !s.contains(r)));
    Ok(match &rec.source {
        DivisorSource::TypeC { root } => remove(&[*root]),
        DivisorSource::TypeD { root } => remove(&[*root]),
        DivisorSource::TypeDPair { first, second } => remove(&[*first, *second]),
        _ => {
            let mut moved = Vec::new();
            for b in table.of_type(RootType::B).iter() {
                if rec.phi.eval(x, &rd.simple_roots[b].to_ints().expect("integral"))?.is_one() {
                    moved.push(b);
                }
            }
            remove(&moved)
        }
    })
}

/// All `B`-divisors with valuations and stabilizers, validated.
///
/// The weight monoid of a normal affine variety is cut out of `X` by the
/// valuations of its `B`-divisors, so unsaturated monoids are rejected.
pub fn recover_divisors(m: &WeightMonoid, psi: &SphericalRootSet) -> Result<LunaDatum> {
    if !m.is_saturated()? {
        return Err(Error::InvalidMonoid("weight monoid is not saturated in the lattice it generates".into()));
    }
    let table = classify_root_types(m, psi)?;
    let pi_a = compute_pi_a(m)?;
    let prime = recover_prime(m, psi)?;
    let cd = recover_cd_divisors(m, &table)?;
    let offset = prime.divisors.len();
    let mut divisors = prime.divisors;
    for (i, mut r) in cd.into_iter().enumerate() {
        r.id = offset + i;
        divisors.push(r);
    }
    let mut warnings = prime.warnings;
    if let Some(w) = crate::spherical::support_coverage_warning(m, psi, &pi_a)? {
        warnings.push(w);
    }
    let datum = LunaDatum { monoid: m.clone(), psi: psi.clone(), pi_a, types: table, divisors, warnings, trace: prime.trace };
    let report = validate_luna_datum(&datum)?;
    if !report.passed() {
        let names: Vec<String> = report.violations.iter().map(|v| format!("{}", v)).collect();
        return Err(Error::InvalidDatum(format!("recovered divisors fail validation: {}", names.join("; "))));
    }
    Ok(datum)
}

/// The datum of the open subset where `mu` does not vanish, over the Levi
/// subgroup centralizing `mu`.
pub fn localize_datum(d: &LunaDatum, mu: &[Int]) -> Result<LunaDatum> {
    let m = &d.monoid;
    let loc = m.localize(mu)?;
    let rd = m.root_data();
    let levi = loc.levi().clone();
    let mut roots = Vec::new();
    for g in d.psi.roots() {
        let supp = rd.support(&WeightVec::from_ints(g))?;
        if supp.iter().all(|a| levi.contains(*a)) {
            roots.push(g.clone());
        }
    }
    let psi = SphericalRootSet::new(&loc, roots)?;
    let x = m.lattice();
    let mut divisors = Vec::new();
    for r in &d.divisors {
        if r.phi.eval(x, mu)?.is_zero() {
            let mut r = r.clone();
            r.stabilizer = r.stabilizer.intersection(&levi);
            r.id = divisors.len();
            divisors.push(r);
        }
    }
    let types = classify_root_types(&loc, &psi)?;
    let pi_a = compute_pi_a(&loc)?;
    Ok(LunaDatum { monoid: loc, psi, pi_a, types, divisors, warnings: Vec::new(), trace: Vec::new() })
}

/// `{lambda in X (x) R : phi_D(lambda) >= -ord_D for all D}` translated by the base
/// weight. The polytope is described in coordinates on the basis of `X`.
#[derive(Debug, Clone)]
pub struct MomentPolytope {
    pub polytope: Polytope,
    pub base: Vec<Rat>,
    pub basis: Vec<Vec<Int>>,
}

impl MomentPolytope {
    pub fn to_ambient(&self, t: &[Rat]) -> Vec<Rat> {
        let mut out = self.base.clone();
        for (c, b) in t.iter().zip(&self.basis) {
            for (o, v) in out.iter_mut().zip(b) {
                *o += c * rat_from_int(v);
            }
        }
        out
    }

    pub fn vertices_ambient(&self) -> Vec<Vec<Rat>> {
        self.polytope.vertices().iter().map(|v| self.to_ambient(v)).collect()
    }

    /// Recession directions as ambient weights.
    pub fn rays_ambient(&self) -> Vec<Vec<Int>> {
        let dim = self.base.len();
        let mut out: Vec<Vec<Int>> = self
            .polytope
            .recession_rays()
            .iter()
            .map(|r| crate::linalg::combine(&self.basis, r, dim))
            .collect();
        for l in self.polytope.recession_lineality() {
            out.push(crate::linalg::combine(&self.basis, l, dim));
            let neg: Vec<Int> = l.iter().map(|v| -v).collect();
            out.push(crate::linalg::combine(&self.basis, &neg, dim));
        }
        out
    }
}

pub fn moment_polytope(d: &LunaDatum, base: &[Rat], orders: &[Int]) -> Result<MomentPolytope> {
    if orders.len() != d.divisors.len() {
        return Err(Error::DimensionMismatch { expected: d.divisors.len(), got: orders.len() });
    }
    d.root_data().check_len(base.len())?;
    let x = d.monoid.lattice();
    let halfspaces = d
        .divisors
        .iter()
        .zip(orders)
        .map(|(r, o)| HalfSpace::new(r.phi.0.clone(), -rat_from_int(o)))
        .collect();
    let polytope = polytope_from_halfspaces(vec![Rat::zero(); x.rank()], halfspaces)?;
    Ok(MomentPolytope { polytope, base: base.to_vec(), basis: x.basis().to_vec() })
}
