use luna_core::monoid::WeightMonoid;
use luna_core::num::{int_vec, rat, Int, Rat};
use luna_core::polyhedral::{hilbert_basis_with_lineality, Lattice, RationalCone};
use luna_core::recovery::{recover_divisors, recover_prime, validate_luna_datum, LunaDatum};
use luna_core::rootsys::{DynkinType, GroupSpec, RootData};
use luna_core::spherical::{hidden_divisors, lemma_form, LemmaForm, SphericalRootSet};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

struct Case {
    name: &'static str,
    factors: Vec<(DynkinType, usize)>,
    central: usize,
    gens: Vec<Vec<i64>>,
    /// Spherical roots as simple-root coefficients.
    psi: Vec<Vec<i64>>,
    /// Common denominator of the coefficients in `psi`.
    den: i64,
    saturated: bool,
}

fn case(name: &'static str, factors: &[(DynkinType, usize)], central: usize, gens: &[&[i64]], psi: &[&[i64]]) -> Case {
    Case {
        name,
        factors: factors.to_vec(),
        central,
        gens: gens.iter().map(|g| g.to_vec()).collect(),
        psi: psi.iter().map(|g| g.to_vec()).collect(),
        den: 1,
        saturated: true,
    }
}

fn corpus() -> Vec<Case> {
    use DynkinType::*;
    vec![
        case("sl2-x0", &[(A, 1)], 0, &[&[2]], &[]),
        case("sl2-x1", &[(A, 1)], 0, &[&[2]], &[&[1]]),
        case("sl2-normalizer", &[(A, 1)], 0, &[&[4]], &[&[2]]),
        case("sl2-natural", &[(A, 1)], 0, &[&[1]], &[]),
        case("toric-1", &[], 1, &[&[1]], &[]),
        case("toric-2", &[], 2, &[&[1, 0], &[0, 1]], &[]),
        case("toric-3", &[], 3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], &[]),
        case("toric-cone", &[], 2, &[&[1, 0], &[1, 1], &[1, 2]], &[]),
        case("gl1-b-root", &[(A, 1)], 1, &[&[2, 0], &[1, 1]], &[&[1, 0]]),
        Case { den: 2, ..case("a1a1-quadric", &[(A, 1), (A, 1)], 0, &[&[1, 1]], &[&[1, 1]]) },
        case("a1a1-pair", &[(A, 1), (A, 1)], 0, &[&[2, 2]], &[&[1, 1]]),
        case("a1a1-cone", &[(A, 1), (A, 1)], 0, &[&[1, 1]], &[]),
        case("g2-item", &[(G, 2)], 0, &[&[1, 0], &[0, 1]], &[&[0, 1], &[1, 1]]),
        case("c3-item-k1", &[(C, 3)], 0, &[&[2, 0, 0], &[0, 1, 0]], &[&[1, 0, 0], &[1, 2, 1]]),
        case("c3-item-k2", &[(C, 3)], 0, &[&[4, 0, 0], &[0, 1, 0]], &[&[2, 0, 0], &[1, 2, 1]]),
        case("c3a1-item", &[(C, 3), (A, 1)], 0, &[&[1, 0, 0, 1], &[0, 1, 0, 0]], &[&[1, 0, 0, 1], &[1, 2, 1, 0]]),
        case("b4-item", &[(B, 4)], 0, &[&[1, 0, 0, 0], &[0, 0, 0, 2]], &[&[0, 1, 2, 3], &[1, 1, 1, 1]]),
        Case { saturated: false, ..case("toric-unsaturated", &[], 2, &[&[1, 0], &[1, 1], &[1, 3]], &[]) },
    ]
}

fn setup(c: &Case) -> (WeightMonoid, SphericalRootSet) {
    let rd = RootData::new(GroupSpec::new(&c.factors, c.central)).unwrap();
    let gens: Vec<Vec<Int>> = c.gens.iter().map(|g| int_vec(g)).collect();
    let m = WeightMonoid::new(&rd, &gens).unwrap();
    let roots = c
        .psi
        .iter()
        .map(|p| {
            let q: Vec<Rat> = p.iter().map(|&v| rat(v, c.den)).collect();
            rd.from_root_coefficients(&q).to_ints().unwrap()
        })
        .collect();
    let psi = SphericalRootSet::new(&m, roots).unwrap();
    (m, psi)
}

fn saturated() -> Vec<Case> {
    corpus().into_iter().filter(|c| c.saturated).collect()
}

fn recover(c: &Case) -> LunaDatum {
    let (m, psi) = setup(c);
    recover_divisors(&m, &psi).unwrap_or_else(|e| panic!("{}: {}", c.name, e))
}

#[test]
fn corpus_recovers_and_validates() {
    for c in corpus() {
        if !c.saturated {
            let (m, psi) = setup(&c);
            assert!(matches!(recover_divisors(&m, &psi), Err(luna_core::Error::InvalidMonoid(_))), "{}", c.name);
            continue;
        }
        let d = recover(&c);
        let rep = validate_luna_datum(&d).unwrap();
        assert!(rep.passed(), "{}: {:?}", c.name, rep.violations);
        assert!(rep.monoid_checked, "{}", c.name);
    }
}

/// `X^+ = X ∩ {phi_D >= 0}` by computing the Hilbert basis of the right side.
#[test]
fn monoid_recovery_identity() {
    for c in saturated() {
        let d = recover(&c);
        let x = d.monoid.lattice();
        let rank = x.rank();
        let ineqs: Vec<Vec<Int>> = d.divisors.iter().map(|r| luna_core::num::primitive_of_rat(&r.phi.0)).collect();
        let cone = RationalCone::from_inequalities(&ineqs, &[], rank).unwrap();
        let hb = hilbert_basis_with_lineality(&cone, &Lattice::full(rank)).unwrap();
        let mut gens: Vec<Vec<Int>> = hb.elements.iter().map(|t| x.from_coords(t)).collect();
        for l in &hb.lineality {
            gens.push(x.from_coords(l));
            gens.push(x.from_coords(&l.iter().map(|v| -v).collect::<Vec<_>>()));
        }
        let rebuilt = WeightMonoid::raw(d.root_data(), &gens).unwrap();
        assert!(rebuilt.same_set(&d.monoid).unwrap(), "{}", c.name);
    }
}

/// Dropping the spherical roots without a special form does not change the
/// divisors found by the recursion.
#[test]
fn thinned_roots_give_same_prime_divisors() {
    for c in saturated() {
        let (m, psi) = setup(&c);
        let rd = m.root_data();
        let kept: Vec<Vec<Int>> = psi.roots().iter().filter(|g| lemma_form(rd, g) != LemmaForm::None).cloned().collect();
        let thin = SphericalRootSet::new(&m, kept).unwrap();
        let full = recover_prime(&m, &psi).unwrap();
        let part = recover_prime(&m, &thin).unwrap();
        assert_eq!(full.divisors, part.divisors, "{}", c.name);
    }
}

/// Hidden divisors two ways: the spherical-module criterion against the node at
/// which each divisor was found (and a direct test for divisors of types c and d).
#[test]
fn hidden_divisors_match_recursion() {
    for c in saturated() {
        let d = recover(&c);
        let hidden = hidden_divisors(&d.monoid, &d.plain_divisors()).unwrap();
        let x = d.monoid.lattice();
        let mut expect = std::collections::BTreeSet::new();
        let root = d.trace.iter().find(|t| t.subset.is_empty()).unwrap();
        expect.extend(root.found.iter().copied());
        let in_trace: std::collections::BTreeSet<usize> = d.trace.iter().flat_map(|t| t.found.iter().copied()).collect();
        for r in d.divisors.iter().filter(|r| !in_trace.contains(&r.id)) {
            if d.monoid.minimal_generators().iter().all(|g| r.phi.eval(x, g).unwrap().is_positive()) {
                expect.insert(r.id);
            }
        }
        assert_eq!(hidden, expect, "{}", c.name);
    }
}

#[test]
fn exceptional_items_have_expected_counts() {
    let counts = [("g2-item", 3), ("c3-item-k1", 3), ("c3-item-k2", 2), ("sl2-x1", 2), ("a1a1-quadric", 1)];
    let all = corpus();
    for (name, n) in counts {
        let c = all.iter().find(|c| c.name == name).unwrap();
        assert_eq!(recover(c).divisors.len(), n, "{}", name);
    }
}

fn zero_set(d: &LunaDatum, mask: u32) -> Vec<usize> {
    let x = d.monoid.lattice();
    let mus = d.monoid.minimal_generators();
    let mut mu = vec![Int::zero(); d.monoid.dim()];
    for (i, g) in mus.iter().enumerate() {
        if mask & (1 << i) != 0 {
            for (a, b) in mu.iter_mut().zip(g) {
                *a += b;
            }
        }
    }
    d.divisors.iter().filter(|r| r.phi.eval(x, &mu).unwrap().is_zero()).map(|r| r.id).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn intersection_identity(ci in 0usize..18, i in 0u32..16, j in 0u32..16) {
        let all = saturated();
        let c = &all[ci % all.len()];
        let d = recover(c);
        let k = d.monoid.minimal_generators().len();
        let full = (1u32 << k) - 1;
        let (i, j) = (i & full, j & full);
        let a = zero_set(&d, i);
        let b = zero_set(&d, j);
        let both: Vec<usize> = a.iter().copied().filter(|x| b.contains(x)).collect();
        prop_assert_eq!(both, zero_set(&d, i | j));
    }

    #[test]
    fn valuations_are_nonnegative(ci in 0usize..18) {
        let all = saturated();
        let d = recover(&all[ci % all.len()]);
        let x = d.monoid.lattice();
        for r in &d.divisors {
            for g in d.monoid.generators() {
                let v: Rat = r.phi.eval(x, g).unwrap();
                prop_assert!(!v.is_negative());
            }
        }
    }
}
