//! Acceptance gate. Prints one line per criterion and exits nonzero if any fails.

#[path = "../../core/tests/oracle/mod.rs"]
mod oracle;

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use luna_cli::commands::recover_datum;
use luna_cli::report::CommandResult;
use luna_cli::{cmd_compare, parse_input, InputDocument};
use luna_core::monoid::WeightMonoid;
use luna_core::num::{int_vec, primitive_of_rat, rat, Int, Rat};
use luna_core::polyhedral::{dual_cone, hilbert_basis, hilbert_basis_with_lineality, Lattice, RationalCone};
use luna_core::recovery::{recover_prime, validate_luna_datum, LunaDatum, ViolationKind};
use luna_core::rootsys::{DynkinType, GroupSpec, ParabolicSet, RootData};
use luna_core::spherical::{
    exceptional_triples, hidden_spherical_roots, lemma_form, match_exceptional_triple, weight_of_coefficients, Divisor, Functional,
    LemmaForm, SphericalRootSet,
};
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const LIMIT_PAIR: Duration = Duration::from_secs(1);
const LIMIT_MONOID: Duration = Duration::from_secs(10);
const LIMIT_DUAL: Duration = Duration::from_secs(10);
const LIMIT_HILBERT: Duration = Duration::from_secs(60);
const MIN_SATURATED_DOCS: usize = 10;
const DUAL_CONES: usize = 500;
const HILBERT_CONES: usize = 100;
const DECOYS: usize = 20;
const DETERMINISM_RUNS: usize = 5;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn load(name: &str) -> InputDocument {
    let text = std::fs::read_to_string(corpus_dir().join(format!("{}.json", name))).unwrap();
    parse_input(&text).unwrap_or_else(|e| panic!("{}: {}", name, e))
}

fn corpus() -> Vec<(String, InputDocument)> {
    let mut names: Vec<PathBuf> = std::fs::read_dir(corpus_dir()).unwrap().map(|e| e.unwrap().path()).collect();
    names.sort();
    names
        .into_iter()
        .map(|p| {
            let n = p.file_stem().unwrap().to_string_lossy().into_owned();
            let d = load(&n);
            (n, d)
        })
        .collect()
}

fn monoid_of(doc: &InputDocument) -> WeightMonoid {
    WeightMonoid::new(&doc.root_data(), &doc.monoid_generators).unwrap()
}

/// Documents without a divisors block whose monoid is saturated.
fn saturated_corpus() -> Vec<(String, InputDocument)> {
    corpus().into_iter().filter(|(_, d)| d.divisors.is_none() && monoid_of(d).is_saturated().unwrap()).collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, limit: Duration) -> Result<(), String> {
    ensure(t.elapsed() < limit, || format!("took {:.2?}, limit {:?}", t.elapsed(), limit))
}

fn alpha(rd: &RootData, i: usize) -> Vec<Int> {
    let mut c = vec![Rat::zero(); rd.rank()];
    c[i] = Rat::one();
    rd.from_root_coefficients(&c).to_ints().unwrap()
}

fn criterion_pair() -> Outcome {
    let t = Instant::now();
    let (x0, x1) = (load("sl2-x0"), load("sl2-x1"));
    let rep = cmd_compare(&x0, &x1);
    let Some(CommandResult::Compare(c)) = &rep.result else { return Err("compare produced no result".into()) };
    ensure(c.x_plus_equivalent && !c.x_plus_psi_equivalent, || format!("X+ {} X+Psi {}", c.x_plus_equivalent, c.x_plus_psi_equivalent))?;

    let d0 = recover_datum(&x0).map_err(|e| e.to_string())?;
    let d1 = recover_datum(&x1).map_err(|e| e.to_string())?;
    let rd = d0.root_data();
    let a = alpha(rd, 0);
    let coroot = Functional::coroot(d0.monoid.lattice(), 0);
    ensure(d0.divisors.len() == 1 && d0.divisors[0].phi == coroot, || "X0 should have one divisor with the coroot".into())?;
    ensure(d1.divisors.len() == 2, || format!("X1 has {} divisors", d1.divisors.len()))?;
    let x = d1.monoid.lattice();
    let half = Functional::coroot(x, 0).scaled(&rat(1, 2));
    for r in &d1.divisors {
        ensure(r.phi == half, || format!("phi {:?}", r.phi))?;
        ensure(r.phi.eval(x, &a).map_err(|e| e.to_string())? == Rat::one(), || "pairing with the root is not 1".into())?;
    }
    let sum = Functional(d1.divisors[0].phi.0.iter().zip(&d1.divisors[1].phi.0).map(|(p, q)| p + q).collect());
    ensure(sum == Functional::coroot(x, 0), || "divisors of X1 do not sum to the coroot".into())?;
    within(t, LIMIT_PAIR)?;
    Ok(format!("{:.2?}", t.elapsed()))
}

fn criterion_monoid_identity() -> Outcome {
    let t = Instant::now();
    let docs = saturated_corpus();
    ensure(docs.len() >= MIN_SATURATED_DOCS, || format!("only {} saturated documents", docs.len()))?;
    for (name, doc) in &docs {
        let d = recover_datum(doc).map_err(|e| format!("{}: {}", name, e))?;
        let x = d.monoid.lattice();
        let rank = x.rank();
        let ineqs: Vec<Vec<Int>> = d.divisors.iter().map(|r| primitive_of_rat(&r.phi.0)).collect();
        let cone = RationalCone::from_inequalities(&ineqs, &[], rank).map_err(|e| e.to_string())?;
        let hb = hilbert_basis_with_lineality(&cone, &Lattice::full(rank)).map_err(|e| e.to_string())?;
        let mut gens: Vec<Vec<Int>> = hb.elements.iter().map(|v| x.from_coords(v)).collect();
        for l in &hb.lineality {
            gens.push(x.from_coords(l));
            gens.push(x.from_coords(&l.iter().map(|v| -v).collect::<Vec<_>>()));
        }
        let rebuilt = WeightMonoid::raw(d.root_data(), &gens).map_err(|e| e.to_string())?;
        ensure(rebuilt.same_set(&d.monoid).map_err(|e| e.to_string())?, || format!("{}: monoid not recovered", name))?;
    }
    within(t, LIMIT_MONOID)?;
    Ok(format!("{} documents, {:.2?}", docs.len(), t.elapsed()))
}

fn random_gens(rng: &mut ChaCha8Rng, d: usize, lo: i64, hi: i64, max: usize) -> Vec<Vec<i64>> {
    let n = rng.random_range(1..=max);
    (0..n).map(|_| (0..d).map(|_| rng.random_range(lo..=hi)).collect()).collect()
}

fn criterion_dual() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for i in 0..DUAL_CONES {
        let d = rng.random_range(1..=4);
        let gens = random_gens(&mut rng, d, -4, 4, 6);
        let ig: Vec<Vec<Int>> = gens.iter().map(|g| int_vec(g)).collect();
        let c = RationalCone::from_generators(&ig, d).map_err(|e| e.to_string())?;
        ensure(dual_cone(&dual_cone(&c)) == c, || format!("cone {} ({:?})", i, gens))?;
    }
    within(t, LIMIT_DUAL)?;
    Ok(format!("{} cones, {:.2?}", DUAL_CONES, t.elapsed()))
}

fn criterion_hilbert() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let mut done = 0;
    while done < HILBERT_CONES {
        let d = rng.random_range(2..=3);
        let gens: Vec<Vec<i64>> = random_gens(&mut rng, d, 0, 3, 4).into_iter().filter(|g| g.iter().any(|&v| v != 0)).collect();
        if gens.is_empty() {
            continue;
        }
        let ig: Vec<Vec<Int>> = gens.iter().map(|g| int_vec(g)).collect();
        let c = RationalCone::from_generators(&ig, d).map_err(|e| e.to_string())?;
        let hb: BTreeSet<Vec<i64>> = hilbert_basis(&c, &Lattice::full(d))
            .map_err(|e| e.to_string())?
            .iter()
            .map(|v| v.iter().map(|x| x.to_i64().unwrap()).collect())
            .collect();
        ensure(hb == oracle::brute_hilbert(&gens, d), || format!("cone {:?}", gens))?;
        done += 1;
    }
    within(t, LIMIT_HILBERT)?;
    Ok(format!("{} cones, {:.2?}", HILBERT_CONES, t.elapsed()))
}

fn datum_with(
    factors: &[(DynkinType, usize)],
    central: usize,
    gens: &[&[i64]],
    psi: &[&[i64]],
    divisors: Vec<(Vec<Rat>, &[usize])>,
) -> Result<LunaDatum, String> {
    let rd = RootData::new(GroupSpec::new(factors, central)).map_err(|e| e.to_string())?;
    let m = WeightMonoid::new(&rd, &gens.iter().map(|g| int_vec(g)).collect::<Vec<_>>()).map_err(|e| e.to_string())?;
    let psi = SphericalRootSet::new(&m, psi.iter().map(|g| int_vec(g)).collect()).map_err(|e| e.to_string())?;
    let x = m.lattice().clone();
    let levi = m.levi().clone();
    let ds = divisors
        .into_iter()
        .map(|(phi, removed)| Divisor { phi: Functional::from_ambient(&x, &phi), stabilizer: ParabolicSet::new(levi.iter().filter(|a| !removed.contains(a))) })
        .collect();
    LunaDatum::from_parts(m, psi, ds).map_err(|e| e.to_string())
}

fn r(v: &[(i64, i64)]) -> Vec<Rat> {
    v.iter().map(|&(n, d)| rat(n, d)).collect()
}

fn criterion_validator() -> Outcome {
    let mut checked = 0;
    for (name, doc) in saturated_corpus() {
        let d = recover_datum(&doc).map_err(|e| format!("{}: {}", name, e))?;
        let rep = validate_luna_datum(&d).map_err(|e| e.to_string())?;
        ensure(rep.passed(), || format!("{}: {:?}", name, rep.kinds()))?;
        checked += 1;
    }

    use DynkinType::A;
    let b: &[usize] = &[0];
    let g: &[usize] = &[];
    // gl1-b-root in ambient coordinates: D+ = (1/2, -1/2), D- = (1/2, 1/2), E = (0, 1)
    let gl1 = |dp: Vec<Rat>, e: Vec<Rat>| {
        datum_with(&[(A, 1)], 1, &[&[2, 0], &[1, 1]], &[&[2, 0]], vec![(dp, b), (r(&[(1, 2), (1, 2)]), b), (e, g)])
    };
    let baseline = gl1(r(&[(1, 2), (-1, 2)]), r(&[(0, 1), (1, 1)]))?;
    ensure(validate_luna_datum(&baseline).map_err(|e| e.to_string())?.passed(), || "hand-built gl1 datum should validate".into())?;

    let mutations: Vec<(&str, LunaDatum, ViolationKind)> = vec![
        ("wrong phi scale", datum_with(&[(A, 1)], 0, &[&[2]], &[], vec![(r(&[(1, 2)]), b)])?, ViolationKind::DRoot),
        (
            "missing divisor",
            datum_with(&[], 2, &[&[1, 0], &[0, 1]], &[], vec![(r(&[(1, 1), (0, 1)]), g)])?,
            ViolationKind::MonoidMismatch,
        ),
        (
            "wrong stabilizer",
            datum_with(&[(A, 1)], 0, &[&[2]], &[&[2]], vec![(r(&[(1, 2)]), g), (r(&[(1, 2)]), b)])?,
            ViolationKind::StabilizerMismatch,
        ),
        ("broken b-pair sum", gl1(r(&[(1, 2), (1, 2)]), r(&[(0, 1), (1, 1)]))?, ViolationKind::BRootSum),
        ("sign violation", gl1(r(&[(1, 2), (-1, 2)]), r(&[(1, 1), (1, 1)]))?, ViolationKind::LemmaSign),
        (
            "nonzero on invertibles",
            datum_with(&[], 2, &[&[1, 0], &[-1, 0], &[0, 1]], &[], vec![(r(&[(1, 1), (1, 1)]), g)])?,
            ViolationKind::NonzeroOnInvertible,
        ),
    ];
    for (what, d, kind) in &mutations {
        let rep = validate_luna_datum(d).map_err(|e| e.to_string())?;
        ensure(rep.has(*kind), || format!("{}: expected {}, got {:?}", what, kind.name(), rep.kinds()))?;
    }
    Ok(format!("{} recovered data pass, {} mutations caught", checked, mutations.len()))
}

struct TripleCase {
    spec: GroupSpec,
    psi: Vec<Vec<i64>>,
    pi_a: Vec<usize>,
}

fn tc(factors: &[(DynkinType, usize)], psi: &[&[i64]], pi_a: &[usize]) -> TripleCase {
    TripleCase { spec: GroupSpec::new(factors, 0), psi: psi.iter().map(|p| p.to_vec()).collect(), pi_a: pi_a.to_vec() }
}

fn decoys() -> Vec<TripleCase> {
    use DynkinType::*;
    vec![
        tc(&[(C, 3)], &[&[1, 0, 0], &[1, 2, 1]], &[]),
        tc(&[(C, 3)], &[&[3, 0, 0], &[1, 2, 1]], &[2]),
        tc(&[(C, 3)], &[&[1, 0, 0]], &[2]),
        tc(&[(C, 3)], &[&[0, 1, 0], &[1, 2, 1]], &[2]),
        tc(&[(C, 3)], &[&[1, 0, 0], &[1, 1, 1]], &[2]),
        tc(&[(G, 2)], &[&[0, 1], &[1, 1]], &[0]),
        tc(&[(G, 2)], &[&[1, 0], &[1, 1]], &[]),
        tc(&[(G, 2)], &[&[0, 1], &[2, 1]], &[]),
        tc(&[(G, 2)], &[&[0, 1]], &[]),
        tc(&[(B, 4)], &[&[0, 1, 2, 3], &[1, 1, 1, 1]], &[1]),
        tc(&[(B, 4)], &[&[0, 1, 2, 3], &[1, 1, 1, 1]], &[1, 2, 3]),
        tc(&[(B, 4)], &[&[0, 1, 2, 3]], &[1, 2]),
        tc(&[(B, 4)], &[&[1, 1, 1, 1], &[1, 0, 0, 0]], &[1, 2]),
        tc(&[(C, 3), (A, 1)], &[&[1, 0, 0, 1], &[1, 2, 1, 0]], &[]),
        tc(&[(C, 3), (A, 1)], &[&[1, 0, 0, 0], &[1, 2, 1, 0]], &[2]),
        tc(&[(C, 3), (A, 1)], &[&[1, 0, 0, 1], &[1, 1, 1, 0]], &[2]),
        tc(&[(A, 2)], &[&[1, 0], &[0, 1]], &[]),
        tc(&[(B, 3)], &[&[1, 1, 1], &[0, 1, 0]], &[]),
        tc(&[(C, 4)], &[&[1, 0, 0, 0], &[1, 2, 2, 1]], &[3]),
        tc(&[(C, 2), (A, 1)], &[&[1, 0, 1], &[1, 1, 0]], &[1]),
    ]
}

fn matches(t: &TripleCase) -> Result<Option<u8>, String> {
    let rd = RootData::new(t.spec.clone()).map_err(|e| e.to_string())?;
    let psi: Vec<Vec<Int>> = t
        .psi
        .iter()
        .map(|p| weight_of_coefficients(&rd, &p.iter().map(|&v| Rat::from_integer(Int::from(v))).collect::<Vec<_>>()).ok_or("non-integral root"))
        .collect::<Result<_, _>>()?;
    Ok(match_exceptional_triple(&rd, &psi, &ParabolicSet::new(t.pi_a.iter().copied())).map(|m| m.item))
}

fn criterion_triples() -> Outcome {
    let mut stored = 0;
    for n in 2..=4 {
        for t in exceptional_triples(n) {
            let rd = RootData::new(t.spec.clone()).map_err(|e| e.to_string())?;
            let psi: Vec<Vec<Int>> = t.psi.iter().map(|c| weight_of_coefficients(&rd, c).ok_or("non-integral root")).collect::<Result<_, _>>()?;
            let got = match_exceptional_triple(&rd, &psi, &t.pi_a);
            ensure(got.map(|m| (m.item, m.k)) == Some((t.item, t.k)), || format!("item {} (n = {}) gave {:?}", t.item, n, got))?;
            stored += 1;
        }
    }
    let ds = decoys();
    ensure(ds.len() == DECOYS, || format!("{} decoys", ds.len()))?;
    for (i, t) in ds.iter().enumerate() {
        let got = matches(t)?;
        ensure(got.is_none(), || format!("decoy {} matched item {:?}", i, got))?;
    }

    let d = recover_datum(&load("g2-item")).map_err(|e| e.to_string())?;
    let hidden = hidden_spherical_roots(&d.monoid, &d.psi, &d.plain_divisors()).map_err(|e| e.to_string())?;
    let rd = d.root_data();
    let second = weight_of_coefficients(rd, &[Rat::one(), Rat::one()]).unwrap();
    let idx = d.psi.roots().iter().position(|g| *g == second).ok_or("second root missing")?;
    ensure(hidden == BTreeSet::from([idx]), || format!("hidden roots {:?}", hidden))?;
    Ok(format!("{} stored instances, {} decoys, hidden root reproduced", stored, DECOYS))
}

fn criterion_thinned() -> Outcome {
    let docs = saturated_corpus();
    for (name, doc) in &docs {
        let m = monoid_of(doc);
        let psi = SphericalRootSet::new(&m, doc.spherical_roots.clone()).map_err(|e| e.to_string())?;
        let rd = m.root_data();
        let kept: Vec<Vec<Int>> = psi.roots().iter().filter(|g| lemma_form(rd, g) != LemmaForm::None).cloned().collect();
        let thin = SphericalRootSet::new(&m, kept).map_err(|e| e.to_string())?;
        let full = recover_prime(&m, &psi).map_err(|e| e.to_string())?;
        let part = recover_prime(&m, &thin).map_err(|e| e.to_string())?;
        ensure(full.divisors == part.divisors, || format!("{}: output changed", name))?;
    }
    Ok(format!("{} documents", docs.len()))
}

fn run_binary(args: &[&str]) -> Vec<u8> {
    Command::new(env!("CARGO_BIN_EXE_luna")).args(args).output().expect("binary runs").stdout
}

fn criterion_determinism() -> Outcome {
    let mut total = 0;
    for (name, doc) in corpus() {
        let p = corpus_dir().join(format!("{}.json", name)).to_string_lossy().into_owned();
        let cmd = if doc.divisors.is_some() { "validate" } else { "recover" };
        let args = ["--format", "machine", "--verbose", cmd, "--input", p.as_str()];
        let first = run_binary(&args);
        ensure(!first.is_empty(), || format!("{}: no output", name))?;
        for _ in 1..DETERMINISM_RUNS {
            ensure(run_binary(&args) == first, || format!("{}: output differs between runs", name))?;
        }
        total += 1;
    }
    Ok(format!("{} documents x {} runs", total, DETERMINISM_RUNS))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 pair of SL2 varieties", criterion_pair),
        ("2 monoid recovery identity", criterion_monoid_identity),
        ("3 dual cone involution", criterion_dual),
        ("4 Hilbert basis vs enumeration", criterion_hilbert),
        ("5 validator completeness", criterion_validator),
        ("6 exceptional triple matcher", criterion_triples),
        ("7 thinned spherical roots", criterion_thinned),
        ("8 determinism", criterion_determinism),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(note) => println!("criterion {}: PASS ({})", name, note),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL ({})", name, why)
            }
        }
    }
    if failed > 0 {
        println!("{} criterion(s) failed", failed);
        std::process::exit(1);
    }
    println!("all criteria passed");
}
