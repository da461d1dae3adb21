use std::collections::{BTreeMap, BTreeSet};

use luna_core::monoid::WeightMonoid;
use luna_core::num::{format_rat, Int, Rat};
use luna_core::recovery::{
    moment_polytope, recover_divisors, validate_luna_datum, BDivisorRecord, DivisorSource, LunaDatum, NodeCase,
};
use luna_core::rootsys::{ParabolicSet, RootData, WeightVec};
use luna_core::spherical::{
    classify_root_types, compute_pi_a, hidden_divisors, hidden_spherical_roots, lemma_form, match_exceptional_triple,
    support_coverage_warning, Divisor, Functional, RootTypeTable, SphericalRootSet, TripleMatch,
};

use crate::doc::{InputDocument, SCHEMA_VERSION};
use crate::json::{jints, rats, JInt};
use crate::report::*;

fn label(i: usize) -> String {
    format!("a{}", i + 1)
}

fn labels(p: &ParabolicSet) -> Vec<String> {
    p.iter().map(label).collect()
}

fn input_ref(doc: &InputDocument) -> InputRef {
    InputRef { name: doc.name.clone(), sha256: doc.digest.clone() }
}

fn report(command: &'static str, docs: &[&InputDocument]) -> OutputReport {
    OutputReport {
        schema: SCHEMA_VERSION,
        command,
        inputs: docs.iter().map(|d| input_ref(d)).collect(),
        status: Status::Ok,
        error: None,
        result: None,
        warnings: Vec::new(),
    }
}

fn fail(mut r: OutputReport, e: impl ToString) -> OutputReport {
    r.status = Status::Invalid;
    r.error = Some(e.to_string());
    r
}

fn build(doc: &InputDocument) -> luna_core::Result<(WeightMonoid, SphericalRootSet)> {
    let rd = doc.root_data();
    let m = WeightMonoid::new(&rd, &doc.monoid_generators)?;
    let psi = SphericalRootSet::new(&m, doc.spherical_roots.clone())?;
    Ok((m, psi))
}

fn type_map(t: &RootTypeTable) -> BTreeMap<String, String> {
    t.types.iter().map(|(&a, ty)| (label(a), ty.to_string())).collect()
}

fn triple_note(rd: &RootData, psi: &SphericalRootSet, pi_a: &ParabolicSet) -> Option<String> {
    match_exceptional_triple(rd, psi.roots(), pi_a).map(|TripleMatch { item, k }| match k {
        Some(k) => format!("matches exceptional triple item {} (k = {}); the second spherical root may be hidden", item, k),
        None => format!("matches exceptional triple item {}; the second spherical root may be hidden", item),
    })
}

fn source_label(s: &DivisorSource) -> String {
    let node = |n: &[usize]| format!("{{{}}}", n.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(","));
    match s {
        DivisorSource::Rank1 { node: n } => format!("rank-one node {}", node(n)),
        DivisorSource::BPair { root, node: n } => format!("b-root pair {} at {}", label(*root), node(n)),
        DivisorSource::BComplement { root, node: n } => format!("b-root complement {} at {}", label(*root), node(n)),
        DivisorSource::TypeC { root } => format!("type c {}", label(*root)),
        DivisorSource::TypeD { root } => format!("type d {}", label(*root)),
        DivisorSource::TypeDPair { first, second } => format!("type d pair {},{}", label(*first), label(*second)),
        DivisorSource::Given => "given".into(),
    }
}

fn case_label(c: NodeCase) -> String {
    match c {
        NodeCase::OneA => "1a".into(),
        NodeCase::OneB => "1b".into(),
        NodeCase::OneC => "1c".into(),
        NodeCase::Two => "2".into(),
        NodeCase::Three { rejected_two: false } => "3".into(),
        NodeCase::Three { rejected_two: true } => "3 (case 2 hypothesis fails)".into(),
    }
}

/// Covector on weight coordinates restricting to the record's valuation: the
/// stored coroot combination when there is one, else the least-norm extension.
fn ambient_phi(r: &BDivisorRecord, m: &WeightMonoid) -> Vec<Rat> {
    match &r.coroot_form {
        Some(c) => {
            let mut v = c.clone();
            v.resize(m.dim(), Rat::from_integer(Int::from(0)));
            v
        }
        None => r.phi.ambient_extension(m.lattice()),
    }
}

fn removed(r: &BDivisorRecord, m: &WeightMonoid) -> BTreeSet<usize> {
    m.levi().iter().filter(|&a| !r.stabilizer.contains(a)).collect()
}

fn datum_out(doc: &InputDocument, d: &LunaDatum) -> DatumOut {
    DatumOut {
        schema: SCHEMA_VERSION,
        name: doc.name.clone(),
        group: GroupOut {
            factors: doc.spec.factors.iter().map(|f| FactorOut { kind: f.kind.as_char().to_string(), rank: f.rank }).collect(),
            central_rank: doc.spec.central_rank,
        },
        monoid_generators: doc.monoid_generators.iter().map(|g| jints(g)).collect(),
        spherical_roots: doc.spherical_roots.iter().map(|g| jints(g)).collect(),
        divisors: d
            .divisors
            .iter()
            .map(|r| DivisorOut { phi: rats(&ambient_phi(r, &d.monoid)), removed: removed(r, &d.monoid).iter().map(|a| a + 1).collect() })
            .collect(),
    }
}

pub fn recover_datum(doc: &InputDocument) -> luna_core::Result<LunaDatum> {
    let (m, psi) = build(doc)?;
    recover_divisors(&m, &psi)
}

pub fn cmd_recover(doc: &InputDocument, verbose: bool) -> OutputReport {
    let mut rep = report("recover", &[doc]);
    let d = match recover_datum(doc) {
        Ok(d) => d,
        Err(e) => return fail(rep, e),
    };
    let m = &d.monoid;
    let hidden = match hidden_divisors(m, &d.plain_divisors()) {
        Ok(h) => h,
        Err(e) => return fail(rep, e),
    };
    let active: BTreeSet<usize> = m.levi().iter().collect();
    let divisors = d
        .divisors
        .iter()
        .map(|r| {
            let rm = removed(r, m);
            DivisorRow {
                id: r.id,
                phi_lattice: rats(&r.phi.0),
                phi: rats(&ambient_phi(r, m)),
                stabilizer: stabilizer_label(&rm, &active),
                removed: rm.iter().map(|a| a + 1).collect(),
                source: source_label(&r.source),
                hidden: hidden.contains(&r.id),
            }
        })
        .collect();
    let trace = verbose.then(|| {
        d.trace
            .iter()
            .map(|n| NodeRow {
                subset: n.subset.iter().map(|i| i + 1).collect(),
                levi: labels(&n.levi),
                invertible_rank: n.invertible_rank,
                case: case_label(n.case),
                found: n.found.clone(),
            })
            .collect()
    });
    rep.warnings = d.warnings.clone();
    rep.result = Some(CommandResult::Recover(RecoverResult {
        lattice_basis: m.lattice().basis().iter().map(|b| jints(b)).collect(),
        minimal_generators: m.minimal_generators().iter().map(|g| jints(g)).collect(),
        pi_a: labels(&d.pi_a),
        root_types: type_map(&d.types),
        divisors,
        trace,
        datum: datum_out(doc, &d),
    }));
    rep
}

pub fn cmd_classify(doc: &InputDocument) -> OutputReport {
    let mut rep = report("classify", &[doc]);
    let run = || -> luna_core::Result<ClassifyResult> {
        let (m, psi) = build(doc)?;
        let rd = m.root_data();
        let types = classify_root_types(&m, &psi)?;
        let pi_a = compute_pi_a(&m)?;
        let roots = psi
            .roots()
            .iter()
            .map(|g| {
                Ok(RootRow {
                    weight: jints(g),
                    coefficients: rats(&rd.root_coefficients(&WeightVec::from_ints(g))?),
                    form: lemma_form(rd, g).to_string(),
                })
            })
            .collect::<luna_core::Result<Vec<_>>>()?;
        Ok(ClassifyResult {
            lattice_basis: m.lattice().basis().iter().map(|b| jints(b)).collect(),
            saturated: m.is_saturated()?,
            minimal_generators: m.minimal_generators().iter().map(|g| jints(g)).collect(),
            invertible_rank: m.invertible_rank(),
            pi_a: labels(&pi_a),
            root_types: type_map(&types),
            partners: types.partners.iter().map(|(&a, &b)| (label(a), label(b))).collect(),
            spherical_roots: roots,
            exceptional_triple: triple_note(rd, &psi, &pi_a),
        })
    };
    match run() {
        Ok(r) => {
            if let Ok((m, psi)) = build(doc) {
                if let Ok(pi_a) = compute_pi_a(&m) {
                    if let Ok(Some(w)) = support_coverage_warning(&m, &psi, &pi_a) {
                        rep.warnings.push(w);
                    }
                }
            }
            rep.result = Some(CommandResult::Classify(r));
            rep
        }
        Err(e) => fail(rep, e),
    }
}

fn sorted(v: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let mut v = v.to_vec();
    v.sort();
    v.dedup();
    v
}

pub fn cmd_compare(a: &InputDocument, b: &InputDocument) -> OutputReport {
    let mut rep = report("compare", &[a, b]);
    if a.spec != b.spec {
        return fail(rep, "the two documents describe different groups");
    }
    let mut notes = Vec::new();
    let mut run = || -> luna_core::Result<CompareResult> {
        let (ma, pa) = build(a)?;
        let (mb, pb) = build(b)?;
        let monoids_equal = ma.same_set(&mb)?;
        let lattices_equal = ma.lattice() == mb.lattice();
        let roots_equal = sorted(pa.roots()) == sorted(pb.roots());
        let xp = monoids_equal && lattices_equal;
        let xpp = xp && roots_equal;
        let mut res = CompareResult {
            same_group: true,
            monoids_equal,
            lattices_equal,
            spherical_roots_equal: roots_equal,
            x_plus_equivalent: xp,
            x_plus_psi_equivalent: xpp,
            recovered_identical: None,
            interpretation: None,
        };
        if xpp {
            let (da, db) = match (recover_divisors(&ma, &pa), recover_divisors(&mb, &pb)) {
                (Ok(da), Ok(db)) => (da, db),
                (Err(e), _) | (_, Err(e)) => {
                    notes.push(format!("divisors not recovered: {}", e));
                    return Ok(res);
                }
            };
            res.recovered_identical = Some(da.plain_divisors() == db.plain_divisors());
            res.interpretation = Some(
                "equal weight monoids and spherical roots determine the B-divisors with their valuations and stabilizers; \
                 smooth affine spherical varieties with these invariants are equivariantly isomorphic"
                    .into(),
            );
        }
        Ok(res)
    };
    let out = run();
    rep.warnings = notes;
    match out {
        Ok(r) => {
            rep.result = Some(CommandResult::Compare(r));
            rep
        }
        Err(e) => fail(rep, e),
    }
}

/// The datum described by a document with a `divisors` block.
pub fn given_datum(doc: &InputDocument) -> luna_core::Result<LunaDatum> {
    let (m, psi) = build(doc)?;
    let Some(ds) = &doc.divisors else {
        return Err(luna_core::Error::InvalidDatum("document has no divisors block".into()));
    };
    let x = m.lattice();
    let divisors = ds
        .iter()
        .map(|s| Divisor { phi: Functional::from_ambient(x, &s.phi), stabilizer: ParabolicSet::new(m.levi().iter().filter(|a| !s.removed.contains(a))) })
        .collect();
    LunaDatum::from_parts(m, psi, divisors)
}

pub fn cmd_validate(doc: &InputDocument) -> OutputReport {
    let mut rep = report("validate", &[doc]);
    let run = || -> luna_core::Result<(ValidateResult, Option<String>)> {
        let d = given_datum(doc)?;
        let v = validate_luna_datum(&d)?;
        let plain = d.plain_divisors();
        let res = ValidateResult {
            passed: v.passed(),
            monoid_checked: v.monoid_checked,
            divisor_count: d.divisors.len(),
            violations: v
                .violations
                .iter()
                .map(|x| ViolationRow { kind: x.kind.name().into(), root: x.root.map(label), divisor: x.divisor, detail: x.detail.clone() })
                .collect(),
            hidden_divisors: hidden_divisors(&d.monoid, &plain)?.into_iter().collect(),
            hidden_spherical_roots: hidden_spherical_roots(&d.monoid, &d.psi, &plain)?.into_iter().collect(),
            exceptional_triple: triple_note(d.root_data(), &d.psi, &d.pi_a),
        };
        Ok((res, support_coverage_warning(&d.monoid, &d.psi, &d.pi_a)?))
    };
    match run() {
        Ok((r, w)) => {
            rep.warnings.extend(w);
            if !r.passed {
                rep.status = Status::Invalid;
                rep.error = Some(format!("{} violation(s)", r.violations.len()));
            }
            rep.result = Some(CommandResult::Validate(r));
            rep
        }
        Err(e) => fail(rep, e),
    }
}

pub fn cmd_polytope(doc: &InputDocument) -> OutputReport {
    let rep = report("polytope", &[doc]);
    let run = || -> luna_core::Result<PolytopeResult> {
        let (d, source) = if doc.divisors.is_some() { (given_datum(doc)?, "given") } else { (recover_datum(doc)?, "recovered") };
        let orders = doc.orders.clone().ok_or_else(|| luna_core::Error::InvalidDatum("document has no orders".into()))?;
        let base: Vec<Rat> = match &doc.base_weight {
            Some(b) => b.iter().cloned().map(Rat::from_integer).collect(),
            None => vec![Rat::from_integer(Int::from(0)); d.monoid.dim()],
        };
        let p = moment_polytope(&d, &base, &orders)?;
        Ok(PolytopeResult {
            divisor_source: source.into(),
            empty: p.polytope.is_empty(),
            bounded: p.polytope.is_bounded(),
            vertices: p.vertices_ambient().iter().map(|v| v.iter().map(format_rat).collect()).collect(),
            rays: p.rays_ambient().iter().map(|r| jints(r)).collect::<Vec<Vec<JInt>>>(),
        })
    };
    match run() {
        Ok(r) => {
            let mut rep = rep;
            rep.result = Some(CommandResult::Polytope(r));
            rep
        }
        Err(e) => fail(rep, e),
    }
}
