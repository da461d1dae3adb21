//! Consistency checks for a set of `B`-divisors attached to `(X^+, Psi)`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use super::LunaDatum;
use crate::error::Result;
use crate::num::{format_rat, primitive_of_rat, Int, Rat};
use crate::polyhedral::RationalCone;
use crate::spherical::{lemma_form, Functional, LemmaForm, RootType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    NegativeOnGenerator,
    NonzeroOnInvertible,
    BRootDivisorCount,
    BRootPairing,
    BRootSum,
    CRoot,
    DRoot,
    ARootHasDivisor,
    LemmaSign,
    MonoidMismatch,
    StabilizerMismatch,
}

impl ViolationKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::NegativeOnGenerator => "negative-on-generator",
            Self::NonzeroOnInvertible => "nonzero-on-invertible",
            Self::BRootDivisorCount => "b-root-divisor-count",
            Self::BRootPairing => "b-root-pairing",
            Self::BRootSum => "b-root-sum",
            Self::CRoot => "c-root",
            Self::DRoot => "d-root",
            Self::ARootHasDivisor => "a-root-has-divisor",
            Self::LemmaSign => "lemma-sign",
            Self::MonoidMismatch => "monoid-mismatch",
            Self::StabilizerMismatch => "stabilizer-mismatch",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Simple root concerned, if any.
    pub root: Option<usize>,
    /// Divisor id concerned, if any.
    pub divisor: Option<usize>,
    pub detail: alloc::string::String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind.name())?;
        if let Some(r) = self.root {
            write!(f, " [a{}]", r + 1)?;
        }
        if let Some(d) = self.divisor {
            write!(f, " [D{}]", d)?;
        }
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Whether the half-space comparison with the monoid was run.
    pub monoid_checked: bool,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    pub fn kinds(&self) -> BTreeSet<ViolationKind> {
        self.violations.iter().map(|v| v.kind).collect()
    }

    fn push(&mut self, kind: ViolationKind, root: Option<usize>, divisor: Option<usize>, detail: alloc::string::String) {
        self.violations.push(Violation { kind, root, divisor, detail });
    }
}

pub fn validate_luna_datum(d: &LunaDatum) -> Result<ValidationReport> {
    let m = &d.monoid;
    let x = m.lattice();
    let rd = m.root_data();
    let pi = m.levi();
    let mut rep = ValidationReport::default();
    let alpha = |a: usize| -> Vec<Int> { rd.simple_roots[a].to_ints().expect("integral") };
    let pair = |phi: &Functional, a: usize| phi.eval(x, &alpha(a));

    // (i) sign conditions
    for r in &d.divisors {
        for (gi, g) in m.generators().iter().enumerate() {
            let v = r.phi.eval(x, g)?;
            if v.is_negative() {
                rep.push(ViolationKind::NegativeOnGenerator, None, Some(r.id), alloc::format!("value {} on generator {}", format_rat(&v), gi + 1));
            }
        }
        if m.invertible_part().basis().iter().any(|b| !r.phi.eval(x, b).map(|v| v.is_zero()).unwrap_or(false)) {
            rep.push(ViolationKind::NonzeroOnInvertible, None, Some(r.id), alloc::string::String::new());
        }
        if !r.stabilizer.is_subset(pi) {
            rep.push(ViolationKind::StabilizerMismatch, None, Some(r.id), "stabilizer contains inactive roots".into());
        }
    }

    let moved = |a: usize| -> Vec<usize> { (0..d.divisors.len()).filter(|&i| !d.divisors[i].stabilizer.contains(a)).collect() };

    for (&a, &t) in &d.types.types {
        let ms = moved(a);
        let coroot = Functional::coroot(x, a);
        match t {
            RootType::A => {
                for &i in &ms {
                    rep.push(ViolationKind::ARootHasDivisor, Some(a), Some(d.divisors[i].id), alloc::string::String::new());
                }
            }
            RootType::B => {
                if ms.len() != 2 {
                    rep.push(ViolationKind::BRootDivisorCount, Some(a), None, alloc::format!("{} divisors moved", ms.len()));
                }
                for (i, r) in d.divisors.iter().enumerate() {
                    let v = pair(&r.phi, a)?;
                    let ok = if ms.contains(&i) { v.is_one() } else { !v.is_positive() };
                    if !ok {
                        rep.push(ViolationKind::BRootPairing, Some(a), Some(r.id), alloc::format!("pairing {}", format_rat(&v)));
                    }
                }
                if ms.len() == 2 {
                    let sum: Vec<Rat> = d.divisors[ms[0]].phi.0.iter().zip(&d.divisors[ms[1]].phi.0).map(|(p, q)| p + q).collect();
                    if Functional(sum) != coroot {
                        rep.push(ViolationKind::BRootSum, Some(a), None, alloc::string::String::new());
                    }
                }
            }
            RootType::C | RootType::D => {
                let want = if t == RootType::C { coroot.scaled(&crate::num::rat(1, 2)) } else { coroot };
                let kind = if t == RootType::C { ViolationKind::CRoot } else { ViolationKind::DRoot };
                if ms.len() != 1 {
                    rep.push(kind, Some(a), None, alloc::format!("{} divisors moved", ms.len()));
                } else if d.divisors[ms[0]].phi != want {
                    rep.push(kind, Some(a), Some(d.divisors[ms[0]].id), "wrong valuation".into());
                }
            }
        }
    }

    // stabilizers against the pairing rule for b-roots
    let pi_b = d.types.of_type(RootType::B);
    for r in &d.divisors {
        for b in pi_b.iter() {
            if pair(&r.phi, b)?.is_one() == r.stabilizer.contains(b) {
                rep.push(ViolationKind::StabilizerMismatch, Some(b), Some(r.id), alloc::string::String::new());
            }
        }
    }

    // (v) sign constraint for roots of the special forms
    for g in d.psi.roots() {
        let firsts: Vec<usize> = match lemma_form(rd, g) {
            LemmaForm::Simple(i) | LemmaForm::Double(i) => alloc::vec![i],
            LemmaForm::Pair(i, j, _) => alloc::vec![i, j],
            LemmaForm::None => continue,
        };
        for r in &d.divisors {
            if firsts.iter().any(|&a| r.stabilizer.contains(a)) {
                let v = r.phi.eval(x, g)?;
                if v.is_positive() {
                    rep.push(ViolationKind::LemmaSign, Some(firsts[0]), Some(r.id), alloc::format!("pairing {} with a spherical root", format_rat(&v)));
                }
            }
        }
    }

    // (vi) half-space description of the monoid
    if m.is_saturated()? {
        rep.monoid_checked = true;
        let rank = x.rank();
        let ineqs: Vec<Vec<Int>> = d.divisors.iter().filter(|r| !r.phi.is_zero()).map(|r| primitive_of_rat(&r.phi.0)).collect();
        let from_phi = RationalCone::from_inequalities(&ineqs, &[], rank)?;
        let coords: Vec<Vec<Int>> = m.generators().iter().map(|g| x.coords(g).expect("generators lie in X")).collect();
        let from_gens = RationalCone::from_generators(&coords, rank)?;
        if from_phi != from_gens {
            rep.push(ViolationKind::MonoidMismatch, None, None, "half-spaces of the divisors cut out a different cone".into());
        }
    }
    Ok(rep)
}
