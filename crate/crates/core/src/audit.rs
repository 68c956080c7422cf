//! Exhaustive check of every biquandle axiom over its full domain.
//!
//! Failures are data: each failing entry keeps the first counterexample
//! found in index order, so the same tables always give the same report.

use alloc::vec::Vec;
use core::fmt;

use crate::biquandle::{Biquandle, Op};
use crate::fmap::{BijectivityDefect, FCandidate};
use crate::group::{GroupElement, TorusGroup, ORDER};
use crate::words::format_normal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomId {
    /// `x ◇ x = x`
    Idempotence(Op),
    /// `(a ◇ b) /◇ b = a`
    DivideAfter(Op),
    /// `(a /◇ b) ◇ b = a`
    DivideBefore(Op),
    /// `(a ◇ b) • c = (a • c) ◇ (b • c)` with `(◇, •)`
    SelfDistributive(Op, Op),
    /// `f(a ◇ b) = f(a) ◇ f(b)`
    FEquivariant(Op),
    /// `f(f^-1(a)) = f^-1(f(a)) = a`
    FInverse,
    FTotal,
    FBijective,
    /// `f(gh) = f(g) f(h)` in the group
    FMultiplicative,
    /// `x ◇ (a ∘ b) = x ◇ (a ⋆ b)`
    StrangeProduct(Op),
    /// `x ◇ (a /∘ b) = x ◇ (a /⋆ b)`
    StrangeQuotient(Op),
}

impl AxiomId {
    /// Axiom family, numbered as in the audit listing (f-candidate checks
    /// share family 5).
    pub fn family(&self) -> u8 {
        match self {
            AxiomId::Idempotence(_) => 1,
            AxiomId::DivideAfter(_) | AxiomId::DivideBefore(_) => 2,
            AxiomId::SelfDistributive(..) => 3,
            AxiomId::FEquivariant(_) => 4,
            AxiomId::FInverse | AxiomId::FTotal | AxiomId::FBijective | AxiomId::FMultiplicative => 5,
            AxiomId::StrangeProduct(_) => 6,
            AxiomId::StrangeQuotient(_) => 7,
        }
    }

    pub fn is_f_axiom(&self) -> bool {
        matches!(self.family(), 4 | 5)
    }

    pub fn is_strange(&self) -> bool {
        matches!(self.family(), 6 | 7)
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomId::Idempotence(op) => write!(f, "idempotence[{op}]"),
            AxiomId::DivideAfter(op) => write!(f, "right-inverse[{op},divide-after]"),
            AxiomId::DivideBefore(op) => write!(f, "right-inverse[{op},divide-before]"),
            AxiomId::SelfDistributive(inner, outer) => write!(f, "self-distributivity[{inner},{outer}]"),
            AxiomId::FEquivariant(op) => write!(f, "f-equivariance[{op}]"),
            AxiomId::FInverse => f.write_str("f-inverse"),
            AxiomId::FTotal => f.write_str("f-total"),
            AxiomId::FBijective => f.write_str("f-bijective"),
            AxiomId::FMultiplicative => f.write_str("f-multiplicative"),
            AxiomId::StrangeProduct(op) => write!(f, "strange-product[{op}]"),
            AxiomId::StrangeQuotient(op) => write!(f, "strange-quotient[{op}]"),
        }
    }
}

/// Named inputs and the two sides that disagree. A side is `None` where `f`
/// is undefined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub inputs: Vec<(&'static str, GroupElement)>,
    pub lhs: Option<GroupElement>,
    pub rhs: Option<GroupElement>,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, value)) in self.inputs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{name} = {}", format_normal(*value))?;
        }
        let side = |s: Option<GroupElement>| s.map_or_else(|| "undefined".into(), format_normal);
        write!(f, ": lhs = {}, rhs = {}", side(self.lhs), side(self.rhs))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(Counterexample),
    Skipped(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomEntry {
    pub id: AxiomId,
    /// Number of input tuples checked.
    pub domain: u64,
    pub outcome: Outcome,
}

impl AxiomEntry {
    pub fn passed(&self) -> bool {
        matches!(self.outcome, Outcome::Pass)
    }

    pub fn failed(&self) -> bool {
        matches!(self.outcome, Outcome::Fail(_))
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match &self.outcome {
            Outcome::Fail(c) => Some(c),
            _ => None,
        }
    }
}

impl fmt::Display for AxiomEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} domain={} ", self.id, self.domain)?;
        match &self.outcome {
            Outcome::Pass => f.write_str("PASS"),
            Outcome::Fail(c) => write!(f, "FAIL {c}"),
            Outcome::Skipped(reason) => write!(f, "SKIPPED {reason}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub entries: Vec<AxiomEntry>,
}

impl AxiomReport {
    pub fn entry(&self, id: AxiomId) -> Option<&AxiomEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    /// No checked axiom failed (skipped ones do not count).
    pub fn all_passed(&self) -> bool {
        !self.entries.iter().any(AxiomEntry::failed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomEntry> {
        self.entries.iter().filter(|e| e.failed())
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

const N: u64 = ORDER as u64;

fn elements() -> impl Iterator<Item = GroupElement> + Clone {
    GroupElement::all()
}

struct Check {
    domain: u64,
    failure: Option<Counterexample>,
}

impl Check {
    fn new() -> Self {
        Check { domain: 0, failure: None }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Counterexample) {
        self.domain += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(witness());
        }
    }

    fn entry(self, id: AxiomId) -> AxiomEntry {
        AxiomEntry {
            id,
            domain: self.domain,
            outcome: self.failure.map_or(Outcome::Pass, Outcome::Fail),
        }
    }
}

fn pair(x: GroupElement, y: GroupElement) -> Counterexample {
    Counterexample {
        inputs: Vec::new(),
        lhs: Some(x),
        rhs: Some(y),
    }
}

/// Run every axiom check. The group is needed only for the multiplicativity
/// of `f`.
pub fn audit(bq: &Biquandle, group: &TorusGroup) -> AxiomReport {
    let mut entries = Vec::new();

    for op in [Op::Circ, Op::Star] {
        let mut c = Check::new();
        for x in elements() {
            let v = bq.op(op, x, x);
            c.record(v == x, || Counterexample {
                inputs: alloc::vec![("x", x)],
                ..pair(v, x)
            });
        }
        entries.push(c.entry(AxiomId::Idempotence(op)));
    }

    for op in [Op::Circ, Op::Star] {
        let div = op.division();
        let mut after = Check::new();
        let mut before = Check::new();
        for a in elements() {
            for b in elements() {
                let v = bq.op(div, bq.op(op, a, b), b);
                after.record(v == a, || Counterexample {
                    inputs: alloc::vec![("a", a), ("b", b)],
                    ..pair(v, a)
                });
                let w = bq.op(op, bq.op(div, a, b), b);
                before.record(w == a, || Counterexample {
                    inputs: alloc::vec![("a", a), ("b", b)],
                    ..pair(w, a)
                });
            }
        }
        entries.push(after.entry(AxiomId::DivideAfter(op)));
        entries.push(before.entry(AxiomId::DivideBefore(op)));
    }

    for inner in Op::ALL {
        for outer in Op::ALL {
            let mut c = Check::new();
            for a in elements() {
                for b in elements() {
                    let ab = bq.op(inner, a, b);
                    for cc in elements() {
                        let lhs = bq.op(outer, ab, cc);
                        let rhs = bq.op(inner, bq.op(outer, a, cc), bq.op(outer, b, cc));
                        c.record(lhs == rhs, || Counterexample {
                            inputs: alloc::vec![("a", a), ("b", b), ("c", cc)],
                            ..pair(lhs, rhs)
                        });
                    }
                }
            }
            entries.push(c.entry(AxiomId::SelfDistributive(inner, outer)));
        }
    }

    match bq.f() {
        Some(f) => entries.extend(audit_f(bq, f, group)),
        None => {
            for id in [
                AxiomId::FEquivariant(Op::Circ),
                AxiomId::FEquivariant(Op::Star),
                AxiomId::FInverse,
                AxiomId::FTotal,
                AxiomId::FBijective,
                AxiomId::FMultiplicative,
            ] {
                entries.push(AxiomEntry {
                    id,
                    domain: 0,
                    outcome: Outcome::Skipped("no f attached"),
                });
            }
        }
    }

    for (quotient, left, right) in [(false, Op::Circ, Op::Star), (true, Op::CircDiv, Op::StarDiv)] {
        for op in Op::ALL {
            let mut c = Check::new();
            for a in elements() {
                for b in elements() {
                    let p = bq.op(left, a, b);
                    let q = bq.op(right, a, b);
                    for x in elements() {
                        if p == q {
                            c.domain += 1;
                            continue;
                        }
                        let lhs = bq.op(op, x, p);
                        let rhs = bq.op(op, x, q);
                        c.record(lhs == rhs, || Counterexample {
                            inputs: alloc::vec![("x", x), ("a", a), ("b", b)],
                            ..pair(lhs, rhs)
                        });
                    }
                }
            }
            let id = if quotient {
                AxiomId::StrangeQuotient(op)
            } else {
                AxiomId::StrangeProduct(op)
            };
            entries.push(c.entry(id));
        }
    }

    AxiomReport { entries }
}

fn audit_f(bq: &Biquandle, f: &FCandidate, group: &TorusGroup) -> Vec<AxiomEntry> {
    let mut out = Vec::new();
    for op in [Op::Circ, Op::Star] {
        let mut c = Check::new();
        for a in elements() {
            let Some(fa) = f.forward(a) else { continue };
            for b in elements() {
                let Some(fb) = f.forward(b) else { continue };
                let ab = bq.op(op, a, b);
                let lhs = f.forward(ab);
                let rhs = bq.op(op, fa, fb);
                c.record(lhs == Some(rhs), || Counterexample {
                    inputs: alloc::vec![("a", a), ("b", b)],
                    lhs,
                    rhs: Some(rhs),
                });
            }
        }
        out.push(c.entry(AxiomId::FEquivariant(op)));
    }

    let mut c = Check::new();
    for a in elements() {
        // f^-1(f(a)) = a
        if let Some(fa) = f.forward(a) {
            let back = f.inverse(fa);
            c.record(back == Some(a), || Counterexample {
                inputs: alloc::vec![("a", a)],
                lhs: back,
                rhs: Some(a),
            });
        }
        // f(f^-1(a)) = a
        if !f.preimages(a).is_empty() {
            let there = f.inverse(a).and_then(|x| f.forward(x));
            c.record(there == Some(a), || Counterexample {
                inputs: alloc::vec![("a", a)],
                lhs: there,
                rhs: Some(a),
            });
        }
    }
    out.push(c.entry(AxiomId::FInverse));

    let undefined = elements().find(|&x| f.forward(x).is_none());
    out.push(AxiomEntry {
        id: AxiomId::FTotal,
        domain: N,
        outcome: match undefined {
            None => Outcome::Pass,
            Some(x) => Outcome::Fail(Counterexample {
                inputs: alloc::vec![("x", x)],
                lhs: None,
                rhs: None,
            }),
        },
    });

    let verdict = f.verdict();
    out.push(AxiomEntry {
        id: AxiomId::FBijective,
        domain: N,
        outcome: match verdict.bijective {
            Ok(()) => Outcome::Pass,
            Err(BijectivityDefect::Collision { first, second, image }) => Outcome::Fail(Counterexample {
                inputs: alloc::vec![("x", first), ("y", second)],
                lhs: Some(image),
                rhs: Some(image),
            }),
            Err(BijectivityDefect::Undefined { at }) => Outcome::Fail(Counterexample {
                inputs: alloc::vec![("x", at)],
                lhs: None,
                rhs: None,
            }),
        },
    });

    // recompute against this group rather than trusting the cached verdict
    let mut c = Check::new();
    for g in group.elements() {
        let Some(fg) = f.forward(g) else { continue };
        for h in group.elements() {
            let Some(fh) = f.forward(h) else { continue };
            let Some(fgh) = f.forward(group.mul(g, h)) else { continue };
            let prod = group.mul(fg, fh);
            c.record(fgh == prod, || Counterexample {
                inputs: alloc::vec![("g", g), ("h", h)],
                ..pair(fgh, prod)
            });
        }
    }
    out.push(c.entry(AxiomId::FMultiplicative));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, Convention};

    fn group() -> TorusGroup {
        build_group(Convention::ALL[0]).unwrap()
    }

    #[test]
    fn entry_count_and_order() {
        let g = group();
        let bq = Biquandle::from_group(&g, 2).unwrap();
        let report = audit(&bq, &g);
        // 2 + 4 + 16 + 6 f-entries + 4 + 4
        assert_eq!(report.entries.len(), 36);
        let families: Vec<u8> = report.entries.iter().map(|e| e.id.family()).collect();
        assert!(families.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn no_f_means_skipped_not_failed() {
        let g = group();
        let bq = Biquandle::from_group(&g, 2).unwrap();
        let report = audit(&bq, &g);
        assert!(report.all_passed());
        let e = report.entry(AxiomId::FBijective).unwrap();
        assert!(matches!(e.outcome, Outcome::Skipped(_)));
    }

    #[test]
    fn identity_f_passes_every_f_axiom() {
        let g = group();
        let bq = Biquandle::from_group(&g, 2).unwrap().with_f(FCandidate::identity(&g));
        let report = audit(&bq, &g);
        assert!(report.all_passed(), "{report}");
        assert_eq!(report.entry(AxiomId::FEquivariant(Op::Star)).unwrap().domain, N * N);
    }

    #[test]
    fn domains_are_full() {
        let g = group();
        let bq = Biquandle::from_group(&g, 2).unwrap();
        let report = audit(&bq, &g);
        assert_eq!(report.entry(AxiomId::Idempotence(Op::Star)).unwrap().domain, N);
        assert_eq!(report.entry(AxiomId::DivideAfter(Op::Star)).unwrap().domain, N * N);
        assert_eq!(
            report.entry(AxiomId::SelfDistributive(Op::StarDiv, Op::Circ)).unwrap().domain,
            N * N * N
        );
        assert_eq!(report.entry(AxiomId::StrangeQuotient(Op::Star)).unwrap().domain, N * N * N);
    }

    #[test]
    fn counterexample_line_is_readable() {
        let g = group();
        let bq = Biquandle::from_group(&g, 1).unwrap();
        let report = audit(&bq, &g);
        let line = report.entry(AxiomId::StrangeProduct(Op::Circ)).unwrap().to_string();
        assert!(line.starts_with("strange-product[circ] domain=262144 FAIL x = "), "{line}");
    }
}
