//! Colorings of long diagrams by a biquandle.
//!
//! Each under pass gives `out = in ◇ over` (sign `+`) or `in = out ◇ over`
//! (sign `-`), with `◇` equal to `∘` when the crossing is met over-first and
//! `⋆` when it is met under-first. A forward virtual pass gives
//! `out = f(in)` and an inverse one `f(out) = in`; the inverse form is a
//! relation on preimages, so `f` need not be total or injective.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::biquandle::{Biquandle, Op};
use crate::diagram::{CrossingClass, LongDiagram, Pass, PassArcs, Sign};
use crate::fmap::{FCandidate, FDirection, FKind};
use crate::group::{GroupElement, ORDER};

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ColoringError {
    #[error("diagram has virtual passes but the biquandle has no f map")]
    MissingF,
    #[error("classical mode needs a diagram without virtual passes")]
    HasVirtualPasses,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Classical {
        crossing: u32,
        op: Op,
        sign: Sign,
        incoming: usize,
        outgoing: usize,
        over: usize,
    },
    Virtual {
        crossing: u32,
        direction: FDirection,
        incoming: usize,
        outgoing: usize,
    },
}

impl Relation {
    pub fn incoming(&self) -> usize {
        match *self {
            Relation::Classical { incoming, .. } | Relation::Virtual { incoming, .. } => incoming,
        }
    }

    pub fn outgoing(&self) -> usize {
        match *self {
            Relation::Classical { outgoing, .. } | Relation::Virtual { outgoing, .. } => outgoing,
        }
    }

    /// All arcs the relation mentions.
    pub fn arcs(&self) -> impl Iterator<Item = usize> {
        let (a, b, c) = match *self {
            Relation::Classical {
                incoming, outgoing, over, ..
            } => (incoming, outgoing, Some(over)),
            Relation::Virtual { incoming, outgoing, .. } => (incoming, outgoing, None),
        };
        [Some(a), Some(b), c].into_iter().flatten()
    }

    /// `out = in ◇ over` form of a classical relation.
    fn solved_op(op: Op, sign: Sign) -> Op {
        match sign {
            Sign::Plus => op,
            Sign::Minus => op.division(),
        }
    }

    /// Check against arc colors indexed from 1 (`colors[0]` is arc 1).
    pub fn holds(&self, colors: &[GroupElement], bq: &Biquandle) -> bool {
        let c = |arc: usize| colors[arc - 1];
        match *self {
            Relation::Classical {
                op,
                sign,
                incoming,
                outgoing,
                over,
                ..
            } => match sign {
                Sign::Plus => c(outgoing) == bq.op(op, c(incoming), c(over)),
                Sign::Minus => c(incoming) == bq.op(op, c(outgoing), c(over)),
            },
            Relation::Virtual {
                direction,
                incoming,
                outgoing,
                ..
            } => {
                let Some(f) = bq.f() else { return false };
                match direction {
                    FDirection::Forward => f.forward(c(incoming)) == Some(c(outgoing)),
                    FDirection::Inverse => f.forward(c(outgoing)) == Some(c(incoming)),
                }
            }
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Relation::Classical {
                op,
                sign: Sign::Plus,
                incoming,
                outgoing,
                over,
                ..
            } => write!(f, "a{outgoing} = a{incoming} {op} a{over}"),
            Relation::Classical {
                op,
                sign: Sign::Minus,
                incoming,
                outgoing,
                over,
                ..
            } => write!(f, "a{incoming} = a{outgoing} {op} a{over}"),
            Relation::Virtual {
                direction: FDirection::Forward,
                incoming,
                outgoing,
                ..
            } => write!(f, "a{outgoing} = f(a{incoming})"),
            Relation::Virtual {
                direction: FDirection::Inverse,
                incoming,
                outgoing,
                ..
            } => write!(f, "f(a{outgoing}) = a{incoming}"),
        }
    }
}

/// One relation per break pass, in traversal order, so relation `i`
/// determines arc `i + 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSet {
    pub arc_count: usize,
    pub relations: Vec<Relation>,
}

fn constraints(d: &LongDiagram, classical_mode: bool) -> ConstraintSet {
    let arcs = d.arcs();
    let classes = d.classify();
    let relations = d
        .passes
        .iter()
        .zip(&arcs.passes)
        .filter_map(|(pass, pa)| {
            let PassArcs::Break { incoming, outgoing } = *pa else {
                return None;
            };
            Some(match *pass {
                Pass::Under { id, sign } => Relation::Classical {
                    crossing: id,
                    op: match (classical_mode, classes[&id]) {
                        (true, _) | (false, CrossingClass::EarlyOver) => Op::Circ,
                        (false, CrossingClass::EarlyUnder) => Op::Star,
                    },
                    sign,
                    incoming,
                    outgoing,
                    over: arcs.over_arc(d, id).expect("validated diagrams pair every crossing"),
                },
                Pass::Virtual { id, direction } => Relation::Virtual {
                    crossing: id,
                    direction,
                    incoming,
                    outgoing,
                },
                Pass::Over { .. } => unreachable!("over passes carry an arc"),
            })
        })
        .collect();
    ConstraintSet {
        arc_count: arcs.arc_count,
        relations,
    }
}

pub fn build_constraints(d: &LongDiagram, bq: &Biquandle) -> Result<ConstraintSet, ColoringError> {
    if !d.is_classical() && bq.f().is_none() {
        return Err(ColoringError::MissingF);
    }
    Ok(constraints(d, false))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Engine {
    #[default]
    Propagation,
    Exhaustive,
}

impl Engine {
    pub const ALL: [Engine; 2] = [Engine::Propagation, Engine::Exhaustive];

    pub fn name(self) -> &'static str {
        match self {
            Engine::Propagation => "propagation",
            Engine::Exhaustive => "exhaustive",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Arc colors; `arcs[0]` is arc 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coloring {
    pub arcs: Vec<GroupElement>,
}

impl Coloring {
    pub fn arc(&self, index: usize) -> GroupElement {
        self.arcs[index - 1]
    }

    pub fn last(&self) -> GroupElement {
        *self.arcs.last().expect("a long diagram has at least one arc")
    }
}

/// Audit summary of the `f` used for a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FStamp {
    pub kind: FKind,
    pub defined: usize,
    pub bijective: bool,
    pub multiplicative: bool,
}

impl FStamp {
    pub fn of(f: &FCandidate) -> Self {
        FStamp {
            kind: f.kind(),
            defined: f.verdict().defined,
            bijective: f.is_bijective(),
            multiplicative: f.is_multiplicative(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantResult {
    pub start_color: GroupElement,
    /// Last-arc color the search was restricted to, if any.
    pub end_pin: Option<GroupElement>,
    pub engine: Engine,
    /// Sorted by arc values.
    pub colorings: Vec<Coloring>,
    pub end_colors: BTreeSet<GroupElement>,
    pub f: Option<FStamp>,
}

impl InvariantResult {
    pub fn count(&self) -> usize {
        self.colorings.len()
    }
}

type Domain = u64;

fn bit(g: GroupElement) -> Domain {
    1 << g.index()
}

fn members(d: Domain) -> impl Iterator<Item = GroupElement> {
    (0..ORDER).filter(move |i| d >> i & 1 == 1).map(GroupElement::from_index)
}

struct Search<'a> {
    cs: &'a ConstraintSet,
    bq: &'a Biquandle,
    domains: Vec<Domain>,
    colors: Vec<Option<GroupElement>>,
    found: Vec<Coloring>,
}

impl Search<'_> {
    fn emit(&mut self) {
        let arcs = self.colors.iter().map(|c| c.expect("complete assignment")).collect();
        self.found.push(Coloring { arcs });
    }

    fn allowed(&self, arc: usize, g: GroupElement) -> bool {
        self.domains[arc - 1] & bit(g) != 0
    }

    /// Traversal order: relation `step` fixes its outgoing arc. An over arc
    /// met before its color is known is guessed here and checked once the
    /// traversal reaches it.
    fn propagate(&mut self, step: usize) {
        let Some(&rel) = self.cs.relations.get(step) else {
            self.emit();
            return;
        };
        if let Relation::Classical { over, .. } = rel {
            if self.colors[over - 1].is_none() {
                for g in members(self.domains[over - 1]) {
                    self.colors[over - 1] = Some(g);
                    self.propagate(step);
                }
                self.colors[over - 1] = None;
                return;
            }
        }
        let input = self.colors[rel.incoming() - 1].expect("arcs are fixed in order");
        let outgoing = rel.outgoing();
        let try_value = |s: &mut Self, v: GroupElement| {
            if !s.allowed(outgoing, v) {
                return;
            }
            match s.colors[outgoing - 1] {
                Some(guess) if guess != v => {}
                Some(_) => s.propagate(step + 1),
                None => {
                    s.colors[outgoing - 1] = Some(v);
                    s.propagate(step + 1);
                    s.colors[outgoing - 1] = None;
                }
            }
        };
        match rel {
            Relation::Classical { op, sign, over, .. } => {
                let over_color = self.colors[over - 1].expect("guessed above");
                let v = self.bq.op(Relation::solved_op(op, sign), input, over_color);
                try_value(self, v);
            }
            Relation::Virtual { direction, .. } => {
                let f = self.bq.f().expect("checked when building constraints");
                match direction {
                    FDirection::Forward => {
                        if let Some(v) = f.forward(input) {
                            try_value(self, v);
                        }
                    }
                    FDirection::Inverse => {
                        for &v in f.preimages(input) {
                            try_value(self, v);
                        }
                    }
                }
            }
        }
    }

    /// Values for `arc` consistent with every relation whose other arcs
    /// are already colored.
    fn candidates(&mut self, arc: usize) -> Domain {
        let mut out = 0;
        for g in members(self.domains[arc - 1]) {
            self.colors[arc - 1] = Some(g);
            let filled: Vec<GroupElement> = self
                .colors
                .iter()
                .map(|c| c.unwrap_or(GroupElement::IDENTITY))
                .collect();
            let ok = self.cs.relations.iter().all(|r| {
                !r.arcs().any(|a| a == arc)
                    || r.arcs().any(|a| self.colors[a - 1].is_none())
                    || r.holds(&filled, self.bq)
            });
            if ok {
                out |= bit(g);
            }
        }
        self.colors[arc - 1] = None;
        out
    }

    /// Backtracking over all arcs with forward checking, always branching on
    /// the arc with the fewest remaining values.
    fn exhaustive(&mut self) {
        let mut best: Option<(usize, Domain)> = None;
        for arc in 1..=self.cs.arc_count {
            if self.colors[arc - 1].is_some() {
                continue;
            }
            let c = self.candidates(arc);
            if best.is_none_or(|(_, b)| c.count_ones() < b.count_ones()) {
                best = Some((arc, c));
            }
            if c == 0 {
                break;
            }
        }
        let Some((arc, values)) = best else {
            self.emit();
            return;
        };
        for g in members(values) {
            self.colors[arc - 1] = Some(g);
            self.exhaustive();
        }
        self.colors[arc - 1] = None;
    }
}

pub fn solve(
    cs: &ConstraintSet,
    bq: &Biquandle,
    start: GroupElement,
    end: Option<GroupElement>,
    engine: Engine,
) -> InvariantResult {
    let mut domains = vec![Domain::MAX; cs.arc_count];
    domains[0] = bit(start);
    if let Some(end) = end {
        domains[cs.arc_count - 1] &= bit(end);
    }
    let mut search = Search {
        cs,
        bq,
        domains,
        colors: vec![None; cs.arc_count],
        found: Vec::new(),
    };
    match engine {
        Engine::Propagation => {
            if search.allowed(1, start) {
                search.colors[0] = Some(start);
                search.propagate(0);
            }
        }
        Engine::Exhaustive => search.exhaustive(),
    }
    let mut colorings = search.found;
    colorings.sort();
    colorings.dedup();
    let end_colors = colorings.iter().map(Coloring::last).collect();
    InvariantResult {
        start_color: start,
        end_pin: end,
        engine,
        colorings,
        end_colors,
        f: bq.f().map(FStamp::of),
    }
}

/// Build constraints and solve in one call.
pub fn color(
    d: &LongDiagram,
    bq: &Biquandle,
    start: GroupElement,
    end: Option<GroupElement>,
    engine: Engine,
) -> Result<InvariantResult, ColoringError> {
    let cs = build_constraints(d, bq)?;
    Ok(solve(&cs, bq, start, end, engine))
}

/// Index of the first relation the coloring violates.
pub fn first_violation(coloring: &Coloring, cs: &ConstraintSet, bq: &Biquandle) -> Option<usize> {
    cs.relations.iter().position(|r| !r.holds(&coloring.arcs, bq))
}

/// Relations of quandle mode, where every crossing uses `∘`.
pub fn classical_constraints(d: &LongDiagram) -> Result<ConstraintSet, ColoringError> {
    if !d.is_classical() {
        return Err(ColoringError::HasVirtualPasses);
    }
    Ok(constraints(d, true))
}

/// Quandle colorings: every crossing uses `∘`, whatever its class.
pub fn classical_color_count(
    d: &LongDiagram,
    bq: &Biquandle,
    start: GroupElement,
    engine: Engine,
) -> Result<InvariantResult, ColoringError> {
    let cs = classical_constraints(d)?;
    let mut result = solve(&cs, bq, start, None, engine);
    result.f = None;
    Ok(result)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Distinguished,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Distinguished => "DISTINGUISHED",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distinction {
    pub verdict: Verdict,
    pub counts_differ: bool,
    pub end_colors_differ: bool,
    pub first: InvariantResult,
    pub second: InvariantResult,
}

pub fn distinguish(
    d1: &LongDiagram,
    d2: &LongDiagram,
    bq: &Biquandle,
    start: GroupElement,
    engine: Engine,
) -> Result<Distinction, ColoringError> {
    let first = color(d1, bq, start, None, engine)?;
    let second = color(d2, bq, start, None, engine)?;
    let counts_differ = first.count() != second.count();
    let end_colors_differ = first.end_colors != second.end_colors;
    Ok(Distinction {
        verdict: if counts_differ || end_colors_differ {
            Verdict::Distinguished
        } else {
            Verdict::Inconclusive
        },
        counts_differ,
        end_colors_differ,
        first,
        second,
    })
}
