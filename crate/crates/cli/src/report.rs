//! Report data shared by the text and JSON renderers.
//!
//! Every command builds one of these values; `--format json` serializes it
//! and `--format text` renders the same fields, so both carry identical
//! data. Group elements appear as vertex labels `a^k b^l`.

use std::fmt::Write as _;

use serde::Serialize;

use lvknot::audit::{AxiomEntry, AxiomReport, Outcome};
use lvknot::calibrate::Calibration;
use lvknot::coloring::{ConstraintSet, Distinction, InvariantResult};
use lvknot::diagram::LongDiagram;
use lvknot::fmap::{BijectivityDefect, FCandidate};
use lvknot::group::{GroupElement, ParityTable, TorusGroup};
use lvknot::instance::PARITY_REFERENCE;
use lvknot::words::{format_normal, format_word};

pub fn label(g: GroupElement) -> String {
    format_normal(g)
}

fn labels(it: impl IntoIterator<Item = GroupElement>) -> Vec<String> {
    it.into_iter().map(label).collect()
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report<T> {
    pub command: &'static str,
    pub convention: String,
    #[serde(flatten)]
    pub body: T,
}

pub trait Render {
    fn render(&self, out: &mut String);
}

impl<T: Render + Serialize> Report<T> {
    pub fn text(&self) -> String {
        let mut out = format!("# lvknot {} | convention: {}\n", self.command, self.convention);
        self.body.render(&mut out);
        out
    }

    pub fn json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EvalBody {
    pub expr: String,
    pub label: String,
    pub word: String,
    pub k: u8,
    pub l: u8,
    pub order: u32,
    pub central: bool,
}

impl EvalBody {
    pub fn new(expr: &str, g: GroupElement, group: &TorusGroup) -> Self {
        EvalBody {
            expr: expr.to_string(),
            label: label(g),
            word: format_word(g, group),
            k: g.k(),
            l: g.l(),
            order: group.order_of(g),
            central: group.is_central(g),
        }
    }
}

impl Render for EvalBody {
    fn render(&self, out: &mut String) {
        let _ = writeln!(out, "{}", self.label);
        let _ = writeln!(out, "path word: {}", self.word);
        let _ = writeln!(out, "order: {}", self.order);
        let _ = writeln!(out, "central: {}", yes_no(self.central));
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CenterBody {
    pub size: usize,
    pub members: Vec<String>,
}

impl Render for CenterBody {
    fn render(&self, out: &mut String) {
        let _ = writeln!(out, "center ({} elements): {}", self.size, self.members.join(", "));
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TableBody {
    /// Element `i` has label `elements[i]`.
    pub elements: Vec<String>,
    /// `products[i][j]` is the index of `elements[i] * elements[j]`.
    pub products: Vec<Vec<usize>>,
}

impl TableBody {
    pub fn new(group: &TorusGroup) -> Self {
        TableBody {
            elements: labels(group.elements()),
            products: group
                .elements()
                .map(|x| group.elements().map(|y| group.mul(x, y).index()).collect())
                .collect(),
        }
    }
}

impl Render for TableBody {
    fn render(&self, out: &mut String) {
        out.push_str("# cell kl is the product a^k b^l; rows and columns in the same order\n");
        let code = |i: usize| format!("{}{}", i / 8, i % 8);
        out.push_str("   ");
        for j in 0..self.elements.len() {
            let _ = write!(out, " {}", code(j));
        }
        out.push('\n');
        for (i, row) in self.products.iter().enumerate() {
            out.push_str(&code(i));
            out.push(' ');
            for &p in row {
                let _ = write!(out, " {}", code(p));
            }
            out.push('\n');
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ParityRowOut {
    pub i: u8,
    pub j: u8,
    pub k: u8,
    pub l: u8,
    pub values: Vec<String>,
    pub central: bool,
    pub reference_alpha: String,
    pub reference_beta: String,
    pub reference_value: String,
    pub matches: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ParityBody {
    pub all_central: bool,
    pub some_nontrivial: bool,
    pub errata: usize,
    pub rows: Vec<ParityRowOut>,
}

impl ParityBody {
    pub fn new(table: &ParityTable) -> Self {
        let rows: Vec<ParityRowOut> = PARITY_REFERENCE
            .iter()
            .map(|r| {
                let (i, j, k, l) = r.parities;
                let row = table.row(i, j, k, l);
                let expected = r.expected(i, j);
                ParityRowOut {
                    i,
                    j,
                    k,
                    l,
                    values: labels(row.values.iter().copied()),
                    central: row.all_central,
                    reference_alpha: r.alpha.to_string(),
                    reference_beta: r.beta.to_string(),
                    reference_value: label(expected),
                    matches: row.constant() == Some(expected),
                }
            })
            .collect();
        ParityBody {
            all_central: table.all_central(),
            some_nontrivial: table.some_nontrivial(),
            errata: rows.iter().filter(|r| !r.matches).count(),
            rows,
        }
    }
}

impl Render for ParityBody {
    fn render(&self, out: &mut String) {
        out.push_str("# A = x y^2 x^-1 y^-2 with x = a^k b^l, y = a^i b^j, by parity class\n");
        let _ = writeln!(out, "{:<8} {:<10} {:<8} {:<14} match", "i j k l", "A", "central", "reference");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{} {} {} {}  {:<10} {:<8} {:<14} {}",
                r.i,
                r.j,
                r.k,
                r.l,
                r.values.join(","),
                yes_no(r.central),
                format!("({}, {})", r.reference_alpha, r.reference_beta),
                yes_no(r.matches)
            );
        }
        let _ = writeln!(
            out,
            "all central: {}; some non-trivial: {}; errata: {}",
            yes_no(self.all_central),
            yes_no(self.some_nontrivial),
            self.errata
        );
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReadingOut {
    pub word: String,
    pub value: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnchorOut {
    pub id: String,
    pub required: bool,
    pub expected: String,
    pub readings: Vec<ReadingOut>,
    pub matched: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConventionOut {
    pub convention: String,
    pub reproduces_required: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub anchors: Vec<AnchorOut>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CalibrateBody {
    pub selected: String,
    pub conventions: Vec<ConventionOut>,
}

impl CalibrateBody {
    pub fn new(cal: &Calibration) -> Self {
        let conventions = cal
            .outcomes
            .iter()
            .map(|o| {
                let (anchors, error) = match &o.anchors {
                    Ok(list) => (
                        list.iter()
                            .map(|a| AnchorOut {
                                id: a.anchor.id.to_string(),
                                required: a.anchor.required,
                                expected: label(GroupElement::from_normal(
                                    a.anchor.expected.0 as i64,
                                    a.anchor.expected.1 as i64,
                                )),
                                readings: a
                                    .anchor
                                    .readings
                                    .iter()
                                    .zip(&a.values)
                                    .map(|(w, v)| ReadingOut {
                                        word: w.to_string(),
                                        value: label(*v),
                                    })
                                    .collect(),
                                matched: a.matched(),
                            })
                            .collect(),
                        None,
                    ),
                    Err(e) => (Vec::new(), Some(e.to_string())),
                };
                ConventionOut {
                    convention: o.convention.to_string(),
                    reproduces_required: o.reproduces_required(),
                    error,
                    anchors,
                }
            })
            .collect();
        CalibrateBody {
            selected: cal.convention.to_string(),
            conventions,
        }
    }
}

impl Render for CalibrateBody {
    fn render(&self, out: &mut String) {
        for c in &self.conventions {
            let mark = if c.convention == self.selected { "*" } else { " " };
            let _ = writeln!(
                out,
                "{mark} {}: {}",
                c.convention,
                if c.reproduces_required { "reproduces all required anchors" } else { "rejected" }
            );
            if let Some(e) = &c.error {
                let _ = writeln!(out, "    {e}");
            }
            for a in &c.anchors {
                let readings: Vec<String> = a.readings.iter().map(|r| format!("{} = {}", r.word, r.value)).collect();
                let _ = writeln!(
                    out,
                    "    ({}) {} [expected {}{}] {}",
                    a.id,
                    readings.join("; "),
                    a.expected,
                    if a.required { "" } else { ", informational" },
                    if a.matched { "match" } else { "no match" }
                );
            }
        }
        let _ = writeln!(out, "selected: {}", self.selected);
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FSummary {
    pub kind: String,
    pub defined: usize,
    pub total: bool,
    pub bijective: bool,
    pub multiplicative: bool,
}

impl FSummary {
    pub fn new(f: &FCandidate) -> Self {
        FSummary {
            kind: f.kind().to_string(),
            defined: f.verdict().defined,
            total: f.is_total(),
            bijective: f.is_bijective(),
            multiplicative: f.is_multiplicative(),
        }
    }

    fn line(&self) -> String {
        format!(
            "{} ({} of 64 defined, bijective: {}, multiplicative: {})",
            self.kind,
            self.defined,
            yes_no(self.bijective),
            yes_no(self.multiplicative)
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyOut {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FAuditOut {
    pub kind: String,
    pub defined: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub well_defined: Option<PropertyOut>,
    pub bijective: PropertyOut,
    pub multiplicative: PropertyOut,
    pub multiplicative_pairs_checked: u64,
}

impl FAuditOut {
    pub fn new(f: &FCandidate) -> Self {
        let v = f.verdict();
        FAuditOut {
            kind: f.kind().to_string(),
            defined: v.defined,
            well_defined: v.well_defined.as_ref().map(|r| PropertyOut {
                holds: r.is_ok(),
                witness: r.as_ref().err().map(|w| {
                    format!(
                        "{} is reached by `{}` and `{}`, whose images are {} and {}",
                        label(w.element),
                        w.first,
                        w.second,
                        label(w.first_image),
                        label(w.second_image)
                    )
                }),
            }),
            bijective: PropertyOut {
                holds: v.bijective.is_ok(),
                witness: v.bijective.err().map(|d| match d {
                    BijectivityDefect::Collision { first, second, image } => {
                        format!("f({}) = f({}) = {}", label(first), label(second), label(image))
                    }
                    BijectivityDefect::Undefined { at } => format!("f({}) is undefined", label(at)),
                }),
            },
            multiplicative: PropertyOut {
                holds: v.multiplicative.is_ok(),
                witness: v.multiplicative.err().map(|w| {
                    format!(
                        "g = {}, h = {}: f(gh) = {}, f(g)f(h) = {}",
                        label(w.g),
                        label(w.h),
                        label(w.image_of_product),
                        label(w.product_of_images)
                    )
                }),
            },
            multiplicative_pairs_checked: v.multiplicative_pairs_checked,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CounterexampleOut {
    pub inputs: Vec<(String, String)>,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomOut {
    pub axiom: String,
    pub family: u8,
    pub domain: u64,
    pub outcome: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<CounterexampleOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip)]
    line: String,
}

impl AxiomOut {
    fn new(e: &AxiomEntry) -> Self {
        let (outcome, counterexample, reason) = match &e.outcome {
            Outcome::Pass => ("pass", None, None),
            Outcome::Fail(c) => (
                "fail",
                Some(CounterexampleOut {
                    inputs: c.inputs.iter().map(|(n, v)| (n.to_string(), label(*v))).collect(),
                    lhs: c.lhs.map(label),
                    rhs: c.rhs.map(label),
                }),
                None,
            ),
            Outcome::Skipped(r) => ("skipped", None, Some(r.to_string())),
        };
        AxiomOut {
            axiom: e.id.to_string(),
            family: e.id.family(),
            domain: e.domain,
            outcome,
            counterexample,
            reason,
            line: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditBody {
    pub n: u32,
    pub f: Option<FAuditOut>,
    pub all_passed: bool,
    pub failures: usize,
    pub axioms: Vec<AxiomOut>,
}

impl AuditBody {
    pub fn new(n: u32, f: Option<&FCandidate>, report: &AxiomReport) -> Self {
        AuditBody {
            n,
            f: f.map(FAuditOut::new),
            all_passed: report.all_passed(),
            failures: report.failures().count(),
            axioms: report.entries.iter().map(AxiomOut::new).collect(),
        }
    }
}

impl Render for AuditBody {
    fn render(&self, out: &mut String) {
        let _ = writeln!(out, "# n = {}", self.n);
        match &self.f {
            None => out.push_str("# f: none\n"),
            Some(f) => {
                let _ = writeln!(out, "# f: {} ({} of 64 defined)", f.kind, f.defined);
                let prop = |name: &str, p: &PropertyOut| {
                    format!(
                        "#   {name}: {}{}\n",
                        yes_no(p.holds),
                        p.witness.as_ref().map(|w| format!(" ({w})")).unwrap_or_default()
                    )
                };
                if let Some(w) = &f.well_defined {
                    out.push_str(&prop("well defined on G", w));
                }
                out.push_str(&prop("bijective", &f.bijective));
                out.push_str(&prop(
                    &format!("multiplicative over {} pairs", f.multiplicative_pairs_checked),
                    &f.multiplicative,
                ));
            }
        }
        for a in &self.axioms {
            let _ = writeln!(out, "{}", a.line);
        }
        let _ = writeln!(
            out,
            "result: {} ({} failing)",
            if self.all_passed { "PASS" } else { "FAIL" },
            self.failures
        );
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DiagramOut {
    pub name: Option<String>,
    pub passes: String,
    pub arcs: usize,
}

impl DiagramOut {
    pub fn new(d: &LongDiagram) -> Self {
        DiagramOut {
            name: d.name.clone(),
            passes: d.passes.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" "),
            arcs: d.arc_count(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ColorBody {
    pub diagram: DiagramOut,
    pub mode: &'static str,
    pub n: u32,
    pub f: Option<FSummary>,
    pub engine: String,
    pub relations: Vec<String>,
    pub start: String,
    pub start_expr: String,
    pub end_pin: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub end_expr: Option<String>,
    pub count: usize,
    pub colorings: Vec<Vec<String>>,
    pub end_colors: Vec<String>,
}

impl ColorBody {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        d: &LongDiagram,
        cs: &ConstraintSet,
        result: &InvariantResult,
        n: u32,
        f: Option<&FCandidate>,
        classical: bool,
        start_expr: &str,
        end_expr: Option<&str>,
    ) -> Self {
        ColorBody {
            diagram: DiagramOut::new(d),
            mode: if classical { "classical" } else { "biquandle" },
            n,
            f: f.map(FSummary::new),
            engine: result.engine.to_string(),
            relations: cs.relations.iter().map(|r| r.to_string()).collect(),
            start: label(result.start_color),
            start_expr: start_expr.to_string(),
            end_pin: result.end_pin.map(label),
            end_expr: end_expr.map(str::to_string),
            count: result.count(),
            colorings: result.colorings.iter().map(|c| labels(c.arcs.iter().copied())).collect(),
            end_colors: labels(result.end_colors.iter().copied()),
        }
    }
}

impl Render for ColorBody {
    fn render(&self, out: &mut String) {
        let _ = writeln!(out, "# n = {} | mode: {} | engine: {}", self.n, self.mode, self.engine);
        let _ = writeln!(
            out,
            "# f: {}",
            self.f.as_ref().map_or_else(|| "none".to_string(), FSummary::line)
        );
        let _ = writeln!(
            out,
            "diagram: {} [{}] ({} arcs)",
            self.diagram.name.as_deref().unwrap_or("unnamed"),
            self.diagram.passes,
            self.diagram.arcs
        );
        out.push_str("relations:\n");
        for r in &self.relations {
            let _ = writeln!(out, "  {r}");
        }
        out.push_str("# colors are vertex labels a^k b^l; `lvknot group eval <word>` gives the label of a word\n");
        let _ = writeln!(out, "start: a1 = {} (from `{}`)", self.start, self.start_expr);
        if let (Some(end), Some(expr)) = (&self.end_pin, &self.end_expr) {
            let _ = writeln!(out, "end pinned: a{} = {end} (from `{expr}`)", self.diagram.arcs);
        }
        let _ = writeln!(out, "colorings: {}", self.count);
        for (i, c) in self.colorings.iter().enumerate() {
            let arcs: Vec<String> = c.iter().enumerate().map(|(j, v)| format!("a{} = {v}", j + 1)).collect();
            let _ = writeln!(out, "  {:>3}. {}", i + 1, arcs.join(" | "));
        }
        let _ = writeln!(out, "end colors: {{{}}}", self.end_colors.join(", "));
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DistinguishBody {
    pub verdict: String,
    pub counts_differ: bool,
    pub end_colors_differ: bool,
    pub first: ColorBody,
    pub second: ColorBody,
}

impl DistinguishBody {
    pub fn new(d: &Distinction, first: ColorBody, second: ColorBody) -> Self {
        DistinguishBody {
            verdict: d.verdict.to_string(),
            counts_differ: d.counts_differ,
            end_colors_differ: d.end_colors_differ,
            first,
            second,
        }
    }
}

impl Render for DistinguishBody {
    fn render(&self, out: &mut String) {
        for (title, body) in [("first", &self.first), ("second", &self.second)] {
            let _ = writeln!(out, "== {title} ==");
            body.render(out);
        }
        let _ = writeln!(out, "== verdict ==");
        let _ = writeln!(
            out,
            "counts: {} vs {} ({}); end colors: {{{}}} vs {{{}}} ({})",
            self.first.count,
            self.second.count,
            if self.counts_differ { "differ" } else { "equal" },
            self.first.end_colors.join(", "),
            self.second.end_colors.join(", "),
            if self.end_colors_differ { "differ" } else { "equal" }
        );
        let _ = writeln!(out, "{}", self.verdict);
    }
}
