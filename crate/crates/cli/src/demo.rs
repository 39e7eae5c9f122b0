//! Built-in walkthrough: a particle on a line with one momentum and two position
//! observations, from the uncertainty products to the epistemic checks.

use std::fmt::Write as _;

use anyhow::Result;
use epiq::classical::{self, TautologyVerdict};
use epiq::epistemic;
use epiq::formula::{parse, Atom, Formula};
use epiq::quantum::{self, ratio};
use epiq::{IntervalProposition, ObservableKind, PhysicsConfig, Theory};
use serde::Serialize;

use crate::report::{axiom_reports, product_verdict, AxiomReport, CheckReport, PropositionReport, TableReport};

#[derive(Debug, Serialize)]
pub struct ProductReport {
    pub momentum: String,
    pub position: String,
    pub interval: String,
    pub momentum_width: String,
    pub position_width: String,
    pub product: String,
    pub bound: String,
    pub compatible: bool,
    pub text: String,
}

#[derive(Debug, Serialize)]
pub struct TautologyReport {
    pub formula: String,
    pub verdict: &'static str,
    pub valuations: u64,
}

#[derive(Debug, Serialize)]
pub struct MergeReport {
    pub from: [String; 2],
    pub merged: PropositionReport,
    pub product: ProductReport,
    pub axioms: Vec<AxiomReport>,
}

#[derive(Debug, Serialize)]
pub struct DemoReport {
    pub bound: String,
    pub propositions: Vec<PropositionReport>,
    pub products: Vec<ProductReport>,
    pub distributivity: TautologyReport,
    pub table: TableReport,
    pub axioms: Vec<AxiomReport>,
    pub joint_knowledge: CheckReport,
    pub laws: Vec<CheckReport>,
    pub merge: MergeReport,
    pub merged_check: CheckReport,
}

fn interval(name: &str, kind: ObservableKind, lo: (i64, i64), hi: (i64, i64)) -> IntervalProposition {
    IntervalProposition::new(Atom::new(name).expect("valid atom"), kind, ratio(lo.0, lo.1), ratio(hi.0, hi.1))
        .expect("non-empty interval")
}

fn product(m: &IntervalProposition, x: &IntervalProposition, label: &str, cfg: &PhysicsConfig) -> Result<ProductReport> {
    let value = quantum::uncertainty_product(m, x)?;
    let compatible = quantum::compatible(m, x, cfg)?;
    Ok(ProductReport {
        momentum: m.atom().to_string(),
        position: label.to_owned(),
        interval: format!("[{}, {}]", x.lo(), x.hi()),
        momentum_width: m.width().to_string(),
        position_width: x.width().to_string(),
        product: value.to_string(),
        bound: cfg.bound().to_string(),
        compatible,
        text: product_verdict(&m.width(), &x.width(), &value, cfg.bound()),
    })
}

fn f(text: &str) -> Formula {
    parse(text).expect("built-in formula parses")
}

pub fn run() -> Result<DemoReport> {
    let cfg = PhysicsConfig::default();
    let p = interval("p", ObservableKind::Momentum, (0, 1), (1, 6));
    let q = interval("q", ObservableKind::Position, (-1, 1), (1, 1));
    let r = interval("r", ObservableKind::Position, (1, 1), (3, 1));
    let wide = interval("w", ObservableKind::Position, (-1, 1), (3, 1));

    let products = vec![
        product(&p, &wide, "position", &cfg)?,
        product(&p, &q, "q", &cfg)?,
        product(&p, &r, "r", &cfg)?,
    ];

    let lhs = f("p & (q | r)");
    let rhs = f("(p & q) | (p & r)");
    let law = Formula::iff(lhs.clone(), rhs.clone());
    let distributivity = TautologyReport {
        formula: law.render(),
        verdict: match classical::is_tautology(&law)? {
            TautologyVerdict::Tautology => "TAUTOLOGY",
            TautologyVerdict::Falsified(_) => "FALSIFIED",
        },
        valuations: 1 << law.atoms().len(),
    };

    let generated = quantum::generate(&[p.clone(), q.clone(), r.clone()], &cfg)?;
    let table = classical::truth_table(&[lhs, rhs], &generated.classical_constraints)?;
    let theory = &generated.epistemic_axioms;

    let joint = f("K(p) & (K(q) | K(r))");
    let joint_knowledge = CheckReport::new(&joint, "sat", theory.axioms(), &epistemic::is_satisfiable(&joint, theory)?);

    let empty = Theory::default();
    let mut laws = Vec::new();
    for text in [
        "K(a & b) <-> K(a) & K(b)",
        "K(a) | K(b) -> K(a | b)",
        "K(a | b) -> K(a) | K(b)",
        "K(p & (q | r)) <-> K(p) & K(q | r)",
        "K(p & q) | K(p & r) <-> K(p) & (K(q) | K(r))",
        "K(p & (q | r)) <-> K(p & q) | K(p & r)",
    ] {
        let g = f(text);
        laws.push(CheckReport::new(&g, "valid", &[], &epistemic::is_valid(&g, &empty)?));
    }

    let s = quantum::merge(&q, &r, Atom::new("s").expect("valid atom"))?;
    let merged_theory = quantum::generate(&[p.clone(), s.clone()], &cfg)?;
    let merge = MergeReport {
        from: [q.to_string(), r.to_string()],
        merged: PropositionReport::new(&s),
        product: product(&p, &s, "s", &cfg)?,
        axioms: axiom_reports(&merged_theory),
    };
    let conj = f("K(p & s) <-> K(p) & K(s)");
    let merged_check = CheckReport::new(
        &conj,
        "sat",
        merged_theory.epistemic_axioms.axioms(),
        &epistemic::is_satisfiable(&conj, &merged_theory.epistemic_axioms)?,
    );

    Ok(DemoReport {
        bound: cfg.bound().to_string(),
        propositions: [&p, &q, &r].into_iter().map(PropositionReport::new).collect(),
        products,
        distributivity,
        table: TableReport::new(&table),
        axioms: axiom_reports(&generated),
        joint_knowledge,
        laws,
        merge,
        merged_check,
    })
}

impl DemoReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        let mut section = |n: u8, title: &str, body: String| {
            if n > 1 {
                out.push('\n');
            }
            writeln!(out, "== {n}. {title} ==").unwrap();
            out.push_str(&body);
        };

        let mut body = String::new();
        for p in &self.propositions {
            writeln!(body, "{}", p.text()).unwrap();
        }
        section(1, "Propositions (natural units, c = hbar = 1)", body);

        let mut body = String::new();
        for pr in &self.products {
            let subject = if pr.position == "position" {
                format!("position {}", pr.interval)
            } else {
                format!("{} {}", pr.position, pr.interval)
            };
            writeln!(body, "{} and {}: {}", pr.momentum, subject, pr.text).unwrap();
        }
        section(2, &format!("Uncertainty products (bound {})", self.bound), body);

        let d = &self.distributivity;
        section(
            3,
            "Classical distributivity",
            format!("{}: {} over {} valuations\n", d.formula, d.verdict, d.valuations),
        );

        section(4, "Truth table under the incompatibility constraints", self.table.text());

        let mut body = String::new();
        for a in &self.axioms {
            writeln!(body, "{}", a.text()).unwrap();
        }
        section(5, "Generated axioms", body);

        section(
            6,
            "Joint knowledge of incompatible observations",
            format!("under: {}\n{}", self.joint_knowledge.theory.join(", "), self.joint_knowledge.labelled_text()),
        );

        let body: String = self.laws.iter().map(CheckReport::labelled_text).collect();
        section(7, "K over conjunction and disjunction", body);

        let m = &self.merge;
        let mut body = format!(
            "merge {} and {} -> {} [{}, {}], width {}\n",
            m.from[0], m.from[1], m.merged.atom, m.merged.lo, m.merged.hi, m.merged.width
        );
        writeln!(body, "{} and {} [{}, {}]: {}", m.product.momentum, m.merged.atom, m.merged.lo, m.merged.hi, m.product.text)
            .unwrap();
        if m.axioms.is_empty() {
            writeln!(body, "generated axioms for {{{}, {}}}: none", m.product.momentum, m.merged.atom).unwrap();
        } else {
            for a in &m.axioms {
                writeln!(body, "{}", a.text()).unwrap();
            }
        }
        body.push_str(&self.merged_check.labelled_text());
        section(8, "A single position observation", body);

        out
    }
}
