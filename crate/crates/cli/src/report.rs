//! Report values shared by every command. Each report renders as plain text and
//! serializes to JSON with at least the same information.

use std::fmt::Write as _;

use epiq::classical::TruthTable;
use epiq::quantum::{GeneratedTheory, Provenance, Rational};
use epiq::{CheckResult, EpistemicModel, Formula, IntervalProposition};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct WorldReport {
    pub index: usize,
    pub bits: Vec<u8>,
    pub designated: bool,
}

#[derive(Debug, Serialize)]
pub struct ModelReport {
    pub atoms: Vec<String>,
    pub designated: usize,
    pub worlds: Vec<WorldReport>,
}

impl ModelReport {
    pub fn new(m: &EpistemicModel) -> Self {
        ModelReport {
            atoms: m.atom_order().iter().map(ToString::to_string).collect(),
            designated: m.designated(),
            worlds: m
                .worlds()
                .iter()
                .enumerate()
                .map(|(index, w)| WorldReport {
                    index,
                    bits: w.bits().iter().map(|&b| u8::from(b)).collect(),
                    designated: index == m.designated(),
                })
                .collect(),
        }
    }

    /// One line per world; `>` marks the designated world.
    pub fn write_text(&self, label: &str, out: &mut String) {
        if self.atoms.is_empty() {
            writeln!(out, "{label} over no atoms:").unwrap();
        } else {
            writeln!(out, "{label} over atoms {}:", self.atoms.join(" ")).unwrap();
        }
        for w in &self.worlds {
            let marker = if w.designated { '>' } else { ' ' };
            let bits: Vec<String> = self.atoms.iter().zip(&w.bits).map(|(a, b)| format!("{a}={b}")).collect();
            writeln!(out, "{marker} w{}: {}", w.index, bits.join(" ")).unwrap();
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub formula: String,
    pub mode: &'static str,
    pub theory: Vec<String>,
    pub verdict: &'static str,
    pub model: Option<ModelReport>,
}

impl CheckReport {
    pub fn new(formula: &Formula, mode: &'static str, theory: &[Formula], result: &CheckResult) -> Self {
        CheckReport {
            formula: formula.render(),
            mode,
            theory: theory.iter().map(Formula::render).collect(),
            verdict: result.verdict(),
            model: result.model().map(ModelReport::new),
        }
    }

    fn model_label(&self) -> &'static str {
        if self.verdict == "INVALID" {
            "countermodel"
        } else {
            "model"
        }
    }

    pub fn text(&self) -> String {
        let mut out = format!("{}\n", self.verdict);
        if let Some(m) = &self.model {
            m.write_text(self.model_label(), &mut out);
        }
        out
    }

    /// `formula: VERDICT` followed by the model listing, as used in the walkthrough.
    pub fn labelled_text(&self) -> String {
        let mut out = format!("{}: {}\n", self.formula, self.verdict);
        if let Some(m) = &self.model {
            m.write_text(self.model_label(), &mut out);
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct RowReport {
    pub bits: Vec<u8>,
    pub excluded: bool,
    pub violated: Vec<String>,
    pub values: Option<Vec<u8>>,
}

#[derive(Debug, Serialize)]
pub struct TableReport {
    pub atoms: Vec<String>,
    pub formulas: Vec<String>,
    pub constraints: Vec<String>,
    pub rows: Vec<RowReport>,
}

impl TableReport {
    pub fn new(table: &TruthTable) -> Self {
        TableReport {
            atoms: table.atom_order.iter().map(ToString::to_string).collect(),
            formulas: table.formulas.iter().map(Formula::render).collect(),
            constraints: table.constraints.iter().map(Formula::render).collect(),
            rows: table
                .rows
                .iter()
                .map(|r| RowReport {
                    bits: r.valuation.bits().iter().map(|&b| u8::from(b)).collect(),
                    excluded: r.is_excluded(),
                    violated: r.violated.iter().map(Formula::render).collect(),
                    values: r.values.as_ref().map(|v| v.iter().map(|&b| u8::from(b)).collect()),
                })
                .collect(),
        }
    }

    fn cells(&self, row: &RowReport) -> Vec<String> {
        match &row.values {
            Some(values) => values.iter().map(u8::to_string).collect(),
            None => vec!["x".to_owned(); self.formulas.len()],
        }
    }

    /// Excluded rows carry `*` in the label column and `x` in every formula cell.
    pub fn text(&self) -> String {
        let atom_header = self.atoms.join(" ");
        let mut widths = vec![atom_header.chars().count()];
        widths.extend(self.formulas.iter().map(|f| f.chars().count()));
        let line = |label: &str, cells: &[String]| {
            let mut s = label.to_owned();
            for (c, w) in cells.iter().zip(&widths) {
                write!(s, " {c:<w$}  ").unwrap();
            }
            s.trim_end().to_owned()
        };

        let mut out = String::new();
        let header: Vec<String> = std::iter::once(atom_header.clone()).chain(self.formulas.iter().cloned()).collect();
        writeln!(out, "{}", line(" ", &header)).unwrap();
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        writeln!(out, "{}", line(" ", &rule)).unwrap();
        for row in &self.rows {
            let label = if row.excluded { "*" } else { " " };
            let bits = row.bits.iter().map(u8::to_string).collect::<Vec<_>>().join(" ");
            let cells: Vec<String> = std::iter::once(bits).chain(self.cells(row)).collect();
            writeln!(out, "{}", line(label, &cells)).unwrap();
        }
        if self.constraints.is_empty() {
            writeln!(out, "constraints: none").unwrap();
        } else {
            writeln!(out, "constraints: {}", self.constraints.join(", ")).unwrap();
        }
        let excluded = self.rows.iter().filter(|r| r.excluded).count();
        writeln!(out, "excluded: {excluded} of {} rows", self.rows.len()).unwrap();
        out
    }

    pub fn csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> =
            std::iter::once("excluded".to_owned()).chain(self.atoms.iter().cloned()).chain(self.formulas.iter().cloned()).collect();
        writeln!(out, "{}", csv_line(&header)).unwrap();
        for row in &self.rows {
            let fields: Vec<String> = std::iter::once(if row.excluded { "*" } else { "" }.to_owned())
                .chain(row.bits.iter().map(u8::to_string))
                .chain(self.cells(row))
                .collect();
            writeln!(out, "{}", csv_line(&fields)).unwrap();
        }
        out
    }
}

fn csv_line(fields: &[String]) -> String {
    fields
        .iter()
        .map(|f| {
            if f.contains([',', '"', '\n']) {
                format!("\"{}\"", f.replace('"', "\"\""))
            } else {
                f.clone()
            }
        })
        .collect::<Vec<_>>()
        .join(",")
}

#[derive(Debug, Serialize)]
pub struct PropositionReport {
    pub atom: String,
    pub kind: String,
    pub lo: String,
    pub hi: String,
    pub width: String,
}

impl PropositionReport {
    pub fn new(p: &IntervalProposition) -> Self {
        PropositionReport {
            atom: p.atom().to_string(),
            kind: p.kind().to_string(),
            lo: p.lo().to_string(),
            hi: p.hi().to_string(),
            width: p.width().to_string(),
        }
    }

    pub fn text(&self) -> String {
        format!("{}: {} in [{}, {}], width {}", self.atom, self.kind, self.lo, self.hi, self.width)
    }
}

#[derive(Debug, Serialize)]
pub struct AxiomReport {
    pub axiom: String,
    pub constraint: String,
    pub momentum: String,
    pub position: String,
    pub momentum_width: String,
    pub position_width: String,
    pub product: String,
    pub bound: String,
}

impl AxiomReport {
    pub fn new(axiom: &Formula, constraint: &Formula, p: &Provenance) -> Self {
        AxiomReport {
            axiom: axiom.render(),
            constraint: constraint.render(),
            momentum: p.momentum.to_string(),
            position: p.position.to_string(),
            momentum_width: p.momentum_width.to_string(),
            position_width: p.position_width.to_string(),
            product: p.product.to_string(),
            bound: p.bound.to_string(),
        }
    }

    pub fn text(&self) -> String {
        format!(
            "{}   [widths {} * {} = {} < {}]",
            self.axiom, self.momentum_width, self.position_width, self.product, self.bound
        )
    }
}

pub fn axiom_reports(g: &GeneratedTheory) -> Vec<AxiomReport> {
    g.epistemic_axioms
        .axioms()
        .iter()
        .zip(g.classical_constraints.iter())
        .zip(&g.provenance)
        .map(|((a, c), p)| AxiomReport::new(a, c, p))
        .collect()
}

/// `1/6 * 4 = 2/3 >= 1/2: compatible`
pub fn product_verdict(m_width: &Rational, x_width: &Rational, product: &Rational, bound: &Rational) -> String {
    if product >= bound {
        format!("{m_width} * {x_width} = {product} >= {bound}: compatible")
    } else {
        format!("{m_width} * {x_width} = {product} < {bound}: incompatible")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use epiq::classical::truth_table;
    use epiq::formula::parse;
    use epiq::{epistemic, ConstraintSet, Theory};

    #[test]
    fn table_text_layout() {
        let cs = ConstraintSet::new([parse("!(p & q)").unwrap()]).unwrap();
        let t = truth_table(&[parse("p | q").unwrap(), parse("p").unwrap()], &cs).unwrap();
        let text = TableReport::new(&t).text();
        let expected = "  p q   p | q   p
  ---   -----   -
  0 0   0       0
  0 1   1       0
  1 0   1       1
* 1 1   x       x
constraints: !(p & q)
excluded: 1 of 4 rows
";
        assert_eq!(text, expected);
    }

    #[test]
    fn table_csv() {
        let t = truth_table(&[parse("p").unwrap()], &ConstraintSet::new([parse("!p").unwrap()]).unwrap()).unwrap();
        assert_eq!(TableReport::new(&t).csv(), "excluded,p,p\n,0,0\n*,1,x\n");
        assert_eq!(csv_line(&["a,b".into(), "c\"d".into()]), "\"a,b\",\"c\"\"d\"");
    }

    #[test]
    fn countermodel_listing() {
        let f = parse("K(a | b) -> K(a) | K(b)").unwrap();
        let r = epistemic::is_valid(&f, &Theory::default()).unwrap();
        let report = CheckReport::new(&f, "valid", &[], &r);
        assert_eq!(report.text(), "INVALID\ncountermodel over atoms a b:\n> w0: a=0 b=1\n  w1: a=1 b=0\n");
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["model"]["worlds"][1]["bits"], serde_json::json!([1, 0]));
    }
}
