use std::collections::BTreeSet;

use proptest::prelude::*;

use epiq::classical::{self, eval_classical, ClassicalChecker, EquivalenceVerdict, TautologyVerdict};
use epiq::epistemic::{self, erase_k, eval_modal, ModalChecker};
use epiq::formula::{parse, Atom, Formula};
use epiq::{CheckResult, ConstraintSet, EpistemicModel, Strategy as Sweep, Theory, Valuation};

fn leaf(names: &'static [&'static str]) -> BoxedStrategy<Formula> {
    prop_oneof![
        1 => Just(Formula::Top),
        1 => Just(Formula::Bottom),
        6 => proptest::sample::select(names).prop_map(Formula::var),
    ]
    .boxed()
}

fn formula_over(names: &'static [&'static str], modal: bool) -> BoxedStrategy<Formula> {
    leaf(names)
        .prop_recursive(4, 24, 2, move |inner| {
            let mut arms: Vec<(u32, BoxedStrategy<Formula>)> = vec![
                (2, inner.clone().prop_map(Formula::not).boxed()),
                (2, (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)).boxed()),
                (2, (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)).boxed()),
                (1, (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)).boxed()),
                (1, (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::iff(a, b)).boxed()),
            ];
            if modal {
                arms.push((2, inner.prop_map(Formula::know).boxed()));
            }
            proptest::strategy::Union::new_weighted(arms)
        })
        .boxed()
}

const ABC: &[&str] = &["a", "b", "c"];
const PQRS: &[&str] = &["p", "q", "r", "s"];

fn var_names(f: &Formula, out: &mut BTreeSet<String>) {
    match f {
        Formula::Top | Formula::Bottom => {}
        Formula::Var(a) => {
            out.insert(a.name().to_owned());
        }
        Formula::Not(g) | Formula::Know(g) => var_names(g, out),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
            var_names(a, out);
            var_names(b, out);
        }
    }
}

fn all_valuations(atoms: &[Atom]) -> Vec<Valuation> {
    let n = atoms.len();
    (0..1u32 << n)
        .map(|row| Valuation::new(atoms.to_vec(), (0..n).map(|i| row >> (n - 1 - i) & 1 == 1).collect()).unwrap())
        .collect()
}

/// Reference model search built only on `eval_modal`: same canonical order, no bitmasks.
fn oracle_satisfiable(f: &Formula, theory: &Theory) -> Option<EpistemicModel> {
    let mut atoms: BTreeSet<Atom> = f.atoms().into_iter().collect();
    atoms.extend(theory.atoms());
    let atoms: Vec<Atom> = atoms.into_iter().collect();
    let vals = all_valuations(&atoms);
    for cell in 1u64..(1u64 << vals.len()) {
        let worlds: Vec<Vec<bool>> = (0..vals.len())
            .filter(|i| cell >> i & 1 == 1)
            .map(|i| vals[i].bits().to_vec())
            .collect();
        for d in 0..worlds.len() {
            let m = EpistemicModel::new(atoms.clone(), worlds.clone(), d).unwrap();
            if m.satisfies(theory).unwrap() && eval_modal(f, &m, d).unwrap() {
                return Some(m);
            }
        }
    }
    None
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn render_parse_round_trip(f in formula_over(PQRS, true)) {
        let text = f.render();
        prop_assert_eq!(parse(&text).unwrap(), f);
    }

    #[test]
    fn parser_is_total(s in "\\PC{0,40}") {
        if let Err(e) = parse(&s) {
            prop_assert!(e.offset >= 1 && e.offset <= s.chars().count() + 1);
        }
    }

    #[test]
    fn parser_is_total_on_grammar_alphabet(s in "[pqK!&|<>()\\- ]{0,30}") {
        if let Err(e) = parse(&s) {
            prop_assert!(e.offset >= 1 && e.offset <= s.chars().count() + 1);
        }
    }

    #[test]
    fn atoms_are_exactly_the_variables(f in formula_over(PQRS, true)) {
        let atoms = f.atoms();
        prop_assert!(atoms.windows(2).all(|w| w[0] < w[1]));
        let mut expected = BTreeSet::new();
        var_names(&f, &mut expected);
        let got: BTreeSet<String> = atoms.iter().map(|a| a.name().to_owned()).collect();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn tautology_matches_empty_equivalence(f in formula_over(ABC, false), g in formula_over(ABC, false)) {
        let taut = classical::is_tautology(&Formula::iff(f.clone(), g.clone())).unwrap();
        let eq = classical::are_equivalent_under(&ConstraintSet::default(), &f, &g).unwrap();
        prop_assert_eq!(taut == TautologyVerdict::Tautology, eq == EquivalenceVerdict::Equivalent);
    }

    #[test]
    fn table_exclusions_match_reevaluation(
        fs in proptest::collection::vec(formula_over(PQRS, false), 1..3),
        cs in proptest::collection::vec(formula_over(PQRS, false), 0..3),
    ) {
        let constraints = ConstraintSet::new(cs).unwrap();
        let table = classical::truth_table(&fs, &constraints).unwrap();
        prop_assert_eq!(table.rows.len(), 1usize << table.atom_order.len());
        for (i, row) in table.rows.iter().enumerate() {
            prop_assert_eq!(row.valuation.row(), i as u64);
            let violated: Vec<Formula> = constraints
                .iter()
                .filter(|c| !eval_classical(c, &row.valuation).unwrap())
                .cloned()
                .collect();
            prop_assert_eq!(&row.violated, &violated);
            prop_assert_eq!(row.is_excluded(), !violated.is_empty());
            if let Some(values) = &row.values {
                let expected: Vec<bool> = fs.iter().map(|f| eval_classical(f, &row.valuation).unwrap()).collect();
                prop_assert_eq!(values, &expected);
            }
        }
    }

    #[test]
    fn adding_a_constraint_never_unexcludes(
        f in formula_over(ABC, false),
        cs in proptest::collection::vec(formula_over(ABC, false), 0..3),
        extra in formula_over(ABC, false),
    ) {
        // keep the atom set fixed so row indices line up
        let pad = Formula::or(Formula::Top, Formula::and(Formula::var("a"), Formula::and(Formula::var("b"), Formula::var("c"))));
        let base = ConstraintSet::new(cs.iter().cloned().chain([pad.clone()])).unwrap();
        let more = ConstraintSet::new(cs.into_iter().chain([pad, extra])).unwrap();
        let t1 = classical::truth_table(std::slice::from_ref(&f), &base).unwrap();
        let t2 = classical::truth_table(std::slice::from_ref(&f), &more).unwrap();
        for (r1, r2) in t1.rows.iter().zip(&t2.rows) {
            prop_assert!(!r1.is_excluded() || r2.is_excluded());
        }
    }

    #[test]
    fn collapse_on_singleton_cells(f in formula_over(ABC, true), row in 0u32..8) {
        let atoms: Vec<Atom> = ["a", "b", "c"].iter().map(|n| Atom::new(n).unwrap()).collect();
        let bits: Vec<bool> = (0..3).map(|i| row >> (2 - i) & 1 == 1).collect();
        let m = EpistemicModel::new(atoms.clone(), vec![bits.clone()], 0).unwrap();
        let v = Valuation::new(atoms, bits).unwrap();
        prop_assert_eq!(eval_modal(&f, &m, 0).unwrap(), eval_classical(&erase_k(&f), &v).unwrap());
    }

    #[test]
    fn conjunction_law_for_arbitrary_operands(a in formula_over(&["a", "b"], true), b in formula_over(&["a", "b"], true)) {
        let law = Formula::iff(
            Formula::know(Formula::and(a.clone(), b.clone())),
            Formula::and(Formula::know(a), Formula::know(b)),
        );
        prop_assert_eq!(epistemic::is_valid(&law, &Theory::default()).unwrap(), CheckResult::Valid);
    }

    #[test]
    fn validity_is_dual_to_satisfiability(f in formula_over(ABC, true), t in proptest::collection::vec(formula_over(ABC, true), 0..2)) {
        let theory = Theory::new(t);
        let valid = epistemic::is_valid(&f, &theory).unwrap();
        let sat = epistemic::is_satisfiable(&Formula::not(f), &theory).unwrap();
        match (valid, sat) {
            (CheckResult::Valid, CheckResult::Unsatisfiable) => {}
            (CheckResult::Invalid(m1), CheckResult::Satisfiable(m2)) => prop_assert_eq!(m1, m2),
            (v, s) => prop_assert!(false, "mismatch: {v:?} vs {s:?}"),
        }
    }

    #[test]
    fn search_agrees_with_reference_enumeration(f in formula_over(ABC, true), t in proptest::collection::vec(formula_over(ABC, true), 0..2)) {
        let theory = Theory::new(t);
        let expected = oracle_satisfiable(&f, &theory);
        match epistemic::is_satisfiable(&f, &theory).unwrap() {
            CheckResult::Satisfiable(m) => {
                prop_assert!(m.satisfies(&theory).unwrap());
                prop_assert!(eval_modal(&f, &m, m.designated()).unwrap());
                prop_assert_eq!(Some(m), expected);
            }
            CheckResult::Unsatisfiable => prop_assert_eq!(None, expected),
            other => prop_assert!(false, "unexpected {other:?}"),
        }
    }

    #[test]
    fn modal_validity_matches_tautology_on_classical_formulas(f in formula_over(PQRS, false)) {
        let modal = epistemic::is_valid(&f, &Theory::default()).unwrap();
        let classical = classical::is_tautology(&f).unwrap();
        prop_assert_eq!(modal == CheckResult::Valid, classical == TautologyVerdict::Tautology);
    }

    #[test]
    fn strategies_agree(f in formula_over(PQRS, true)) {
        let seq = ModalChecker { strategy: Sweep::Sequential, ..Default::default() };
        let def = ModalChecker::default();
        let t = Theory::default();
        prop_assert_eq!(seq.is_satisfiable(&f, &t).unwrap(), def.is_satisfiable(&f, &t).unwrap());
        let seq = ClassicalChecker { strategy: Sweep::Sequential, ..Default::default() };
        let g = erase_k(&f);
        prop_assert_eq!(seq.is_tautology(&g).unwrap(), classical::is_tautology(&g).unwrap());
    }
}

/// Every formula shape built from atoms over {a, b, c} up to depth two.
fn small_shapes() -> Vec<Formula> {
    let leaves: Vec<Formula> = ["a", "b", "c"].iter().map(|n| Formula::var(n)).collect();
    let mut shapes = leaves.clone();
    for x in &leaves {
        shapes.push(Formula::not(x.clone()));
        for y in &leaves {
            shapes.push(Formula::and(x.clone(), y.clone()));
            shapes.push(Formula::or(x.clone(), y.clone()));
            shapes.push(Formula::implies(x.clone(), y.clone()));
        }
    }
    shapes
}

#[test]
fn distributivity_over_small_shapes() {
    let shapes = small_shapes();
    for a in &shapes {
        for b in &shapes {
            for c in &shapes {
                let law = Formula::iff(
                    Formula::and(a.clone(), Formula::or(b.clone(), c.clone())),
                    Formula::or(Formula::and(a.clone(), b.clone()), Formula::and(a.clone(), c.clone())),
                );
                assert_eq!(classical::is_tautology(&law).unwrap(), TautologyVerdict::Tautology, "{law}");
            }
        }
    }
}

#[test]
fn s5_schemas_and_half_distribution() {
    let empty = Theory::default();
    for text in [
        "K(a) -> a",
        "K(a) -> K(K(a))",
        "!K(a) -> K(!K(a))",
        "K(a -> b) -> (K(a) -> K(b))",
        "K(a) | K(b) -> K(a | b)",
    ] {
        assert_eq!(epistemic::is_valid(&parse(text).unwrap(), &empty).unwrap(), CheckResult::Valid, "{text}");
    }
    let r = epistemic::is_valid(&parse("K(a | b) -> K(a) | K(b)").unwrap(), &empty).unwrap();
    assert_eq!(r.model().map(|m| m.worlds().len()), Some(2));
}

#[test]
fn repeated_searches_are_identical() {
    let f = parse("K(p & (q | r)) <-> K(p & q) | K(p & r)").unwrap();
    let first = epistemic::is_valid(&f, &Theory::default()).unwrap();
    for _ in 0..5 {
        assert_eq!(epistemic::is_valid(&f, &Theory::default()).unwrap(), first);
    }
}
