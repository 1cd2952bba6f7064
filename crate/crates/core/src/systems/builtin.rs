//! The golden-mean system F and the Grigorchuk group.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use crate::machine::{MachineSpec, TailMachine, TransitionSpec, IDENTITY};
use crate::sequence::{PieceClassifier, Point, Word};
use crate::table::{Cell, TableElement};

use super::{NamedClassifier, NamedTable, PieceSpec, ProbeSpec, Region, SystemConfig, SystemDoc};

fn rule(input: &str, output: &str, to: &str) -> TransitionSpec {
    TransitionSpec { input: Word::from(input), output: Word::from(output), to: to.into() }
}

fn klein_products(names: [&str; 4]) -> Vec<Vec<String>> {
    (0..4).map(|i| (0..4).map(|j| names[i ^ j].to_string()).collect()).collect()
}

fn golden_alphabet() -> Vec<(String, u32)> {
    vec![("1".into(), 1), ("2".into(), 2)]
}

fn binary_alphabet() -> Vec<(String, u32)> {
    vec![("0".into(), 1), ("1".into(), 1)]
}

pub fn golden_mean_spec() -> MachineSpec {
    let mut transitions = BTreeMap::new();
    transitions.insert("b0".into(), vec![rule("11", "2", "e"), rule("2", "11", "e"), rule("12", "12", "c0")]);
    transitions.insert("c0".into(), vec![rule("11", "2", "e"), rule("2", "11", "e"), rule("12", "12", "d0")]);
    transitions.insert("d0".into(), vec![rule("11", "11", "e"), rule("2", "2", "e"), rule("12", "12", "b0")]);
    MachineSpec {
        name: "golden-mean".into(),
        alphabet: golden_alphabet(),
        germs: vec!["e".into(), "b0".into(), "c0".into(), "d0".into()],
        transients: vec![],
        products: klein_products(["e", "b0", "c0", "d0"]),
        transitions,
        resolution_depth: 2,
    }
}

pub fn grigorchuk_spec() -> MachineSpec {
    let mut transitions = BTreeMap::new();
    transitions.insert("b".into(), vec![rule("0", "0", "a"), rule("1", "1", "c")]);
    transitions.insert("c".into(), vec![rule("0", "0", "a"), rule("1", "1", "d")]);
    transitions.insert("d".into(), vec![rule("0", "0", "e"), rule("1", "1", "b")]);
    transitions.insert("a".into(), vec![rule("0", "1", "e"), rule("1", "0", "e")]);
    MachineSpec {
        name: "grigorchuk".into(),
        alphabet: binary_alphabet(),
        germs: vec!["e".into(), "b".into(), "c".into(), "d".into()],
        transients: vec!["a".into()],
        products: klein_products(["e", "b", "c", "d"]),
        transitions,
        resolution_depth: 2,
    }
}

fn dihedral_products() -> Vec<Vec<String>> {
    vec![vec!["e".into(), "b".into()], vec!["b".into(), "e".into()]]
}

/// The unfragmented involution `b` of the golden-mean system.
pub fn golden_dihedral_spec() -> MachineSpec {
    let mut transitions = BTreeMap::new();
    transitions.insert("b".into(), vec![rule("11", "2", "e"), rule("2", "11", "e"), rule("12", "12", "b")]);
    MachineSpec {
        name: "golden-mean-dihedral".into(),
        alphabet: golden_alphabet(),
        germs: vec!["e".into(), "b".into()],
        transients: vec![],
        products: dihedral_products(),
        transitions,
        resolution_depth: 2,
    }
}

/// The Gray-code involution `b(0w) = 0a(w)`, `b(1w) = 1b(w)`.
pub fn gray_code_spec() -> MachineSpec {
    let mut transitions = BTreeMap::new();
    transitions.insert("b".into(), vec![rule("0", "0", "t"), rule("1", "1", "b")]);
    transitions.insert("t".into(), vec![rule("0", "1", "e"), rule("1", "0", "e")]);
    MachineSpec {
        name: "gray-code".into(),
        alphabet: binary_alphabet(),
        germs: vec!["e".into(), "b".into()],
        transients: vec!["t".into()],
        products: dihedral_products(),
        transitions,
        resolution_depth: 2,
    }
}

fn machine(spec: MachineSpec) -> Arc<TailMachine> {
    Arc::new(TailMachine::from_spec(spec).expect("built-in machine is valid"))
}

pub fn golden_mean_machine() -> Arc<TailMachine> {
    machine(golden_mean_spec())
}

pub fn grigorchuk_machine() -> Arc<TailMachine> {
    machine(grigorchuk_spec())
}

fn named(name: &str, g: &TableElement) -> NamedTable {
    NamedTable { name: name.into(), cells: g.to_records() }
}

fn swap(m: &Arc<TailMachine>, pairs: &[(&str, &str)]) -> TableElement {
    let cells = pairs.iter().map(|(i, o)| Cell::new(i, o, IDENTITY)).collect();
    TableElement::from_cells(m, cells).expect("built-in table is valid")
}

fn classifier(name: &str, prefix: &str, pattern: &str, terminals: &[&str]) -> NamedClassifier {
    NamedClassifier {
        name: name.into(),
        classifier: PieceClassifier {
            prefix: Word::from(prefix),
            pattern: Word::from(pattern),
            terminals: terminals.iter().map(|&t| Word::from(t)).collect(),
            modulus: 3,
        },
    }
}

fn piece(name: &str, involution: &str, classifier: &str, residue: u32, min: u32, max: Option<u32>, at: Option<usize>) -> PieceSpec {
    PieceSpec {
        name: name.into(),
        involution: involution.into(),
        region: Region::Classified { classifier: classifier.into(), residue, min_depth: min, max_depth: max },
        accumulates_at: at,
    }
}

pub fn golden_mean_doc() -> SystemDoc {
    let m = golden_mean_machine();
    let a0 = swap(&m, &[("11", "2"), ("2", "11"), ("12", "12")]);
    let base = [
        ("a", a0),
        ("b", TableElement::germ(&m, m.state_id("b0").unwrap())),
        ("c", TableElement::germ(&m, m.state_id("c0").unwrap())),
        ("d", TableElement::germ(&m, m.state_id("d0").unwrap())),
    ];
    let mut generators = Vec::new();
    for (i, prefix) in ["", "1", "2"].iter().enumerate() {
        for (letter, g) in &base {
            generators.push(named(&format!("{letter}{i}"), &g.on_cylinder(&Word::from(*prefix))));
        }
    }

    let dm = machine(golden_dihedral_spec());
    let inv_b = TableElement::germ(&dm, 1);
    let inv_a = TableElement::from_cells(&dm, vec![Cell::new("1", "1", 1), Cell::new("2", "2", 1)]).unwrap();

    let mut pieces = Vec::new();
    for (k, (prefix, inv, cls)) in [("", "b", "B"), ("1", "a", "A1"), ("2", "a", "A2")].into_iter().enumerate() {
        pieces.push(piece(&format!("{prefix}W0"), inv, cls, 0, 0, Some(0), None));
        pieces.push(piece(&format!("{prefix}P0'"), inv, cls, 0, 1, None, Some(k)));
        pieces.push(piece(&format!("{prefix}P1"), inv, cls, 1, 0, None, Some(k)));
        pieces.push(piece(&format!("{prefix}P2"), inv, cls, 2, 0, None, Some(k)));
    }

    SystemDoc {
        name: "F".into(),
        machine: golden_mean_spec(),
        generators,
        singular_points: ["(12)", "1(12)", "2(12)"].iter().map(|s| s.parse().unwrap()).collect(),
        classifiers: vec![
            classifier("B", "", "12", &["2", "11"]),
            classifier("A1", "1", "12", &["2", "11"]),
            classifier("A2", "2", "12", &["2", "11"]),
        ],
        involution_machine: golden_dihedral_spec(),
        involutions: vec![named("a", &inv_a), named("b", &inv_b)],
        pieces,
        probe: ProbeSpec { weight: 12, tails: vec![Point::periodic("1").unwrap()] },
    }
}

pub fn grigorchuk_doc() -> SystemDoc {
    let m = grigorchuk_machine();
    let a = swap(&m, &[("0", "1"), ("1", "0")]);
    let mut generators = vec![named("a", &a)];
    for (i, s) in ["b", "c", "d"].iter().enumerate() {
        generators.push(named(&format!("b{}", i + 1), &TableElement::germ(&m, m.state_id(s).unwrap())));
    }
    let gm = machine(gray_code_spec());
    let inv_a = swap(&gm, &[("0", "1"), ("1", "0")]);
    let inv_b = TableElement::germ(&gm, 1);
    SystemDoc {
        name: "grigorchuk".into(),
        machine: grigorchuk_spec(),
        generators,
        singular_points: vec![Point::periodic("1").unwrap()],
        classifiers: vec![classifier("W", "", "1", &["0"])],
        involution_machine: gray_code_spec(),
        involutions: vec![named("a", &inv_a), named("b", &inv_b)],
        pieces: vec![
            PieceSpec { name: "A".into(), involution: "a".into(), region: Region::Everywhere, accumulates_at: None },
            piece("P0", "b", "W", 0, 0, None, Some(0)),
            piece("P1", "b", "W", 1, 0, None, Some(0)),
            piece("P2", "b", "W", 2, 0, None, Some(0)),
        ],
        probe: ProbeSpec { weight: 8, tails: vec![Point::periodic("0").unwrap()] },
    }
}

pub fn golden_mean_system() -> SystemConfig {
    static CELL: OnceLock<SystemConfig> = OnceLock::new();
    CELL.get_or_init(|| SystemConfig::from_doc(golden_mean_doc()).expect("built-in system is valid"))
        .clone()
}

pub fn grigorchuk_system() -> SystemConfig {
    static CELL: OnceLock<SystemConfig> = OnceLock::new();
    CELL.get_or_init(|| SystemConfig::from_doc(grigorchuk_doc()).expect("built-in system is valid"))
        .clone()
}
