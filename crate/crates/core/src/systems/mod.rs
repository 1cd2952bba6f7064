//! System configurations: a tail machine, named generators, singular points,
//! piece classifiers and the unfragmented involutions the generators fragment.

pub mod builtin;
pub mod fragment;
pub mod levels;
pub mod relations;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::machine::{MachineSpec, TailMachine};
use crate::sequence::{Alphabet, Classification, PieceClassifier, Point, PrefixCode, Word};
use crate::table::{CellRecord, TableElement};

pub use builtin::{golden_mean_system, grigorchuk_system};
pub use fragment::{check_fragmentation, FragmentationReport, FragmentationSpec};
pub use levels::{indexed_generator, level_permutation, sign_sequence, x_v, SignSequence};
pub use relations::{conjugation_identity_check, deep_action_check, relation_suite};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedTable {
    pub name: String,
    pub cells: Vec<CellRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedClassifier {
    pub name: String,
    #[serde(flatten)]
    pub classifier: PieceClassifier,
}

/// Where a piece lives: everywhere, or the points classified into `W_n` with
/// `n ≡ residue` and `min_depth ≤ n ≤ max_depth`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Region {
    Everywhere,
    Classified {
        classifier: String,
        residue: u32,
        #[serde(default)]
        min_depth: u32,
        #[serde(default)]
        max_depth: Option<u32>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceSpec {
    pub name: String,
    /// Name of the unfragmented involution this piece belongs to.
    pub involution: String,
    pub region: Region,
    /// Index into `singular_points` of the point this piece accumulates on.
    #[serde(default)]
    pub accumulates_at: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeSpec {
    /// Probes are `v·t` for `v` in the weight-level code of this weight.
    pub weight: u32,
    pub tails: Vec<Point>,
}

/// JSON schema of a system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemDoc {
    pub name: String,
    pub machine: MachineSpec,
    pub generators: Vec<NamedTable>,
    pub singular_points: Vec<Point>,
    pub classifiers: Vec<NamedClassifier>,
    pub involution_machine: MachineSpec,
    pub involutions: Vec<NamedTable>,
    pub pieces: Vec<PieceSpec>,
    pub probe: ProbeSpec,
}

#[derive(Clone, Debug)]
pub struct SystemConfig {
    name: String,
    machine: Arc<TailMachine>,
    generators: Vec<(String, TableElement)>,
    singular_points: Vec<Point>,
    classifiers: Vec<(String, PieceClassifier)>,
    involutions: Vec<(String, TableElement)>,
    pieces: Vec<PieceSpec>,
    pi: Vec<u64>,
    families: Vec<usize>,
    probe: ProbeSpec,
    doc: SystemDoc,
}

impl SystemConfig {
    pub fn from_doc(doc: SystemDoc) -> Result<Self> {
        let machine = Arc::new(TailMachine::from_spec(doc.machine.clone())?);
        let inv_machine = Arc::new(TailMachine::from_spec(doc.involution_machine.clone())?);
        if machine.alphabet() != inv_machine.alphabet() {
            return Err(Error::Config("involution machine uses a different alphabet".into()));
        }
        let mut generators = Vec::new();
        for g in &doc.generators {
            if generators.iter().any(|(n, _)| n == &g.name) {
                return Err(Error::Config(format!("duplicate generator {:?}", g.name)));
            }
            generators.push((g.name.clone(), TableElement::from_records(&machine, g.cells.clone())?));
        }
        if generators.len() > 64 {
            return Err(Error::Config("at most 64 generators are supported".into()));
        }
        let involutions = doc
            .involutions
            .iter()
            .map(|g| Ok((g.name.clone(), TableElement::from_records(&inv_machine, g.cells.clone())?)))
            .collect::<Result<Vec<_>>>()?;
        for p in &doc.singular_points {
            p.check_alphabet(machine.alphabet())?;
        }
        let classifiers: Vec<(String, PieceClassifier)> =
            doc.classifiers.iter().map(|c| (c.name.clone(), c.classifier.clone())).collect();
        for piece in &doc.pieces {
            if !involutions.iter().any(|(n, _)| n == &piece.involution) {
                return Err(Error::Config(format!("piece {} names unknown involution {}", piece.name, piece.involution)));
            }
            if let Region::Classified { classifier, residue, .. } = &piece.region {
                let c = classifiers
                    .iter()
                    .find(|(n, _)| n == classifier)
                    .ok_or_else(|| Error::Config(format!("unknown classifier {classifier}")))?;
                if *residue >= c.1.modulus {
                    return Err(Error::Config(format!("piece {} residue out of range", piece.name)));
                }
            }
            if let Some(i) = piece.accumulates_at {
                if i >= doc.singular_points.len() {
                    return Err(Error::Config(format!("piece {} accumulates at unknown point", piece.name)));
                }
            }
        }
        if doc.pieces.len() > 64 {
            return Err(Error::Config("at most 64 pieces are supported".into()));
        }
        let mut sys = SystemConfig {
            name: doc.name.clone(),
            machine,
            generators,
            singular_points: doc.singular_points.clone(),
            classifiers,
            involutions,
            pieces: doc.pieces.clone(),
            pi: Vec::new(),
            families: Vec::new(),
            probe: doc.probe.clone(),
            doc,
        };
        (sys.pi, sys.families) = sys.derive_pi()?;
        Ok(sys)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_doc(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.doc).expect("serializable")
    }

    pub fn doc(&self) -> &SystemDoc {
        &self.doc
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn machine(&self) -> &Arc<TailMachine> {
        &self.machine
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.machine.alphabet()
    }

    pub fn generators(&self) -> &[(String, TableElement)] {
        &self.generators
    }

    pub fn elements(&self) -> impl Iterator<Item = &TableElement> {
        self.generators.iter().map(|(_, g)| g)
    }

    pub fn generator_names(&self) -> Vec<&str> {
        self.generators.iter().map(|(n, _)| n.as_str()).collect()
    }

    pub fn generator_index(&self, name: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|(n, _)| n == name)
            .ok_or_else(|| Error::UnknownGenerator(name.into()))
    }

    pub fn generator(&self, name: &str) -> Result<&TableElement> {
        Ok(&self.generators[self.generator_index(name)?].1)
    }

    pub fn identity(&self) -> TableElement {
        TableElement::identity(&self.machine)
    }

    /// Product of named generators; the rightmost acts first.
    pub fn word(&self, names: &[&str]) -> Result<TableElement> {
        let elems = names.iter().map(|n| self.generator(n)).collect::<Result<Vec<_>>>()?;
        TableElement::product(&self.machine, elems)
    }

    pub fn singular_points(&self) -> &[Point] {
        &self.singular_points
    }

    pub fn is_singular(&self, p: &Point) -> bool {
        self.singular_points.contains(p)
    }

    pub fn classifiers(&self) -> &[(String, PieceClassifier)] {
        &self.classifiers
    }

    pub fn classifier(&self, name: &str) -> Result<&PieceClassifier> {
        self.classifiers
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| c)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown classifier {name}")))
    }

    pub fn involutions(&self) -> &[(String, TableElement)] {
        &self.involutions
    }

    pub fn pieces(&self) -> &[PieceSpec] {
        &self.pieces
    }

    /// `π_P(g)` for every piece `P`, bit `i` for piece `i`, aligned with `generators()`.
    pub fn pi_vectors(&self) -> &[u64] {
        &self.pi
    }

    pub fn pi(&self, generator: usize, piece: usize) -> bool {
        self.pi[generator] >> piece & 1 == 1
    }

    /// Generator names labelling an edge inside `piece`.
    pub fn piece_labels(&self, piece: usize) -> Vec<&str> {
        self.generators
            .iter()
            .enumerate()
            .filter(|&(j, _)| self.pi(j, piece))
            .map(|(_, (n, _))| n.as_str())
            .collect()
    }

    pub fn piece_index(&self, name: &str) -> Result<usize> {
        self.pieces
            .iter()
            .position(|p| p.name == name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown piece {name}")))
    }

    /// Index of the involution that generator `generator` fragments.
    pub fn family(&self, generator: usize) -> usize {
        self.families[generator]
    }

    pub fn region_contains(&self, region: &Region, p: &Point) -> bool {
        match region {
            Region::Everywhere => true,
            Region::Classified { classifier, residue, min_depth, max_depth } => {
                let c = self.classifier(classifier).expect("validated");
                match c.classify(p) {
                    Classification::Piece { index, depth } => {
                        index == *residue && depth >= *min_depth && max_depth.is_none_or(|m| depth <= m)
                    }
                    _ => false,
                }
            }
        }
    }

    /// The piece of involution `inv` containing `p`.
    pub fn piece_of(&self, inv: usize, p: &Point) -> Option<usize> {
        let name = &self.involutions[inv].0;
        self.pieces
            .iter()
            .position(|piece| &piece.involution == name && self.region_contains(&piece.region, p))
    }

    /// For an edge `p — q` of an orbital graph: the involution index and piece.
    pub fn edge_piece(&self, p: &Point, q: &Point) -> Option<(usize, usize)> {
        self.involutions.iter().enumerate().find_map(|(i, (_, inv))| {
            if &inv.evaluate(p) == q && p != q {
                self.piece_of(i, p).map(|piece| (i, piece))
            } else {
                None
            }
        })
    }

    /// Sample points of a region: approximants at a range of depths, or the probe set.
    pub fn region_samples(&self, region: &Region) -> Vec<Point> {
        match region {
            Region::Everywhere => self.probe_set(),
            Region::Classified { classifier, residue, min_depth, max_depth } => {
                let c = self.classifier(classifier).expect("validated");
                let hi = max_depth.unwrap_or(min_depth + 4 * c.modulus);
                let mut out = Vec::new();
                for depth in *min_depth..=hi {
                    if depth % c.modulus != *residue {
                        continue;
                    }
                    for t in 0..c.terminals.len() {
                        for tail in &self.probe.tails {
                            out.push(c.approximant(depth, t, tail));
                        }
                    }
                }
                out
            }
        }
    }

    /// Index of the involution that `g` fragments: `g(x) ∈ {x, inv(x)}` on every probe.
    fn family_of(&self, g: &TableElement, probes: &[Point]) -> Option<usize> {
        self.involutions.iter().position(|(_, inv)| {
            probes.iter().all(|x| {
                let image = g.evaluate(x);
                &image == x || image == inv.evaluate(x)
            })
        })
    }

    fn derive_pi(&self) -> Result<(Vec<u64>, Vec<usize>)> {
        let probes = self.probe_set();
        let mut pi = vec![0u64; self.generators.len()];
        let mut families = Vec::with_capacity(self.generators.len());
        for (j, (name, g)) in self.generators.iter().enumerate() {
            let family = self
                .family_of(g, &probes)
                .ok_or_else(|| Error::Config(format!("generator {name} does not fragment any involution")))?;
            families.push(family);
            let family_name = &self.involutions[family].0;
            let inv = &self.involutions[family].1;
            for (k, piece) in self.pieces.iter().enumerate() {
                if &piece.involution != family_name {
                    continue;
                }
                let mut acts: Option<bool> = None;
                for x in self.region_samples(&piece.region) {
                    let moved = inv.evaluate(&x);
                    if moved == x {
                        continue;
                    }
                    let image = g.evaluate(&x);
                    let bit = if image == moved {
                        true
                    } else if image == x {
                        false
                    } else {
                        return Err(Error::Config(format!(
                            "generator {name} moves {x} to {image}, neither fixed nor {moved}"
                        )));
                    };
                    if *acts.get_or_insert(bit) != bit {
                        return Err(Error::Config(format!("generator {name} is not uniform on piece {}", piece.name)));
                    }
                }
                if acts == Some(true) {
                    pi[j] |= 1 << k;
                }
            }
        }
        Ok((pi, families))
    }

    /// Fragmentation spec restricted to the pieces accumulating on a singular point.
    pub fn fragmentation_at(&self, singular: usize) -> FragmentationSpec {
        let pieces: Vec<usize> = (0..self.pieces.len())
            .filter(|&k| self.pieces[k].accumulates_at == Some(singular))
            .collect();
        let mut vectors: Vec<u64> = self
            .pi
            .iter()
            .map(|&v| pieces.iter().enumerate().fold(0u64, |acc, (bit, &k)| acc | (v >> k & 1) << bit))
            .filter(|&v| v != 0)
            .collect();
        vectors.sort_unstable();
        vectors.dedup();
        FragmentationSpec { piece_count: pieces.len(), subgroup_generators: vectors }
    }

    /// Fragmentation spec over all pieces.
    pub fn fragmentation(&self) -> FragmentationSpec {
        FragmentationSpec { piece_count: self.pieces.len(), subgroup_generators: self.pi.clone() }
    }

    /// The complete code of minimal words reaching weight `weight`.
    pub fn weight_level_code(&self, weight: u32) -> PrefixCode {
        let alphabet = self.alphabet();
        let mut cells = Vec::new();
        let mut stack = vec![(Word::empty(), 0u32)];
        while let Some((w, wt)) = stack.pop() {
            if wt >= weight {
                cells.push(w);
                continue;
            }
            for (l, lw) in alphabet.entries() {
                stack.push((w.with_letter(l), wt + lw));
            }
        }
        PrefixCode::new(cells).expect("leaves of a tree are incomparable")
    }

    /// Documented default probe set for fingerprints.
    pub fn probe_set(&self) -> Vec<Point> {
        let code = self.weight_level_code(self.probe.weight);
        let mut out = Vec::with_capacity(code.len() * self.probe.tails.len());
        for v in code.cells() {
            for t in &self.probe.tails {
                out.push(t.prepend(v.as_bytes()));
            }
        }
        out
    }

    pub fn probe_spec(&self) -> &ProbeSpec {
        &self.probe
    }

    /// Resolve a system by built-in name or JSON path.
    pub fn load(name_or_path: &str) -> Result<Self> {
        match name_or_path {
            "f" | "F" | "golden-mean" | "golden_mean" => Ok(golden_mean_system()),
            "grigorchuk" | "g" => Ok(grigorchuk_system()),
            path => Self::from_json(&std::fs::read_to_string(path)?),
        }
    }
}
