//! Tail machines: asynchronous transducers whose germ states form a finite group.
//!
//! State 0 is always the identity germ. States `0..germ_count` are germs; the
//! remaining states are transients that must resolve back into a germ within
//! `resolution_depth` input letters.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequence::{Alphabet, PrefixCode, Word};
use crate::table::Cell;

pub type StateId = u16;

/// The identity germ.
pub const IDENTITY: StateId = 0;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub input: Word,
    pub output: Word,
    pub target: StateId,
}

/// Outcome of consuming one resolved transition from a germ state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Restriction {
    Resolved { consumed: usize, output: Word, state: StateId },
    NeedMoreInput,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionSpec {
    #[serde(rename = "in")]
    pub input: Word,
    #[serde(rename = "out")]
    pub output: Word,
    pub to: String,
}

/// Serializable description of a machine. `products[i][j]` names `germs[i] ∘ germs[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MachineSpec {
    pub name: String,
    pub alphabet: Vec<(String, u32)>,
    pub germs: Vec<String>,
    #[serde(default)]
    pub transients: Vec<String>,
    pub products: Vec<Vec<String>>,
    pub transitions: BTreeMap<String, Vec<TransitionSpec>>,
    pub resolution_depth: usize,
}

pub struct TailMachine {
    name: String,
    alphabet: Alphabet,
    state_names: Vec<String>,
    germ_count: usize,
    product: Vec<StateId>,
    inverse: Vec<StateId>,
    transitions: Vec<Vec<Transition>>,
    resolution_depth: usize,
    expansions: Vec<Vec<Cell>>,
    merge_index: HashMap<Vec<Cell>, StateId>,
    spec: MachineSpec,
}

impl fmt::Debug for TailMachine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TailMachine")
            .field("name", &self.name)
            .field("states", &self.state_names)
            .field("germ_count", &self.germ_count)
            .finish()
    }
}

impl PartialEq for TailMachine {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for TailMachine {}

impl TailMachine {
    pub fn from_spec(spec: MachineSpec) -> Result<Self> {
        let mut entries = Vec::new();
        for (letter, weight) in &spec.alphabet {
            let bytes = letter.as_bytes();
            if bytes.len() != 1 {
                return Err(Error::Config(format!("letter {letter:?} is not a single ASCII character")));
            }
            entries.push((bytes[0], *weight));
        }
        let alphabet = Alphabet::new(&entries)?;

        let germ_count = spec.germs.len();
        if germ_count == 0 {
            return Err(Error::Config("machine needs at least the identity germ".into()));
        }
        let state_names: Vec<String> = spec.germs.iter().chain(&spec.transients).cloned().collect();
        if state_names.len() > StateId::MAX as usize {
            return Err(Error::Config("too many states".into()));
        }
        let mut ids = HashMap::new();
        for (i, name) in state_names.iter().enumerate() {
            if ids.insert(name.clone(), i as StateId).is_some() {
                return Err(Error::Config(format!("duplicate state name {name:?}")));
            }
        }
        let id = |name: &str| ids.get(name).copied().ok_or_else(|| Error::UnknownState(name.into()));

        // germ group law
        if spec.products.len() != germ_count || spec.products.iter().any(|r| r.len() != germ_count) {
            return Err(Error::Config(format!("product table must be {germ_count}x{germ_count}")));
        }
        let mut product = Vec::with_capacity(germ_count * germ_count);
        for row in &spec.products {
            for name in row {
                let s = id(name)?;
                if s as usize >= germ_count {
                    return Err(Error::Config(format!("product {name:?} is not a germ")));
                }
                product.push(s);
            }
        }
        let mul = |a: usize, b: usize| product[a * germ_count + b] as usize;
        for a in 0..germ_count {
            if mul(0, a) != a || mul(a, 0) != a {
                return Err(Error::Config(format!("{} is not the identity", state_names[0])));
            }
            for b in 0..germ_count {
                for c in 0..germ_count {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(Error::Config("germ product is not associative".into()));
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(germ_count);
        for a in 0..germ_count {
            match (0..germ_count).find(|&b| mul(a, b) == 0 && mul(b, a) == 0) {
                Some(b) => inverse.push(b as StateId),
                None => return Err(Error::Config(format!("germ {} has no inverse", state_names[a]))),
            }
        }

        // transitions
        let mut transitions: Vec<Vec<Transition>> = vec![Vec::new(); state_names.len()];
        for (name, list) in &spec.transitions {
            let s = id(name)? as usize;
            for t in list {
                alphabet.check_word(&t.input)?;
                alphabet.check_word(&t.output)?;
                if t.input.is_empty() {
                    return Err(Error::Config(format!("state {name} has an empty-input transition")));
                }
                transitions[s].push(Transition {
                    input: t.input.clone(),
                    output: t.output.clone(),
                    target: id(&t.to)?,
                });
            }
        }
        let identity_rules: Vec<Transition> = alphabet
            .letters()
            .iter()
            .map(|&l| Transition { input: Word::from_bytes(&[l]), output: Word::from_bytes(&[l]), target: IDENTITY })
            .collect();
        if transitions[0].is_empty() {
            transitions[0] = identity_rules;
        } else {
            let mut declared = transitions[0].clone();
            declared.sort_by(|a, b| a.input.cmp(&b.input));
            let mut expected = identity_rules.clone();
            expected.sort_by(|a, b| a.input.cmp(&b.input));
            if declared != expected {
                return Err(Error::Config("identity transitions must copy each letter".into()));
            }
        }
        for (s, list) in transitions.iter().enumerate() {
            if list.is_empty() {
                return Err(Error::Config(format!("state {} has no transitions", state_names[s])));
            }
            let code = PrefixCode::new(list.iter().map(|t| t.input.clone()).collect())
                .map_err(|e| Error::Config(format!("state {}: {e}", state_names[s])))?;
            if code.len() != list.len() {
                return Err(Error::Config(format!("state {} has duplicate inputs", state_names[s])));
            }
            if let Err(defect) = code.check_complete(&alphabet) {
                return Err(Error::Config(format!(
                    "inputs of state {} are not a complete code: {defect:?}",
                    state_names[s]
                )));
            }
        }

        let mut machine = TailMachine {
            name: spec.name.clone(),
            alphabet,
            state_names,
            germ_count,
            product,
            inverse,
            transitions,
            resolution_depth: spec.resolution_depth,
            expansions: Vec::new(),
            merge_index: HashMap::new(),
            spec,
        };

        for g in 0..germ_count {
            let cells = machine.resolve_expansion(g as StateId)?;
            if let Some(prev) = machine.merge_index.insert(cells.clone(), g as StateId) {
                return Err(Error::Config(format!(
                    "germs {} and {} have identical expansions",
                    machine.state_names[prev as usize], machine.state_names[g]
                )));
            }
            machine.expansions.push(cells);
        }
        Ok(machine)
    }

    fn resolve_expansion(&self, germ: StateId) -> Result<Vec<Cell>> {
        let mut cells = Vec::new();
        let mut stack = vec![(germ, Word::empty(), Word::empty())];
        while let Some((state, input, output)) = stack.pop() {
            for t in &self.transitions[state as usize] {
                let i = input.concat(t.input.as_bytes());
                let o = output.concat(t.output.as_bytes());
                if self.is_germ(t.target) {
                    let (wi, wo) = (self.alphabet.weight_unchecked(i.as_bytes()), self.alphabet.weight_unchecked(o.as_bytes()));
                    if wi != wo {
                        return Err(Error::WeightMismatch(format!(
                            "state {} maps {i} (weight {wi}) to {o} (weight {wo})",
                            self.state_names[germ as usize]
                        )));
                    }
                    cells.push(Cell { input: i, output: o, tail: t.target });
                } else if i.len() >= self.resolution_depth {
                    return Err(Error::Config(format!(
                        "state {} does not resolve within depth {} on input {i}",
                        self.state_names[germ as usize], self.resolution_depth
                    )));
                } else {
                    stack.push((t.target, i, o));
                }
            }
        }
        cells.sort();
        Ok(cells)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn spec(&self) -> &MachineSpec {
        &self.spec
    }

    pub fn germ_count(&self) -> usize {
        self.germ_count
    }

    pub fn state_count(&self) -> usize {
        self.state_names.len()
    }

    pub fn is_germ(&self, s: StateId) -> bool {
        (s as usize) < self.germ_count
    }

    pub fn germs(&self) -> impl Iterator<Item = StateId> {
        0..self.germ_count as StateId
    }

    pub fn resolution_depth(&self) -> usize {
        self.resolution_depth
    }

    pub fn state_name(&self, s: StateId) -> &str {
        &self.state_names[s as usize]
    }

    pub fn state_id(&self, name: &str) -> Result<StateId> {
        self.state_names
            .iter()
            .position(|n| n == name)
            .map(|i| i as StateId)
            .ok_or_else(|| Error::UnknownState(name.into()))
    }

    pub fn transitions(&self, s: StateId) -> &[Transition] {
        &self.transitions[s as usize]
    }

    /// `a ∘ b`: first `b`, then `a`.
    pub fn multiply(&self, a: StateId, b: StateId) -> StateId {
        self.product[a as usize * self.germ_count + b as usize]
    }

    pub fn invert(&self, a: StateId) -> StateId {
        self.inverse[a as usize]
    }

    /// One-step expansion `E_h` of a germ: the resolved transitions leaving it,
    /// sorted, relative to the current position.
    pub fn expansion(&self, germ: StateId) -> &[Cell] {
        &self.expansions[germ as usize]
    }

    /// The germ whose expansion equals `cells` (sorted), if any.
    pub fn merge_target(&self, cells: &[Cell]) -> Option<StateId> {
        self.merge_index.get(cells).copied()
    }

    /// Consume one transition from `state` at the start of `word`, continuing
    /// through transient states until a germ is reached.
    pub fn restrict(&self, state: StateId, word: &[u8]) -> Result<Restriction> {
        let mut cur = state;
        let mut pos = 0usize;
        let mut output = Word::empty();
        loop {
            let rest = &word[pos..];
            let rules = &self.transitions[cur as usize];
            if let Some(t) = rules.iter().find(|t| rest.starts_with(t.input.as_bytes())) {
                pos += t.input.len();
                output.extend_from(t.output.as_bytes());
                cur = t.target;
                if self.is_germ(cur) {
                    return Ok(Restriction::Resolved { consumed: pos, output, state: cur });
                }
            } else if rules.iter().any(|t| t.input.starts_with(rest)) {
                return Ok(Restriction::NeedMoreInput);
            } else {
                return Err(Error::MalformedMachine {
                    state: self.state_names[cur as usize].clone(),
                    input: Word::from_bytes(rest),
                });
            }
        }
    }

    /// Run `state` over the whole of `word`. Returns `None` when the word ends
    /// inside a transition.
    pub fn run(&self, state: StateId, word: &[u8]) -> Result<Option<(Word, StateId)>> {
        if state == IDENTITY {
            return Ok(Some((Word::from_bytes(word), IDENTITY)));
        }
        let mut cur = state;
        let mut pos = 0;
        let mut output = Word::empty();
        while pos < word.len() {
            match self.restrict(cur, &word[pos..])? {
                Restriction::Resolved { consumed, output: o, state } => {
                    pos += consumed;
                    output.extend_from(o.as_bytes());
                    cur = state;
                    if cur == IDENTITY {
                        output.extend_from(&word[pos..]);
                        return Ok(Some((output, IDENTITY)));
                    }
                }
                Restriction::NeedMoreInput => return Ok(None),
            }
        }
        Ok(Some((output, cur)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems::builtin;

    #[test]
    fn golden_mean_restrictions() {
        let m = builtin::golden_mean_machine();
        let b0 = m.state_id("b0").unwrap();
        let c0 = m.state_id("c0").unwrap();
        assert_eq!(
            m.restrict(b0, b"2").unwrap(),
            Restriction::Resolved { consumed: 1, output: Word::from("11"), state: IDENTITY }
        );
        assert_eq!(
            m.restrict(b0, b"12").unwrap(),
            Restriction::Resolved { consumed: 2, output: Word::from("12"), state: c0 }
        );
        assert_eq!(m.restrict(b0, b"1").unwrap(), Restriction::NeedMoreInput);
        assert_eq!(
            m.restrict(IDENTITY, b"2").unwrap(),
            Restriction::Resolved { consumed: 1, output: Word::from("2"), state: IDENTITY }
        );
    }

    #[test]
    fn klein_germ_groups() {
        for m in [builtin::golden_mean_machine(), builtin::grigorchuk_machine()] {
            assert_eq!(m.germ_count(), 4);
            for a in m.germs() {
                assert_eq!(m.multiply(a, a), IDENTITY);
                assert_eq!(m.invert(a), a);
                for b in m.germs() {
                    assert_eq!(m.multiply(a, b), m.multiply(b, a));
                    if a != IDENTITY && b != IDENTITY && a != b {
                        let c = m.multiply(a, b);
                        assert!(c != IDENTITY && c != a && c != b);
                    }
                }
            }
        }
    }

    #[test]
    fn grigorchuk_transient_resolution() {
        let m = builtin::grigorchuk_machine();
        let b = m.state_id("b").unwrap();
        let c = m.state_id("c").unwrap();
        assert_eq!(m.resolution_depth(), 2);
        let exp: Vec<(String, String, StateId)> = m
            .expansion(b)
            .iter()
            .map(|c| (c.input.to_text(), c.output.to_text(), c.tail))
            .collect();
        assert_eq!(
            exp,
            vec![
                ("00".into(), "01".into(), IDENTITY),
                ("01".into(), "00".into(), IDENTITY),
                ("1".into(), "1".into(), c),
            ]
        );
        assert_eq!(m.restrict(b, b"0").unwrap(), Restriction::NeedMoreInput);
        assert_eq!(m.run(b, b"0101").unwrap(), Some((Word::from("0001"), IDENTITY)));
        assert_eq!(m.run(b, b"110").unwrap(), Some((Word::from("110"), IDENTITY)));
        assert_eq!(m.run(b, b"10").unwrap(), None);
    }

    #[test]
    fn rejects_bad_specs() {
        let mut spec = builtin::golden_mean_machine().spec().clone();
        spec.products[1][1] = "c0".into();
        assert!(TailMachine::from_spec(spec).is_err());

        let mut spec = builtin::golden_mean_machine().spec().clone();
        spec.transitions.get_mut("b0").unwrap().pop();
        assert!(TailMachine::from_spec(spec).is_err());

        let mut spec = builtin::golden_mean_machine().spec().clone();
        spec.transitions.get_mut("b0").unwrap()[0].output = Word::from("1");
        assert!(matches!(TailMachine::from_spec(spec), Err(Error::WeightMismatch(_))));
    }

    #[test]
    fn spec_round_trips_through_json() {
        let m = builtin::grigorchuk_machine();
        let text = serde_json::to_string(m.spec()).unwrap();
        let back: MachineSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(&back, m.spec());
        assert_eq!(TailMachine::from_spec(back).unwrap(), *m);
    }
}
