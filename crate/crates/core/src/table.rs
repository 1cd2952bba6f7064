//! Table elements: `g(v_i w) = u_i h_i(w)` over a complete prefix code `{v_i}`,
//! with germ-group tails `h_i`.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::machine::{Restriction, StateId, TailMachine, IDENTITY};
use crate::sequence::{CodeDefect, Point, PrefixCode, Word};

/// Default refinement bound for composition, in weight units of the input.
pub const DEFAULT_DEPTH_BOUND: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub input: Word,
    pub output: Word,
    pub tail: StateId,
}

impl Cell {
    pub fn new(input: &str, output: &str, tail: StateId) -> Self {
        Cell { input: Word::from(input), output: Word::from(output), tail }
    }
}

/// A group element in table normal form. Cells are canonical and sorted
/// length-then-lexicographically by input.
#[derive(Clone)]
pub struct TableElement {
    machine: Arc<TailMachine>,
    cells: Vec<Cell>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Order {
    Finite(u64),
    ExceedsBound,
}

/// Serialized form of a cell; tails are state names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRecord {
    #[serde(rename = "in")]
    pub input: Word,
    #[serde(rename = "out")]
    pub output: Word,
    pub tail: String,
}

#[derive(Serialize, Deserialize)]
struct ElementDoc {
    machine: String,
    cells: Vec<CellRecord>,
}

impl PartialEq for TableElement {
    fn eq(&self, other: &Self) -> bool {
        self.cells == other.cells && self.machine.name() == other.machine.name()
    }
}

impl Eq for TableElement {}

impl Hash for TableElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.cells.hash(state);
    }
}

impl TableElement {
    pub fn identity(machine: &Arc<TailMachine>) -> Self {
        Self::germ(machine, IDENTITY)
    }

    /// The single-cell element `(ε, ε, h)`.
    pub fn germ(machine: &Arc<TailMachine>, h: StateId) -> Self {
        assert!(machine.is_germ(h), "tail must be a germ state");
        TableElement { machine: machine.clone(), cells: vec![Cell { input: Word::empty(), output: Word::empty(), tail: h }] }
    }

    /// Validates the cells and returns the canonical element.
    pub fn from_cells(machine: &Arc<TailMachine>, cells: Vec<Cell>) -> Result<Self> {
        let alphabet = machine.alphabet();
        for c in &cells {
            alphabet.check_word(&c.input)?;
            alphabet.check_word(&c.output)?;
            if !machine.is_germ(c.tail) {
                return Err(Error::Config(format!(
                    "tail {} of cell {} is not a germ",
                    machine.state_name(c.tail),
                    c.input
                )));
            }
            let (wi, wo) = (alphabet.weight_unchecked(c.input.as_bytes()), alphabet.weight_unchecked(c.output.as_bytes()));
            if wi != wo {
                return Err(Error::WeightMismatch(format!("cell {} -> {} has weights {wi} and {wo}", c.input, c.output)));
            }
        }
        for (what, words) in [
            ("inputs", cells.iter().map(|c| c.input.clone()).collect::<Vec<_>>()),
            ("outputs", cells.iter().map(|c| c.output.clone()).collect()),
        ] {
            let n = words.len();
            let code = PrefixCode::new(words)?;
            if code.len() != n {
                return Err(Error::NotPrefixCode(format!("repeated {what}")));
            }
            match code.check_complete(alphabet) {
                Ok(()) => {}
                Err(CodeDefect::Uncovered(w)) | Err(CodeDefect::Overlap(w)) => {
                    return Err(Error::NotPrefixCode(format!("{what} do not cover {w}")))
                }
            }
        }
        Ok(Self::canonical_from(machine.clone(), cells))
    }

    fn canonical_from(machine: Arc<TailMachine>, mut cells: Vec<Cell>) -> Self {
        cells.sort();
        let mut cells = reduce(&machine, cells, 0);
        cells.sort_by(|a, b| a.input.shortlex_cmp(&b.input));
        TableElement { machine, cells }
    }

    /// Re-canonicalize an arbitrary (complete) table for this element's machine.
    pub fn canonicalize(&self) -> Self {
        Self::canonical_from(self.machine.clone(), self.cells.clone())
    }

    /// Replace every cell by its one-step expansion under its tail.
    pub fn refine(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for c in &self.cells {
            for e in self.machine.expansion(c.tail) {
                out.push(Cell {
                    input: c.input.concat(e.input.as_bytes()),
                    output: c.output.concat(e.output.as_bytes()),
                    tail: e.tail,
                });
            }
        }
        out
    }

    pub fn machine(&self) -> &Arc<TailMachine> {
        &self.machine
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn is_identity(&self) -> bool {
        self.cells.len() == 1 && self.cells[0].input.is_empty() && self.cells[0].tail == IDENTITY
    }

    pub fn max_input_len(&self) -> usize {
        self.cells.iter().map(|c| c.input.len()).max().unwrap_or(0)
    }

    fn check_machine(&self, other: &TableElement) -> Result<()> {
        if Arc::ptr_eq(&self.machine, &other.machine) || self.machine.name() == other.machine.name() {
            Ok(())
        } else {
            Err(Error::MachineMismatch(self.machine.name().into(), other.machine.name().into()))
        }
    }

    /// `g2 ∘ g1` (apply `g1` first) with the default depth bound.
    pub fn compose(g2: &TableElement, g1: &TableElement) -> Result<TableElement> {
        Self::compose_bounded(g2, g1, DEFAULT_DEPTH_BOUND)
    }

    pub fn compose_bounded(g2: &TableElement, g1: &TableElement, bound: u32) -> Result<TableElement> {
        g2.check_machine(g1)?;
        let m = &g1.machine;
        if g1.is_identity() {
            return Ok(g2.clone());
        }
        if g2.is_identity() {
            return Ok(g1.clone());
        }
        let index: HashMap<&[u8], &Cell> = g2.cells.iter().map(|c| (c.input.as_bytes(), c)).collect();
        let max2 = g2.max_input_len();
        let mut out = Vec::with_capacity(g1.cells.len().max(g2.cells.len()));
        let mut work: Vec<Cell> = g1.cells.clone();
        while let Some(c) = work.pop() {
            let u = c.output.as_bytes();
            let hit = (0..=u.len().min(max2)).find_map(|k| index.get(&u[..k]));
            if let Some(d) = hit {
                if let Some((o, h2)) = m.run(d.tail, &u[d.input.len()..])? {
                    out.push(Cell {
                        output: d.output.concat(o.as_bytes()),
                        tail: m.multiply(h2, c.tail),
                        input: c.input,
                    });
                    continue;
                }
            }
            if m.alphabet().weight_unchecked(c.input.as_bytes()) > bound {
                return Err(Error::DepthExceeded { bound, input: c.input });
            }
            for e in m.expansion(c.tail) {
                work.push(Cell {
                    input: c.input.concat(e.input.as_bytes()),
                    output: c.output.concat(e.output.as_bytes()),
                    tail: e.tail,
                });
            }
        }
        Ok(Self::canonical_from(m.clone(), out))
    }

    /// Product of a word of elements: `elements[0] ∘ elements[1] ∘ …`.
    pub fn product<'a>(machine: &Arc<TailMachine>, elements: impl IntoIterator<Item = &'a TableElement>) -> Result<TableElement> {
        let mut acc = TableElement::identity(machine);
        let list: Vec<&TableElement> = elements.into_iter().collect();
        for g in list.into_iter().rev() {
            acc = TableElement::compose(g, &acc)?;
        }
        Ok(acc)
    }

    pub fn inverse(&self) -> TableElement {
        let cells = self
            .cells
            .iter()
            .map(|c| Cell { input: c.output.clone(), output: c.input.clone(), tail: self.machine.invert(c.tail) })
            .collect();
        Self::canonical_from(self.machine.clone(), cells)
    }

    /// The cell whose input is a prefix of `p`.
    fn cell_for(&self, p: &Point) -> &Cell {
        self.cells
            .iter()
            .find(|c| p.starts_with(c.input.as_bytes()))
            .expect("inputs form a complete code")
    }

    pub fn evaluate(&self, p: &Point) -> Point {
        let cell = self.cell_for(p);
        let rest = p.drop_prefix(cell.input.len());
        run_on_point(&self.machine, cell.tail, &rest, &cell.output)
    }

    pub fn fingerprint(&self, probes: &[Point]) -> Vec<Point> {
        probes.iter().map(|p| self.evaluate(p)).collect()
    }

    /// Smallest `n ≤ max_power` with `g^n = 1`.
    pub fn order(&self, max_power: u64) -> Result<Order> {
        let mut acc = self.clone();
        for n in 1..=max_power {
            if acc.is_identity() {
                return Ok(Order::Finite(n));
            }
            if n < max_power {
                acc = TableElement::compose(self, &acc)?;
            }
        }
        Ok(Order::ExceedsBound)
    }

    /// Image of the cylinder `word·X^ω` if `g` acts on it as `word ↦ out` followed
    /// by a germ: returns `(out, tail)`, or `None` if `word` is too short to resolve.
    pub fn cylinder_image(&self, word: &[u8]) -> Result<Option<(Word, StateId)>> {
        let Some(cell) = self.cells.iter().find(|c| word.starts_with(c.input.as_bytes())) else {
            return Ok(None);
        };
        Ok(self
            .machine
            .run(cell.tail, &word[cell.input.len()..])?
            .map(|(o, h)| (cell.output.concat(o.as_bytes()), h)))
    }

    /// Conjugated copy supported on `prefix·X^ω`: `g'(prefix w) = prefix g(w)`,
    /// identity elsewhere.
    pub fn on_cylinder(&self, prefix: &Word) -> TableElement {
        let mut cells: Vec<Cell> = self
            .cells
            .iter()
            .map(|c| Cell {
                input: prefix.concat(c.input.as_bytes()),
                output: prefix.concat(c.output.as_bytes()),
                tail: c.tail,
            })
            .collect();
        let bytes = prefix.as_bytes();
        for k in 0..bytes.len() {
            for &y in self.machine.alphabet().letters() {
                if y != bytes[k] {
                    let w = Word::from_bytes(&bytes[..k]).with_letter(y);
                    cells.push(Cell { input: w.clone(), output: w, tail: IDENTITY });
                }
            }
        }
        Self::canonical_from(self.machine.clone(), cells)
    }

    pub fn to_records(&self) -> Vec<CellRecord> {
        self.cells
            .iter()
            .map(|c| CellRecord {
                input: c.input.clone(),
                output: c.output.clone(),
                tail: self.machine.state_name(c.tail).to_string(),
            })
            .collect()
    }

    pub fn from_records(machine: &Arc<TailMachine>, records: Vec<CellRecord>) -> Result<Self> {
        let cells = records
            .into_iter()
            .map(|c| Ok(Cell { input: c.input, output: c.output, tail: machine.state_id(&c.tail)? }))
            .collect::<Result<Vec<_>>>()?;
        Self::from_cells(machine, cells)
    }

    pub fn to_json(&self) -> String {
        let doc = ElementDoc { machine: self.machine.name().to_string(), cells: self.to_records() };
        serde_json::to_string(&doc).expect("serializable")
    }

    pub fn from_json(machine: &Arc<TailMachine>, text: &str) -> Result<Self> {
        let doc: ElementDoc = serde_json::from_str(text)?;
        if doc.machine != machine.name() {
            return Err(Error::MachineMismatch(doc.machine, machine.name().into()));
        }
        Self::from_records(machine, doc.cells)
    }
}

impl fmt::Display for TableElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.cells.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{:?}→{:?}", c.input, c.output)?;
            if c.tail != IDENTITY {
                write!(f, "·{}", self.machine.state_name(c.tail))?;
            }
        }
        f.write_str("}")
    }
}

impl fmt::Debug for TableElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Output of `u · h(rest)` as a point. Cycles on (state, phase) in the period.
fn run_on_point(m: &TailMachine, tail: StateId, rest: &Point, head: &Word) -> Point {
    if tail == IDENTITY {
        return rest.prepend(head.as_bytes());
    }
    let pre_len = rest.preperiod().len();
    let per_len = rest.period().len();
    let window = m.resolution_depth().max(1);
    let mut seen: HashMap<(StateId, usize), usize> = HashMap::new();
    let mut state = tail;
    let mut pos = 0usize;
    let mut out = head.clone();
    let mut buf = Vec::with_capacity(window);
    loop {
        if state == IDENTITY {
            return rest.drop_prefix(pos).prepend(out.as_bytes());
        }
        if pos >= pre_len {
            let key = (state, (pos - pre_len) % per_len);
            if let Some(&start) = seen.get(&key) {
                let bytes = out.as_bytes();
                return Point::new(Word::from_bytes(&bytes[..start]), Word::from_bytes(&bytes[start..]))
                    .expect("a cycle emits output");
            }
            seen.insert(key, out.len());
        }
        buf.clear();
        buf.extend((pos..pos + window).map(|i| rest.letter_at(i)));
        match m.restrict(state, &buf) {
            Ok(Restriction::Resolved { consumed, output, state: next }) => {
                pos += consumed;
                out.extend_from(output.as_bytes());
                state = next;
            }
            Ok(Restriction::NeedMoreInput) | Err(_) => {
                unreachable!("validated machines resolve within their resolution depth")
            }
        }
    }
}

/// Bottom-up merge over the input trie. `cells` are sorted lexicographically
/// and all share the node prefix of length `depth`.
fn reduce(m: &TailMachine, cells: Vec<Cell>, depth: usize) -> Vec<Cell> {
    if cells.len() <= 1 {
        return cells;
    }
    let mut reduced = Vec::with_capacity(cells.len());
    let mut rest = cells;
    while !rest.is_empty() {
        let letter = rest[0].input.as_bytes()[depth];
        let split = rest
            .iter()
            .position(|c| c.input.as_bytes()[depth] != letter)
            .unwrap_or(rest.len());
        let tail = rest.split_off(split);
        reduced.extend(reduce(m, rest, depth + 1));
        rest = tail;
    }
    try_merge(m, reduced, depth)
}

fn try_merge(m: &TailMachine, cells: Vec<Cell>, depth: usize) -> Vec<Cell> {
    if cells.len() == 1 {
        return cells;
    }
    let alphabet = m.alphabet();
    let v = &cells[0].input.as_bytes()[..depth];
    let target = alphabet.weight_unchecked(v);
    let first = cells[0].output.as_bytes();
    let mut acc = 0;
    let mut ulen = None;
    for (i, &l) in std::iter::once(&0u8).chain(first.iter()).enumerate() {
        if i > 0 {
            acc += alphabet.letter_weight(l).unwrap_or(0);
        }
        if acc == target {
            ulen = Some(i);
            break;
        }
        if acc > target {
            break;
        }
    }
    let Some(ulen) = ulen else { return cells };
    let u = &first[..ulen];
    if !cells.iter().all(|c| c.output.starts_with(u)) {
        return cells;
    }
    let mut relative: Vec<Cell> = cells
        .iter()
        .map(|c| Cell { input: c.input.suffix(depth), output: c.output.suffix(ulen), tail: c.tail })
        .collect();
    relative.sort();
    match m.merge_target(&relative) {
        Some(h) => vec![Cell { input: Word::from_bytes(v), output: Word::from_bytes(u), tail: h }],
        None => cells,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems::{golden_mean_system, grigorchuk_system, SystemConfig};

    fn gen(sys: &SystemConfig, name: &str) -> TableElement {
        sys.generator(name).unwrap().clone()
    }

    /// Points with preperiod up to `max_pre` letters and the given periods.
    fn probe_points(sys: &SystemConfig, max_pre: usize, periods: &[&str]) -> Vec<Point> {
        let letters = sys.alphabet().letters().to_vec();
        let mut words = vec![Word::empty()];
        let mut all = vec![Word::empty()];
        for _ in 0..max_pre {
            words = words.iter().flat_map(|w| letters.iter().map(move |&l| w.with_letter(l))).collect();
            all.extend(words.iter().cloned());
        }
        let mut out = Vec::new();
        for w in &all {
            for per in periods {
                out.push(Point::new(w.clone(), Word::from(*per)).unwrap());
            }
        }
        out
    }

    #[test]
    fn a0_evaluation() {
        let f = golden_mean_system();
        let a0 = gen(&f, "a0");
        assert_eq!(a0.evaluate(&"2(12)".parse().unwrap()), "11(12)".parse().unwrap());
        let d0 = gen(&f, "d0");
        assert_eq!(d0.evaluate(&"(12)".parse().unwrap()), "(12)".parse().unwrap());
        let p: Point = "1211(2)".parse().unwrap();
        assert_eq!(TableElement::identity(f.machine()).evaluate(&p), p);
    }

    #[test]
    fn klein_products() {
        let f = golden_mean_system();
        let (b0, c0, d0) = (gen(&f, "b0"), gen(&f, "c0"), gen(&f, "d0"));
        assert_eq!(TableElement::compose(&b0, &c0).unwrap(), d0);
        let a0 = gen(&f, "a0");
        assert!(TableElement::compose(&a0, &a0).unwrap().is_identity());
        let id = TableElement::identity(f.machine());
        for g in f.elements() {
            assert_eq!(&TableElement::compose(&id, g).unwrap(), g);
            assert_eq!(&TableElement::compose(g, &id).unwrap(), g);
        }
    }

    #[test]
    fn b0_expansion_is_b0() {
        let f = golden_mean_system();
        let m = f.machine();
        let b0 = m.state_id("b0").unwrap();
        let c0 = m.state_id("c0").unwrap();
        let table = TableElement::from_cells(
            m,
            vec![Cell::new("11", "2", IDENTITY), Cell::new("2", "11", IDENTITY), Cell::new("12", "12", c0)],
        )
        .unwrap();
        assert_eq!(table, TableElement::germ(m, b0));
        assert_eq!(table, gen(&f, "b0"));
    }

    #[test]
    fn canonicalize_refinements() {
        let f = golden_mean_system();
        let m = f.machine();
        let a0 = gen(&f, "a0");
        assert_eq!(a0.cells().len(), 3);
        let refined = vec![
            Cell::new("111", "21", IDENTITY),
            Cell::new("112", "22", IDENTITY),
            Cell::new("12", "12", IDENTITY),
            Cell::new("2", "11", IDENTITY),
        ];
        assert_eq!(TableElement::from_cells(m, refined).unwrap(), a0);
        assert_eq!(a0.canonicalize(), a0);

        let words = crate::sequence::level_set(m.alphabet(), 3);
        let mut cells: Vec<Cell> = words.iter().map(|w| Cell { input: w.clone(), output: w.clone(), tail: IDENTITY }).collect();
        cells.extend(
            crate::sequence::level_set(m.alphabet(), 2)
                .into_iter()
                .map(|w| w.with_letter(b'2'))
                .map(|w| Cell { input: w.clone(), output: w, tail: IDENTITY }),
        );
        assert!(TableElement::from_cells(m, cells).unwrap().is_identity());

        for g in f.elements() {
            let again = TableElement::from_cells(m, g.refine()).unwrap();
            assert_eq!(&again, g);
        }
    }

    #[test]
    fn inverse_examples() {
        let f = golden_mean_system();
        let a0 = gen(&f, "a0");
        let b1 = gen(&f, "b1");
        assert_eq!(a0.inverse(), a0);
        assert!(TableElement::identity(f.machine()).inverse().is_identity());
        let ab = TableElement::compose(&a0, &b1).unwrap();
        let ba = TableElement::compose(&b1, &a0).unwrap();
        assert_eq!(ab.inverse(), ba);
        assert!(TableElement::compose(&ab, &ba).unwrap().is_identity());
    }

    #[test]
    fn orders_match_point_oracle() {
        let f = golden_mean_system();
        let a0 = gen(&f, "a0");
        let b0 = gen(&f, "b0");
        assert_eq!(a0.order(16).unwrap(), Order::Finite(2));
        assert_eq!(TableElement::identity(f.machine()).order(4).unwrap(), Order::Finite(1));
        let ab = TableElement::compose(&a0, &b0).unwrap();
        assert_eq!(ab.order(64).unwrap(), Order::Finite(2));
        // oracle: iterate evaluation generator by generator
        let probes = probe_points(&f, 6, &["12"]);
        let oracle_order = |word: &[&TableElement], max: u64| -> u64 {
            (1..=max)
                .find(|&k| {
                    probes.iter().all(|p| {
                        let mut q = p.clone();
                        for _ in 0..k {
                            for g in word.iter().rev() {
                                q = g.evaluate(&q);
                            }
                        }
                        &q == p
                    })
                })
                .unwrap()
        };
        assert_eq!(oracle_order(&[&a0, &b0], 64), 2);

        let g = grigorchuk_system();
        let a = gen(&g, "a");
        let b3 = gen(&g, "b3");
        let ad = TableElement::compose(&a, &b3).unwrap();
        assert_eq!(ad.order(64).unwrap(), Order::Finite(4));
        let gprobes = probe_points(&g, 12, &["0"]);
        let hit = (1..=16u64).find(|&k| {
            gprobes.iter().all(|p| {
                let mut q = p.clone();
                for _ in 0..k {
                    q = a.evaluate(&b3.evaluate(&q));
                }
                &q == p
            })
        });
        assert_eq!(hit, Some(4));
        assert_eq!(ad.order(3).unwrap(), Order::ExceedsBound);
    }

    #[test]
    fn fingerprints_separate_a0_b0() {
        let f = golden_mean_system();
        let probe: Point = "122(12)".parse().unwrap();
        let a0 = gen(&f, "a0");
        let b0 = gen(&f, "b0");
        assert_ne!(a0.evaluate(&probe), b0.evaluate(&probe));
        // hand rules: a0 fixes 12w; b0(12 w) = 12 c0(w) and c0(2 w) = 11 w
        assert_eq!(a0.evaluate(&probe), probe);
        assert_eq!(b0.evaluate(&probe), "1211(12)".parse().unwrap());
        let probes = f.probe_set();
        let id = TableElement::identity(f.machine());
        assert_eq!(id.fingerprint(&probes), probes);
    }

    #[test]
    fn json_round_trip() {
        let f = golden_mean_system();
        let g = TableElement::compose(&gen(&f, "a2"), &gen(&f, "b0")).unwrap();
        let text = g.to_json();
        assert_eq!(TableElement::from_json(f.machine(), &text).unwrap(), g);
        assert_eq!(TableElement::from_json(f.machine(), &text).unwrap().to_json(), text);
        assert!(text.starts_with("{\"machine\":"));
        let bad = text.replace("\"in\":\"2\"", "\"in\":\"22\"");
        if bad != text {
            assert!(TableElement::from_json(f.machine(), &bad).is_err());
        }
    }

    #[test]
    fn compose_depth_bound_reports() {
        let f = golden_mean_system();
        let b0 = gen(&f, "b0");
        let c1 = gen(&f, "c1");
        assert!(matches!(TableElement::compose_bounded(&b0, &c1, 0), Err(Error::DepthExceeded { .. })));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn element(sys: &SystemConfig, word: &[usize]) -> TableElement {
            let gens: Vec<&TableElement> = sys.elements().collect();
            TableElement::product(sys.machine(), word.iter().map(|&i| gens[i % gens.len()])).unwrap()
        }

        fn point_strategy(letters: &'static [u8]) -> impl Strategy<Value = Point> {
            (
                proptest::collection::vec(proptest::sample::select(letters), 0..8),
                proptest::collection::vec(proptest::sample::select(letters), 1..4),
            )
                .prop_map(|(pre, per)| Point::new(Word::from_bytes(&pre), Word::from_bytes(&per)).unwrap())
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(200))]

            #[test]
            fn associativity_and_inverses(x in proptest::collection::vec(0usize..12, 0..4),
                                          y in proptest::collection::vec(0usize..12, 0..4),
                                          z in proptest::collection::vec(0usize..12, 0..4)) {
                let f = golden_mean_system();
                let (a, b, c) = (element(&f, &x), element(&f, &y), element(&f, &z));
                let left = TableElement::compose(&TableElement::compose(&a, &b).unwrap(), &c).unwrap();
                let right = TableElement::compose(&a, &TableElement::compose(&b, &c).unwrap()).unwrap();
                prop_assert_eq!(&left, &right);
                prop_assert!(TableElement::compose(&a, &a.inverse()).unwrap().is_identity());
                for cell in left.cells() {
                    let w = f.alphabet();
                    prop_assert_eq!(w.weight(cell.input.as_bytes()).unwrap(), w.weight(cell.output.as_bytes()).unwrap());
                    prop_assert!(f.machine().is_germ(cell.tail));
                }
            }

            #[test]
            fn evaluation_is_a_homomorphism(x in proptest::collection::vec(0usize..12, 0..6),
                                            y in proptest::collection::vec(0usize..12, 0..6),
                                            p in point_strategy(b"12")) {
                let f = golden_mean_system();
                let (g2, g1) = (element(&f, &x), element(&f, &y));
                let both = TableElement::compose(&g2, &g1).unwrap();
                prop_assert_eq!(both.evaluate(&p), g2.evaluate(&g1.evaluate(&p)));
            }

            #[test]
            fn grigorchuk_homomorphism(x in proptest::collection::vec(0usize..4, 0..8),
                                       y in proptest::collection::vec(0usize..4, 0..8),
                                       p in point_strategy(b"01")) {
                let g = grigorchuk_system();
                let (g2, g1) = (element(&g, &x), element(&g, &y));
                let both = TableElement::compose(&g2, &g1).unwrap();
                prop_assert_eq!(both.evaluate(&p), g2.evaluate(&g1.evaluate(&p)));
                prop_assert_eq!(both.canonicalize(), both.clone());
            }
        }
    }
}
