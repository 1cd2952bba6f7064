//! Edge types `e_k` of the golden-mean orbital graphs and the chains `I_n`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::Report;
use crate::sequence::{Alphabet, Point, Word};
use crate::systems::levels::indexed_prefix;
use crate::systems::SystemConfig;

/// Largest `n` accepted by [`cross_validate_chain`].
pub const CROSS_VALIDATE_BOUND: u32 = 16;

/// Generator names labelling edges of type `e_k`, `k = 3q + i`.
pub fn edge_labels(k: u32) -> Vec<String> {
    let (q, i) = (k / 3, k % 3);
    let letters: &[char] = match (q, q % 3) {
        (0, _) => &['a', 'b', 'c'],
        (_, 0) => &['b', 'c'],
        (_, 1) => &['b', 'd'],
        _ => &['c', 'd'],
    };
    letters.iter().map(|x| format!("{x}{i}")).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeType {
    pub index: u32,
    pub labels: Vec<String>,
}

/// The type of the edge `p·11·w — p·2·w` with `p` the indexed prefix of weight `k`.
pub fn edge_type(sys: &SystemConfig, u: &Point, v: &Point) -> Result<EdgeType> {
    if sys.alphabet() != &Alphabet::golden_mean() {
        return Err(Error::InvalidArgument("edge types are defined for the golden-mean alphabet".into()));
    }
    u.check_alphabet(sys.alphabet())?;
    v.check_alphabet(sys.alphabet())?;
    let not_adjacent = || Error::InvalidArgument(format!("{u} and {v} are not joined by an edge e_k"));
    if u == v {
        return Err(not_adjacent());
    }
    let mut c = 0;
    while u.letter_at(c) == v.letter_at(c) {
        c += 1;
    }
    let (x, y) = if u.letter_at(c) == b'1' { (u, v) } else { (v, u) };
    if x.letter_at(c + 1) != b'1' || x.drop_prefix(c + 2) != y.drop_prefix(c + 1) {
        return Err(not_adjacent());
    }
    let prefix = x.prefix(c);
    let k = sys.alphabet().weight(prefix.as_bytes())?;
    if prefix != indexed_prefix(k) {
        return Err(not_adjacent());
    }
    Ok(EdgeType { index: k, labels: edge_labels(k) })
}

/// A finite chain with typed edges: `edges[j]` joins `vertices[j]` and `vertices[j + 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainGraph {
    pub vertices: Vec<Word>,
    pub edges: Vec<u32>,
}

impl ChainGraph {
    fn single(w: Word) -> Self {
        ChainGraph { vertices: vec![w], edges: Vec::new() }
    }

    pub fn reversed(&self) -> Self {
        ChainGraph {
            vertices: self.vertices.iter().rev().cloned().collect(),
            edges: self.edges.iter().rev().copied().collect(),
        }
    }

    /// Append a letter to every vertex name.
    pub fn append(&self, letter: u8) -> Self {
        ChainGraph { vertices: self.vertices.iter().map(|v| v.with_letter(letter)).collect(), edges: self.edges.clone() }
    }

    pub fn left_end(&self) -> &Word {
        &self.vertices[0]
    }

    pub fn right_end(&self) -> &Word {
        self.vertices.last().expect("chains are nonempty")
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph chain {\n");
        for (j, v) in self.vertices.iter().enumerate() {
            let name = if v.is_empty() { "ε".to_string() } else { v.to_string() };
            let _ = writeln!(out, "  v{j} [label=\"{name}\"];");
        }
        for (j, &k) in self.edges.iter().enumerate() {
            let _ = writeln!(out, "  v{j} -- v{} [label=\"{}\", type=\"e{k}\"];", j + 1, edge_labels(k).join(","));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("chain serializes")
    }
}

/// `I_0 = {ε}`, `I_1 = {1}`, `I_k = I_{k-2}^{-1}2 —e_{k-2}— I_{k-1}^{-1}1`.
pub fn build_chain_i(n: u32) -> ChainGraph {
    let mut prev = ChainGraph::single(Word::empty());
    if n == 0 {
        return prev;
    }
    let mut cur = ChainGraph::single(Word::from("1"));
    for k in 2..=n {
        let left = prev.reversed().append(b'2');
        let right = cur.reversed().append(b'1');
        let mut next = left;
        next.edges.push(k - 2);
        next.vertices.extend(right.vertices);
        next.edges.extend(right.edges);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Endpoints `(P_n, Q_n)` from the recursion alone: `P_k = Q_{k-2}2`, `Q_k = P_{k-1}1`.
pub fn chain_endpoints(n: u32) -> (Word, Word) {
    let mut ends = vec![(Word::empty(), Word::empty()), (Word::from("1"), Word::from("1"))];
    for k in 2..=n as usize {
        let p = ends[k - 2].1.with_letter(b'2');
        let q = ends[k - 1].0.with_letter(b'1');
        ends.push((p, q));
    }
    ends.swap_remove(n as usize)
}

/// Check `I_n·tail` against the generators: each label of `e_k` swaps the two
/// endpoints of its edge, the edge pattern gives back `e_k`, and at interior
/// vertices every generator labelling neither incident edge fixes the vertex.
pub fn cross_validate_chain(sys: &SystemConfig, n: u32, tail: &Point) -> Result<Report> {
    if n > CROSS_VALIDATE_BOUND {
        return Err(Error::InvalidArgument(format!("n = {n} exceeds the bound {CROSS_VALIDATE_BOUND}")));
    }
    tail.check_alphabet(sys.alphabet())?;
    let chain = build_chain_i(n);
    let points: Vec<Point> = chain.vertices.iter().map(|v| tail.prepend(v.as_bytes())).collect();
    let mut report = Report::new(format!("I_{n}·{tail}"));
    for (j, &k) in chain.edges.iter().enumerate() {
        let (p, q) = (&points[j], &points[j + 1]);
        let labels = edge_labels(k);
        let mut bad = Vec::new();
        for name in &labels {
            let g = sys.generator(name)?;
            if &g.evaluate(p) != q || &g.evaluate(q) != p {
                bad.push(name.clone());
            }
        }
        let typed = edge_type(sys, p, q).map(|t| t.index);
        let ok = bad.is_empty() && typed.as_ref().ok() == Some(&k);
        let detail = if ok { String::new() } else { format!("labels failing: {bad:?}, pattern type {typed:?}") };
        report.check(format!("{} —e{k}— {}", chain.vertices[j], chain.vertices[j + 1]), ok, detail);
    }
    for j in 1..chain.vertices.len().saturating_sub(1) {
        let incident: Vec<String> = [chain.edges[j - 1], chain.edges[j]].iter().flat_map(|&k| edge_labels(k)).collect();
        let moved: Vec<&str> = sys
            .generators()
            .iter()
            .filter(|(name, g)| !incident.contains(name) && g.evaluate(&points[j]) != points[j])
            .map(|(name, _)| name.as_str())
            .collect();
        report.check(format!("{} fixed by non-labels", chain.vertices[j]), moved.is_empty(), format!("{moved:?}"));
    }
    Ok(report)
}
