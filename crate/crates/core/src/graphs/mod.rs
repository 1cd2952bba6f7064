//! Orbital graphs: finite balls of Schreier graphs on eventually periodic points.
//!
//! Loops are never stored. A generator fixing a vertex is exactly one that
//! labels none of its incident edges.

pub mod chain;
pub mod germs;
pub mod repetitive;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::sequence::Point;
use crate::systems::SystemConfig;

pub use chain::{build_chain_i, chain_endpoints, cross_validate_chain, edge_labels, edge_type, ChainGraph, EdgeType};
pub use germs::{germ_ball, lambda_limit_check, lambda_signature, GermBallModel, LambdaCheck};
pub use repetitive::{repetitivity_csv, repetitivity_radius, repetitivity_table, Repetitivity};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    /// Generators mapping `u` to `v`, in generator order.
    pub labels: Vec<String>,
    /// The involution every label fragments, if they agree.
    pub family: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitalBall {
    pub root: Point,
    pub radius: u32,
    /// Vertex 0 is the root; order is breadth-first, generator order within a level.
    pub vertices: Vec<Point>,
    pub distance: Vec<u32>,
    pub edges: Vec<Edge>,
}

/// Breadth-first ball of the orbital graph of `root`.
pub fn orbital_ball(sys: &SystemConfig, root: &Point, radius: u32) -> Result<OrbitalBall> {
    root.check_alphabet(sys.alphabet())?;
    let gens = sys.generators();
    let mut index: HashMap<Point, usize> = HashMap::from([(root.clone(), 0)]);
    let mut vertices = vec![root.clone()];
    let mut distance = vec![0u32];
    let mut labels: BTreeMap<(usize, usize), BTreeSet<usize>> = BTreeMap::new();
    let mut frontier = vec![0usize];
    for d in 0..radius {
        let images: Vec<Vec<Point>> = frontier
            .par_iter()
            .map(|&v| gens.iter().map(|(_, g)| g.evaluate(&vertices[v])).collect())
            .collect();
        let mut next = Vec::new();
        for (&v, imgs) in frontier.iter().zip(images) {
            for (j, img) in imgs.into_iter().enumerate() {
                if img == vertices[v] {
                    continue;
                }
                let w = *index.entry(img.clone()).or_insert_with(|| {
                    vertices.push(img);
                    distance.push(d + 1);
                    next.push(vertices.len() - 1);
                    vertices.len() - 1
                });
                labels.entry((v.min(w), v.max(w))).or_default().insert(j);
            }
        }
        frontier = next;
    }
    let edges = labels
        .into_iter()
        .map(|((u, v), set)| {
            let families: BTreeSet<usize> = set.iter().map(|&j| sys.family(j)).collect();
            Edge {
                u,
                v,
                labels: set.iter().map(|&j| gens[j].0.clone()).collect(),
                family: if families.len() == 1 { families.into_iter().next() } else { None },
            }
        })
        .collect();
    Ok(OrbitalBall { root: root.clone(), radius, vertices, distance, edges })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainViolation {
    pub vertex: Point,
    pub reason: String,
}

impl fmt::Display for ChainViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chain property fails at {}: {}", self.vertex, self.reason)
    }
}

impl std::error::Error for ChainViolation {}

/// Adjacency lists `(neighbor, edge index)`.
pub(crate) type Adjacency = Vec<Vec<(usize, usize)>>;

/// Outward label sequences on the two sides of a root of a chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainSignature {
    pub right: Vec<Vec<String>>,
    pub left: Vec<Vec<String>>,
}

impl ChainSignature {
    /// Rooted isomorphism of labelled chains: equal, or equal after mirroring.
    pub fn matches(&self, other: &ChainSignature) -> bool {
        (self.left == other.left && self.right == other.right) || (self.left == other.right && self.right == other.left)
    }
}

impl fmt::Display for ChainSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |s: &[Vec<String>]| s.iter().map(|l| format!("{{{}}}", l.join(","))).collect::<Vec<_>>().join(" ");
        write!(f, "[{}] * [{}]", side(&self.left), side(&self.right))
    }
}

/// Walk outward from `root` along a graph whose vertices have at most two
/// neighbors, for at most `radius` steps per side.
pub(crate) fn walk_signature(adj: &Adjacency, labels: &[Vec<String>], root: usize, radius: u32) -> Option<ChainSignature> {
    if adj[root].len() > 2 {
        return None;
    }
    let mut sides = Vec::new();
    for &(first, e) in &adj[root] {
        let mut seq = vec![labels[e].clone()];
        let (mut prev, mut cur) = (root, first);
        while (seq.len() as u32) < radius {
            let onward: Vec<&(usize, usize)> = adj[cur].iter().filter(|(n, _)| *n != prev).collect();
            match onward.as_slice() {
                [] => break,
                [(n, e)] => {
                    seq.push(labels[*e].clone());
                    prev = cur;
                    cur = *n;
                }
                _ => return None,
            }
        }
        sides.push(seq);
    }
    if radius == 0 {
        sides.clear();
    }
    sides.resize(2, Vec::new());
    let left = sides.pop().unwrap_or_default();
    let right = sides.pop().unwrap_or_default();
    Some(ChainSignature { right, left })
}

/// The vertices of a ball in chain order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainLayout {
    /// Vertex ids, left to right.
    pub order: Vec<usize>,
    /// `labels[k]` labels the edge between positions `k` and `k + 1`.
    pub labels: Vec<Vec<String>>,
    /// Position of the root in `order`.
    pub root: usize,
}

impl ChainLayout {
    /// Signed offset of a position from the root.
    pub fn offset(&self, position: usize) -> i64 {
        position as i64 - self.root as i64
    }
}

impl OrbitalBall {
    pub(crate) fn adjacency(&self) -> Adjacency {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (k, e) in self.edges.iter().enumerate() {
            adj[e.u].push((e.v, k));
            adj[e.v].push((e.u, k));
        }
        adj
    }

    fn edge_labels(&self) -> Vec<Vec<String>> {
        self.edges.iter().map(|e| e.labels.clone()).collect()
    }

    pub fn signature(&self, radius: u32) -> Option<ChainSignature> {
        walk_signature(&self.adjacency(), &self.edge_labels(), 0, radius.min(self.radius))
    }

    /// Lay the ball out as a chain. If the root has two neighbors, the edge whose
    /// label list sorts first goes to the right; a single neighbor goes right.
    pub fn layout(&self) -> std::result::Result<ChainLayout, ChainViolation> {
        validate_chain(self)?;
        let adj = self.adjacency();
        let mut root_edges = adj[0].clone();
        root_edges.sort_by(|a, b| self.edges[a.1].labels.cmp(&self.edges[b.1].labels));
        let walk = |start: Option<&(usize, usize)>| {
            let mut verts = Vec::new();
            let mut labels = Vec::new();
            if let Some(&(first, e)) = start {
                let (mut prev, mut cur) = (0usize, first);
                verts.push(cur);
                labels.push(self.edges[e].labels.clone());
                // a finite orbit closes up; stop before revisiting the root
                while let Some(&(n, e)) = adj[cur].iter().find(|(n, _)| *n != prev && *n != 0) {
                    if verts.contains(&n) {
                        break;
                    }
                    verts.push(n);
                    labels.push(self.edges[e].labels.clone());
                    prev = cur;
                    cur = n;
                }
            }
            (verts, labels)
        };
        let (right_v, right_l) = walk(root_edges.first());
        let (left_v, left_l) = walk(root_edges.get(1));
        let mut order: Vec<usize> = left_v.into_iter().rev().collect();
        let root = order.len();
        order.push(0);
        order.extend(right_v);
        let mut labels: Vec<Vec<String>> = left_l.into_iter().rev().collect();
        labels.extend(right_l);
        Ok(ChainLayout { order, labels, root })
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph orbital {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  v{i} [label=\"{v}\"{}];", if i == 0 { ", shape=box" } else { "" });
        }
        for e in &self.edges {
            let _ = writeln!(out, "  v{} -- v{} [label=\"{}\"];", e.u, e.v, e.labels.join(","));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ball serializes")
    }
}

/// At most two neighbors per vertex, and the two edges at a vertex fragment
/// different involutions.
pub fn validate_chain(ball: &OrbitalBall) -> std::result::Result<(), ChainViolation> {
    let adj = ball.adjacency();
    for (v, nbrs) in adj.iter().enumerate() {
        let violation = |reason: String| ChainViolation { vertex: ball.vertices[v].clone(), reason };
        if nbrs.len() > 2 {
            return Err(violation(format!("{} neighbors", nbrs.len())));
        }
        let families: Vec<Option<usize>> = nbrs.iter().map(|&(_, e)| ball.edges[e].family).collect();
        if families.contains(&None) {
            return Err(violation("an edge mixes fragments of different involutions".into()));
        }
        if families.len() == 2 && families[0] == families[1] {
            return Err(violation("consecutive edges of the same type".into()));
        }
    }
    Ok(())
}
