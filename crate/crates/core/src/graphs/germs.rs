//! Graphs of germs at singular points and the limits `Λ_i` of regular orbital graphs.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::Report;
use crate::sequence::Point;
use crate::systems::{Region, SystemConfig};

use super::{orbital_ball, walk_signature, Adjacency, ChainSignature, OrbitalBall};

#[derive(Clone, Debug, Serialize)]
pub struct GermCopy {
    pub germ: String,
    /// Germ as a vector over the pieces accumulating on the singular point.
    pub vector: u64,
    pub ball: OrbitalBall,
}

/// `|H|` copies of the ball of the singular point, roots joined by the Cayley
/// graph of the germ group `H`.
#[derive(Clone, Debug, Serialize)]
pub struct GermBallModel {
    pub singular: Point,
    /// Indices of the pieces accumulating on the singular point; bit `j` of a
    /// germ vector refers to `pieces[j]`.
    pub pieces: Vec<usize>,
    pub copies: Vec<GermCopy>,
    /// `(copy, copy, labels)`: generators whose germ carries one root to the other.
    pub gluing: Vec<(usize, usize, Vec<String>)>,
    pub generators: Vec<String>,
}

fn singular_index(sys: &SystemConfig, p: &Point) -> Result<usize> {
    sys.singular_points()
        .iter()
        .position(|s| s == p)
        .ok_or_else(|| Error::InvalidArgument(format!("{p} is not a declared singular point")))
}

/// Germ vectors of the generators at the singular point `s`: their `π`
/// restricted to the pieces accumulating there.
fn germ_vectors(sys: &SystemConfig, pieces: &[usize]) -> Vec<u64> {
    sys.pi_vectors()
        .iter()
        .map(|&v| pieces.iter().enumerate().fold(0u64, |acc, (bit, &k)| acc | (v >> k & 1) << bit))
        .collect()
}

pub fn germ_ball(sys: &SystemConfig, singular: &Point, radius: u32) -> Result<GermBallModel> {
    let s = singular_index(sys, singular)?;
    let pieces: Vec<usize> = (0..sys.pieces().len()).filter(|&k| sys.pieces()[k].accumulates_at == Some(s)).collect();
    let vectors = germ_vectors(sys, &pieces);
    for (j, (name, g)) in sys.generators().iter().enumerate() {
        if vectors[j] != 0 && &g.evaluate(singular) != singular {
            return Err(Error::Internal(format!("{name} has a nontrivial germ at {singular} but moves it")));
        }
    }
    let group = sys.fragmentation_at(s).elements();
    let ball = orbital_ball(sys, singular, radius)?;
    let names = sys.generator_names();
    let copies: Vec<GermCopy> = group
        .iter()
        .map(|&h| {
            let germ = if h == 0 {
                "e".to_string()
            } else {
                vectors.iter().position(|&v| v == h).map_or_else(|| format!("{h:b}"), |j| names[j].to_string())
            };
            GermCopy { germ, vector: h, ball: ball.clone() }
        })
        .collect();
    let mut gluing = Vec::new();
    for x in 0..copies.len() {
        for y in x + 1..copies.len() {
            let diff = copies[x].vector ^ copies[y].vector;
            let labels: Vec<String> =
                (0..names.len()).filter(|&j| vectors[j] == diff).map(|j| names[j].to_string()).collect();
            if !labels.is_empty() {
                gluing.push((x, y, labels));
            }
        }
    }
    let generators = names.iter().map(|n| n.to_string()).collect();
    Ok(GermBallModel { singular: singular.clone(), pieces, copies, gluing, generators })
}

impl GermBallModel {
    /// Quotient by the kernel of `π` at accumulating piece number `bit`: copies
    /// merge by the value of that bit; gluing edges inside a class become loops
    /// and are dropped. Returns the signature at the root of the class-0 copy.
    pub fn quotient_signature(&self, bit: usize, radius: u32) -> Option<ChainSignature> {
        let ball = &self.copies[0].ball;
        let n = ball.vertices.len();
        let mut adj: Adjacency = vec![Vec::new(); 2 * n];
        let mut labels = Vec::new();
        for class in 0..2 {
            for e in &ball.edges {
                let k = labels.len();
                labels.push(e.labels.clone());
                adj[class * n + e.u].push((class * n + e.v, k));
                adj[class * n + e.v].push((class * n + e.u, k));
            }
        }
        let mut middle: Vec<String> = Vec::new();
        for (x, y, l) in &self.gluing {
            let (cx, cy) = (self.copies[*x].vector >> bit & 1, self.copies[*y].vector >> bit & 1);
            if cx != cy {
                for name in l {
                    if !middle.contains(name) {
                        middle.push(name.clone());
                    }
                }
            }
        }
        middle.sort_by_key(|name| self.generators.iter().position(|g| g == name));
        if !middle.is_empty() {
            let k = labels.len();
            labels.push(middle);
            adj[0].push((n, k));
            adj[n].push((0, k));
        }
        walk_signature(&adj, &labels, 0, radius)
    }
}

/// Direct model of `Λ_i` at radius `r`: the ray of the singular point on one
/// side, and on the other an edge labelled by the generators acting as the
/// involution on piece `piece` followed by a mirrored copy of the ray.
pub fn lambda_signature(sys: &SystemConfig, piece: usize, radius: u32) -> Result<ChainSignature> {
    let s = sys.pieces()[piece]
        .accumulates_at
        .ok_or_else(|| Error::InvalidArgument(format!("piece {} does not accumulate on a singular point", sys.pieces()[piece].name)))?;
    let xi = &sys.singular_points()[s];
    let ray = orbital_ball(sys, xi, radius)?
        .signature(radius)
        .ok_or_else(|| Error::Internal(format!("the orbital graph of {xi} is not a chain")))?;
    if !ray.left.is_empty() {
        return Err(Error::InvalidArgument(format!("{xi} is not an end of its orbital graph")));
    }
    let middle: Vec<String> = sys
        .piece_labels(piece)
        .into_iter()
        .filter(|name| sys.generator(name).map(|g| &g.evaluate(xi) == xi).unwrap_or(false))
        .map(String::from)
        .collect();
    let mut other = Vec::new();
    if radius > 0 {
        other.push(middle);
        other.extend(ray.right.iter().take(radius as usize - 1).cloned());
    }
    Ok(ChainSignature { right: ray.right, left: other })
}

#[derive(Clone, Debug, Serialize)]
pub struct LambdaCheck {
    pub piece: String,
    pub radius: u32,
    /// Smallest depth from which every approximant matches the model.
    pub threshold: Option<u32>,
    pub report: Report,
}

/// Balls of radius `radius` at the approximants `prefix·pattern^d·t·tail` of the
/// singular point, for depths `d ≤ depth` in the residue class of `piece`,
/// compared against the `Λ_i` model.
pub fn lambda_limit_check(sys: &SystemConfig, piece: usize, radius: u32, depth: u32) -> Result<LambdaCheck> {
    let spec = sys
        .pieces()
        .get(piece)
        .ok_or_else(|| Error::InvalidArgument(format!("no piece {piece}")))?;
    let s = spec
        .accumulates_at
        .ok_or_else(|| Error::InvalidArgument(format!("piece {} does not accumulate on a singular point", spec.name)))?;
    let Region::Classified { classifier, residue, min_depth, .. } = &spec.region else {
        return Err(Error::InvalidArgument(format!("piece {} has no classifier", spec.name)));
    };
    let c = sys.classifier(classifier)?;
    let xi = &sys.singular_points()[s];
    let model = lambda_signature(sys, piece, radius)?;
    let germs = germ_ball(sys, xi, radius)?;
    let bit = germs.pieces.iter().position(|&k| k == piece).expect("piece accumulates here");
    let quotient = germs.quotient_signature(bit, radius);

    let mut report = Report::new(format!("Λ at piece {} (radius {radius})", spec.name));
    report.check(
        "germ-ball quotient equals the two-copy model",
        quotient.as_ref().is_some_and(|q| q.matches(&model)),
        format!("model {model}"),
    );
    let mut outcomes: Vec<(u32, bool)> = Vec::new();
    for d in (*min_depth..=depth).filter(|d| d % c.modulus == *residue) {
        let mut all = true;
        for t in 0..c.terminals.len() {
            for tail in &sys.probe_spec().tails {
                let zeta = c.approximant(d, t, tail);
                let sig = orbital_ball(sys, &zeta, radius)?.signature(radius);
                all &= sig.is_some_and(|s| s.matches(&model));
            }
        }
        outcomes.push((d, all));
    }
    let threshold = match outcomes.iter().rposition(|&(_, ok)| !ok) {
        None => outcomes.first().map(|&(d, _)| d),
        Some(last_bad) => outcomes.get(last_bad + 1).map(|&(d, _)| d),
    };
    let stable_depths = threshold.map_or(0, |t| outcomes.iter().filter(|&&(d, _)| d >= t).count());
    report.check(
        "approximants stabilize to the model",
        stable_depths >= 2,
        match threshold {
            Some(t) => format!("from depth {t}, {stable_depths} depths checked up to {depth}"),
            None => format!("no stabilization up to depth {depth}"),
        },
    );
    Ok(LambdaCheck { piece: spec.name.clone(), radius, threshold, report })
}
