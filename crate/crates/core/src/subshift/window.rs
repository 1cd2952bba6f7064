//! The shift model: an orbital chain read as a word of piece labels, with
//! generators acting by moving the origin.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::{orbital_ball, ChainLayout};
use crate::sequence::Point;
use crate::systems::{FragmentationSpec, SystemConfig};

/// Piece labels of consecutive edges; vertex positions run `0..=letters.len()`
/// and `origin` is the position of the current vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftWindow {
    pub letters: Vec<usize>,
    pub origin: usize,
    /// The chain really ends at position 0.
    pub left_closed: bool,
    /// The chain really ends at position `letters.len()`.
    pub right_closed: bool,
}

impl ShiftWindow {
    pub fn new(letters: Vec<usize>, origin: usize, left_closed: bool, right_closed: bool) -> Result<Self> {
        if origin > letters.len() {
            return Err(Error::InvalidArgument(format!("origin {origin} outside a window of {} letters", letters.len())));
        }
        Ok(ShiftWindow { letters, origin, left_closed, right_closed })
    }

    pub fn right_letter(&self) -> Option<usize> {
        self.letters.get(self.origin).copied()
    }

    pub fn left_letter(&self) -> Option<usize> {
        self.origin.checked_sub(1).map(|k| self.letters[k])
    }

    /// Origin moved by one letter, `σ` or `σ^{-1}`.
    pub fn shifted(&self, right: bool) -> Self {
        let mut w = self.clone();
        if right {
            w.origin += 1;
        } else {
            w.origin -= 1;
        }
        w
    }

    /// Piece names, with `|` at the origin.
    pub fn display(&self, sys: &SystemConfig) -> String {
        let names: Vec<&str> = self.letters.iter().map(|&k| sys.pieces()[k].name.as_str()).collect();
        format!("{} | {}", names[..self.origin].join(" "), names[self.origin..].join(" "))
    }
}

impl fmt::Display for ShiftWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |s: &[usize]| s.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(" ");
        write!(f, "{} | {}", side(&self.letters[..self.origin]), side(&self.letters[self.origin..]))
    }
}

fn piece_word(sys: &SystemConfig, root: &Point, radius: u32) -> Result<(ShiftWindow, ChainLayout, Vec<Point>)> {
    if sys.is_singular(root) {
        return Err(Error::SingularPoint(root.to_string()));
    }
    let ball = orbital_ball(sys, root, radius)?;
    let layout = ball.layout().map_err(|v| Error::InvalidArgument(v.to_string()))?;
    let points: Vec<Point> = layout.order.iter().map(|&v| ball.vertices[v].clone()).collect();
    let mut letters = Vec::with_capacity(points.len().saturating_sub(1));
    for pair in points.windows(2) {
        let (inv, piece) = sys
            .edge_piece(&pair[0], &pair[1])
            .ok_or_else(|| Error::Internal(format!("edge {} — {} lies in no piece", pair[0], pair[1])))?;
        if letters.last().is_some_and(|&prev: &usize| sys.pieces()[prev].involution == sys.involutions()[inv].0) {
            return Err(Error::Internal(format!("two consecutive edges of involution {} at {}", sys.involutions()[inv].0, pair[0])));
        }
        letters.push(piece);
    }
    let right_len = points.len() - 1 - layout.root;
    let window = ShiftWindow::new(letters, layout.root, layout.root < radius as usize, right_len < radius as usize)?;
    Ok((window, layout, points))
}

/// Window of piece labels around `root`, `radius` edges on each side unless the
/// chain ends sooner.
pub fn encode_orbital_word(sys: &SystemConfig, root: &Point, radius: u32) -> Result<ShiftWindow> {
    piece_word(sys, root, radius).map(|(w, _, _)| w)
}

/// `s` moves the origin across the adjacent edge whose piece it acts on.
pub fn shift_action(window: &ShiftWindow, s: usize, spec: &FragmentationSpec) -> Result<ShiftWindow> {
    let pi = *spec
        .subgroup_generators
        .get(s)
        .ok_or_else(|| Error::InvalidArgument(format!("no generator {s} in the fragmentation")))?;
    if window.origin == 0 && !window.left_closed {
        return Err(Error::WindowExhausted(-(window.origin as i64)));
    }
    if window.origin == window.letters.len() && !window.right_closed {
        return Err(Error::WindowExhausted(window.origin as i64));
    }
    let acts = |letter: Option<usize>| letter.is_some_and(|k| pi >> k & 1 == 1);
    match (acts(window.left_letter()), acts(window.right_letter())) {
        (false, false) => Ok(window.clone()),
        (false, true) => Ok(window.shifted(true)),
        (true, false) => Ok(window.shifted(false)),
        (true, true) => Err(Error::Internal(format!("generator {s} acts on both edges at the origin of {window}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Divergence {
    pub step: usize,
    pub generator: String,
    pub evaluated: Point,
    pub shifted: Point,
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "step {} ({}): evaluation gives {}, the shift model gives {}",
            self.step, self.generator, self.evaluated, self.shifted
        )
    }
}

/// Apply `word` letter by letter (first letter first) to `root`, by evaluation
/// and by the shift model, and return the first step where they disagree.
pub fn first_divergence(sys: &SystemConfig, root: &Point, word: &[&str]) -> Result<Option<Divergence>> {
    let radius = word.len() as u32 + 2;
    let (mut window, _, points) = piece_word(sys, root, radius)?;
    let spec = sys.fragmentation();
    let mut x = root.clone();
    for (step, name) in word.iter().enumerate() {
        let j = sys.generator_index(name)?;
        x = sys.generators()[j].1.evaluate(&x);
        window = shift_action(&window, j, &spec)?;
        let shifted = &points[window.origin];
        if shifted != &x {
            return Ok(Some(Divergence { step, generator: name.to_string(), evaluated: x, shifted: shifted.clone() }));
        }
    }
    Ok(None)
}

pub fn cross_check_models(sys: &SystemConfig, root: &Point, word: &[&str]) -> Result<bool> {
    first_divergence(sys, root, word).map(|d| d.is_none())
}
