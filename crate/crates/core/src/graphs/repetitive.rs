//! Repetitivity radii of orbital chains.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequence::Point;
use crate::systems::SystemConfig;

use super::orbital_ball;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Repetitivity {
    pub r: u32,
    /// `None` when some position of the window has no copy within `search_bound`.
    pub radius: Option<u32>,
    pub search_bound: u32,
}

impl Repetitivity {
    pub fn ratio(&self) -> Option<f64> {
        match (self.radius, self.r) {
            (Some(big), r) if r > 0 => Some(big as f64 / r as f64),
            _ => None,
        }
    }
}

/// Smallest `R` such that every position within `search_bound` of `base` has a
/// copy of the radius-`r` ball of `base` (up to mirroring) within distance `R`.
pub fn repetitivity_radius(sys: &SystemConfig, base: &Point, r: u32, search_bound: u32) -> Result<Repetitivity> {
    if sys.is_singular(base) {
        return Err(Error::SingularPoint(base.to_string()));
    }
    let ball = orbital_ball(sys, base, 2 * search_bound + r)?;
    let layout = ball.layout().map_err(|v| Error::InvalidArgument(v.to_string()))?;
    let r = r as usize;
    let n = layout.order.len();
    // pattern at position q: the 2r edge label sets centred at q
    let pattern = |q: usize| -> Option<&[Vec<String>]> {
        (q >= r && q + r < n).then(|| &layout.labels[q - r..q + r])
    };
    let target = pattern(layout.root).ok_or_else(|| Error::BoundExceeded(format!("the chain ends within {r} of {base}")))?;
    let mirrored: Vec<Vec<String>> = target.iter().rev().cloned().collect();
    let hits: Vec<usize> = (0..n)
        .filter(|&q| pattern(q).is_some_and(|p| p == target || p == mirrored.as_slice()))
        .collect();
    let lo = layout.root.saturating_sub(search_bound as usize);
    let hi = (layout.root + search_bound as usize).min(n - 1);
    let mut worst = 0usize;
    for p in lo..=hi {
        let nearest = hits.iter().map(|&q| q.abs_diff(p)).min().unwrap_or(usize::MAX);
        worst = worst.max(nearest);
    }
    let radius = (worst <= search_bound as usize).then_some(worst as u32);
    Ok(Repetitivity { r: r as u32, radius, search_bound })
}

/// Rows `r, R(r), R(r)/r` for `r` in `1..=max_r`.
pub fn repetitivity_table(sys: &SystemConfig, base: &Point, max_r: u32, search_bound: u32) -> Result<Vec<Repetitivity>> {
    (1..=max_r).map(|r| repetitivity_radius(sys, base, r, search_bound)).collect()
}

pub fn repetitivity_csv(rows: &[Repetitivity]) -> String {
    let mut out = String::from("r,R,ratio\n");
    for row in rows {
        let big = row.radius.map_or_else(|| "exceeded".to_string(), |v| v.to_string());
        let ratio = row.ratio().map_or_else(String::new, |x| format!("{x:.4}"));
        let _ = writeln!(out, "{},{big},{ratio}", row.r);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems::{golden_mean_system, grigorchuk_system};

    #[test]
    fn radius_zero_and_one() {
        let f = golden_mean_system();
        let base: Point = "(1)".parse().unwrap();
        let zero = repetitivity_radius(&f, &base, 0, 30).unwrap();
        assert_eq!(zero.radius, Some(0));
        let one = repetitivity_radius(&f, &base, 1, 60).unwrap();
        let big = one.radius.expect("found within the window");
        assert!(big <= 10, "R(1) = {big}");
        assert!(repetitivity_radius(&f, &"(12)".parse().unwrap(), 1, 10).is_err());
    }

    #[test]
    fn bounded_ratios() {
        let f = golden_mean_system();
        let rows = repetitivity_table(&f, &"(1)".parse().unwrap(), 10, 200).unwrap();
        let k = rows.iter().filter_map(Repetitivity::ratio).fold(0.0f64, f64::max);
        assert!(rows.iter().all(|row| row.radius.is_some()), "{}", repetitivity_csv(&rows));
        assert!(k < 40.0, "K = {k}");
        let g = grigorchuk_system();
        let rows = repetitivity_table(&g, &"(0)".parse().unwrap(), 4, 200).unwrap();
        assert!(rows.iter().all(|row| row.radius.is_some()), "{}", repetitivity_csv(&rows));
    }
}
