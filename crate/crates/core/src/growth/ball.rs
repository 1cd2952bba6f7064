//! Word growth: balls of canonical elements, a fingerprint recount, and orders.

use std::collections::HashSet;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::Report;
use crate::sequence::Point;
use crate::systems::SystemConfig;
use crate::table::{Order, TableElement};

/// Default cap on the number of stored elements.
pub const DEFAULT_BUDGET: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthTable {
    pub system: String,
    pub generators: Vec<String>,
    /// `gamma[n]`: elements of word length at most `n`.
    pub gamma: Vec<u64>,
    /// The budget ran out before the requested radius.
    pub partial: bool,
}

impl GrowthTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,gamma_ball\n");
        for (n, g) in self.gamma.iter().enumerate() {
            let _ = writeln!(out, "{n},{g}");
        }
        out
    }

    /// `γ(0) = 1`, monotone, `γ(m + n) ≤ γ(m)γ(n)` on computed entries.
    pub fn check(&self) -> Report {
        let mut report = Report::new(format!("growth of {}", self.system));
        report.check("γ(0) = 1", self.gamma.first() == Some(&1), "");
        let monotone = self.gamma.windows(2).all(|w| w[0] <= w[1]);
        report.check("γ non-decreasing", monotone, format!("{:?}", self.gamma));
        let mut bad = Vec::new();
        for m in 0..self.gamma.len() {
            for n in 0..self.gamma.len() - m {
                if self.gamma[m + n] > self.gamma[m].saturating_mul(self.gamma[n]) {
                    bad.push(format!("γ({}) > γ({m})γ({n})", m + n));
                }
            }
        }
        report.check("submultiplicative", bad.is_empty(), bad.join("; "));
        report
    }

    /// `log γ(n) / n` for `n ≥ 1`.
    pub fn log_ratio(&self) -> Vec<f64> {
        self.gamma.iter().enumerate().skip(1).map(|(n, &g)| (g as f64).ln() / n as f64).collect()
    }
}

fn resolve(sys: &SystemConfig, subset: Option<&[&str]>) -> Result<Vec<(String, TableElement)>> {
    match subset {
        None => Ok(sys.generators().to_vec()),
        Some([]) => Err(Error::InvalidArgument("empty generator subset".into())),
        Some(names) => names.iter().map(|n| Ok((n.to_string(), sys.generator(n)?.clone()))).collect(),
    }
}

/// Ball of radius `radius` as spheres of canonical elements; spheres are
/// expanded in parallel and merged in frontier order.
pub fn growth_spheres(sys: &SystemConfig, subset: Option<&[&str]>, radius: u32, budget: usize) -> Result<(Vec<Vec<TableElement>>, bool)> {
    let gens = resolve(sys, subset)?;
    let mut seen: HashSet<TableElement> = HashSet::from([sys.identity()]);
    let mut spheres = vec![vec![sys.identity()]];
    for _ in 0..radius {
        let frontier = spheres.last().expect("nonempty");
        let products: Vec<Vec<TableElement>> = frontier
            .par_iter()
            .map(|x| gens.iter().map(|(_, s)| TableElement::compose(s, x)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let mut next = Vec::new();
        for y in products.into_iter().flatten() {
            if seen.len() >= budget {
                return Ok((spheres, true));
            }
            if seen.insert(y.clone()) {
                next.push(y);
            }
        }
        spheres.push(next);
    }
    Ok((spheres, false))
}

pub fn growth_ball(sys: &SystemConfig, subset: Option<&[&str]>, radius: u32, budget: usize) -> Result<GrowthTable> {
    let (spheres, partial) = growth_spheres(sys, subset, radius, budget)?;
    let mut total = 0u64;
    let gamma = spheres
        .iter()
        .map(|s| {
            total += s.len() as u64;
            total
        })
        .collect();
    let generators = resolve(sys, subset)?.into_iter().map(|(n, _)| n).collect();
    Ok(GrowthTable { system: sys.name().to_string(), generators, gamma, partial })
}

/// Ball sizes counted by the action on `probes` alone: an element is its list
/// of probe images, and words are applied letter by letter by evaluation.
pub fn fingerprint_recount(sys: &SystemConfig, subset: Option<&[&str]>, radius: u32, probes: &[Point]) -> Result<Vec<u64>> {
    let gens = resolve(sys, subset)?;
    let start: Vec<Point> = probes.to_vec();
    let mut seen: HashSet<Vec<Point>> = HashSet::from([start.clone()]);
    let mut frontier = vec![start];
    let mut gamma = vec![1u64];
    for _ in 0..radius {
        let images: Vec<Vec<Vec<Point>>> = frontier
            .par_iter()
            .map(|f| gens.iter().map(|(_, s)| f.iter().map(|p| s.evaluate(p)).collect()).collect())
            .collect();
        let mut next = Vec::new();
        for y in images.into_iter().flatten() {
            if seen.insert(y.clone()) {
                next.push(y);
            }
        }
        gamma.push(gamma.last().unwrap() + next.len() as u64);
        frontier = next;
    }
    Ok(gamma)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicityWitness {
    pub radius: u32,
    pub elements: u64,
    pub max_power: u64,
    /// Elements whose order exceeded `max_power`.
    pub unresolved: u64,
    pub max_order: u64,
    /// `(order, count)` in increasing order.
    pub histogram: Vec<(u64, u64)>,
}

/// Orders of every element of the ball of radius `radius`.
pub fn periodicity_witness(sys: &SystemConfig, radius: u32, max_power: u64) -> Result<PeriodicityWitness> {
    let (spheres, partial) = growth_spheres(sys, None, radius, DEFAULT_BUDGET)?;
    if partial {
        return Err(Error::BoundExceeded(format!("ball of radius {radius} exceeds the element budget")));
    }
    let elements: Vec<&TableElement> = spheres.iter().flatten().collect();
    let orders: Vec<Order> = elements.par_iter().map(|g| g.order(max_power)).collect::<Result<_>>()?;
    let mut histogram = std::collections::BTreeMap::new();
    let mut unresolved = 0;
    for o in &orders {
        match o {
            Order::Finite(k) => *histogram.entry(*k).or_insert(0u64) += 1,
            Order::ExceedsBound => unresolved += 1,
        }
    }
    Ok(PeriodicityWitness {
        radius,
        elements: elements.len() as u64,
        max_power,
        unresolved,
        max_order: histogram.keys().next_back().copied().unwrap_or(1),
        histogram: histogram.into_iter().collect(),
    })
}

/// Order of `g` read off its action on `probes`: the least `k` with `g^k`
/// fixing every probe.
pub fn pointwise_order(g: &TableElement, probes: &[Point], max_power: u64) -> Option<u64> {
    let mut current: Vec<Point> = probes.to_vec();
    for k in 1..=max_power {
        current = current.iter().map(|p| g.evaluate(p)).collect();
        if current.as_slice() == probes {
            return Some(k);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems::{golden_mean_system, grigorchuk_system};

    #[test]
    fn first_spheres() {
        let f = golden_mean_system();
        let t = growth_ball(&f, None, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(t.gamma, vec![1, 13]);
        let g = grigorchuk_system();
        let t = growth_ball(&g, None, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(&t.gamma[..2], &[1, 5]);
        assert!(t.check().passed());
        assert_eq!(fingerprint_recount(&g, None, 3, &g.probe_set()).unwrap(), t.gamma);
        let t = growth_ball(&g, Some(&["a", "b1"]), 4, DEFAULT_BUDGET).unwrap();
        // a, b1 generate a dihedral group of order 32
        assert_eq!(t.gamma, vec![1, 3, 5, 7, 9]);
        assert!(growth_ball(&g, None, 3, 6).unwrap().partial);
    }

    #[test]
    fn small_orders() {
        let g = grigorchuk_system();
        let probes = g.probe_set();
        for (b, k) in [("b3", 4), ("b2", 8), ("b1", 16)] {
            let ab = g.word(&["a", b]).unwrap();
            assert_eq!(ab.order(64).unwrap(), Order::Finite(k));
            assert_eq!(pointwise_order(&ab, &probes, 64), Some(k));
        }
        let w = periodicity_witness(&g, 3, 1 << 10).unwrap();
        assert_eq!(w.unresolved, 0);
        assert_eq!(w.elements, 23);
    }
}
