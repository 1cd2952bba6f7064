//! Inverted orbits, first returns and the maximal inverted-orbit size `ν(n)`.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::Report;
use crate::sequence::Point;
use crate::systems::SystemConfig;

/// Default exactness bound of [`nu_exact`].
pub const NU_EXACT_BOUND: u32 = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FirstReturn {
    pub i: usize,
    pub j: usize,
}

impl FirstReturn {
    pub fn len(&self) -> usize {
        self.j - self.i
    }

    pub fn is_empty(&self) -> bool {
        self.i == self.j
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvertedOrbitReport {
    pub base: Point,
    pub word: Vec<String>,
    /// Distinct points of `{g_1(ξ), g_1g_2(ξ), …}` in order of first appearance.
    pub orbit: Vec<Point>,
    pub first_returns: Vec<FirstReturn>,
}

impl InvertedOrbitReport {
    /// `|first returns| = n − |O|`.
    pub fn identity_holds(&self) -> bool {
        self.first_returns.len() + self.orbit.len() == self.word.len()
    }
}

/// `y_k = g_1(g_2(…g_k(ξ)))` for `k = 1..=n`, each evaluated from scratch.
pub fn prefix_images(sys: &SystemConfig, base: &Point, word: &[&str]) -> Result<Vec<Point>> {
    let gens: Vec<usize> = word.iter().map(|w| sys.generator_index(w)).collect::<Result<_>>()?;
    base.check_alphabet(sys.alphabet())?;
    Ok((1..=gens.len())
        .map(|k| gens[..k].iter().rev().fold(base.clone(), |x, &j| sys.generators()[j].1.evaluate(&x)))
        .collect())
}

pub fn inverted_orbit(sys: &SystemConfig, base: &Point, word: &[&str]) -> Result<InvertedOrbitReport> {
    let images = prefix_images(sys, base, word)?;
    let mut seen = BTreeSet::new();
    let orbit: Vec<Point> = images.into_iter().filter(|y| seen.insert(y.clone())).collect();
    let gens: Vec<&crate::table::TableElement> = word.iter().map(|w| sys.generator(w)).collect::<Result<_>>()?;
    // (i, j) is a first return when g_{i+1}⋯g_j fixes ξ and no g_{k+1}⋯g_j
    // with i < k < j does; for each j that is the largest such i ≥ 1
    let mut first_returns = Vec::new();
    for j in 2..=word.len() {
        let mut z = base.clone();
        for i in (1..j).rev() {
            z = gens[i].evaluate(&z);
            if &z == base {
                first_returns.push(FirstReturn { i, j });
                break;
            }
        }
    }
    Ok(InvertedOrbitReport {
        base: base.clone(),
        word: word.iter().map(|w| w.to_string()).collect(),
        orbit,
        first_returns,
    })
}

/// Generator action on the ball of radius `radius` around the base, as vertex
/// indices; `None` marks images leaving the ball.
struct BallAction {
    moves: Vec<Vec<Option<u32>>>,
    distance: Vec<u32>,
}

impl BallAction {
    fn new(sys: &SystemConfig, base: &Point, radius: u32, gens: &[usize]) -> Result<Self> {
        base.check_alphabet(sys.alphabet())?;
        let mut index: HashMap<Point, u32> = HashMap::from([(base.clone(), 0)]);
        let mut points = vec![base.clone()];
        let mut distance = vec![0u32];
        let mut moves: Vec<Vec<Option<u32>>> = Vec::new();
        let mut k = 0;
        while k < points.len() {
            let x = points[k].clone();
            let mut row = Vec::with_capacity(gens.len());
            for &j in gens {
                let y = sys.generators()[j].1.evaluate(&x);
                let id = match index.get(&y) {
                    Some(&id) => Some(id),
                    None if distance[k] < radius => {
                        points.push(y.clone());
                        distance.push(distance[k] + 1);
                        index.insert(y, points.len() as u32 - 1);
                        Some(points.len() as u32 - 1)
                    }
                    None => None,
                };
                row.push(id);
            }
            moves.push(row);
            k += 1;
        }
        Ok(BallAction { moves, distance })
    }

    /// `h·g` restricted to the ball of radius `r`, given `h` on radius `r + 1`.
    fn step(&self, h: &[u32], g: usize, r: u32) -> Vec<u32> {
        (0..self.moves.len())
            .filter(|&x| self.distance[x] <= r)
            .map(|x| h[self.moves[x][g].expect("inner vertices have all neighbors") as usize])
            .collect()
    }
}

/// Depth-first maximization of `|O|` over words extending the current prefix.
/// `h` is `g_1⋯g_k` on the ball of radius `n − k`; vertex order is breadth
/// first, so restriction to a smaller radius is a prefix.
fn search(ball: &BallAction, h: &[u32], orbit: &mut Vec<u32>, remaining: u32, best: &mut usize, best_word: &mut Vec<usize>, word: &mut Vec<usize>) {
    if orbit.len() > *best {
        *best = orbit.len();
        *best_word = word.clone();
    }
    if remaining == 0 || orbit.len() + remaining as usize <= *best {
        return;
    }
    for g in 0..ball.moves[0].len() {
        let next = ball.step(h, g, remaining - 1);
        let y = next[0];
        let fresh = !orbit.contains(&y);
        if fresh {
            orbit.push(y);
        }
        word.push(g);
        search(ball, &next, orbit, remaining - 1, best, best_word, word);
        word.pop();
        if fresh {
            orbit.pop();
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NuValue {
    pub n: u32,
    pub nu: usize,
    pub exact: bool,
    /// A word attaining the value, as generator names.
    pub witness: Vec<String>,
}

fn resolve_subset(sys: &SystemConfig, subset: Option<&[&str]>) -> Result<Vec<usize>> {
    match subset {
        None => Ok((0..sys.generators().len()).collect()),
        Some([]) => Err(Error::InvalidArgument("empty generator subset".into())),
        Some(names) => names.iter().map(|n| sys.generator_index(n)).collect(),
    }
}

/// Exact `ν(n)` by branch and bound: a prefix is abandoned once its orbit size
/// plus the remaining length cannot beat the best value found.
pub fn nu_exact(sys: &SystemConfig, base: &Point, n: u32, subset: Option<&[&str]>, bound: u32) -> Result<NuValue> {
    if n > bound {
        return Err(Error::BoundExceeded(format!("ν({n}) is beyond the exactness bound {bound}; use nu_sampled")));
    }
    let gens = resolve_subset(sys, subset)?;
    let ball = BallAction::new(sys, base, n, &gens)?;
    let identity: Vec<u32> = (0..ball.moves.len() as u32).collect();
    let names = |w: &[usize]| w.iter().map(|&g| sys.generators()[gens[g]].0.clone()).collect::<Vec<_>>();
    if n == 0 {
        return Ok(NuValue { n, nu: 0, exact: true, witness: Vec::new() });
    }
    // one subtree per first letter, merged in generator order
    let results: Vec<(usize, Vec<usize>)> = (0..gens.len())
        .into_par_iter()
        .map(|g| {
            let h = ball.step(&identity, g, n - 1);
            let mut orbit = vec![h[0]];
            let (mut best, mut best_word, mut word) = (0, Vec::new(), vec![g]);
            search(&ball, &h, &mut orbit, n - 1, &mut best, &mut best_word, &mut word);
            (best, best_word)
        })
        .collect();
    let (nu, word) = results.into_iter().fold((0, Vec::new()), |acc, r| if r.0 > acc.0 { r } else { acc });
    Ok(NuValue { n, nu, exact: true, witness: names(&word) })
}

/// Lower bound for `ν(n)` from `samples` uniformly random words.
pub fn nu_sampled(sys: &SystemConfig, base: &Point, n: u32, samples: u32, subset: Option<&[&str]>, seed: u64) -> Result<NuValue> {
    if samples == 0 {
        return Err(Error::InvalidArgument("at least one sample is needed".into()));
    }
    let gens = resolve_subset(sys, subset)?;
    let ball = BallAction::new(sys, base, n, &gens)?;
    let identity: Vec<u32> = (0..ball.moves.len() as u32).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = (0usize, Vec::new());
    for _ in 0..samples {
        let word: Vec<usize> = (0..n).map(|_| rng.gen_range(0..gens.len())).collect();
        let mut h = identity.clone();
        let mut orbit: Vec<u32> = Vec::with_capacity(n as usize);
        for (k, &g) in word.iter().enumerate() {
            h = ball.step(&h, g, n - 1 - k as u32);
            if !orbit.contains(&h[0]) {
                orbit.push(h[0]);
            }
        }
        if orbit.len() > best.0 {
            best = (orbit.len(), word);
        }
    }
    let witness = best.1.iter().map(|&g| sys.generators()[gens[g]].0.clone()).collect();
    Ok(NuValue { n, nu: best.0, exact: false, witness })
}

#[derive(Clone, Debug, Serialize)]
pub struct NuTable {
    pub base: Point,
    pub subset: Vec<String>,
    pub rows: Vec<NuValue>,
}

impl NuTable {
    /// Exact values up to `exact_to`, sampled lower bounds up to `max_n`.
    pub fn compute(
        sys: &SystemConfig,
        base: &Point,
        subset: Option<&[&str]>,
        exact_to: u32,
        max_n: u32,
        samples: u32,
        seed: u64,
    ) -> Result<Self> {
        let mut rows = Vec::new();
        for n in 0..=max_n {
            rows.push(if n <= exact_to {
                nu_exact(sys, base, n, subset, exact_to)?
            } else {
                nu_sampled(sys, base, n, samples, subset, seed.wrapping_add(n as u64))?
            });
        }
        let subset = resolve_subset(sys, subset)?.iter().map(|&j| sys.generators()[j].0.clone()).collect();
        Ok(NuTable { base: base.clone(), subset, rows })
    }

    pub fn delta(&self, n: usize) -> f64 {
        self.rows[n].nu as f64 / n as f64
    }

    fn exact(&self) -> impl Iterator<Item = &NuValue> {
        self.rows.iter().filter(|r| r.exact)
    }

    /// Range, subadditivity and doubling on exact entries; sampled entries must
    /// not exceed the exact values at the same length.
    pub fn check(&self, sys: &SystemConfig) -> Result<Report> {
        let mut report = Report::new(format!("ν table at {}", self.base));
        let exact: HashMap<u32, usize> = self.exact().map(|r| (r.n, r.nu)).collect();
        for r in self.exact().filter(|r| r.n > 0) {
            report.check(format!("1 ≤ ν({}) ≤ {}", r.n, r.n), 1 <= r.nu && r.nu <= r.n as usize, format!("ν = {}", r.nu));
        }
        let mut bad = Vec::new();
        for (&m, &a) in &exact {
            for (&n, &b) in &exact {
                if let Some(&c) = exact.get(&(m + n)) {
                    if c > a + b {
                        bad.push(format!("ν({}) = {c} > ν({m}) + ν({n})", m + n));
                    }
                }
            }
        }
        report.check("subadditivity on exact entries", bad.is_empty(), bad.join("; "));
        let mut bad = Vec::new();
        for m in self.exact().filter(|r| r.n > 0) {
            for n in self.exact().filter(|r| r.n >= m.n) {
                let (dm, dn) = (m.nu as f64 / m.n as f64, n.nu as f64 / n.n as f64);
                if dn > 2.0 * dm + 1e-12 {
                    bad.push(format!("δ({}) = {dn:.3} > 2δ({}) = {:.3}", n.n, m.n, 2.0 * dm));
                }
            }
        }
        report.check("doubling δ(n) ≤ 2δ(m) for m ≤ n", bad.is_empty(), bad.join("; "));
        let mut bad = Vec::new();
        for r in &self.rows {
            let names: Vec<&str> = r.witness.iter().map(String::as_str).collect();
            let direct = inverted_orbit(sys, &self.base, &names)?;
            if direct.orbit.len() != r.nu {
                bad.push(format!("n = {}: witness gives {}", r.n, direct.orbit.len()));
            }
            if let (false, Some(&e)) = (r.exact, exact.get(&r.n)) {
                if r.nu > e {
                    bad.push(format!("sampled ν({}) exceeds the exact value", r.n));
                }
            }
        }
        report.check("witness words recomputed by direct evaluation", bad.is_empty(), bad.join("; "));
        Ok(report)
    }

    /// Rows `n, ν(n), exact, δ(n)`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,nu,exact,delta\n");
        for r in &self.rows {
            let delta = if r.n == 0 { String::new() } else { format!("{:.4}", r.nu as f64 / r.n as f64) };
            let _ = writeln!(out, "{},{},{},{delta}", r.n, r.nu, r.exact);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems::{golden_mean_system, grigorchuk_system};

    #[test]
    fn small_orbits() {
        let f = golden_mean_system();
        let base: Point = "(12)".parse().unwrap();
        let r = inverted_orbit(&f, &base, &[]).unwrap();
        assert!(r.orbit.is_empty() && r.first_returns.is_empty());
        assert_eq!(f.generator("a0").unwrap().evaluate(&base), base);
        let r = inverted_orbit(&f, &base, &["a0"]).unwrap();
        assert_eq!(r.orbit, vec![base.clone()]);
        assert!(r.first_returns.is_empty());
        let r = inverted_orbit(&f, &base, &["a0", "a0"]).unwrap();
        assert_eq!(r.orbit.len(), 1);
        assert_eq!(r.first_returns, vec![FirstReturn { i: 1, j: 2 }]);
        assert!(r.identity_holds());
    }

    #[test]
    fn first_return_identity_on_random_words() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (sys, bases) in [(golden_mean_system(), ["(12)", "(1)", "2(1)"]), (grigorchuk_system(), ["(1)", "(0)", "10(0)"])] {
            let names = sys.generator_names();
            for _ in 0..100 {
                let base: Point = bases[rng.gen_range(0..3)].parse().unwrap();
                let len = rng.gen_range(0..=30);
                let word: Vec<&str> = (0..len).map(|_| names[rng.gen_range(0..names.len())]).collect();
                let r = inverted_orbit(&sys, &base, &word).unwrap();
                assert!(r.identity_holds(), "{base} {word:?}");
                assert!(r.first_returns.iter().all(|fr| 1 <= fr.i && fr.i < fr.j && fr.j <= len));
            }
        }
    }

    #[test]
    fn nu_values() {
        let f = golden_mean_system();
        let base: Point = "(12)".parse().unwrap();
        assert_eq!(nu_exact(&f, &base, 0, None, 6).unwrap().nu, 0);
        assert_eq!(nu_exact(&f, &base, 1, None, 6).unwrap().nu, 1);
        assert!(nu_exact(&f, &base, 2, None, 6).unwrap().nu <= 2);
        assert!(matches!(nu_exact(&f, &base, 7, None, 6), Err(Error::BoundExceeded(_))));
        // exhaustive 12^4 search by direct evaluation
        let names = f.generator_names();
        let mut best = 0;
        for k in 0..names.len().pow(4) {
            let word: Vec<&str> = (0..4).map(|d| names[k / names.len().pow(d) % names.len()]).collect();
            best = best.max(inverted_orbit(&f, &base, &word).unwrap().orbit.len());
        }
        assert_eq!(nu_exact(&f, &base, 4, None, 6).unwrap().nu, best);
        let sampled = nu_sampled(&f, &base, 4, 500, None, 1).unwrap();
        assert!(sampled.nu <= nu_exact(&f, &base, 4, None, 6).unwrap().nu);
    }

    #[test]
    fn nu_table_checks() {
        let g = grigorchuk_system();
        let t = NuTable::compute(&g, &"(1)".parse().unwrap(), None, 6, 9, 2000, 3).unwrap();
        let r = t.check(&g).unwrap();
        assert!(r.passed(), "{r}");
        assert!(t.to_csv().starts_with("n,nu,exact,delta\n0,0,true,\n1,1,true,"));
    }
}
