//! Named verification suites shared by the command line and the C interface.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graphs::{cross_validate_chain, lambda_limit_check};
use crate::growth::{inverted_orbit, NuTable};
use crate::report::Report;
use crate::sequence::Point;
use crate::subshift::first_divergence;
use crate::systems::{
    check_fragmentation, conjugation_identity_check, deep_action_check, golden_mean_system, grigorchuk_system,
    relation_suite, sign_sequence, FragmentationSpec, SystemConfig,
};

pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Relations,
    Returns,
    Models,
    Frag,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Suite::All),
            "relations" => Ok(Suite::Relations),
            "returns" => Ok(Suite::Returns),
            "models" => Ok(Suite::Models),
            "frag" => Ok(Suite::Frag),
            _ => Err(Error::InvalidArgument(format!("unknown suite {s:?}"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Suite::All => "all",
            Suite::Relations => "relations",
            Suite::Returns => "returns",
            Suite::Models => "models",
            Suite::Frag => "frag",
        };
        f.write_str(name)
    }
}

pub fn run_suite(suite: Suite, seed: u64) -> Result<Report> {
    match suite {
        Suite::Relations => relations(),
        Suite::Returns => returns(seed),
        Suite::Models => models(seed),
        Suite::Frag => frag(),
        Suite::All => {
            let mut report = Report::new("all");
            for s in [Suite::Frag, Suite::Relations, Suite::Returns, Suite::Models] {
                report.absorb(run_suite(s, seed)?);
            }
            Ok(report)
        }
    }
}

fn relations() -> Result<Report> {
    let f = golden_mean_system();
    let mut report = Report::new("relations");
    report.absorb(relation_suite(&f)?);
    for n in 6..=12 {
        report.absorb(deep_action_check(&f, n)?);
    }
    for n in 5..=10 {
        report.absorb(conjugation_identity_check(&f, n)?);
    }
    let cycle = [(1, 0), (1, 1), (0, 1)];
    for (i, name) in ["a0", "a1", "a2"].iter().enumerate() {
        let s = sign_sequence(&f, f.generator(name)?, 1, 12)?;
        let ok = s.start_index == 2 + i as u32 && s.pairs.iter().enumerate().all(|(k, p)| *p == cycle[k % 3]);
        report.check(format!("sign sequence of {name}"), ok, format!("from level {}: {:?}", s.start_index, s.pairs));
    }
    Ok(report)
}

fn random_letters(rng: &mut ChaCha8Rng, letters: &[char], max_len: usize) -> String {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| letters[rng.gen_range(0..letters.len())]).collect()
}

/// A random regular point: a random prefix on one of a few periodic tails.
pub fn random_root(sys: &SystemConfig, rng: &mut ChaCha8Rng) -> Point {
    let (letters, tails): (&[char], &[&str]) = if sys.alphabet().contains(b'2') {
        (&['1', '2'], &["(1)", "(2)", "(112)", "(12)", "(1222)"])
    } else {
        (&['0', '1'], &["(0)", "(001)", "(01)", "(011)"])
    };
    loop {
        let prefix = random_letters(rng, letters, 10);
        let tail = tails[rng.gen_range(0..tails.len())];
        let p: Point = format!("{prefix}{tail}").parse().expect("well-formed");
        if !sys.is_singular(&p) {
            return p;
        }
    }
}

pub fn random_word<'a>(sys: &'a SystemConfig, rng: &mut ChaCha8Rng, max_len: usize) -> Vec<&'a str> {
    let names = sys.generator_names();
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| names[rng.gen_range(0..names.len())]).collect()
}

/// First-return identity on `count` random words of length at most `max_len`.
pub fn first_return_trials(sys: &SystemConfig, count: usize, max_len: usize, seed: u64) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new(format!("first returns in {}", sys.name()));
    let mut failures = Vec::new();
    for _ in 0..count {
        let base = if rng.gen_bool(0.25) {
            sys.singular_points()[rng.gen_range(0..sys.singular_points().len())].clone()
        } else {
            random_root(sys, &mut rng)
        };
        let word = random_word(sys, &mut rng, max_len);
        let r = inverted_orbit(sys, &base, &word)?;
        if !r.identity_holds() {
            failures.push(format!("{base} {word:?}"));
        }
    }
    report.check(format!("|returns| = n − |O| on {count} words"), failures.is_empty(), failures.join("; "));
    Ok(report)
}

/// Shift model against evaluation on `count` random (root, word) pairs.
pub fn model_trials(sys: &SystemConfig, count: usize, max_len: usize, seed: u64) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new(format!("shift model of {}", sys.name()));
    let mut failures = Vec::new();
    for _ in 0..count {
        let root = random_root(sys, &mut rng);
        let word = random_word(sys, &mut rng, max_len);
        match first_divergence(sys, &root, &word) {
            Ok(None) => {}
            Ok(Some(d)) => failures.push(format!("{root}: {d}")),
            Err(e) => failures.push(format!("{root} {word:?}: {e}")),
        }
    }
    report.check(format!("{count} random trajectories agree"), failures.is_empty(), failures.join("; "));
    Ok(report)
}

fn returns(seed: u64) -> Result<Report> {
    let mut report = Report::new("returns");
    for sys in [golden_mean_system(), grigorchuk_system()] {
        report.absorb(first_return_trials(&sys, 1000, 30, seed)?);
        let base = sys.singular_points()[0].clone();
        let table = NuTable::compute(&sys, &base, None, 6, 10, 20_000, seed)?;
        report.absorb(table.check(&sys)?);
    }
    Ok(report)
}

fn models(seed: u64) -> Result<Report> {
    let mut report = Report::new("models");
    for sys in [golden_mean_system(), grigorchuk_system()] {
        report.absorb(model_trials(&sys, 500, 20, seed)?);
        for piece in (0..sys.pieces().len()).filter(|&k| sys.pieces()[k].accumulates_at == Some(0)) {
            report.absorb(lambda_limit_check(&sys, piece, 6, 30)?.report);
        }
    }
    let f = golden_mean_system();
    for tail in ["(1)", "(12)", "(21)"] {
        for n in 0..=12 {
            report.absorb(cross_validate_chain(&f, n, &tail.parse()?)?);
        }
    }
    Ok(report)
}

fn frag() -> Result<Report> {
    let mut report = Report::new("frag");
    let klein = FragmentationSpec::parse(3, &["000", "110", "101", "011"])?;
    let full = FragmentationSpec::parse(3, &["100", "010", "001"])?;
    let single = FragmentationSpec::parse(1, &["1"])?;
    report.check("{000,110,101,011} purely non-Hausdorff", check_fragmentation(&klein).purely_non_hausdorff, "");
    report.check("(Z/2)^3 rejected", !check_fragmentation(&full).purely_non_hausdorff, "");
    report.check("d = 1 rejected", !check_fragmentation(&single).purely_non_hausdorff, "");
    for sys in [golden_mean_system(), grigorchuk_system()] {
        for (s, xi) in sys.singular_points().iter().enumerate() {
            let r = check_fragmentation(&sys.fragmentation_at(s));
            report.check(
                format!("{} at {xi} purely non-Hausdorff", sys.name()),
                r.purely_non_hausdorff,
                format!("germ group of order {}", r.subgroup_order),
            );
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_names() {
        for s in ["all", "relations", "returns", "models", "frag"] {
            assert_eq!(s.parse::<Suite>().unwrap().to_string(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn frag_suite_passes() {
        let r = run_suite(Suite::Frag, DEFAULT_SEED).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn random_roots_are_regular() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = grigorchuk_system();
        for _ in 0..50 {
            assert!(!g.is_singular(&random_root(&g, &mut rng)));
        }
    }
}
