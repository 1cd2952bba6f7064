//! The golden-mean coding `κ` of sequences by points of the circle, in floating
//! point. A sanity check only.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequence::{Alphabet, Point};
use crate::systems::SystemConfig;

pub const PHI: f64 = 1.618_033_988_749_895;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KappaValue {
    pub value: f64,
    /// Width of the interval `T_{x_1}∘…∘T_{x_k}([0, 1])` containing the value.
    pub width: f64,
}

fn contraction(letter: u8, x: f64) -> f64 {
    match letter {
        b'1' => x / PHI,
        _ => 1.0 - x / (PHI * PHI),
    }
}

/// `κ(x) ≈ T_{x_1}∘…∘T_{x_k}([0, 1])` for `k = iterations` letters of `point`.
pub fn kappa_numeric(point: &Point, iterations: usize) -> Result<KappaValue> {
    point.check_alphabet(&Alphabet::golden_mean())?;
    if iterations == 0 {
        return Err(Error::InvalidArgument("at least one iteration is needed".into()));
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for k in (0..iterations).rev() {
        let l = point.letter_at(k);
        let (a, b) = (contraction(l, lo), contraction(l, hi));
        (lo, hi) = (a.min(b), a.max(b));
    }
    Ok(KappaValue { value: (lo + hi) / 2.0, width: hi - lo })
}

/// Distance on the circle `R/Z`.
pub fn circle_distance(x: f64, y: f64) -> f64 {
    let d = (x - y).rem_euclid(1.0);
    d.min(1.0 - d)
}

/// Residuals `|κ(a(w)) − (φ − κ(w))|` and `|κ(b(w)) − (1 − κ(w))|` on the circle,
/// with `a`, `b` the unfragmented involutions of the system.
pub fn semiconjugacy_residuals(sys: &SystemConfig, w: &Point, iterations: usize) -> Result<(f64, f64)> {
    let inv = |name: &str| {
        sys.involutions()
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, g)| g)
            .ok_or_else(|| Error::InvalidArgument(format!("system {} has no involution {name}", sys.name())))
    };
    let k = kappa_numeric(w, iterations)?.value;
    let ka = kappa_numeric(&inv("a")?.evaluate(w), iterations)?.value;
    let kb = kappa_numeric(&inv("b")?.evaluate(w), iterations)?.value;
    Ok((circle_distance(ka, PHI - k), circle_distance(kb, 1.0 - k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems::golden_mean_system;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn known_values() {
        let half = kappa_numeric(&"(12)".parse().unwrap(), 60).unwrap();
        assert!((half.value - 0.5).abs() < 1e-9 && half.width < 1e-9);
        let v = kappa_numeric(&"2(12)".parse().unwrap(), 60).unwrap().value;
        assert!((v - PHI / 2.0).abs() < 1e-9, "{v}");
        // 1(12) lands at (φ + 1)/2 mod 1
        let v = kappa_numeric(&"1(12)".parse().unwrap(), 60).unwrap().value;
        assert!(circle_distance(v, (PHI + 1.0) / 2.0) < 1e-9, "{v}");
        assert!(kappa_numeric(&"(1)".parse().unwrap(), 0).is_err());
    }

    #[test]
    fn semiconjugacy() {
        let f = golden_mean_system();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let pre: String = (0..rng.gen_range(0..12)).map(|_| if rng.gen_bool(0.5) { '1' } else { '2' }).collect();
            let per: String = (0..rng.gen_range(1..6)).map(|_| if rng.gen_bool(0.5) { '1' } else { '2' }).collect();
            let w: Point = format!("{pre}({per})").parse().unwrap();
            let (ra, rb) = semiconjugacy_residuals(&f, &w, 60).unwrap();
            assert!(ra < 1e-9 && rb < 1e-9, "{w}: {ra} {rb}");
        }
    }
}
