//! Substitutions on finite alphabets of characters, their factor languages,
//! complexity, palindromes and repetitivity.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Longest iterate built while saturating factor languages.
pub const MAX_ITERATE_LEN: usize = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Substitution {
    pub alphabet: Vec<char>,
    pub rules: BTreeMap<char, String>,
    /// Letter involution `ι`, extended to words by reversing.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub involution: Option<BTreeMap<char, char>>,
}

impl Substitution {
    pub fn new(alphabet: &[char], rules: &[(char, &str)], involution: Option<&[(char, char)]>) -> Result<Self> {
        let sub = Substitution {
            alphabet: alphabet.to_vec(),
            rules: rules.iter().map(|&(x, w)| (x, w.to_string())).collect(),
            involution: involution.map(|pairs| pairs.iter().copied().collect()),
        };
        sub.validate()?;
        Ok(sub)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let sub: Substitution = serde_json::from_str(text)?;
        sub.validate()?;
        Ok(sub)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("substitution serializes")
    }

    fn validate(&self) -> Result<()> {
        let letters: BTreeSet<char> = self.alphabet.iter().copied().collect();
        if letters.len() != self.alphabet.len() || letters.is_empty() {
            return Err(Error::Config("alphabet is empty or repeats a letter".into()));
        }
        for &x in &self.alphabet {
            let image = self.rules.get(&x).ok_or_else(|| Error::Config(format!("no rule for {x:?}")))?;
            if image.is_empty() {
                return Err(Error::Config(format!("rule for {x:?} is empty")));
            }
            if let Some(y) = image.chars().find(|y| !letters.contains(y)) {
                return Err(Error::UnknownLetter(y));
            }
        }
        if self.rules.len() != self.alphabet.len() {
            return Err(Error::Config("rules mention letters outside the alphabet".into()));
        }
        if let Some(iota) = &self.involution {
            for &x in &self.alphabet {
                let y = *iota.get(&x).ok_or_else(|| Error::Config(format!("involution undefined at {x:?}")))?;
                if iota.get(&y) != Some(&x) {
                    return Err(Error::Config(format!("involution is not an involution at {x:?}")));
                }
            }
            for &x in &self.alphabet {
                let lhs = self.apply(&self.iota_word(&x.to_string()));
                let rhs = self.iota_word(&self.rules[&x]);
                if lhs != rhs {
                    return Err(Error::Config(format!("ι∘τ ≠ τ∘ι at {x:?}: {lhs} vs {rhs}")));
                }
            }
        }
        Ok(())
    }

    /// `ι(x_1…x_n) = ι(x_n)…ι(x_1)`; the identity when no involution is declared.
    pub fn iota_word(&self, w: &str) -> String {
        match &self.involution {
            Some(iota) => w.chars().rev().map(|x| iota[&x]).collect(),
            None => w.to_string(),
        }
    }

    pub fn apply(&self, w: &str) -> String {
        w.chars().map(|x| self.rules[&x].as_str()).collect()
    }

    pub fn iterate(&self, seed: char, n: u32) -> Result<String> {
        if !self.rules.contains_key(&seed) {
            return Err(Error::UnknownLetter(seed));
        }
        let mut w = seed.to_string();
        for _ in 0..n {
            w = self.apply(&w);
            if w.len() > MAX_ITERATE_LEN {
                return Err(Error::BoundExceeded(format!("iterate longer than {MAX_ITERATE_LEN}")));
            }
        }
        Ok(w)
    }

    /// Letters whose iterates grow without bound.
    pub fn growing_letters(&self) -> Vec<char> {
        // x grows iff some iterate contains a letter with a rule of length >= 2
        // reachable from a cycle; detect by lengths after |A| + 1 steps doubling.
        let k = self.alphabet.len() as u32 + 1;
        self.alphabet
            .iter()
            .copied()
            .filter(|&x| {
                let a = self.iterate_len(x, k);
                let b = self.iterate_len(x, 2 * k);
                b > a
            })
            .collect()
    }

    fn iterate_len(&self, x: char, n: u32) -> u128 {
        let idx = |c: char| self.alphabet.iter().position(|&y| y == c).expect("validated");
        let mut counts = vec![0u128; self.alphabet.len()];
        counts[idx(x)] = 1;
        for _ in 0..n {
            let mut next = vec![0u128; counts.len()];
            for (i, &c) in counts.iter().enumerate() {
                if c > 0 {
                    for y in self.rules[&self.alphabet[i]].chars() {
                        next[idx(y)] = next[idx(y)].saturating_add(c);
                    }
                }
            }
            counts = next;
        }
        counts.iter().fold(0u128, |a, &b| a.saturating_add(b))
    }

    /// All length-`n` factors of the words `τ^k(x)`, `k ≥ 0`, `x` a letter. The
    /// union is grown until one more substitution step adds nothing, after every
    /// growing letter's iterate is at least `2n` long.
    pub fn factor_language(&self, n: usize) -> Result<BTreeSet<String>> {
        if n == 0 {
            return Err(Error::InvalidArgument("factor length must be positive".into()));
        }
        let growing = self.growing_letters();
        if growing.is_empty() {
            return Err(Error::InvalidArgument("substitution has no growing letter".into()));
        }
        let mut words: Vec<String> = self.alphabet.iter().map(|x| x.to_string()).collect();
        let mut factors = BTreeSet::new();
        loop {
            let before = factors.len();
            for w in &words {
                collect_factors(w, n, &mut factors);
            }
            let long_enough = self
                .alphabet
                .iter()
                .zip(&words)
                .filter(|(x, _)| growing.contains(x))
                .all(|(_, w)| w.chars().count() >= 2 * n);
            if long_enough && factors.len() == before {
                return Ok(factors);
            }
            words = words.iter().map(|w| self.apply(w)).collect();
            if words.iter().any(|w| w.len() > MAX_ITERATE_LEN) {
                return Err(Error::BoundExceeded(format!("factor saturation at length {n}")));
            }
        }
    }

    pub fn complexity(&self, n: usize) -> Result<usize> {
        Ok(self.factor_language(n)?.len())
    }

    /// Longest palindromic factor of length at most `up_to`, with a witness.
    pub fn palindrome_census(&self, up_to: usize) -> Result<(usize, String)> {
        for len in (1..=up_to).rev() {
            if let Some(w) = self.factor_language(len)?.into_iter().find(|w| is_palindrome(w)) {
                return Ok((len, w));
            }
        }
        Err(Error::Internal("single letters are palindromes".into()))
    }

    /// Smallest `ℓ` such that every factor of length `ℓ` contains every factor of
    /// length `n`.
    pub fn repetitivity(&self, n: usize) -> Result<usize> {
        let targets = self.factor_language(n)?;
        let mut ell = n;
        loop {
            let windows = self.factor_language(ell)?;
            let all = windows.iter().all(|w| {
                let mut inside = BTreeSet::new();
                collect_factors(w, n, &mut inside);
                inside.len() == targets.len()
            });
            if all {
                return Ok(ell);
            }
            ell += 1;
        }
    }
}

fn collect_factors(w: &str, n: usize, out: &mut BTreeSet<String>) {
    let chars: Vec<char> = w.chars().collect();
    for window in chars.windows(n) {
        out.insert(window.iter().collect());
    }
}

pub fn is_palindrome(w: &str) -> bool {
    w.chars().eq(w.chars().rev())
}

/// Rows `n, p(n), R(n), R(n)/n`.
pub fn factor_table(sub: &Substitution, max_n: usize) -> Result<Vec<(usize, usize, usize)>> {
    (1..=max_n).map(|n| Ok((n, sub.complexity(n)?, sub.repetitivity(n)?))).collect()
}

pub fn factor_csv(rows: &[(usize, usize, usize)]) -> String {
    let mut out = String::from("n,p,R,ratio\n");
    for &(n, p, r) in rows {
        let _ = writeln!(out, "{n},{p},{r},{:.4}", r as f64 / n as f64);
    }
    out
}

pub fn thue_morse() -> Substitution {
    Substitution::new(&['0', '1'], &[('0', "01"), ('1', "10")], None).expect("valid")
}

/// The fragmented square of Thue–Morse.
pub fn thue_morse_fragmented() -> Substitution {
    Substitution::new(
        &['0', '1', 't', 'B', 'C', 'D'],
        &[('0', "0t1D1t0"), ('1', "1t0D0t1"), ('D', "C"), ('C', "B"), ('B', "D"), ('t', "t")],
        None,
    )
    .expect("valid")
}

/// Four-letter substitution commuting with the reversing involution; the
/// starred letters `1*`, `2*` are written `a`, `b`.
pub fn iota_example() -> Substitution {
    Substitution::new(
        &['1', 'a', '2', 'b'],
        &[('1', "2"), ('a', "b"), ('2', "ab"), ('b', "21")],
        Some(&[('1', 'a'), ('a', '1'), ('2', 'b'), ('b', '2')]),
    )
    .expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thue_morse_iterates() {
        let tm = thue_morse();
        assert_eq!(tm.iterate('0', 0).unwrap(), "0");
        assert_eq!(tm.iterate('0', 2).unwrap(), "0110");
        for n in 1..=4 {
            let w = tm.iterate('0', 2 * n).unwrap();
            assert!(is_palindrome(&w), "τ^{}(0)", 2 * n);
        }
        assert_eq!(tm.iterate('0', 4).unwrap().len(), 16);
    }

    #[test]
    fn thue_morse_complexity() {
        let tm = thue_morse();
        assert_eq!(tm.complexity(1).unwrap(), 2);
        assert_eq!(tm.complexity(2).unwrap(), 4);
        // brute force over τ^8(0)
        let w = tm.iterate('0', 8).unwrap();
        for n in 1..=8 {
            let mut set = BTreeSet::new();
            collect_factors(&w, n, &mut set);
            assert_eq!(tm.factor_language(n).unwrap(), set, "n = {n}");
        }
        let mut prev = 0;
        for n in 1..=12 {
            let p = tm.complexity(n).unwrap();
            assert!(p >= prev && (prev == 0 || p <= 2 * prev));
            prev = p;
        }
    }

    #[test]
    fn fragmented_substitution() {
        let s = thue_morse_fragmented();
        assert_eq!(s.iterate('0', 1).unwrap(), "0t1D1t0");
        // letters 0, 1 and t, B, C, D alternate in the iterates of 0
        for w in s.factor_language(2).unwrap() {
            let c: Vec<char> = w.chars().collect();
            let binary = |x: char| x == '0' || x == '1';
            assert!(binary(c[0]) != binary(c[1]) || !s.iterate('0', 3).unwrap().contains(&w), "{w}");
        }
        let w = s.iterate('0', 3).unwrap();
        for (k, x) in w.chars().enumerate() {
            assert_eq!(k % 2 == 0, x == '0' || x == '1');
        }
    }

    #[test]
    fn iota_invariance() {
        let s = iota_example();
        assert_eq!(s.iterate('1', 3).unwrap(), "b21");
        let mut w = "b2".to_string();
        for _ in 0..=8 {
            assert_eq!(s.iota_word(&w), w);
            w = s.apply(&w);
        }
        let bad = Substitution::new(&['0', '1'], &[('0', "01"), ('1', "10")], Some(&[('0', '0'), ('1', '1')]));
        assert!(bad.is_err());
    }

    #[test]
    fn repetitivity_bounds() {
        let tm = thue_morse();
        assert_eq!(tm.palindrome_census(1).unwrap().0, 1);
        let (len, w) = tm.palindrome_census(16).unwrap();
        assert_eq!(len, 16);
        assert!(is_palindrome(&w));
        let mut prev = 0;
        for n in 1..=10 {
            let r = tm.repetitivity(n).unwrap();
            let p = tm.complexity(n).unwrap();
            assert!(r >= n + p - 1, "n = {n}");
            assert!(r >= prev);
            prev = r;
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Substitution::new(&['0'], &[('0', "0")], None).unwrap().factor_language(2).is_err());
        assert!(Substitution::new(&['0'], &[('0', "01")], None).is_err());
        assert!(Substitution::new(&['0', '1'], &[('0', "01")], None).is_err());
        let json = thue_morse().to_json();
        assert_eq!(Substitution::from_json(&json).unwrap(), thue_morse());
    }
}
