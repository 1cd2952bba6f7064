//! Weighted alphabets, finite words, eventually periodic points and prefix codes.
//!
//! Letters are single ASCII bytes. A [`Word`] carries no alphabet; weights are
//! looked up through the [`Alphabet`] it is used with.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite word over single-byte letters.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_bytes(bytes: &[u8]) -> Self {
        Word(bytes.to_vec())
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: u8) {
        self.0.push(letter);
    }

    pub fn extend_from(&mut self, other: &[u8]) {
        self.0.extend_from_slice(other);
    }

    pub fn concat(&self, other: &[u8]) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(other);
        Word(v)
    }

    pub fn with_letter(&self, letter: u8) -> Word {
        self.concat(&[letter])
    }

    pub fn starts_with(&self, prefix: &[u8]) -> bool {
        self.0.starts_with(prefix)
    }

    /// True when neither word is a prefix of the other.
    pub fn incomparable(&self, other: &Word) -> bool {
        !self.0.starts_with(&other.0) && !other.0.starts_with(&self.0)
    }

    pub fn suffix(&self, from: usize) -> Word {
        Word(self.0[from..].to_vec())
    }

    pub fn repeat(&self, times: usize) -> Word {
        Word(self.0.repeat(times))
    }

    pub fn reversed(&self) -> Word {
        let mut v = self.0.clone();
        v.reverse();
        Word(v)
    }

    /// Length-then-lexicographic order, used for canonical cell ordering.
    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }

    /// The word as a string; letters are ASCII so this never fails.
    pub fn to_text(&self) -> String {
        String::from_utf8_lossy(&self.0).into_owned()
    }
}

impl From<&str> for Word {
    fn from(s: &str) -> Self {
        Word(s.as_bytes().to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("ε")
        } else {
            write!(f, "{}", self.to_text())
        }
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if !s.is_ascii() {
            return Err(serde::de::Error::custom("words must be ASCII"));
        }
        Ok(Word::from(s.as_str()))
    }
}

/// An ordered set of letters with positive integer weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<u8>,
    weights: Vec<u32>,
}

impl Alphabet {
    pub fn new(entries: &[(u8, u32)]) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Config("alphabet must be nonempty".into()));
        }
        let mut seen = BTreeSet::new();
        for &(letter, weight) in entries {
            if !letter.is_ascii_graphic() || letter == b'(' || letter == b')' {
                return Err(Error::Config(format!(
                    "letter {:?} is not a printable non-parenthesis ASCII character",
                    letter as char
                )));
            }
            if !seen.insert(letter) {
                return Err(Error::Config(format!("duplicate letter {:?}", letter as char)));
            }
            if weight == 0 {
                return Err(Error::Config(format!("letter {:?} has weight 0", letter as char)));
            }
        }
        Ok(Alphabet {
            letters: entries.iter().map(|e| e.0).collect(),
            weights: entries.iter().map(|e| e.1).collect(),
        })
    }

    /// The golden-mean alphabet `{1, 2}` with weights equal to the digit values.
    pub fn golden_mean() -> Self {
        Alphabet::new(&[(b'1', 1), (b'2', 2)]).expect("valid alphabet")
    }

    /// The binary alphabet `{0, 1}` with unit weights.
    pub fn binary() -> Self {
        Alphabet::new(&[(b'0', 1), (b'1', 1)]).expect("valid alphabet")
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn entries(&self) -> impl Iterator<Item = (u8, u32)> + '_ {
        self.letters.iter().copied().zip(self.weights.iter().copied())
    }

    pub fn contains(&self, letter: u8) -> bool {
        self.letters.contains(&letter)
    }

    pub fn letter_weight(&self, letter: u8) -> Option<u32> {
        self.letters
            .iter()
            .position(|&l| l == letter)
            .map(|i| self.weights[i])
    }

    /// Sum of letter weights. Letters outside the alphabet are an error.
    pub fn weight(&self, word: &[u8]) -> Result<u32> {
        word.iter().try_fold(0u32, |acc, &l| {
            self.letter_weight(l)
                .map(|w| acc + w)
                .ok_or(Error::UnknownLetter(l as char))
        })
    }

    /// Weight of a word already known to be over this alphabet.
    pub(crate) fn weight_unchecked(&self, word: &[u8]) -> u32 {
        word.iter()
            .map(|&l| self.letter_weight(l).unwrap_or(0))
            .sum()
    }

    pub fn check_word(&self, word: &Word) -> Result<()> {
        match word.as_bytes().iter().find(|&&l| !self.contains(l)) {
            Some(&l) => Err(Error::UnknownLetter(l as char)),
            None => Ok(()),
        }
    }

    pub fn max_weight(&self) -> u32 {
        self.weights.iter().copied().max().unwrap_or(1)
    }
}

/// Words of weight exactly `n`, via `L_n = ⊔_x L_{n - w(x)} x`, in shortlex order.
pub fn level_set(alphabet: &Alphabet, n: u32) -> Vec<Word> {
    let n = n as usize;
    let mut levels: Vec<Vec<Word>> = Vec::with_capacity(n + 1);
    levels.push(vec![Word::empty()]);
    for k in 1..=n {
        let mut level = Vec::new();
        for (letter, weight) in alphabet.entries() {
            let weight = weight as usize;
            if weight <= k {
                for w in &levels[k - weight] {
                    level.push(w.with_letter(letter));
                }
            }
        }
        level.sort_by(|a, b| a.shortlex_cmp(b));
        levels.push(level);
    }
    levels.swap_remove(n)
}

/// A finite set of pairwise incomparable words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixCode {
    cells: Vec<Word>,
}

/// Why a code failed a completeness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeDefect {
    /// No cell is a prefix of this word.
    Uncovered(Word),
    /// More than one cell is a prefix of this word.
    Overlap(Word),
}

impl PrefixCode {
    pub fn new(mut cells: Vec<Word>) -> Result<Self> {
        cells.sort_by(|a, b| a.shortlex_cmp(b));
        cells.dedup();
        for (i, a) in cells.iter().enumerate() {
            for b in &cells[i + 1..] {
                if !a.incomparable(b) {
                    return Err(Error::NotPrefixCode(format!("{a} is a prefix of {b}")));
                }
            }
        }
        Ok(PrefixCode { cells })
    }

    pub fn cells(&self) -> &[Word] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn max_len(&self) -> usize {
        self.cells.iter().map(Word::len).max().unwrap_or(0)
    }

    /// The unique cell that is a prefix of `word`, if any.
    pub fn cell_of(&self, word: &[u8]) -> Option<&Word> {
        self.cells.iter().find(|c| word.starts_with(c.as_bytes()))
    }

    /// Exhaustive check: every word of length `depth` has exactly one cell as a
    /// prefix. Requires `depth >= max_len()`.
    pub fn is_complete(&self, alphabet: &Alphabet, depth: usize) -> std::result::Result<(), CodeDefect> {
        assert!(depth >= self.max_len(), "depth below the longest cell");
        let letters = alphabet.letters();
        let mut counter = vec![0usize; depth];
        let mut word = vec![letters[0]; depth];
        loop {
            let hits = self
                .cells
                .iter()
                .filter(|c| word.starts_with(c.as_bytes()))
                .count();
            match hits {
                1 => {}
                0 => return Err(CodeDefect::Uncovered(Word::from_bytes(&word))),
                _ => return Err(CodeDefect::Overlap(Word::from_bytes(&word))),
            }
            // odometer increment
            let mut pos = depth;
            loop {
                if pos == 0 {
                    return Ok(());
                }
                pos -= 1;
                counter[pos] += 1;
                if counter[pos] < letters.len() {
                    word[pos] = letters[counter[pos]];
                    break;
                }
                counter[pos] = 0;
                word[pos] = letters[0];
            }
        }
    }

    /// Structural completeness check walking the tree of prefixes; no depth needed.
    pub fn check_complete(&self, alphabet: &Alphabet) -> std::result::Result<(), CodeDefect> {
        fn walk(code: &PrefixCode, alphabet: &Alphabet, node: Word) -> std::result::Result<(), CodeDefect> {
            if code.cells.binary_search_by(|c| c.shortlex_cmp(&node)).is_ok() {
                return Ok(());
            }
            if !code.cells.iter().any(|c| c.starts_with(node.as_bytes())) {
                return Err(CodeDefect::Uncovered(node));
            }
            for &l in alphabet.letters() {
                walk(code, alphabet, node.with_letter(l))?;
            }
            Ok(())
        }
        walk(self, alphabet, Word::empty())
    }

    /// Words completing this code to a complete code, i.e. the maximal cylinders
    /// disjoint from every cell.
    pub fn complement(&self, alphabet: &Alphabet) -> Vec<Word> {
        let mut out = Vec::new();
        let mut stack = vec![Word::empty()];
        while let Some(node) = stack.pop() {
            if self.cells.contains(&node) {
                continue;
            }
            if self.cells.iter().any(|c| c.starts_with(node.as_bytes())) {
                for &l in alphabet.letters().iter().rev() {
                    stack.push(node.with_letter(l));
                }
            } else {
                out.push(node);
            }
        }
        out.sort_by(|a, b| a.shortlex_cmp(b));
        out
    }
}

/// The golden-mean splitting code `L_n ∪ L_{n-1}2`, for `n ≥ 1`.
pub fn splitting_code(n: u32) -> Result<PrefixCode> {
    if n == 0 {
        return Err(Error::InvalidArgument("splitting code needs n >= 1".into()));
    }
    let alphabet = Alphabet::golden_mean();
    let mut cells = level_set(&alphabet, n);
    cells.extend(level_set(&alphabet, n - 1).into_iter().map(|w| w.with_letter(b'2')));
    let code = PrefixCode::new(cells)?;
    if let Err(defect) = code.check_complete(&alphabet) {
        return Err(Error::Internal(format!("splitting code {n} incomplete: {defect:?}")));
    }
    Ok(code)
}

/// An eventually periodic sequence `preperiod · period^ω` in canonical form:
/// primitive period and shortest preperiod.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pre: Word,
    per: Word,
}

impl Point {
    pub fn new(pre: Word, per: Word) -> Result<Self> {
        if per.is_empty() {
            return Err(Error::Parse("point period must be nonempty".into()));
        }
        Ok(Self::canonical(pre.0, per.0))
    }

    /// `period^ω`
    pub fn periodic(per: &str) -> Result<Self> {
        Point::new(Word::empty(), Word::from(per))
    }

    fn canonical(mut pre: Vec<u8>, per: Vec<u8>) -> Self {
        let mut per = primitive_root(&per).to_vec();
        while let (Some(&a), Some(&b)) = (pre.last(), per.last()) {
            if a != b {
                break;
            }
            pre.pop();
            per.rotate_right(1);
        }
        Point { pre: Word(pre), per: Word(per) }
    }

    pub fn preperiod(&self) -> &Word {
        &self.pre
    }

    pub fn period(&self) -> &Word {
        &self.per
    }

    pub fn letter_at(&self, i: usize) -> u8 {
        let p = self.pre.len();
        if i < p {
            self.pre.0[i]
        } else {
            self.per.0[(i - p) % self.per.len()]
        }
    }

    /// The first `n` letters.
    pub fn prefix(&self, n: usize) -> Word {
        Word((0..n).map(|i| self.letter_at(i)).collect())
    }

    pub fn starts_with(&self, word: &[u8]) -> bool {
        word.iter().enumerate().all(|(i, &l)| self.letter_at(i) == l)
    }

    /// `word · self`
    pub fn prepend(&self, word: &[u8]) -> Point {
        let mut pre = word.to_vec();
        pre.extend_from_slice(&self.pre.0);
        Self::canonical(pre, self.per.0.clone())
    }

    /// The sequence with its first `n` letters removed.
    pub fn drop_prefix(&self, n: usize) -> Point {
        let p = self.pre.len();
        if n <= p {
            Self::canonical(self.pre.0[n..].to_vec(), self.per.0.clone())
        } else {
            let mut per = self.per.0.clone();
            let shift = (n - p) % per.len();
            per.rotate_left(shift);
            Self::canonical(Vec::new(), per)
        }
    }

    pub fn is_purely_periodic(&self) -> bool {
        self.pre.is_empty()
    }

    /// Length of the description `preperiod + period`.
    pub fn description_len(&self) -> usize {
        self.pre.len() + self.per.len()
    }

    pub fn check_alphabet(&self, alphabet: &Alphabet) -> Result<()> {
        alphabet.check_word(&self.pre)?;
        alphabet.check_word(&self.per)
    }
}

fn primitive_root(word: &[u8]) -> &[u8] {
    let n = word.len();
    for d in 1..n {
        if n.is_multiple_of(d) && (d..n).all(|i| word[i] == word[i - d]) {
            return &word[..d];
        }
    }
    word
}

impl FromStr for Point {
    type Err = Error;

    /// Parses `"pre(per)"`, e.g. `"2(12)"` or `"(12)"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let open = s
            .find('(')
            .ok_or_else(|| Error::Parse(format!("point {s:?} lacks '(period)'")))?;
        if !s.ends_with(')') || s[open + 1..s.len() - 1].contains(['(', ')']) || !s.is_ascii() {
            return Err(Error::Parse(format!("malformed point {s:?}")));
        }
        Point::new(Word::from(&s[..open]), Word::from(&s[open + 1..s.len() - 1]))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.pre, self.per)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Partition of the complement of a singular point into sets `W_n`: the points
/// `prefix · pattern^n · t · …` with `t` a terminal word. Pieces are `n mod modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceClassifier {
    #[serde(default)]
    pub prefix: Word,
    pub pattern: Word,
    pub terminals: Vec<Word>,
    pub modulus: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    /// The point lies in `W_depth`, piece `depth mod modulus`.
    Piece { index: u32, depth: u32 },
    /// The point is `prefix · pattern^ω`.
    Singular,
    /// The point does not start with the classifier prefix, or no terminal follows.
    Outside,
}

impl PieceClassifier {
    pub fn singular_point(&self) -> Point {
        Point::new(self.prefix.clone(), self.pattern.clone()).expect("nonempty pattern")
    }

    pub fn classify(&self, point: &Point) -> Classification {
        if !point.starts_with(self.prefix.as_bytes()) {
            return Classification::Outside;
        }
        let pat = self.pattern.as_bytes();
        let start = self.prefix.len();
        // Past this position a run of the pattern has wrapped the period fully.
        let horizon = start + point.description_len() + point.period().len() * pat.len() + pat.len();
        let mut pos = start;
        let mut count = 0u32;
        loop {
            if (0..pat.len()).all(|k| point.letter_at(pos + k) == pat[k]) {
                pos += pat.len();
                count += 1;
                if pos > horizon {
                    return Classification::Singular;
                }
            } else {
                break;
            }
        }
        let rest = point.drop_prefix(pos);
        if self.terminals.iter().any(|t| rest.starts_with(t.as_bytes())) {
            Classification::Piece { index: count % self.modulus, depth: count }
        } else {
            Classification::Outside
        }
    }

    /// A representative of `W_depth`: `prefix · pattern^depth · terminal · tail`.
    pub fn approximant(&self, depth: u32, terminal: usize, tail: &Point) -> Point {
        let mut head = self.prefix.clone();
        head.extend_from(self.pattern.repeat(depth as usize).as_bytes());
        head.extend_from(self.terminals[terminal].as_bytes());
        tail.prepend(head.as_bytes())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_level(n: u32) -> BTreeSet<Word> {
        // every word over {1,2} of length <= n, filtered by weight
        let alphabet = Alphabet::golden_mean();
        let mut out = BTreeSet::new();
        for len in 0..=n as usize {
            for bits in 0..(1u32 << len) {
                let w: Vec<u8> = (0..len)
                    .map(|i| if bits >> i & 1 == 1 { b'2' } else { b'1' })
                    .collect();
                if alphabet.weight(&w).unwrap() == n {
                    out.insert(Word::from_bytes(&w));
                }
            }
        }
        out
    }

    #[test]
    fn level_sets_small() {
        let a = Alphabet::golden_mean();
        assert_eq!(level_set(&a, 0), vec![Word::empty()]);
        assert_eq!(level_set(&a, 1), vec![Word::from("1")]);
        let sizes: Vec<usize> = (0..=6).map(|n| level_set(&a, n).len()).collect();
        assert_eq!(sizes, vec![1, 1, 2, 3, 5, 8, 13]);
    }

    #[test]
    fn level_set_matches_brute_force() {
        let a = Alphabet::golden_mean();
        for n in 0..=9 {
            let got: BTreeSet<Word> = level_set(&a, n).into_iter().collect();
            assert_eq!(got, brute_force_level(n), "n = {n}");
        }
        let five: Vec<String> = level_set(&a, 5).iter().map(|w| w.to_text()).collect();
        assert_eq!(five, ["122", "212", "221", "1112", "1121", "1211", "2111", "11111"]);
    }

    #[test]
    fn splitting_codes() {
        let c1 = splitting_code(1).unwrap();
        assert_eq!(c1.cells(), &[Word::from("1"), Word::from("2")]);
        let c2 = splitting_code(2).unwrap();
        assert_eq!(c2.cells(), &[Word::from("2"), Word::from("11"), Word::from("12")]);
        let c4 = splitting_code(4).unwrap();
        assert_eq!(c4.len(), 8);
        assert_eq!(c4.is_complete(&Alphabet::golden_mean(), 8), Ok(()));
        assert!(splitting_code(0).is_err());
    }

    #[test]
    fn completeness_examples() {
        let a = Alphabet::golden_mean();
        let code = |ws: &[&str]| PrefixCode::new(ws.iter().map(|&w| Word::from(w)).collect()).unwrap();
        assert_eq!(code(&["1", "2"]).is_complete(&a, 1), Ok(()));
        assert_eq!(
            code(&["11", "2"]).is_complete(&a, 2),
            Err(CodeDefect::Uncovered(Word::from("12")))
        );
        assert_eq!(code(&["11", "12", "2"]).is_complete(&a, 2), Ok(()));
        assert_eq!(code(&["11", "12", "2"]).check_complete(&a), Ok(()));
        assert!(PrefixCode::new(vec![Word::from("1"), Word::from("12")]).is_err());
    }

    #[test]
    fn complement_completes() {
        let a = Alphabet::golden_mean();
        let code = PrefixCode::new(vec![Word::from("111"), Word::from("12")]).unwrap();
        let comp = code.complement(&a);
        assert_eq!(comp, vec![Word::from("2"), Word::from("112")]);
    }

    #[test]
    fn point_canonical_form() {
        let p: Point = "2(12)".parse().unwrap();
        assert_eq!(p.to_string(), "(21)");
        let q: Point = "212(1212)".parse().unwrap();
        assert_eq!(q, p);
        let r: Point = "(12)".parse().unwrap();
        assert_eq!("1(21)".parse::<Point>().unwrap(), r);
        assert_eq!(r.letter_at(5), b'2');
        assert_eq!(p.prepend(b"1"), "12(12)".parse().unwrap());
        assert_eq!(p.drop_prefix(3), "(12)".parse().unwrap());
        assert_eq!(p.drop_prefix(2), "(21)".parse().unwrap());
        assert!("12".parse::<Point>().is_err());
        assert!("1()".parse::<Point>().is_err());
    }

    #[test]
    fn classifiers() {
        let f = PieceClassifier {
            prefix: Word::empty(),
            pattern: Word::from("12"),
            terminals: vec![Word::from("2"), Word::from("11")],
            modulus: 3,
        };
        assert_eq!(
            f.classify(&"2(12)".parse().unwrap()),
            Classification::Piece { index: 0, depth: 0 }
        );
        assert_eq!(f.classify(&"(12)".parse().unwrap()), Classification::Singular);
        assert_eq!(
            f.classify(&"121212112(1)".parse().unwrap()),
            Classification::Piece { index: 0, depth: 3 }
        );
        let g = PieceClassifier {
            prefix: Word::empty(),
            pattern: Word::from("1"),
            terminals: vec![Word::from("0")],
            modulus: 3,
        };
        assert_eq!(
            g.classify(&"110(10)".parse().unwrap()),
            Classification::Piece { index: 2, depth: 2 }
        );
        assert_eq!(g.classify(&"(1)".parse().unwrap()), Classification::Singular);
        assert_eq!(g.classify(&"1111(1)".parse().unwrap()), Classification::Singular);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn gm_word(max: usize) -> impl Strategy<Value = Vec<u8>> {
            proptest::collection::vec(prop_oneof![Just(b'1'), Just(b'2')], 0..max)
        }

        proptest! {
            #[test]
            fn canonicalization_is_stable(pre in gm_word(6), per in gm_word(5).prop_filter("nonempty", |p| !p.is_empty())) {
                let p = Point::new(Word::from_bytes(&pre), Word::from_bytes(&per)).unwrap();
                let again = Point::new(p.preperiod().clone(), p.period().clone()).unwrap();
                prop_assert_eq!(&again, &p);
                let unrolled = Point::new(Word::from_bytes(&pre).concat(&per), Word::from_bytes(&per)).unwrap();
                prop_assert_eq!(&unrolled, &p);
                for i in 0..20 {
                    let expected = if i < pre.len() { pre[i] } else { per[(i - pre.len()) % per.len()] };
                    prop_assert_eq!(p.letter_at(i), expected);
                }
            }

            #[test]
            fn splitting_code_partitions(n in 1u32..9, seed in gm_word(20)) {
                let code = splitting_code(n).unwrap();
                let mut word = seed.clone();
                word.resize(2 * n as usize, b'1');
                let hits = code.cells().iter().filter(|c| word.starts_with(c.as_bytes())).count();
                prop_assert_eq!(hits, 1);
            }

            #[test]
            fn fibonacci_recurrence(n in 2u32..16) {
                let a = Alphabet::golden_mean();
                prop_assert_eq!(level_set(&a, n).len(), level_set(&a, n - 1).len() + level_set(&a, n - 2).len());
            }

            #[test]
            fn b_classifier_invariant_under_swap(k in 0u32..6, tail in gm_word(4), per in gm_word(3).prop_filter("nonempty", |p| !p.is_empty())) {
                let f = PieceClassifier {
                    prefix: Word::empty(),
                    pattern: Word::from("12"),
                    terminals: vec![Word::from("2"), Word::from("11")],
                    modulus: 3,
                };
                let w = Point::new(Word::from_bytes(&tail), Word::from_bytes(&per)).unwrap();
                let head = Word::from("12").repeat(k as usize);
                let p2 = w.prepend(head.concat(b"2").as_bytes());
                let p11 = w.prepend(head.concat(b"11").as_bytes());
                prop_assert_eq!(f.classify(&p2), f.classify(&p11));
            }
        }
    }
}
