//! Level permutations, the `x_v` family and sign sequences of the golden-mean system.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::machine::IDENTITY;
use crate::sequence::{splitting_code, Alphabet, PrefixCode, Word};
use crate::table::{Cell, TableElement};

use super::SystemConfig;

fn require_golden(sys: &SystemConfig) -> Result<()> {
    if sys.alphabet() != &Alphabet::golden_mean() {
        return Err(Error::InvalidArgument(format!("system {} is not over the golden-mean alphabet", sys.name())));
    }
    Ok(())
}

/// `(12)^k`, `1(12)^k` or `2(12)^k` for `n = 3k`, `3k+1`, `3k+2`. Has weight `n`.
pub fn indexed_prefix(n: u32) -> Word {
    let head = ["", "1", "2"][(n % 3) as usize];
    Word::from(head).concat(Word::from("12").repeat((n / 3) as usize).as_bytes())
}

/// Left endpoint `P_n` of the chain `I_n`.
pub fn chain_left_end(n: u32) -> Word {
    indexed_prefix(n)
}

/// Right endpoint `Q_n` of the chain `I_n`.
pub fn chain_right_end(n: u32) -> Word {
    let k = (n / 3) as usize;
    let tail = Word::from("21").repeat(k);
    match n % 3 {
        0 => tail,
        1 => Word::from("1").concat(tail.as_bytes()),
        _ => Word::from("11").concat(tail.as_bytes()),
    }
}

/// `x_v`: the generator `x_0` acting on the cylinder `v`.
pub fn x_v(sys: &SystemConfig, letter: char, v: &Word) -> Result<TableElement> {
    require_golden(sys)?;
    sys.alphabet().check_word(v)?;
    Ok(sys.generator(&format!("{letter}0"))?.on_cylinder(v))
}

/// `x_n` under the naming `x_{3k+i} = x_{p_i (12)^k}`.
pub fn indexed_generator(sys: &SystemConfig, letter: char, n: u32) -> Result<TableElement> {
    x_v(sys, letter, &indexed_prefix(n))
}

/// The element permuting the cells of `domain` by `images` (cell `i` to cell
/// `images[i]`) with trivial tails, identity off the domain.
pub fn level_permutation(sys: &SystemConfig, domain: &PrefixCode, images: &[usize]) -> Result<TableElement> {
    let cells = domain.cells();
    if images.len() != cells.len() {
        return Err(Error::InvalidArgument("permutation length differs from the domain".into()));
    }
    let mut seen = vec![false; cells.len()];
    for &j in images {
        if j >= cells.len() || std::mem::replace(&mut seen[j], true) {
            return Err(Error::InvalidArgument("images do not form a permutation".into()));
        }
    }
    let alphabet = sys.alphabet();
    let mut table = Vec::with_capacity(cells.len());
    for (i, &j) in images.iter().enumerate() {
        let (wi, wj) = (alphabet.weight(cells[i].as_bytes())?, alphabet.weight(cells[j].as_bytes())?);
        if wi != wj {
            return Err(Error::WeightMismatch(format!("{} (weight {wi}) -> {} (weight {wj})", cells[i], cells[j])));
        }
        table.push(Cell { input: cells[i].clone(), output: cells[j].clone(), tail: IDENTITY });
    }
    for w in domain.complement(alphabet) {
        table.push(Cell { input: w.clone(), output: w, tail: IDENTITY });
    }
    TableElement::from_cells(sys.machine(), table)
}

/// The transposition of two incomparable words of equal weight.
pub fn transposition(sys: &SystemConfig, u: &Word, v: &Word) -> Result<TableElement> {
    let code = PrefixCode::new(vec![u.clone(), v.clone()])?;
    level_permutation(sys, &code, &[1, 0])
}

/// A permutation given by cycles of words.
pub fn cycles_permutation(sys: &SystemConfig, cycles: &[Vec<Word>]) -> Result<TableElement> {
    let words: Vec<Word> = cycles.iter().flatten().cloned().collect();
    let code = PrefixCode::new(words.clone())?;
    if code.len() != words.len() {
        return Err(Error::InvalidArgument("cycles repeat a word".into()));
    }
    let pos = |w: &Word| code.cells().iter().position(|c| c == w).expect("word in code");
    let mut images: Vec<usize> = (0..code.len()).collect();
    for cycle in cycles {
        for (k, w) in cycle.iter().enumerate() {
            images[pos(w)] = pos(&cycle[(k + 1) % cycle.len()]);
        }
    }
    level_permutation(sys, &code, &images)
}

/// How `g` permutes the cells of a complete code, if it does so with trivial
/// tails. On failure returns the first obstructing cell.
pub fn level_action(g: &TableElement, code: &PrefixCode) -> Result<std::result::Result<Vec<usize>, Word>> {
    let mut images = Vec::with_capacity(code.len());
    for c in code.cells() {
        match g.cylinder_image(c.as_bytes())? {
            Some((out, IDENTITY)) => match code.cells().iter().position(|d| d == &out) {
                Some(j) => images.push(j),
                None => return Ok(Err(c.clone())),
            },
            _ => return Ok(Err(c.clone())),
        }
    }
    Ok(Ok(images))
}

pub fn parity(perm: &[usize]) -> u8 {
    let mut seen = vec![false; perm.len()];
    let mut cycles = 0;
    for i in 0..perm.len() {
        if !seen[i] {
            cycles += 1;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = perm[j];
            }
        }
    }
    ((perm.len() - cycles) % 2) as u8
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignSequence {
    pub start_index: u32,
    pub pairs: Vec<(u8, u8)>,
}

impl SignSequence {
    /// Consecutive pairs follow `(a, b) → (a + b, a)`.
    pub fn follows_evolution(&self) -> bool {
        self.pairs.windows(2).all(|w| w[1] == ((w[0].0 + w[0].1) % 2, w[0].0))
    }
}

/// Parities of `g` on `L_i` and on `L_{i-1}2` for `i` in `from..=to`, starting at
/// the first level where `g` permutes the splitting code with trivial tails.
pub fn sign_sequence(sys: &SystemConfig, g: &TableElement, from: u32, to: u32) -> Result<SignSequence> {
    require_golden(sys)?;
    let alphabet = sys.alphabet();
    let mut start = None;
    let mut pairs = Vec::new();
    let mut last_obstruction = None;
    for i in from.max(1)..=to {
        let code = splitting_code(i)?;
        match level_action(g, &code)? {
            Ok(images) => {
                start.get_or_insert(i);
                let (mut upper, mut lower) = (Vec::new(), Vec::new());
                let cells = code.cells();
                let index_in = |part: &[usize], j: usize| part.iter().position(|&k| k == j).expect("weight preserved");
                let upper_ids: Vec<usize> = (0..cells.len()).filter(|&k| alphabet.weight_unchecked(cells[k].as_bytes()) == i).collect();
                let lower_ids: Vec<usize> = (0..cells.len()).filter(|&k| alphabet.weight_unchecked(cells[k].as_bytes()) != i).collect();
                for &k in &upper_ids {
                    upper.push(index_in(&upper_ids, images[k]));
                }
                for &k in &lower_ids {
                    lower.push(index_in(&lower_ids, images[k]));
                }
                pairs.push((parity(&upper), parity(&lower)));
            }
            Err(cell) => {
                if start.is_some() {
                    return Err(Error::InvalidArgument(format!("not level-representable at level {i}: cell {cell}")));
                }
                last_obstruction = Some((i, cell));
            }
        }
    }
    match start {
        Some(start_index) => Ok(SignSequence { start_index, pairs }),
        None => {
            let detail = last_obstruction.map(|(i, c)| format!(" (level {i}, cell {c})")).unwrap_or_default();
            Err(Error::InvalidArgument(format!("element is not level-representable in the range{detail}")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems::golden_mean_system;

    #[test]
    fn transpositions_match_generators() {
        let f = golden_mean_system();
        let a0 = transposition(&f, &Word::from("11"), &Word::from("2")).unwrap();
        assert_eq!(&a0, f.generator("a0").unwrap());
        let a1 = transposition(&f, &Word::from("111"), &Word::from("12")).unwrap();
        assert_eq!(&a1, f.generator("a1").unwrap());
        let id = level_permutation(&f, &splitting_code(3).unwrap(), &[0, 1, 2, 3, 4]).unwrap();
        assert!(id.is_identity());
        assert!(matches!(
            transposition(&f, &Word::from("1"), &Word::from("2")),
            Err(Error::WeightMismatch(_))
        ));
    }

    #[test]
    fn x_v_naming() {
        let f = golden_mean_system();
        assert_eq!(&x_v(&f, 'b', &Word::from("12")).unwrap(), f.generator("d0").unwrap());
        for letter in ['a', 'b', 'c', 'd'] {
            assert_eq!(&x_v(&f, letter, &Word::empty()).unwrap(), f.generator(&format!("{letter}0")).unwrap());
        }
        assert_eq!(indexed_generator(&f, 'c', 4).unwrap(), x_v(&f, 'c', &Word::from("112")).unwrap());
        assert_eq!(indexed_prefix(4), Word::from("112"));
        assert_eq!(indexed_prefix(8), Word::from("21212"));
    }

    #[test]
    fn endpoints() {
        assert_eq!(chain_left_end(3), Word::from("12"));
        assert_eq!(chain_right_end(3), Word::from("21"));
        assert_eq!(chain_right_end(2), Word::from("11"));
        assert_eq!(chain_right_end(7), Word::from("12121"));
    }

    #[test]
    fn sign_sequences_of_a_generators() {
        let f = golden_mean_system();
        let cycle = [(1, 0), (1, 1), (0, 1)];
        for (i, name) in ["a0", "a1", "a2"].iter().enumerate() {
            let s = sign_sequence(&f, f.generator(name).unwrap(), 1, 12).unwrap();
            assert_eq!(s.start_index, 2 + i as u32, "{name}");
            for (k, pair) in s.pairs.iter().enumerate() {
                assert_eq!(*pair, cycle[k % 3], "{name} level {}", s.start_index + k as u32);
            }
            assert!(s.follows_evolution());
        }
        let id = sign_sequence(&f, &f.identity(), 1, 6).unwrap();
        assert!(id.pairs.iter().all(|&p| p == (0, 0)));
        assert!(sign_sequence(&f, f.generator("b0").unwrap(), 1, 6).is_err());
    }

    #[test]
    fn parity_of_cycles() {
        assert_eq!(parity(&[0, 1, 2]), 0);
        assert_eq!(parity(&[1, 0, 2]), 1);
        assert_eq!(parity(&[1, 2, 0]), 0);
    }
}
