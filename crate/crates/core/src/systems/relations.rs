//! Identities among the golden-mean generators `x_n`.

use crate::error::Result;
use crate::report::Report;
use crate::sequence::{level_set, splitting_code, PrefixCode, Word};
use crate::table::TableElement;

use super::levels::{chain_left_end, chain_right_end, cycles_permutation, indexed_generator, indexed_prefix, level_action, transposition};
use super::SystemConfig;

/// A factor of a product: letter and index, e.g. `('a', 3)` for `a_3`.
type Factor = (char, u32);

fn product(sys: &SystemConfig, factors: &[Factor]) -> Result<TableElement> {
    let elems = factors
        .iter()
        .map(|&(x, n)| indexed_generator(sys, x, n))
        .collect::<Result<Vec<_>>>()?;
    TableElement::product(sys.machine(), &elems)
}

fn show(factors: &[Factor]) -> String {
    factors.iter().map(|(x, n)| format!("{x}{n}")).collect::<Vec<_>>().join("·")
}

fn equality(report: &mut Report, sys: &SystemConfig, lhs: &[Factor], rhs: &[Factor]) -> Result<()> {
    let (l, r) = (product(sys, lhs)?, product(sys, rhs)?);
    let detail = if l == r { String::new() } else { format!("{l} vs {r}") };
    report.check(format!("{} = {}", show(lhs), show(rhs)), l == r, detail);
    Ok(())
}

/// The one-step relations for `n = 0..=5`, the expansion chains for `i = 0, 1, 2`,
/// level-permutation forms of `a_0, a_1, a_2`, and `x_v = σ x_n σ` for short `v`.
pub fn relation_suite(sys: &SystemConfig) -> Result<Report> {
    let mut report = Report::new("relations");
    for n in 0..=5 {
        equality(&mut report, sys, &[('b', n)], &[('a', n), ('c', n + 3)])?;
        equality(&mut report, sys, &[('c', n)], &[('a', n), ('d', n + 3)])?;
        equality(&mut report, sys, &[('d', n)], &[('b', n + 3)])?;
    }
    for i in 0..=2 {
        let chains: [Vec<Vec<Factor>>; 3] = [
            vec![
                vec![('b', i)],
                vec![('a', i), ('c', i + 3)],
                vec![('a', i), ('a', i + 3), ('d', i + 6)],
                vec![('a', i), ('a', i + 3), ('b', i + 9)],
                vec![('a', i), ('a', i + 3), ('a', i + 9), ('c', i + 12)],
            ],
            vec![
                vec![('c', i)],
                vec![('a', i), ('d', i + 3)],
                vec![('a', i), ('b', i + 6)],
                vec![('a', i), ('a', i + 6), ('c', i + 9)],
                vec![('a', i), ('a', i + 6), ('a', i + 9), ('d', i + 12)],
            ],
            vec![
                vec![('d', i)],
                vec![('b', i + 3)],
                vec![('a', i + 3), ('c', i + 6)],
                vec![('a', i + 3), ('a', i + 6), ('d', i + 9)],
                vec![('a', i + 3), ('a', i + 6), ('b', i + 12)],
            ],
        ];
        for chain in &chains {
            for rhs in &chain[1..] {
                equality(&mut report, sys, &chain[0], rhs)?;
            }
        }
    }
    for n in 0..=2u32 {
        let p = indexed_prefix(n);
        let sigma = transposition(sys, &p.concat(b"11"), &p.concat(b"2"))?;
        let an = indexed_generator(sys, 'a', n)?;
        report.check(format!("a{n} = ({}11, {}2) in S(L_{})", p, p, n + 2), sigma == an, "");
    }
    for n in 1..=5u32 {
        let u = indexed_prefix(n);
        for v in level_set(sys.alphabet(), n) {
            if v == u {
                continue;
            }
            let sigma = transposition(sys, &v, &u)?;
            for x in ['b', 'c', 'd'] {
                let xn = indexed_generator(sys, x, n)?;
                let lhs = super::x_v(sys, x, &v)?;
                let rhs = TableElement::product(sys.machine(), [&sigma, &xn, &sigma])?;
                report.check(format!("{x}_{v} = σ {x}{n} σ"), lhs == rhs, "");
            }
        }
    }
    Ok(report)
}

/// The letter and index of the decomposition `y_i = h a_{n-3} d_n` for depth `n`.
pub fn deep_action_assignment(n: u32) -> (char, u32) {
    let i = n % 3;
    let y = match (n - i) % 9 {
        6 => 'b',
        3 => 'c',
        _ => 'd',
    };
    (y, i)
}

/// `h = y_i d_n a_{n-3}` if it permutes the cells of `L_{n-4} ∪ L_{n-5}2` with
/// trivial tails.
fn deep_quotient(sys: &SystemConfig, n: u32, y: char, i: u32) -> Result<(TableElement, std::result::Result<Vec<usize>, Word>)> {
    let h = product(sys, &[(y, i), ('d', n), ('a', n - 3)])?;
    let code = splitting_code(n - 4)?;
    let action = level_action(&h, &code)?;
    Ok((h, action))
}

pub fn deep_action_check(sys: &SystemConfig, n: u32) -> Result<Report> {
    if n < 6 {
        return Err(crate::error::Error::InvalidArgument("deep action needs n >= 6".into()));
    }
    let mut report = Report::new(format!("deep action n={n}"));
    let (y, i) = deep_action_assignment(n);
    let (h, action) = deep_quotient(sys, n, y, i)?;
    let stated_ok = action.is_ok();
    let detail = match &action {
        Ok(_) => format!("h = {h}"),
        Err(cell) => format!("h = {h} obstructed at {cell}"),
    };
    report.check(format!("{y}{i} = h·a{}·d{n} with h in S(L_{}) ⊕ S(L_{}2)", n - 3, n - 4, n - 5), stated_ok, detail);
    if !stated_ok {
        let mut found = Vec::new();
        for yy in ['b', 'c', 'd'] {
            for ii in 0..3 {
                if deep_quotient(sys, n, yy, ii)?.1.is_ok() {
                    found.push(format!("{yy}{ii}"));
                }
            }
        }
        report.check("alternative assignments", false, format!("consistent: [{}]", found.join(", ")));
    }
    Ok(report)
}

/// Conjugating `A(L_{n-2}2)` by `y_{i'}` gives `A((L_{n-2}2 \ {P_{n-2}2}) ∪ {Q_{n-1}1})`.
/// Checked on the 3-cycle generators `(s_0 s_1 s_k)`; each conjugate must be a
/// 3-cycle on the target cell set. Elementwise agreement with the substitution
/// `P_{n-2}2 → Q_{n-1}1` is reported in the details.
pub fn conjugation_identity_check(sys: &SystemConfig, n: u32) -> Result<Report> {
    if !(5..=10).contains(&n) {
        return Err(crate::error::Error::InvalidArgument("conjugation identity is checked for 5 <= n <= 10".into()));
    }
    let mut report = Report::new(format!("conjugation identity n={n}"));
    let (y, ip) = deep_action_assignment(n + 1);
    let conj = indexed_generator(sys, y, ip)?;
    let source: Vec<Word> = level_set(sys.alphabet(), n - 2).into_iter().map(|w| w.with_letter(b'2')).collect();
    let p = chain_left_end(n - 2).with_letter(b'2');
    let q = chain_right_end(n - 1).with_letter(b'1');
    let mut target: Vec<Word> = source.iter().filter(|w| **w != p).cloned().collect();
    target.push(q.clone());
    let target_code = PrefixCode::new(target.clone())?;
    let substitute = |w: &Word| if *w == p { q.clone() } else { w.clone() };

    let mut images = Vec::new();
    for s in &source {
        images.push(conj.cylinder_image(s.as_bytes())?);
    }
    let image_words: Vec<Word> = images.iter().filter_map(|i| i.as_ref().map(|(w, _)| w.clone())).collect();
    let mut sorted_images = image_words.clone();
    sorted_images.sort();
    let mut sorted_target = target.clone();
    sorted_target.sort();
    report.check(
        format!("{y}{ip} maps L_{}2 onto the target cells", n - 2),
        images.iter().all(|i| matches!(i, Some((_, 0)))) && sorted_images == sorted_target,
        format!("P = {p}, Q = {q}"),
    );

    let mut elementwise = 0usize;
    let mut total = 0usize;
    for k in 2..source.len() {
        let cycle = vec![source[0].clone(), source[1].clone(), source[k].clone()];
        let sigma = cycles_permutation(sys, std::slice::from_ref(&cycle))?;
        let c = TableElement::product(sys.machine(), [&conj, &sigma, &conj])?;
        let is_target_3cycle = match level_action(&c, &target_code)? {
            Ok(perm) => {
                let moved = perm.iter().enumerate().filter(|&(a, &b)| a != b).count();
                moved == 3 && (0..perm.len()).all(|a| perm[perm[perm[a]]] == a) && complement_fixed(&c, &target_code, sys)?
            }
            Err(_) => false,
        };
        let expected = cycles_permutation(sys, &[cycle.iter().map(&substitute).collect()])?;
        let matches = c == expected;
        total += 1;
        elementwise += matches as usize;
        report.check(
            format!("({} {} {})", cycle[0], cycle[1], cycle[2]),
            is_target_3cycle,
            if matches { "equals the substituted cycle".to_string() } else { format!("conjugate {c}") },
        );
    }
    report.check(
        "elementwise substitution",
        true,
        format!("{elementwise} of {total} conjugates equal the P→Q substituted cycle"),
    );
    Ok(report)
}

/// `g` is the identity off the cylinders of `code`.
fn complement_fixed(g: &TableElement, code: &PrefixCode, sys: &SystemConfig) -> Result<bool> {
    for w in code.complement(sys.alphabet()) {
        match g.cylinder_image(w.as_bytes())? {
            Some((out, 0)) if out == w => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}
