//! Fragmentation subgroups of `(Z/2Z)^d` as GF(2) spans of bit-vectors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bit `i` of each vector is `π_{P_i}` of a subgroup generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FragmentationSpec {
    pub piece_count: usize,
    pub subgroup_generators: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FragmentationReport {
    pub surjective_per_piece: Vec<bool>,
    pub purely_non_hausdorff: bool,
    pub subgroup_order: u64,
}

impl FragmentationSpec {
    /// Vectors written as strings of `0`/`1`, piece 0 first.
    pub fn parse(piece_count: usize, vectors: &[&str]) -> Result<Self> {
        if piece_count == 0 || piece_count > 64 {
            return Err(Error::InvalidArgument(format!("piece count {piece_count} outside 1..=64")));
        }
        let mut out = Vec::new();
        for v in vectors {
            if v.len() != piece_count {
                return Err(Error::Parse(format!("vector {v:?} does not have {piece_count} bits")));
            }
            let mut bits = 0u64;
            for (i, ch) in v.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => bits |= 1 << i,
                    _ => return Err(Error::Parse(format!("vector {v:?} is not binary"))),
                }
            }
            out.push(bits);
        }
        Ok(FragmentationSpec { piece_count, subgroup_generators: out })
    }

    pub fn format_vector(&self, v: u64) -> String {
        (0..self.piece_count).map(|i| if v >> i & 1 == 1 { '1' } else { '0' }).collect()
    }

    fn all_ones(&self) -> u64 {
        if self.piece_count == 64 {
            u64::MAX
        } else {
            (1u64 << self.piece_count) - 1
        }
    }

    /// Echelon basis of the span, keyed by leading bit.
    pub fn basis(&self) -> Vec<u64> {
        let mut basis: Vec<u64> = Vec::new();
        for &v in &self.subgroup_generators {
            let r = reduce(&basis, v & self.all_ones());
            if r != 0 {
                basis.push(r);
                basis.sort_unstable_by(|a, b| b.cmp(a));
            }
        }
        basis
    }

    pub fn contains(&self, v: u64) -> bool {
        reduce(&self.basis(), v) == 0
    }

    pub fn elements(&self) -> Vec<u64> {
        let basis = self.basis();
        let mut out = vec![0u64];
        for b in basis {
            let extra: Vec<u64> = out.iter().map(|x| x ^ b).collect();
            out.extend(extra);
        }
        out.sort_unstable();
        out
    }
}

fn reduce(basis: &[u64], mut v: u64) -> u64 {
    for &b in basis {
        let lead = 63 - b.leading_zeros();
        if v >> lead & 1 == 1 {
            v ^= b;
        }
    }
    v
}

pub fn check_fragmentation(spec: &FragmentationSpec) -> FragmentationReport {
    let union = spec.subgroup_generators.iter().fold(0u64, |a, &b| a | b);
    let surjective_per_piece: Vec<bool> = (0..spec.piece_count).map(|i| union >> i & 1 == 1).collect();
    let basis = spec.basis();
    let contains_all_ones = reduce(&basis, spec.all_ones()) == 0;
    FragmentationReport {
        purely_non_hausdorff: surjective_per_piece.iter().all(|&s| s) && !contains_all_ones,
        surjective_per_piece,
        subgroup_order: 1u64 << basis.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn klein_example_is_purely_non_hausdorff() {
        let spec = FragmentationSpec::parse(3, &["110", "101"]).unwrap();
        let r = check_fragmentation(&spec);
        assert_eq!(r.surjective_per_piece, vec![true, true, true]);
        assert!(r.purely_non_hausdorff);
        assert_eq!(r.subgroup_order, 4);
        let mut elems: Vec<String> = spec.elements().iter().map(|&v| spec.format_vector(v)).collect();
        elems.sort();
        assert_eq!(elems, ["000", "011", "101", "110"]);
    }

    #[test]
    fn full_group_and_single_piece_rejected() {
        let full = FragmentationSpec::parse(3, &["100", "010", "001"]).unwrap();
        let r = check_fragmentation(&full);
        assert!(r.surjective_per_piece.iter().all(|&s| s));
        assert!(!r.purely_non_hausdorff);
        let one = FragmentationSpec::parse(1, &["1"]).unwrap();
        let r = check_fragmentation(&one);
        assert_eq!(r.surjective_per_piece, vec![true]);
        assert!(!r.purely_non_hausdorff);
    }

    #[test]
    fn non_surjective_piece() {
        let spec = FragmentationSpec::parse(3, &["110"]).unwrap();
        let r = check_fragmentation(&spec);
        assert_eq!(r.surjective_per_piece, vec![true, true, false]);
        assert!(!r.purely_non_hausdorff);
        assert!(FragmentationSpec::parse(3, &["12a"]).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn span_matches_brute_force(d in 1usize..7, gens in proptest::collection::vec(0u64..64, 0..5)) {
                let mask = (1u64 << d) - 1;
                let spec = FragmentationSpec { piece_count: d, subgroup_generators: gens.iter().map(|g| g & mask).collect() };
                // brute-force closure under xor
                let mut set = std::collections::BTreeSet::from([0u64]);
                loop {
                    let before = set.len();
                    let cur: Vec<u64> = set.iter().copied().collect();
                    for &x in &cur {
                        for &g in &spec.subgroup_generators {
                            set.insert(x ^ g);
                        }
                    }
                    if set.len() == before { break; }
                }
                let elems: Vec<u64> = set.into_iter().collect();
                prop_assert_eq!(spec.elements(), elems.clone());
                for v in 0..=mask {
                    prop_assert_eq!(spec.contains(v), elems.contains(&v));
                }
            }
        }
    }
}
