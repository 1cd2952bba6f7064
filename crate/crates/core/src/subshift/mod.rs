//! Substitution subshifts and the shift model of orbital chains.

pub mod substitution;
pub mod window;

pub use substitution::{factor_csv, factor_table, iota_example, is_palindrome, thue_morse, thue_morse_fragmented, Substitution};
pub use window::{cross_check_models, encode_orbital_word, first_divergence, shift_action, Divergence, ShiftWindow};
