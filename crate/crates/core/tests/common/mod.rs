#![allow(dead_code)]

use proptest::prelude::*;
use subshift_core::language::SubshiftSpec;
use subshift_core::{Alphabet, Symbol};

pub fn word(s: &str) -> Vec<Symbol> {
    Alphabet::binary().parse_word(s).unwrap().0
}

fn binary_string(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = String> {
    prop::collection::vec(prop::bool::ANY, len).prop_map(|v| v.into_iter().map(|b| if b { '1' } else { '0' }).collect())
}

pub fn full_spec() -> impl Strategy<Value = SubshiftSpec> {
    prop_oneof![Just("01"), Just("abc")].prop_map(|a| SubshiftSpec::full(Alphabet::new(a.chars()).unwrap()))
}

/// Binary SFTs with one to three forbidden words; some have empty languages.
pub fn sft_spec() -> impl Strategy<Value = Option<SubshiftSpec>> {
    prop::collection::vec(binary_string(2..=3), 1..=3).prop_map(|ws| {
        let refs: Vec<&str> = ws.iter().map(String::as_str).collect();
        let spec = SubshiftSpec::sft(Alphabet::binary(), &refs).ok()?;
        subshift_core::language::Subshift::new(spec.clone()).ok().map(|_| spec)
    })
}

pub fn primitive_substitution() -> impl Strategy<Value = SubshiftSpec> {
    (binary_string(1..=3), binary_string(1..=3))
        .prop_filter_map("primitive", |(a, b)| SubshiftSpec::substitution(Alphabet::binary(), &[('0', &a), ('1', &b)], '0').ok())
}

pub fn sturmian_spec() -> impl Strategy<Value = SubshiftSpec> {
    (-6i64..=6, 2i64..=40, prop_oneof![-9i64..=-1, 1i64..=9])
        .prop_filter_map("valid slope", |(p, q, r)| SubshiftSpec::sturmian(p, q, r).ok())
}

pub fn periodic_spec() -> impl Strategy<Value = SubshiftSpec> {
    binary_string(1..=7).prop_map(|w| SubshiftSpec::periodic(Alphabet::binary(), &w).unwrap())
}

pub fn any_spec() -> impl Strategy<Value = SubshiftSpec> {
    prop_oneof![
        full_spec(),
        sft_spec().prop_filter_map("nonempty", |s| s),
        primitive_substitution(),
        sturmian_spec(),
        periodic_spec(),
        Just(SubshiftSpec::fibonacci()),
        Just(SubshiftSpec::golden_mean()),
    ]
}

/// Smallest period of the bi-infinite repetition of `w`.
pub fn primitive_period(w: &[Symbol]) -> usize {
    let p = w.len();
    (1..=p).find(|&d| p % d == 0 && (0..p).all(|i| w[i] == w[i % d])).unwrap()
}

/// Factors of a long iterate of the seed letter; independent of the
/// library's own language computation.
pub fn substitution_factors_by_prefix(rules: &[Vec<Symbol>], seed: Symbol, n: usize, prefix: usize) -> Vec<Vec<Symbol>> {
    let mut w = vec![seed];
    // A primitive substitution may keep a length for a few steps, never forever.
    for _ in 0..200 {
        if w.len() >= prefix {
            break;
        }
        w = w.iter().flat_map(|&c| rules[usize::from(c)].iter().copied()).collect();
    }
    let mut out: Vec<Vec<Symbol>> = w.windows(n).map(<[Symbol]>::to_vec).collect();
    out.sort();
    out.dedup();
    out
}
