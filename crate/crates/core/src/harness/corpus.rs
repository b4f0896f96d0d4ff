//! The built-in corpus: hand-checkable Koszul instances and Tor pairs.

use super::instance::{parse_instance, InstanceSpec, Provenance};

pub const CORPUS: &[(&str, &str)] = &[
    ("complete_intersection_n3", include_str!("../../corpus/complete_intersection_n3.inst")),
    ("cubic", include_str!("../../corpus/cubic.inst")),
    ("cubic_f5", include_str!("../../corpus/cubic_f5.inst")),
    ("dual_numbers_f2", include_str!("../../corpus/dual_numbers_f2.inst")),
    ("exterior_f2", include_str!("../../corpus/exterior_f2.inst")),
    ("hypersurface_f3", include_str!("../../corpus/hypersurface_f3.inst")),
    ("mixed_f3", include_str!("../../corpus/mixed_f3.inst")),
    ("presentation_only", include_str!("../../corpus/presentation_only.inst")),
    ("repeated_f2", include_str!("../../corpus/repeated_f2.inst")),
    ("repeated_f3", include_str!("../../corpus/repeated_f3.inst")),
    ("residue_field", include_str!("../../corpus/residue_field.inst")),
    ("square_zero_pair", include_str!("../../corpus/square_zero_pair.inst")),
    ("square_zero_pair_f2", include_str!("../../corpus/square_zero_pair_f2.inst")),
    ("square_zero_single", include_str!("../../corpus/square_zero_single.inst")),
    ("square_zero_single_f2", include_str!("../../corpus/square_zero_single_f2.inst")),
    ("tor_ci_f3", include_str!("../../corpus/tor_ci_f3.inst")),
    ("tor_ci_f5", include_str!("../../corpus/tor_ci_f5.inst")),
    ("tor_f2", include_str!("../../corpus/tor_f2.inst")),
    ("tor_mixed", include_str!("../../corpus/tor_mixed.inst")),
    ("tor_square_zero", include_str!("../../corpus/tor_square_zero.inst")),
    ("tor_uneven", include_str!("../../corpus/tor_uneven.inst")),
    ("tor_x2_x2", include_str!("../../corpus/tor_x2_x2.inst")),
    ("tor_x2_x3", include_str!("../../corpus/tor_x2_x3.inst")),
    ("tor_x3_x5_f2", include_str!("../../corpus/tor_x3_x5_f2.inst")),
    ("tor_x4_x2_f3", include_str!("../../corpus/tor_x4_x2_f3.inst")),
    ("tor_x_x", include_str!("../../corpus/tor_x_x.inst")),
    ("unit_absorbed", include_str!("../../corpus/unit_absorbed.inst")),
];

pub fn corpus() -> Vec<InstanceSpec> {
    CORPUS
        .iter()
        .map(|(name, text)| {
            parse_instance(text, Provenance::Builtin { name: (*name).to_owned() })
                .unwrap_or_else(|e| panic!("corpus entry {name}: {e}"))
        })
        .collect()
}

pub fn corpus_entry(name: &str) -> Option<InstanceSpec> {
    let (name, text) = CORPUS.iter().find(|(n, _)| *n == name)?;
    parse_instance(text, Provenance::Builtin { name: (*name).to_owned() }).ok()
}
