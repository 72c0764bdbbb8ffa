//! Bundled fixture tensors.

use tnorm_core::io::parse_tensor;
use tnorm_core::Tensor;

/// `(name, file contents)` for every bundled fixture.
pub const FIXTURES: [(&str, &str); 7] = [
    ("sym_2x2x2", include_str!("../fixtures/sym_2x2x2.tensor")),
    (
        "ones_minus_diagonal_3333",
        include_str!("../fixtures/ones_minus_diagonal_3333.tensor"),
    ),
    (
        "product_counterexample",
        include_str!("../fixtures/product_counterexample.tensor"),
    ),
    ("nilpotent_2x2x2", include_str!("../fixtures/nilpotent_2x2x2.tensor")),
    ("unit_rank_one", include_str!("../fixtures/unit_rank_one.tensor")),
    ("gelfand_4x3x2", include_str!("../fixtures/gelfand_4x3x2.tensor")),
    ("zero", include_str!("../fixtures/zero.tensor")),
];

/// Parses a bundled fixture by name.
pub fn load(name: &str) -> Tensor {
    let (_, text) = FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .unwrap_or_else(|| panic!("no bundled fixture named {name}"));
    parse_tensor(text).expect("bundled fixtures parse")
}

#[cfg(test)]
mod tests {
    use super::*;
    use tnorm_core::fixtures as core;

    #[test]
    fn bundled_files_match_library_fixtures() {
        let pairs = [
            ("sym_2x2x2", core::sym_2x2x2()),
            ("ones_minus_diagonal_3333", core::ones_minus_diagonal_3333()),
            ("product_counterexample", core::product_counterexample()),
            ("nilpotent_2x2x2", core::nilpotent_2x2x2()),
            ("unit_rank_one", core::unit_rank_one_4x2x4()),
            ("gelfand_4x3x2", core::gelfand_4x3x2()),
            ("zero", Tensor::zeros(&[2, 2, 2]).unwrap()),
        ];
        for (name, expected) in pairs {
            assert_eq!(load(name), expected, "{name}");
        }
    }

    #[test]
    #[should_panic(expected = "no bundled fixture")]
    fn unknown_fixture_panics() {
        load("missing");
    }
}
