#![allow(dead_code)]

use std::path::PathBuf;

use dqhopf::{AlgebraInstance, AnyInstance, Field};

/// The five reference instances.
pub const MAIN: [&str; 5] = ["kz2", "kz3_f7", "kw2", "kw3_f7", "h4"];
/// Fixture file for each catalogued mutant, in catalogue order.
pub const MUTANTS: [(&str, &str); 4] = [
    ("noncocycle", "noncocycle"),
    ("twist-flipped", "kw2_flipped"),
    ("h4-bad-comult", "h4_bad_comult"),
    ("twist-beta-eps", "kw2_beta_eps"),
];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.alg"))
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn load(name: &str) -> AnyInstance {
    AnyInstance::parse(&fixture_text(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Something run on an instance of either field.
pub trait Visitor {
    fn visit<K: Field>(&mut self, name: &str, h: &AlgebraInstance<K>);
}

pub fn visit(name: &str, v: &mut impl Visitor) {
    match load(name) {
        AnyInstance::Rational(h) => v.visit(name, &h),
        AnyInstance::Prime(h) => v.visit(name, &h),
    }
}
