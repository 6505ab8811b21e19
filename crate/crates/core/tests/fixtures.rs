mod common;

use common::{fixture_text, load, MUTANTS};
use dqhopf::algebra::serialize_instance;
use dqhopf::examples::{group_algebra, mutant_catalogue, sweedler_h4, twisted_group_algebra, CyclicGroupSpec};
use dqhopf::{AnyInstance, Field, FieldSpec, Fp, Rational};

fn q() -> FieldSpec {
    FieldSpec::Rationals
}

fn f7() -> FieldSpec {
    FieldSpec::prime(7).unwrap()
}

#[test]
fn builders_reproduce_fixtures() {
    let twist_q = CyclicGroupSpec::new(2, q(), Rational::from_i64_in(&q(), -1)).unwrap();
    let twist_f7 = CyclicGroupSpec::new(3, f7(), Fp::from_i64_in(&f7(), 2)).unwrap();
    let built = [
        ("kz2", serialize_instance(&group_algebra::<Rational>(2, q()))),
        ("kz3_f7", serialize_instance(&group_algebra::<Fp>(3, f7()))),
        ("kw2", serialize_instance(&twisted_group_algebra(&twist_q).unwrap())),
        ("kw3_f7", serialize_instance(&twisted_group_algebra(&twist_f7).unwrap())),
        ("h4", serialize_instance(&sweedler_h4::<Rational>(q()).unwrap())),
        ("field1", serialize_instance(&group_algebra::<Rational>(1, q()))),
    ];
    for (name, text) in built {
        assert_eq!(text, fixture_text(name), "{name}");
    }
}

#[test]
fn mutant_fixtures_match_catalogue() {
    let catalogue = mutant_catalogue();
    assert_eq!(catalogue.len(), MUTANTS.len());
    for (m, (name, file)) in catalogue.iter().zip(MUTANTS) {
        assert_eq!(m.name, name);
        assert_eq!(serialize_instance(&m.instance), fixture_text(file), "{name}");
    }
}

#[test]
fn every_fixture_round_trips() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_stem().unwrap().to_str().unwrap().to_string();
        let text = fixture_text(&name);
        let parsed = load(&name);
        assert_eq!(parsed.serialize(), text, "{name}");
        assert_eq!(AnyInstance::parse(&parsed.serialize()).unwrap(), parsed);
        seen += 1;
    }
    assert_eq!(seen, 10);
}
