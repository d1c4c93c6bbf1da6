use outerstring::gen::*;
use outerstring::geom::io::{family_to_json, parse_family};
use outerstring::geom::{self_intersections, validate_family};

#[test]
fn single_segment() {
    let f = random_grounded_segments(&GenSpec::segments(1, 7)).unwrap();
    assert_eq!(f.len(), 1);
}

#[test]
fn same_seed_same_family() {
    for spec in [GenSpec::segments(8, 42), GenSpec::polylines(8, 4, 42)] {
        let a = family_to_json(&generate(&spec).unwrap());
        let b = family_to_json(&generate(&spec).unwrap());
        assert_eq!(a, b);
    }
    let a = family_to_json(&generate(&GenSpec::segments(8, 1)).unwrap());
    let b = family_to_json(&generate(&GenSpec::segments(8, 2)).unwrap());
    assert_ne!(a, b);
}

#[test]
fn hundred_seeds_are_valid() {
    for seed in 0..100 {
        for spec in [GenSpec::segments(8, seed), GenSpec::polylines(8, 4, seed)] {
            let f = generate(&spec).unwrap();
            assert_eq!(f.len(), 8);
            let again = validate_family(f.curves().to_vec()).expect("general position");
            assert_eq!(again.len(), 8);
            if spec.kind == GenKind::Polylines {
                for c in f.curves() {
                    assert!(c.vertices().len() <= 4);
                    assert!(self_intersections(c).is_empty(), "{} self-intersects", c.id());
                }
            }
        }
    }
}

#[test]
fn rejects_bad_specs() {
    assert!(matches!(generate(&GenSpec::segments(0, 1)), Err(GenError::InvalidSpec(_))));
    assert!(matches!(generate(&GenSpec::polylines(3, 1, 1)), Err(GenError::InvalidSpec(_))));
}

#[test]
fn figures_reproduce_their_captions() {
    for which in 1..=4 {
        let (family, rel) = figure_fixture(which).unwrap();
        let log = rel.check(&family).unwrap_or_else(|e| panic!("figure {which}: {e}"));
        assert!(!log.is_empty());
    }
    assert!(figure_fixture(5).is_err());
}

#[test]
fn figure_files_round_trip() {
    for which in 1..=4 {
        let text = figure_json(which).unwrap();
        let f = parse_family(text).unwrap();
        assert_eq!(family_to_json(&f).len(), text.len());
    }
}

#[test]
fn figure_two_sets() {
    let (_, rel) = figure_fixture(2).unwrap();
    match rel {
        FigureRelations::SupportedSets { supported, unsupported, .. } => {
            assert_eq!(supported, ["p2", "p4"]);
            assert_eq!(unsupported, ["p1", "p3"]);
        }
        other => panic!("unexpected {other:?}"),
    }
}
