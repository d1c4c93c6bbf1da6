use outerstring::geom::io::{curves_to_json, parse_curves, parse_family, parse_rational, FamilyFileError};
use outerstring::geom::*;

fn a() -> GroundedCurve {
    GroundedCurve::from_ints("a", &[(0, 0), (3, 3)])
}
fn b() -> GroundedCurve {
    GroundedCurve::from_ints("b", &[(1, 0), (0, 3)])
}
fn c() -> GroundedCurve {
    GroundedCurve::new("c", vec![Point::from_ints(2, 0), Point::new(int(2), rat(1, 2))])
}
fn nest() -> (GroundedCurve, GroundedCurve, GroundedCurve) {
    (
        GroundedCurve::from_ints("u", &[(0, 0), (0, 4), (6, 4)]),
        GroundedCurve::from_ints("v", &[(6, 0), (6, 3), (-1, 3)]),
        GroundedCurve::from_ints("s", &[(3, 0), (3, 5)]),
    )
}
fn pt(x: Rational, y: Rational) -> Point {
    Point::new(x, y)
}

#[test]
fn fixture_family_is_valid_and_ordered() {
    let f = validate_family(vec![c(), a(), b()]).unwrap();
    assert_eq!(f.ids(), vec!["a", "b", "c"]);
}

#[test]
fn duplicate_basepoint_rejected() {
    let bad = GroundedCurve::from_ints("b", &[(0, 0), (1, 2)]);
    let err = validate_family(vec![a(), bad]).unwrap_err();
    assert!(matches!(err[0], Violation::DuplicateBasepoint { .. }));
}

#[test]
fn vertex_below_baseline_rejected() {
    let a = GroundedCurve::from_ints("a", &[(0, 0), (2, 2)]);
    let b = GroundedCurve::from_ints("b", &[(1, 0), (1, -1), (1, 2)]);
    let err = validate_family(vec![a, b]).unwrap_err();
    assert!(err.iter().any(|v| matches!(v, Violation::BaselineViolation { index: 1, .. })));
}

#[test]
fn degeneracies_are_named() {
    let kind = |x: GroundedCurve, y: GroundedCurve| match &validate_family(vec![x, y]).unwrap_err()[0] {
        Violation::DegenerateIntersection { kind, .. } => *kind,
        other => panic!("unexpected {other:?}"),
    };
    // collinear overlap
    assert_eq!(
        kind(
            GroundedCurve::from_ints("x", &[(0, 0), (2, 2), (4, 4)]),
            GroundedCurve::from_ints("y", &[(5, 0), (3, 3), (1, 1)])
        ),
        DegeneracyKind::CollinearOverlap
    );
    // vertex of one curve on the other
    assert_eq!(
        kind(
            GroundedCurve::from_ints("x", &[(0, 0), (2, 2), (4, 0 + 1)]),
            GroundedCurve::from_ints("y", &[(4, 0), (0, 4)])
        ),
        DegeneracyKind::VertexIncidence
    );
    // shared vertex
    assert_eq!(
        kind(
            GroundedCurve::from_ints("x", &[(0, 0), (2, 2), (0, 5)]),
            GroundedCurve::from_ints("y", &[(4, 0), (2, 2), (4, 5)])
        ),
        DegeneracyKind::SharedVertex
    );
    // triple point
    let err = validate_family(vec![
        GroundedCurve::from_ints("x", &[(0, 0), (4, 4)]),
        GroundedCurve::from_ints("y", &[(4, 0), (0, 4)]),
        GroundedCurve::from_ints("z", &[(2, 0), (2, 5)]),
    ])
    .unwrap_err();
    assert!(err.iter().any(|v| matches!(
        v,
        Violation::DegenerateIntersection { kind: DegeneracyKind::TriplePoint, .. }
    )));
}

#[test]
fn crossing_point_is_exact() {
    let hits = curve_intersections(&a(), &b());
    assert_eq!(hits.len(), 1);
    assert_eq!(hits[0].0.at, pt(rat(3, 4), rat(3, 4)));
    assert!(curve_intersections(&a(), &c()).is_empty());
    let (u, v, _) = nest();
    let uv = curve_intersections(&u, &v);
    assert_eq!(uv.len(), 1);
    assert_eq!(uv[0].0.at, Point::from_ints(0, 3));
}

#[test]
fn intersections_are_symmetric() {
    let (u, v, s) = nest();
    for (x, y) in [(&u, &v), (&u, &s), (&v, &s), (&a(), &b())] {
        let mut fwd: Vec<Point> = curve_intersections(x, y).into_iter().map(|p| p.0.at).collect();
        let mut back: Vec<Point> = curve_intersections(y, x).into_iter().map(|p| p.1.at).collect();
        fwd.sort();
        back.sort();
        assert_eq!(fwd, back);
    }
}

#[test]
fn first_hit_is_earliest_along_curve() {
    let (u, v, s) = nest();
    let hit = first_hit_curves(&s, &[&u, &v]).unwrap();
    assert_eq!(hit.obstacle, 1);
    assert_eq!(hit.at.at, Point::from_ints(3, 3));
    assert!(first_hit_curves(&a(), &[&c()]).is_none());
    let hit = first_hit_curves(&b(), &[&a()]).unwrap();
    assert_eq!(hit.at.at, pt(rat(3, 4), rat(3, 4)));
    assert_eq!(hit.at.t, rat(1, 4));
}

#[test]
fn open_ends_exclude_hits() {
    let hit = first_hit_curves(&b(), &[&a()]).unwrap();
    let open = Subcurve::prefix(&b(), hit.at.clone(), false);
    let closed = Subcurve::prefix(&b(), hit.at, true);
    let whole_a = Subcurve::whole(&a());
    assert!(!subcurves_intersect(&open, &whole_a));
    assert!(subcurves_intersect(&closed, &whole_a));
    assert!(!subcurves_intersect(&Subcurve::whole(&a()), &Subcurve::whole(&c())));
    // an obstacle whose open end is the only contact is not hit
    let open_obstacle = Subcurve::prefix(&a(), curve_intersections(&a(), &b())[0].0.clone(), false);
    assert!(first_hit(&b(), &[open_obstacle]).is_none());
}

#[test]
fn exterior_examples() {
    let g = vec![a(), b()];
    assert!(!exterior_contains_point(&g, &pt(rat(1, 2), rat(1, 20))));
    assert!(exterior_meets_curve(&g, &c()).unwrap());
    assert!(exterior_contains_point(&g, &pt(int(2), rat(1, 4))));
    assert!(exterior_contains_point(&[a()], &pt(int(1), int(0))));
    assert!(exterior_contains_point(&[a()], &pt(int(1), rat(1, 2))));
    // points on the union are never exterior
    assert!(!exterior_contains_point(&g, &Point::from_ints(1, 1)));
    // the baseline under the crossing pair is enclosed, outside it is not
    assert!(!exterior_contains_point(&g, &pt(rat(1, 2), int(0))));
    assert!(exterior_contains_point(&g, &pt(rat(3, 2), int(0))));
    assert!(exterior_contains_point(&g, &pt(int(-1), int(0))));
}

#[test]
fn exterior_of_nest() {
    let (u, v, s) = nest();
    let g = vec![u.clone(), v.clone(), s.clone()];
    // the box under u's roof and left of s is enclosed
    assert!(!exterior_contains_point(&g, &Point::from_ints(1, 1)));
    assert!(!exterior_contains_point(&g, &pt(int(2), rat(7, 2))));
    // the strip between the two roofs right of s opens past x = 6
    assert!(exterior_contains_point(&g, &pt(rat(7, 2), rat(7, 2))));
    assert!(exterior_contains_point(&g, &Point::from_ints(7, 1)));
    assert!(exterior_contains_point(&g, &Point::from_ints(2, 5)));
    // a dangling tail of v sticks out to the left of u and stays exterior
    assert!(exterior_contains_point(&g, &pt(rat(-1, 2), int(2))));
    // a probe entering from outside meets the exterior, one fully inside does not
    let inside = GroundedCurve::new("q", vec![Point::from_ints(1, 0), Point::from_ints(1, 2)]);
    assert!(!exterior_meets_curve(&g, &inside).unwrap());
    let through = GroundedCurve::new("q", vec![Point::from_ints(1, 0), Point::from_ints(1, 6)]);
    assert!(exterior_meets_curve(&g, &through).unwrap());
}

#[test]
fn degenerate_probe_is_rejected() {
    let probe = GroundedCurve::from_ints("q", &[(5, 0), (3, 3)]);
    let g = vec![a(), b()];
    assert!(matches!(
        exterior_meets_curve(&g, &probe),
        Err(ExteriorError::DegenerateProbe(_))
    ));
}

#[test]
fn jordan_region_containment() {
    let r = JordanRegion::new(vec![
        Point::from_ints(0, 0),
        Point::from_ints(4, 0),
        Point::from_ints(4, 4),
        Point::from_ints(0, 4),
    ]);
    assert!(r.contains(&Point::from_ints(2, 2)));
    assert!(r.contains(&Point::from_ints(4, 2)));
    assert!(r.contains(&Point::from_ints(0, 0)));
    assert!(!r.contains(&Point::from_ints(5, 2)));
    assert!(!r.contains(&Point::from_ints(2, 4 + 1)));
}

#[test]
fn family_file_round_trip() {
    let text = r#"{"curves": [
        {"id": "a", "vertices": [[0, 0], ["3.25", "1/3"]]},
        {"id": "b", "vertices": [["-1", 0], ["-0.5", 2]]}
    ]}"#;
    let f = parse_family(text).unwrap();
    assert_eq!(f.ids(), vec!["b", "a"]);
    assert_eq!(f.get("a").unwrap().vertices()[1], pt(rat(13, 4), rat(1, 3)));
    let again = parse_family(&curves_to_json(f.curves())).unwrap();
    assert_eq!(again.curves(), f.curves());
}

#[test]
fn decimals_convert_exactly() {
    assert_eq!(parse_rational("0.1").unwrap(), rat(1, 10));
    assert_eq!(parse_rational("-2.50").unwrap(), rat(-5, 2));
    assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
    assert!(parse_rational("1/0").is_err());
    assert!(parse_rational("1e3").is_err());
}

#[test]
fn malformed_json_reports_position() {
    let err = parse_curves("{\"curves\": [\n  {\"id\": \"a\",, }]}").unwrap_err();
    match err {
        FamilyFileError::Json { line, column, .. } => {
            assert_eq!(line, 2);
            assert!(column > 0);
        }
        other => panic!("unexpected {other:?}"),
    }
    assert!(matches!(
        parse_curves(r#"{"curves": [{"id": "a", "vertices": [[0, 0], [0.5, 1]]}]}"#),
        Err(FamilyFileError::Coordinate { .. })
    ));
}
