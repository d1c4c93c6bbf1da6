use outerstring::geom::*;
use outerstring::structures::*;

fn fam(curves: Vec<GroundedCurve>) -> CurveFamily {
    validate_family(curves).expect("valid fixture")
}
fn seg(id: &str, pts: &[(Rational, Rational)]) -> GroundedCurve {
    GroundedCurve::new(id, pts.iter().map(|(x, y)| Point::new(x.clone(), y.clone())).collect())
}
fn abc() -> Vec<GroundedCurve> {
    vec![
        GroundedCurve::from_ints("a", &[(0, 0), (3, 3)]),
        GroundedCurve::from_ints("b", &[(1, 0), (0, 3)]),
        seg("c", &[(int(2), int(0)), (int(2), rat(1, 2))]),
    ]
}
fn nest_with(probe: GroundedCurve) -> CurveFamily {
    fam(vec![
        GroundedCurve::from_ints("u", &[(0, 0), (0, 4), (6, 4)]),
        GroundedCurve::from_ints("v", &[(6, 0), (6, 3), (-1, 3)]),
        GroundedCurve::from_ints("s", &[(3, 0), (3, 5)]),
        probe,
    ])
}

#[test]
fn support_window_decides_support() {
    let low = seg("p", &[(int(2), int(0)), (int(2), int(2)), (rat(7, 2), int(2))]);
    let f = nest_with(low);
    let sk = Skeleton::new(&f, "u", "v", &["s"]).unwrap();
    assert!(is_supported("p", &sk, &f).unwrap());
    assert_eq!(supported_subfamily(&f, &sk).unwrap(), vec!["p"]);

    let high = seg("p", &[(int(2), int(0)), (int(2), rat(7, 2)), (rat(7, 2), rat(7, 2))]);
    let f = nest_with(high);
    let sk = Skeleton::new(&f, "u", "v", &["s"]).unwrap();
    assert!(!is_supported("p", &sk, &f).unwrap());
    assert!(supported_subfamily(&f, &sk).unwrap().is_empty());

    let empty = Skeleton::new(&f, "u", "v", &[] as &[&str]).unwrap();
    assert!(supported_subfamily(&f, &empty).unwrap().is_empty());
}

#[test]
fn window_stops_before_u_or_v() {
    let f = nest_with(seg("p", &[(int(2), int(0)), (int(2), int(2)), (rat(7, 2), int(2))]));
    let w = support_window(f.get("s").unwrap(), f.get("u").unwrap(), f.get("v").unwrap());
    assert_eq!(w.end.at, Point::from_ints(3, 3));
    assert!(!w.end_closed);
    let free = support_window(f.get("p").unwrap(), f.get("u").unwrap(), f.get("v").unwrap());
    assert!(free.end_closed);
    assert_eq!(free.end, f.get("p").unwrap().end());
}

#[test]
fn skeleton_validation() {
    let f = nest_with(seg("p", &[(int(2), int(0)), (int(2), int(2)), (rat(7, 2), int(2))]));
    assert!(Skeleton::new(&f, "v", "u", &["s"]).is_err());
    // p and s intersect, so they cannot both be supports
    assert!(Skeleton::new(&f, "u", "v", &["p", "s"]).is_err());
}

#[test]
fn bracket_of_a_crossing_pair() {
    let f = fam(abc());
    let br = build_bracket(&["b"], &["a"], &f).unwrap();
    assert_eq!(br.s_of("b"), Some("a"));
    assert_eq!(br.side, SupportSide::Left);
    let e = &br.entries[0];
    assert_eq!(e.hit.at, Point::new(rat(3, 4), rat(3, 4)));
    assert!(!e.p_prime.end_closed);
    assert!(!subcurves_intersect(&e.p_prime, &Subcurve::whole(f.get("a").unwrap())));

    assert!(matches!(build_bracket(&["b"], &["c"], &f), Err(StructureError::UnhitCurve(_))));
    assert!(matches!(
        build_bracket(&["a", "c"], &["b"], &f),
        Err(StructureError::SideOrderViolation)
    ));
}

#[test]
fn unused_support_rejected() {
    let f = fam(vec![
        GroundedCurve::from_ints("s1", &[(0, 0), (0, 5), (9, 5)]),
        GroundedCurve::from_ints("s2", &[(1, 0), (1, 3), (9, 3)]),
        GroundedCurve::from_ints("p", &[(8, 0), (8, 6)]),
    ]);
    assert!(matches!(
        build_bracket(&["p"], &["s1", "s2"], &f),
        Err(StructureError::UnusedSupport(s)) if s == "s1"
    ));
}

#[test]
fn interior_classification() {
    let f = fam(abc());
    let br = build_bracket(&["b"], &["a"], &f).unwrap();
    let tiny = seg("q", &[(rat(1, 2), int(0)), (rat(1, 2), rat(1, 20))]);
    assert_eq!(interior_classify(&br, &tiny), Classification::Contained);
    assert_eq!(interior_classify(&br, f.get("c").unwrap()), Classification::Outside);
    let through = seg("q", &[(int(-1), int(0)), (int(1), rat(1, 2))]);
    assert_eq!(interior_classify(&br, &through), Classification::CrossesBoundaryOffBaseline);
    // crossing a above the region does not touch the boundary of I
    let above = seg("q", &[(int(2), int(0)), (rat(1, 2), rat(3, 2))]);
    assert_eq!(interior_classify(&br, &above), Classification::Outside);
}

#[test]
fn bracket_crossing_on_small_bracket() {
    let f = fam(abc());
    let br = build_bracket(&["b"], &["a"], &f).unwrap();
    let through = seg("q", &[(rat(1, 2), int(0)), (rat(1, 2), int(4))]);
    // meets I and E, and meets a
    assert_ne!(interior_classify(&br, &through), Classification::Outside);
    assert!(br.exterior().meets_curve(&through).unwrap());
    assert!(verify_bracket_crossing(&br, &through, &f).unwrap());
    assert!(verify_bracket_crossing(&br, f.get("c").unwrap(), &f).unwrap());
}

/// Inner bracket ({D1, D2}, {C}) nested in outer bracket ({B, B2}, {A}).
fn nested_system(with_b2: bool) -> CurveFamily {
    let mut curves = vec![
        GroundedCurve::from_ints("A", &[(0, 0), (0, 10), (25, 10)]),
        GroundedCurve::from_ints("C", &[(2, 0), (2, 12)]),
        GroundedCurve::from_ints("D1", &[(5, 0), (1, 5)]),
        GroundedCurve::from_ints("D2", &[(6, 0), (1, 3)]),
        GroundedCurve::from_ints("B", &[(19, 0), (19, 12)]),
    ];
    if with_b2 {
        curves.push(GroundedCurve::from_ints("B2", &[(18, 0), (21, 11)]));
    }
    fam(curves)
}

#[test]
fn extract_clique_from_nested_brackets() {
    let f = nested_system(true);
    let inner = build_bracket(&["D1", "D2"], &["C"], &f).unwrap();
    let outer = build_bracket(&["B", "B2"], &["A"], &f).unwrap();
    validate_bracket_system(&[inner.clone(), outer.clone()], &f).unwrap();
    let k = extract_clique(&[inner.clone(), outer], 1, &f).unwrap();
    assert_eq!(k, vec!["C", "A"]);
    assert!(!curve_intersections(f.get("C").unwrap(), f.get("A").unwrap()).is_empty());
    assert_eq!(extract_clique(&[inner], 1, &f).unwrap(), vec!["C"]);
}

#[test]
fn extract_clique_reports_small_chi() {
    let f = nested_system(false);
    let inner = build_bracket(&["D1", "D2"], &["C"], &f).unwrap();
    let outer = build_bracket(&["B"], &["A"], &f).unwrap();
    match extract_clique(&[inner, outer], 1, &f) {
        Err(StructureError::PreconditionFailure { index, measured, .. }) => {
            assert_eq!(index, 2);
            assert_eq!(measured, Some(1));
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn anchors_of_a_crossing_pair() {
    let f = fam(abc());
    let a = clique_anchors(&["b", "a"], &f).unwrap();
    assert_eq!((a.l.as_str(), a.r.as_str()), ("a", "b"));
    assert_eq!(a.meet, Point::new(rat(3, 4), rat(3, 4)));
    assert!(a.l_prime.end_closed);
    assert!(!a.r_prime.end_closed);
    assert!(matches!(clique_anchors(&["a", "c"], &f), Err(StructureError::NotAClique(_))));
}

fn pair_with(probes: Vec<GroundedCurve>) -> CurveFamily {
    let mut curves = vec![
        GroundedCurve::from_ints("a", &[(0, 0), (3, 3)]),
        GroundedCurve::from_ints("b", &[(1, 0), (0, 3)]),
    ];
    curves.extend(probes);
    fam(curves)
}

fn vertical(id: &str, x: Rational, top: Rational) -> GroundedCurve {
    seg(id, &[(x.clone(), int(0)), (x, top)])
}

#[test]
fn sides_of_a_pair() {
    let f = pair_with(vec![
        vertical("lo", rat(1, 2), rat(1, 10)),
        vertical("left", rat(3, 10), int(2)),
        vertical("right", rat(9, 10), int(2)),
    ]);
    let a = clique_anchors(&["a", "b"], &f).unwrap();
    assert_eq!(side_for_clique("lo", &a, &f).unwrap(), Side::Neither);
    assert_eq!(side_for_clique("left", &a, &f).unwrap(), Side::Left);
    assert_eq!(side_for_clique("right", &a, &f).unwrap(), Side::Right);
}

#[test]
fn crossing_and_signatures() {
    let f = pair_with(vec![
        vertical("s1", rat(1, 5), int(5)),
        vertical("s2", rat(2, 5), int(5)),
        vertical("s3", rat(3, 5), int(5)),
        vertical("t", rat(9, 10), int(5)),
        vertical("lo", rat(1, 2), rat(1, 10)),
    ]);
    let cs = validate_clique_system(&[vec!["a", "b"]], &f).unwrap();
    assert!(crosses_system("s2", &cs, &f).unwrap());
    assert!(!crosses_system("lo", &cs, &f).unwrap());
    assert_eq!(signature("s1", &cs, &f).unwrap(), Signature(vec![0]));
    assert_eq!(signature("t", &cs, &f).unwrap(), Signature(vec![1]));
    assert!(matches!(signature("lo", &cs, &f), Err(StructureError::NotCrossing(_))));
    assert!(check_signature_betweenness(&cs, "s1", "s2", "s3", &f).unwrap());
    assert!(matches!(
        check_signature_betweenness(&cs, "s1", "s2", "t", &f),
        Err(StructureError::PreconditionFailure { .. })
    ));

    let empty = validate_clique_system::<&str>(&[], &f).unwrap();
    assert!(crosses_system("lo", &empty, &f).unwrap());
    assert_eq!(signature("lo", &empty, &f).unwrap(), Signature(vec![]));
}

#[test]
fn clique_system_json_round_trip() {
    let f = pair_with(vec![vertical("s1", rat(1, 5), int(5))]);
    let cs = validate_clique_system(&[vec!["a", "b"]], &f).unwrap();
    let text = serde_json::to_string(&cs.to_json()).unwrap();
    let back: CliqueSystemJson = serde_json::from_str(&text).unwrap();
    assert_eq!(CliqueSystem::from_json(&back, &f).unwrap().cliques(), cs.cliques());
}
