use proptest::prelude::*;
use suture_core::*;

#[test]
fn six_point_disk_summary() {
    let s = MarkedSurface::disk(6).unwrap().summary();
    assert_eq!((s.euler_characteristic, s.n, s.pieces, s.circles.clone()), (1, 3, 1, vec![6]));
}

#[test]
fn odd_disk_is_rejected() {
    assert!(matches!(MarkedSurface::disk(3), Err(SurfaceError::OddMarkedPoints { count: 3, .. })));
}

#[test]
fn annulus_is_one_square_with_one_pair() {
    let s = MarkedSurface::annulus(2, 2).unwrap();
    assert_eq!((s.pieces().len(), s.pair_count(), s.euler_characteristic()), (1, 1, 0));
    assert_eq!(s.boundary_circles().len(), 2);
    assert_eq!(s.expected_rank(), 4);
}

#[test]
fn torus_euler_characteristic() {
    let t = MarkedSurface::punctured_torus(2).unwrap();
    assert_eq!((t.euler_characteristic(), t.boundary_circles().len(), t.expected_rank()), (-1, 1, 4));
}

#[test]
fn file_errors_are_specific() {
    let file = |pieces: Vec<Vec<&str>>, ids: Vec<[&str; 2]>| {
        let labels = pieces
            .iter()
            .map(|p| p.iter().filter(|t| **t == "m").enumerate().map(|(i, _)| if i % 2 == 0 { "+" } else { "-" }.to_string()).collect())
            .collect();
        SurfaceFile {
            pieces: pieces.into_iter().map(|p| p.into_iter().map(String::from).collect()).collect(),
            identifications: ids.into_iter().map(|[a, b]| [a.to_string(), b.to_string()]).collect(),
            labels,
        }
    };
    assert!(matches!(validate_surface(&file(vec![vec!["m", "m", "x"]], vec![])), Err(SurfaceError::UnpairedSegment(_))));
    assert!(matches!(validate_surface(&file(vec![vec!["m", "m", "x"]], vec![["x", "y"]])), Err(SurfaceError::UnknownSegment(_))));
    assert!(matches!(validate_surface(&file(vec![vec!["m", "m", "x"]], vec![["x", "x"]])), Err(SurfaceError::SelfPaired(_))));
    assert!(matches!(validate_surface(&file(vec![vec![]], vec![])), Err(SurfaceError::EmptyPiece(0))));
    assert!(matches!(validate_surface(&SurfaceFile { labels: vec![], ..file(vec![vec!["m", "m"]], vec![]) }), Err(SurfaceError::LabelCount { .. })));
    let ok = validate_surface(&file(vec![vec!["m", "m", "a", "m", "m", "b"]], vec![["a", "b"]])).unwrap();
    assert_eq!(ok.euler_characteristic, 0);
}

#[test]
fn non_alternating_labels_rejected() {
    let f = SurfaceFile {
        pieces: vec![vec!["m".into(); 4]],
        identifications: vec![],
        labels: vec![vec!["+".into(), "+".into(), "-".into(), "-".into()]],
    };
    assert!(matches!(validate_surface(&f), Err(SurfaceError::NonAlternatingLabels { .. })));
}

proptest! {
    #[test]
    fn annulus_shapes(a in 1usize..=4, b in 1usize..=4) {
        let s = MarkedSurface::annulus(2 * a, 2 * b).unwrap();
        prop_assert_eq!(s.euler_characteristic(), 0);
        prop_assert_eq!(s.expected_rank(), 1u64 << (a + b));
        let back = MarkedSurface::from_file(&s.to_file()).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn disk_unions_add_up(p in 1usize..=4, q in 1usize..=4) {
        let u = MarkedSurface::disk(2 * p).unwrap().disjoint_union(&MarkedSurface::disk(2 * q).unwrap());
        prop_assert_eq!(u.components().len(), 2);
        prop_assert_eq!(u.euler_characteristic(), 2);
        prop_assert_eq!(u.expected_rank(), 1u64 << (p - 1 + q - 1));
        prop_assert!(!u.is_connected());
    }

    #[test]
    fn odd_counts_fail(p in 0usize..6) {
        let points = 2 * p + 1;
        prop_assert!(MarkedSurface::disk(points).is_err());
    }
}
