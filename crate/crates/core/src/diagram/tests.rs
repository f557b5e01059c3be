use super::*;

const FIVE_TWO: &str = include_str!("../../../../fixtures/5_2.json");
const VARIANT: &str = include_str!("../../../../fixtures/5_2_r1r2.json");
const CIRCLE: &str = include_str!("../../../../fixtures/circle.json");
const THETA: &str = include_str!("../../../../fixtures/theta.json");

fn all_fixtures() -> Vec<Diagram> {
    [
        FIVE_TWO,
        VARIANT,
        CIRCLE,
        THETA,
        include_str!("../../../../fixtures/kink.json"),
        include_str!("../../../../fixtures/theta_kink.json"),
        include_str!("../../../../fixtures/hopf.json"),
        include_str!("../../../../fixtures/two_circles.json"),
        include_str!("../../../../fixtures/two_circles_r2.json"),
    ]
    .iter()
    .map(|t| Diagram::parse(t).unwrap())
    .collect()
}

#[test]
fn five_two_counts() {
    let d = Diagram::parse(FIVE_TWO).unwrap();
    let s = d.stats();
    assert_eq!((s.semiarcs, s.positive, s.negative, s.vertices(), s.regions), (13, 3, 2, 2, 8));
    assert_eq!(d.components(), 1);
}

#[test]
fn small_fixture_counts() {
    let c = Diagram::parse(CIRCLE).unwrap().stats();
    assert_eq!((c.semiarcs, c.closed, c.crossings(), c.vertices(), c.regions), (1, 1, 0, 0, 2));
    let t = Diagram::parse(THETA).unwrap().stats();
    assert_eq!((t.semiarcs, t.crossings(), t.vertices(), t.regions), (3, 0, 2, 3));
}

#[test]
fn round_trip() {
    for d in all_fixtures() {
        assert_eq!(Diagram::parse(&d.to_json()).unwrap(), d);
    }
}

#[test]
fn mirror_is_an_involution() {
    for d in all_fixtures() {
        let m = d.mirror();
        let mm = m.mirror();
        assert_eq!(mm.semiarcs(), d.semiarcs());
        assert_eq!(mm.crossings(), d.crossings());
        assert_eq!(mm.vertices(), d.vertices());
        // The mirror must itself pass validation.
        let reparsed = Diagram::parse(&m.to_json()).unwrap();
        assert_eq!(reparsed.stats().crossings(), d.stats().crossings());
        assert_eq!(reparsed.stats().positive, d.stats().negative);
    }
}

#[test]
fn reverse_and_reflect_are_valid() {
    for d in all_fixtures() {
        Diagram::parse(&d.reverse().to_json()).unwrap();
        Diagram::parse(&d.reflect().to_json()).unwrap();
    }
}

#[test]
fn swapped_region_is_rejected() {
    let mut f: DiagramFile = serde_json::from_str(FIVE_TWO).unwrap();
    f.semiarcs[4].source = "Bl".into();
    assert!(matches!(Diagram::from_file(&f), Err(DiagramError::RegionInconsistency { .. })));
}

#[test]
fn wrong_weight_region_is_rejected() {
    let mut f: DiagramFile = serde_json::from_str(FIVE_TWO).unwrap();
    f.crossings[0].weight_region = "O".into();
    assert!(matches!(Diagram::from_file(&f), Err(DiagramError::RegionInconsistency { .. })));
}

#[test]
fn dangling_reference_is_rejected() {
    let mut f: DiagramFile = serde_json::from_str(FIVE_TWO).unwrap();
    f.crossings[2].over_in = "nope".into();
    assert!(matches!(Diagram::from_file(&f), Err(DiagramError::Dangling { .. })));
}

#[test]
fn extra_region_fails_euler() {
    let mut f: DiagramFile = serde_json::from_str(FIVE_TWO).unwrap();
    f.regions.push("Z".into());
    assert!(matches!(Diagram::from_file(&f), Err(DiagramError::Euler { .. })));
}

#[test]
fn double_endpoint_is_rejected() {
    let mut f: DiagramFile = serde_json::from_str(FIVE_TWO).unwrap();
    f.crossings[1].under_out = "l4".into();
    assert!(Diagram::from_file(&f).is_err());
}

#[test]
fn schema_errors() {
    assert!(matches!(Diagram::parse("{"), Err(DiagramError::Schema(_))));
    assert!(matches!(Diagram::parse(r#"{"regions": [], "semiarcs": [], "bogus": 1}"#), Err(DiagramError::Schema(_))));
}
