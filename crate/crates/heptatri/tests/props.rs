//! Property tests over the geometric primitives and the snapshot codec.

use proptest::prelude::*;

use heptatri::engine::{CellState, Configuration};
use heptatri::geometry::{hyper_distance, hyper_midpoint, DiscPoint, Isometry, TOLERANCE};
use heptatri::hepta::{sector_add, HeptaCoord};
use heptatri::snapshot;
use heptatri::tri::TriCoord;

fn disc_point() -> impl Strategy<Value = DiscPoint> {
    // Radius capped away from the boundary to keep distances finite.
    (0.0..0.95f64, 0.0..std::f64::consts::TAU)
        .prop_map(|(r, a)| DiscPoint::new(r * a.cos(), r * a.sin()).unwrap())
}

fn isometry() -> impl Strategy<Value = Isometry> {
    (
        -3.0..3.0f64,
        -1.5..1.5f64,
        -3.0..3.0f64,
        proptest::bool::ANY,
    )
        .prop_map(|(rot1, d, rot2, flip)| {
            let mut iso = Isometry::rotation(rot1)
                .compose(&Isometry::translation_x(d))
                .compose(&Isometry::rotation(rot2));
            if flip {
                iso = iso.compose(&Isometry::reflection_x());
            }
            iso
        })
}

proptest! {
    #[test]
    fn midpoint_is_symmetric_and_between(a in disc_point(), b in disc_point()) {
        let m = hyper_midpoint(a, b);
        let m2 = hyper_midpoint(b, a);
        prop_assert!(m.euclidean_distance(m2) < TOLERANCE);
        let d_am = hyper_distance(a, m);
        let d_mb = hyper_distance(m, b);
        prop_assert!((d_am - d_mb).abs() < TOLERANCE);
        prop_assert!((d_am + d_mb - hyper_distance(a, b)).abs() < TOLERANCE);
    }

    #[test]
    fn isometries_preserve_distance(iso in isometry(), a in disc_point(), b in disc_point()) {
        let d_before = hyper_distance(a, b);
        let d_after = hyper_distance(iso.apply(a), iso.apply(b));
        prop_assert!((d_before - d_after).abs() < TOLERANCE);
    }

    #[test]
    fn composition_against_pointwise_application(
        f in isometry(),
        g in isometry(),
        p in disc_point(),
    ) {
        let composed = f.compose(&g).apply(p);
        let pointwise = f.apply(g.apply(p));
        prop_assert!(composed.euclidean_distance(pointwise) < TOLERANCE);
    }

    #[test]
    fn inverse_cancels(iso in isometry(), p in disc_point()) {
        let back = iso.inverse().apply(iso.apply(p));
        prop_assert!(back.euclidean_distance(p) < TOLERANCE);
    }

    #[test]
    fn sector_add_cycles(s in 1u8..=7) {
        prop_assert_eq!(sector_add(sector_add(s, 1), -1), s);
        let mut around = s;
        for _ in 0..7 {
            around = sector_add(around, 1);
        }
        prop_assert_eq!(around, s);
    }

    #[test]
    fn snapshot_round_trip(
        cells in proptest::collection::btree_map(
            (0u8..=7, 1u64..500, 1u8..=7, 0u8..=3),
            1u8..=4,
            0..40,
        ),
        step in 0u64..1000,
    ) {
        let mut cfg_cells = std::collections::BTreeMap::new();
        for ((sector, nu, slice, place), state) in cells {
            let hepta = if sector == 0 {
                HeptaCoord::CENTRAL
            } else {
                HeptaCoord { sector, nu }
            };
            cfg_cells.insert(TriCoord { hepta, slice, place }, CellState(state));
        }
        let cfg = Configuration::from_cells(cfg_cells, step);
        let text = snapshot::write_snapshot(&cfg).unwrap();
        let back = snapshot::read_snapshot(&text).unwrap();
        prop_assert_eq!(&back, &cfg);
        prop_assert_eq!(snapshot::write_snapshot(&back).unwrap(), text);
    }
}
