mod common;

use common::load;
use conway_core::generate::braid_closure;
use conway_core::reidemeister::{random_equivalent, MoveDescriptor, Side, WalkConfig};
use conway_core::*;

fn count(d: &Diagram, kind: MoveKind) -> usize {
    d.find_moves().iter().filter(|m| m.kind() == kind).count()
}

#[test]
fn face_counts_match_euler() {
    assert_eq!(faces(&load("kink")).len(), 3);
    assert_eq!(faces(&load("hopf_pos")).len(), 4);
    assert_eq!(faces(&load("trefoil_right")).len(), 5);
    for f in conway_core::io::fixtures::FIXTURES {
        let d = f.diagram();
        if d.crossing_count() > 0 {
            assert_eq!(faces(&d).len(), d.crossing_count() + 2, "{}", f.name);
        }
    }
}

#[test]
fn corrupted_orientation_breaks_planarity() {
    let d = load("trefoil_right");
    assert!(validate_planarity(&d));
    let mut crossings = d.crossings().to_vec();
    crossings[1].orient_ab = -crossings[1].orient_ab;
    assert!(!validate_planarity(&Diagram::new(crossings, 0)));
    assert!(validate_planarity(&Diagram::unlink(2)));
}

#[test]
fn removal_sites() {
    // Both loops of a kink bound monogons on the sphere.
    let kink = load("kink");
    assert_eq!(count(&kink, MoveKind::R1Remove), 2);
    let trefoil = load("trefoil_right");
    assert_eq!(count(&trefoil, MoveKind::R1Remove), 0);
    assert_eq!(count(&trefoil, MoveKind::R2Remove), 0);

    // sigma_1 sigma_1^-1: one component over at both crossings. All four
    // faces of this shadow are bigons on the sphere.
    let bigon = braid_closure(2, &[1, -1]);
    assert_eq!(count(&bigon, MoveKind::R2Remove), 4);
    for mv in bigon.find_moves().into_iter().filter(|m| m.kind() == MoveKind::R2Remove) {
        assert_eq!(bigon.apply_move(&mv).unwrap().canonical_key(), Diagram::unlink(2).canonical_key());
    }
    // The Hopf bigon alternates and cannot be pulled apart.
    assert_eq!(count(&load("hopf_pos"), MoveKind::R2Remove), 0);
}

#[test]
fn r1_remove_on_kink_gives_unknot() {
    let kink = load("kink");
    for mv in kink.find_moves().into_iter().filter(|m| m.kind() == MoveKind::R1Remove) {
        assert_eq!(kink.apply_move(&mv).unwrap(), Diagram::unknot());
    }
}

#[test]
fn kinks_on_free_loops() {
    let u = Diagram::unknot();
    let adds: Vec<_> = u.find_moves();
    assert_eq!(adds.len(), 4);
    for mv in adds {
        let k = u.apply_move(&mv).unwrap();
        assert_eq!(k.crossing_count(), 1);
        assert_eq!(k.free_loops(), 0);
        assert!(validate_planarity(&k));
        if let MoveDescriptor::R1Add { sign, .. } = mv {
            assert_eq!(k.signs(), vec![sign]);
        }
    }
}

#[test]
fn additions_are_undone_by_removals() {
    for name in ["trefoil_right", "figure_eight", "hopf_neg", "kink"] {
        let d = load(name);
        let key = d.canonical_key();
        for mv in d.find_moves() {
            let kind = match mv.kind() {
                MoveKind::R1Add => MoveKind::R1Remove,
                MoveKind::R2Add => MoveKind::R2Remove,
                _ => continue,
            };
            let grown = d.apply_move(&mv).unwrap();
            let undone = grown
                .find_moves()
                .into_iter()
                .filter(|m| m.kind() == kind)
                .any(|m| grown.apply_move(&m).unwrap().canonical_key() == key);
            assert!(undone, "{name}: no inverse for {mv:?}");
        }
    }
}

#[test]
fn kink_sign_and_side_are_independent() {
    let d = load("trefoil_right");
    let e = d.edges().into_iter().next().unwrap();
    for side in [Side::Left, Side::Right] {
        for sign in [Sign::Positive, Sign::Negative] {
            let mv = MoveDescriptor::R1Add { edge: Some(e), side, sign };
            let k = d.apply_move(&mv).unwrap();
            let new = k.crossings().iter().find(|c| c.id.0 > d.max_crossing()).unwrap();
            assert_eq!(new.sign(), sign);
            assert!(validate_planarity(&k));
        }
    }
}

#[test]
fn moves_keep_untouched_crossings() {
    let d = load("knot_5_1_six");
    for mv in d.find_moves() {
        let out = d.apply_move(&mv).unwrap();
        assert!(out.validate().is_ok(), "{mv:?}");
        assert!(validate_planarity(&out), "{mv:?}");
        assert_eq!(out.component_count(), d.component_count());
        assert_eq!(out.crossing_count() as i64, d.crossing_count() as i64 + mv.crossing_delta());
        let touched = mv.participants();
        for c in d.crossings().iter().filter(|c| !touched.contains(&c.id)) {
            let kept = out.crossing(c.id).unwrap();
            assert_eq!((kept.over, kept.orient_ab), (c.over, c.orient_ab), "{mv:?}");
        }
    }
}

#[test]
fn r3_preserves_coefficients() {
    let d = load("knot_5_1_six");
    let e = ConwayEngine::new();
    let before = e.conway_polynomial(&d, Some(4)).unwrap();
    let r3: Vec<_> = d.find_moves().into_iter().filter(|m| m.kind() == MoveKind::R3).collect();
    assert!(!r3.is_empty());
    for mv in r3 {
        let out = d.apply_move(&mv).unwrap();
        assert_ne!(out.canonical_key(), d.canonical_key());
        assert_eq!(e.conway_polynomial(&out, Some(4)).unwrap(), before, "{mv:?}");
    }
}

#[test]
fn stale_descriptors_are_rejected() {
    let d = load("trefoil_right");
    let mv = MoveDescriptor::R1Remove {
        crossing: CrossingId(1),
        loop_edge: EdgeId(1),
    };
    assert!(matches!(d.apply_move(&mv), Err(Error::StaleMove(_))));
}

#[test]
fn walks_are_reproducible() {
    let d = load("trefoil_right");
    let cfg = WalkConfig::default();
    let (same, log) = random_equivalent(&d, 0, 3, &cfg);
    assert_eq!(same, d);
    assert!(log.is_empty());
    let a = random_equivalent(&d, 12, 42, &cfg);
    let b = random_equivalent(&d, 12, 42, &cfg);
    assert_eq!(a, b);
    assert_eq!(a.1.len(), 12);
}

#[test]
fn ten_step_walk_keeps_trefoil_coefficient() {
    let d = load("trefoil_right");
    let e = ConwayEngine::new();
    for seed in 0..10 {
        let (w, _) = random_equivalent(&d, 10, seed, &WalkConfig::default());
        assert_eq!(e.coefficient(&w, 2).unwrap(), 1, "seed {seed}");
    }
}

#[test]
fn walk_respects_the_cap() {
    let d = load("knot_5_1");
    let cfg = WalkConfig { max_crossings: 6 };
    let (_, log) = random_equivalent(&d, 40, 9, &cfg);
    let mut count = d.crossing_count() as i64;
    for mv in &log {
        count += mv.crossing_delta();
        assert!(count <= 6);
    }
}
