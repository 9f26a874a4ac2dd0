//! Incremental cluster statistics against fresh rebuilds.

use rand::Rng;
use ucpc_core::datagen::random_dataset;
use ucpc_core::rng::seeded;
use ucpc_core::ucentroid::ClusterStats;

#[test]
fn long_add_remove_sequences_do_not_drift() {
    let d = random_dataset(200, 5, 17).unwrap();
    let mut rng = seeded(3);
    let mut inside = vec![false; d.len()];
    let mut stats = ClusterStats::empty(5);
    let mut worst: f64 = 0.0;
    for step in 1..=10_000 {
        let i = rng.random_range(0..d.len());
        if inside[i] {
            stats.remove(d.objects()[i].moments()).unwrap();
        } else {
            stats.add(d.objects()[i].moments()).unwrap();
        }
        inside[i] = !inside[i];
        if step % 100 == 0 {
            let fresh = ClusterStats::build(
                5,
                d.objects()
                    .iter()
                    .zip(&inside)
                    .filter(|p| *p.1)
                    .map(|p| p.0),
            )
            .unwrap();
            assert_eq!(fresh.size(), stats.size());
            let (a, b) = (stats.j_ucpc(), fresh.j_ucpc());
            worst = worst.max((a - b).abs() / b.abs().max(1e-300));
        }
    }
    assert!(worst <= 1e-6, "relative drift {worst}");
}

#[test]
fn predicted_totals_match_applied_updates() {
    let d = random_dataset(50, 3, 4).unwrap();
    let mut stats = ClusterStats::build(3, &d.objects()[..25]).unwrap();
    for o in &d.objects()[25..] {
        let predicted = stats.totals_after(o.moments(), 1.0).j_ucpc();
        stats.add(o.moments()).unwrap();
        assert!((predicted - stats.j_ucpc()).abs() <= 1e-9 * (1.0 + predicted.abs()));
    }
    for o in &d.objects()[..49] {
        let predicted = stats.totals_after(o.moments(), -1.0).j_ucpc();
        stats.remove(o.moments()).unwrap();
        assert!((predicted - stats.j_ucpc()).abs() <= 1e-9 * (1.0 + predicted.abs()));
    }
    assert_eq!(stats.size(), 1);
}

#[test]
fn emptying_resets_and_underflow_errors() {
    let d = random_dataset(3, 2, 8).unwrap();
    let mut stats = ClusterStats::empty(2);
    for o in d.objects() {
        stats.add(o.moments()).unwrap();
    }
    for o in d.objects() {
        stats.remove(o.moments()).unwrap();
    }
    assert_eq!(stats, ClusterStats::empty(2));
    assert_eq!(stats.j_ucpc(), 0.0);
    assert!(stats.remove(d.objects()[0].moments()).is_err());
}
