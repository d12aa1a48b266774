//! Scan → cache → harness, end to end at a small grid.

use explicit_core::dirichlet::{CacheStatus, ZeroBank, ZeroCache};
use explicit_core::verify::{run_suites, Suite, SuiteConfig};
use explicit_core::Error;

fn small() -> SuiteConfig {
    SuiteConfig {
        q_max: 8,
        height: 50.0,
        samples: 100,
        ..SuiteConfig::default()
    }
}

#[test]
fn cached_zeros_reproduce_the_scan() {
    let dir = tempfile::tempdir().unwrap();
    let cache = ZeroCache::new(dir.path());
    let cfg = small();
    let t = cfg.zero_height();

    let scanned = ZeroBank::scan(cfg.q_max, t).unwrap();
    let (first, status) = cache.ensure(7, t, true).unwrap();
    assert_eq!(status, CacheStatus::Scanned);
    let (again, status) = cache.ensure(7, t, false).unwrap();
    assert_eq!(status, CacheStatus::Cached);
    assert_eq!(first, again);
    for (a, b) in scanned.primitive(7).unwrap().iter().zip(&again) {
        assert_eq!(a.character, b.character);
        assert_eq!(a.zeros.len(), b.zeros.len());
        for (x, y) in a.zeros.iter().zip(&b.zeros) {
            assert_eq!(x.gamma, y.gamma, "lossless float round trip");
        }
    }

    // Data certified to a lower height does not satisfy a taller request.
    assert!(matches!(cache.ensure(7, t + 5.0, false), Err(Error::Dependency(_))));
}

#[test]
fn harness_on_cached_bank_matches_fresh_bank() {
    let dir = tempfile::tempdir().unwrap();
    let cache = ZeroCache::new(dir.path());
    let cfg = small();
    let gathered = ZeroBank::gather(&cache, cfg.q_max, cfg.zero_height(), true).unwrap();
    let reloaded = ZeroBank::gather(&cache, cfg.q_max, cfg.zero_height(), false).unwrap();

    let suites = [Suite::Circle, Suite::Explicit, Suite::Hadamard, Suite::Repulsion, Suite::Density];
    let a = run_suites(&suites, &cfg, &gathered).unwrap();
    let b = run_suites(&suites, &cfg, &reloaded).unwrap();
    assert_eq!(a, b);
    let failed: Vec<_> = a.iter().filter(|r| !r.pass).map(|r| &r.name).collect();
    assert!(failed.is_empty(), "{failed:?}");
}

#[test]
fn gather_without_scanning_reports_the_missing_modulus() {
    let dir = tempfile::tempdir().unwrap();
    let cache = ZeroCache::new(dir.path());
    cache.ensure(1, 10.0, true).unwrap();
    match ZeroBank::gather(&cache, 3, 10.0, false) {
        Err(Error::Dependency(msg)) => assert!(msg.contains("modulus 2"), "{msg}"),
        other => panic!("expected a dependency error, got {other:?}"),
    }
}
