use std::fs;

use steinberg_core::{Ring, RootDatum};
use steinberg_fp::cache::{cache_key, enumerate_cached, CACHE_ENV};
use steinberg_fp::{steinberg_presentation, EnumerationCaps};

/// The only test in this binary, so setting the variable races with nothing.
#[test]
fn tables_round_trip_through_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    std::env::set_var(CACHE_ENV, dir.path());
    let p = steinberg_presentation(&RootDatum::parse("A2").unwrap(), &Ring::parse("f2").unwrap()).unwrap();
    let caps = EnumerationCaps::default();
    let path = dir.path().join(format!("{}.table", cache_key(&p.presentation, &[], caps)));

    let first = enumerate_cached(&p.presentation, &[], caps).unwrap();
    assert_eq!(first.len(), 168);
    assert!(path.exists());
    assert_eq!(enumerate_cached(&p.presentation, &[], caps).unwrap(), first);

    fs::write(&path, b"garbage").unwrap();
    assert_eq!(enumerate_cached(&p.presentation, &[], caps).unwrap(), first);
    assert_ne!(fs::read(&path).unwrap(), b"garbage");

    let other = EnumerationCaps { max_cosets: 5000 };
    assert_ne!(cache_key(&p.presentation, &[], other), cache_key(&p.presentation, &[], caps));
    std::env::remove_var(CACHE_ENV);
}
