//! Exhaustive truth tables for the affinity and property gates, plus the
//! strict-implies-relaxed containment property over random property maps.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use screen::{
    admet_gate, ba_gate, AdmetRules, BaMap, PropertyMap, ScreeningPolicy, P_CACO2, P_F20,
    P_FDAMDD, P_LOGP, P_LOGS, P_SAS, P_T_HALF,
};

/// Affinity values that pass / fail each target under the default policy
/// (opioid receptors must be below -9.54; the safety channel above -8.18).
const PASS_OPIOID: f64 = -11.0;
const FAIL_OPIOID: f64 = -9.0;
const PASS_HERG: f64 = -7.0;
const FAIL_HERG: f64 = -9.0;

fn ba_map(mor: f64, kor: f64, dor: f64, herg: f64) -> BaMap {
    BaMap::from([
        ("MOR".to_string(), mor),
        ("KOR".to_string(), kor),
        ("DOR".to_string(), dor),
        ("hERG".to_string(), herg),
    ])
}

#[test]
fn affinity_gate_truth_table_all_sixteen_cases() {
    let policy = ScreeningPolicy::default();
    for case in 0u32..16 {
        let mor_ok = case & 1 != 0;
        let kor_ok = case & 2 != 0;
        let dor_ok = case & 4 != 0;
        let herg_ok = case & 8 != 0;
        let ba = ba_map(
            if mor_ok { PASS_OPIOID } else { FAIL_OPIOID },
            if kor_ok { PASS_OPIOID } else { FAIL_OPIOID },
            if dor_ok { PASS_OPIOID } else { FAIL_OPIOID },
            if herg_ok { PASS_HERG } else { FAIL_HERG },
        );
        let verdict = ba_gate(&ba, &policy).expect("all targets present");
        let expected = mor_ok && kor_ok && dor_ok && herg_ok;
        assert_eq!(
            verdict.pass, expected,
            "case {case:04b} (mor={mor_ok} kor={kor_ok} dor={dor_ok} herg={herg_ok})"
        );
        let expected_reasons =
            [mor_ok, kor_ok, dor_ok, herg_ok].iter().filter(|ok| !**ok).count();
        assert_eq!(verdict.reasons.len(), expected_reasons, "case {case:04b}");
    }
}

/// A property map verdict the table cases are checked against.
struct PropertyCase {
    label: &'static str,
    props: &'static [(&'static str, f64)],
    relaxed: bool,
    expect_pass: bool,
}

fn full_map(overrides: &[(&str, f64)]) -> PropertyMap {
    // Mid-range values that pass every default bound.
    let mut map = PropertyMap::from([
        (P_FDAMDD.to_string(), 0.1),
        (P_F20.to_string(), 0.1),
        (P_T_HALF.to_string(), 0.1),
        (P_LOGP.to_string(), 1.5),
        (P_LOGS.to_string(), -2.0),
        (P_CACO2.to_string(), -4.5),
        (P_SAS.to_string(), 3.0),
    ]);
    for (name, value) in overrides {
        map.insert((*name).to_string(), *value);
    }
    map
}

#[test]
fn property_gate_truth_table_twelve_cases() {
    let cases = [
        PropertyCase { label: "all mid-range pass", props: &[], relaxed: false, expect_pass: true },
        PropertyCase { label: "FDAMDD above cap", props: &[(P_FDAMDD, 0.31)], relaxed: false, expect_pass: false },
        PropertyCase { label: "F20% above cap", props: &[(P_F20, 0.9)], relaxed: false, expect_pass: false },
        PropertyCase { label: "T1/2 on cap passes", props: &[(P_T_HALF, 0.3)], relaxed: false, expect_pass: true },
        PropertyCase { label: "LogP 4.28 fails strict", props: &[(P_LOGP, 4.28)], relaxed: false, expect_pass: false },
        PropertyCase { label: "LogP 4.28 passes relaxed", props: &[(P_LOGP, 4.28)], relaxed: true, expect_pass: true },
        PropertyCase { label: "LogP 5.5 fails even relaxed", props: &[(P_LOGP, 5.5)], relaxed: true, expect_pass: false },
        PropertyCase { label: "LogS below range", props: &[(P_LOGS, -4.5)], relaxed: false, expect_pass: false },
        PropertyCase { label: "Caco-2 -5.16 fails", props: &[(P_CACO2, -5.16)], relaxed: false, expect_pass: false },
        PropertyCase { label: "Caco-2 boundary -5.15 fails (exclusive)", props: &[(P_CACO2, -5.15)], relaxed: false, expect_pass: false },
        PropertyCase { label: "SAS boundary 6 fails (exclusive)", props: &[(P_SAS, 6.0)], relaxed: false, expect_pass: false },
        PropertyCase { label: "two violations both reported", props: &[(P_FDAMDD, 0.8), (P_SAS, 7.0)], relaxed: false, expect_pass: false },
    ];
    assert_eq!(cases.len(), 12);
    for case in &cases {
        let policy = if case.relaxed {
            ScreeningPolicy::default().relaxed_logp()
        } else {
            ScreeningPolicy::default()
        };
        let verdict = admet_gate(&full_map(case.props), &policy).expect("complete map");
        assert_eq!(verdict.pass, case.expect_pass, "{}", case.label);
        if case.label.starts_with("two violations") {
            assert_eq!(verdict.reasons.len(), 2, "{}", case.label);
        }
    }
}

#[test]
fn strict_pass_set_is_contained_in_relaxed_pass_set() {
    let strict = ScreeningPolicy::default();
    let relaxed = ScreeningPolicy::default().relaxed_logp();
    let mut rng = ChaCha12Rng::seed_from_u64(7_451);
    let mut strict_passes = 0usize;
    let mut relaxed_passes = 0usize;
    for _ in 0..1_000 {
        let map = full_map(&[]);
        let mut map: PropertyMap = map;
        // Perturb every property across a range wide enough to straddle
        // each bound.
        for value in map.values_mut() {
            *value += rng.gen_range(-4.0..4.0);
        }
        let s = admet_gate(&map, &strict).unwrap();
        let r = admet_gate(&map, &relaxed).unwrap();
        if s.pass {
            strict_passes += 1;
            assert!(r.pass, "strict-passing map must pass relaxed: {map:?}");
        }
        if r.pass {
            relaxed_passes += 1;
        }
    }
    assert!(strict_passes > 0, "sample should contain strict passes");
    assert!(
        relaxed_passes > strict_passes,
        "widened LogP bound should admit strictly more maps"
    );
}

#[test]
fn medium_band_widens_the_three_risk_caps() {
    let strict = ScreeningPolicy::default();
    let medium = ScreeningPolicy {
        admet: AdmetRules::default().include_medium_band(),
        ..ScreeningPolicy::default()
    };
    let map = full_map(&[(P_FDAMDD, 0.5), (P_F20, 0.65), (P_T_HALF, 0.7)]);
    assert!(!admet_gate(&map, &strict).unwrap().pass);
    assert!(admet_gate(&map, &medium).unwrap().pass);
    let beyond = full_map(&[(P_FDAMDD, 0.71)]);
    assert!(!admet_gate(&beyond, &medium).unwrap().pass);
}
