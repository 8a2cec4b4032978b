use std::ffi::CStr;
use std::path::Path;
use std::process::Command;
use std::ptr;

use mills_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(mills_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn scalar_calls_match_core() {
    let mut r = 0.0;
    assert_eq!(mills_mills_ratio(2.0, &mut r), MillsStatus::Ok);
    assert_eq!(r, mills::gauss::mills_ratio(2.0).unwrap());

    let (mut lin, mut log) = (0.0, 0.0);
    assert_eq!(mills_q_value(40.0, &mut lin, &mut log), MillsStatus::Ok);
    assert!(
        lin == 0.0 && (log + 804.608_442_013_754).abs() < 1e-9,
        "{lin} {log}"
    );
    assert_eq!(
        mills_tail_integral(1.0, &mut lin, ptr::null_mut()),
        MillsStatus::Ok
    );
    assert!((lin - 0.397_689_745_423_351_45).abs() < 1e-15);

    let mut x = 0.0;
    assert_eq!(mills_inverse_q(1e-3, &mut x), MillsStatus::Ok);
    assert!((x - 3.090_232_306_167_813_5).abs() < 1e-12);
    assert_eq!(
        mills_estimate(MillsEstimate::Low1 as u32, 1e-3, &mut x),
        MillsStatus::Ok
    );
    assert!((x - 3.081_329_657_25).abs() < 1e-10);
    assert_eq!(
        mills_invert_bound(MillsBoundId::Thm3Upper as u32, 1e-3, &mut x),
        MillsStatus::Ok
    );
    assert!((x - 3.100_860_193_21).abs() < 1e-9);
    assert!((mills_crossover_constant() - 0.786_151_377_757_423_3).abs() < 1e-15);
}

#[test]
fn errors_map_to_status_codes() {
    let mut out = 0.0;
    assert_eq!(mills_mills_ratio(-1.0, &mut out), MillsStatus::Domain);
    assert!(!last_error().is_empty());
    assert_eq!(
        mills_evaluate_bound(MillsBoundId::Thm3Lower as u32, 1.0, false, &mut out),
        MillsStatus::Validity
    );
    assert_eq!(
        mills_evaluate_bound(MillsBoundId::Thm3Lower as u32, 1.0, true, &mut out),
        MillsStatus::Ok
    );
    assert_eq!(
        mills_evaluate_bound(99, 1.0, true, &mut out),
        MillsStatus::Config
    );
    assert!(last_error().contains("99"));
    assert_eq!(
        mills_empirical_crossover(MillsBoundId::Thm3Upper as u32, 1.0, 2.0, 1e-6, &mut out),
        MillsStatus::Bracket
    );
    assert_eq!(
        mills_estimate(MillsEstimate::Low2 as u32, 0.5, &mut out),
        MillsStatus::Domain
    );
    assert_eq!(
        mills_mills_ratio(1.0, ptr::null_mut()),
        MillsStatus::NullPointer
    );
    assert_eq!(mills_mills_ratio(1.0, &mut out), MillsStatus::Ok);
    assert_eq!(last_error(), "");
}

#[test]
fn catalog_info() {
    assert_eq!(mills_bound_count(), 8);
    let mut info = MillsBoundInfo {
        id: 0,
        side: 0,
        validity_lo: 0.0,
        validity_hi: 0.0,
        lo_open: false,
        hi_open: false,
        name: ptr::null(),
    };
    assert_eq!(
        mills_bound_info(MillsBoundId::Thm3Lower as u32, &mut info),
        MillsStatus::Ok
    );
    assert_eq!(
        unsafe { CStr::from_ptr(info.name) }.to_str().unwrap(),
        "thm3_lower"
    );
    assert_eq!(info.side, 0);
    assert_eq!(info.validity_lo, std::f64::consts::SQRT_2);
    assert!(info.lo_open);
    for id in 0..8 {
        assert_eq!(mills_bound_info(id, &mut info), MillsStatus::Ok);
        let name = unsafe { CStr::from_ptr(info.name) }.to_str().unwrap();
        assert_eq!(name, mills::BoundId::from_index(id).unwrap().name());
    }
}

#[test]
fn comparison_handle() {
    let ids = [MillsBoundId::BsLower as u32, MillsBoundId::Thm3Lower as u32];
    let mut row = ptr::null_mut();
    unsafe {
        assert_eq!(
            mills_compare_at(2.0, ids.as_ptr(), ids.len(), &mut row),
            MillsStatus::Ok
        );
        let mut reference = 0.0;
        assert_eq!(
            mills_comparison_reference(row, &mut reference),
            MillsStatus::Ok
        );
        assert!((reference - 0.057_026_123_992_892_05).abs() < 1e-16);
        let mut entry = MillsBoundEntry::default();
        assert_eq!(
            mills_comparison_entry(row, ids[1], &mut entry),
            MillsStatus::Ok
        );
        assert!(entry.holds && entry.in_validity);
        assert!((entry.value - 0.056_389_701_348_588_62).abs() < 1e-15);
        assert_eq!(
            mills_comparison_entry(row, MillsBoundId::GordonUpper as u32, &mut entry),
            MillsStatus::Config
        );
        let mut ordered = false;
        assert_eq!(
            mills_comparison_ordering_ok(row, &mut ordered),
            MillsStatus::Ok
        );
        assert!(ordered);
        mills_comparison_free(row);
        mills_comparison_free(ptr::null_mut());
        assert_eq!(
            mills_comparison_reference(ptr::null(), &mut reference),
            MillsStatus::NullPointer
        );
    }
}

#[test]
fn conjecture_report_handle() {
    let mut report = ptr::null_mut();
    assert_eq!(
        mills_conjecture_scan(1e-10, 1e-2, 10, &mut report),
        MillsStatus::Ok
    );
    unsafe {
        let mut points = 0;
        assert_eq!(
            mills_report_grid_points(report, &mut points),
            MillsStatus::Ok
        );
        assert_eq!(points, 81);
        let (mut holds, mut violated) = (0, 0);
        assert_eq!(
            mills_report_holds_at(report, MillsEstimate::Upp as u32, &mut holds),
            MillsStatus::Ok
        );
        assert_eq!(
            mills_report_violation_count(report, MillsEstimate::Upp as u32, &mut violated),
            MillsStatus::Ok
        );
        assert_eq!(holds + violated, points);
        if violated > 0 {
            let (mut a, mut e, mut r) = (0.0, 0.0, 0.0);
            assert_eq!(
                mills_report_violation(
                    report,
                    MillsEstimate::Upp as u32,
                    0,
                    &mut a,
                    &mut e,
                    &mut r
                ),
                MillsStatus::Ok
            );
            assert!(e < r, "upp violation must sit below the reference");
        }
        assert_eq!(
            mills_report_violation(
                report,
                MillsEstimate::Upp as u32,
                violated,
                ptr::null_mut(),
                ptr::null_mut(),
                ptr::null_mut()
            ),
            MillsStatus::Config
        );
        let json = mills_report_to_json(report);
        assert!(!json.is_null());
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        mills_string_free(json);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert!(value["grid"].is_object() && value["results"].is_array());
        mills_report_free(report);
    }
    assert_eq!(
        mills_conjecture_scan(1e-2, 1e-10, 10, &mut report),
        MillsStatus::Config
    );
}

#[test]
fn verify_exit_code() {
    let mut code = -1;
    assert_eq!(mills_verify(50, &mut code), MillsStatus::Ok);
    assert_eq!(code, 0);
    assert_eq!(mills_verify(1, &mut code), MillsStatus::Config);
}

#[test]
fn header_compiles_as_c_and_cpp() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/mills.h");
    assert!(header.exists(), "header not generated");
    let text = std::fs::read_to_string(&header).unwrap();
    for symbol in [
        "mills_mills_ratio",
        "mills_compare_at",
        "mills_report_free",
        "MILLS_STATUS_UNATTAINABLE",
    ] {
        assert!(text.contains(symbol), "{symbol} missing from header");
    }

    let program = r#"
#include "mills.h"
int main(void) {
    double r;
    MillsComparisonRow *row = 0;
    uint32_t ids[1] = { MILLS_BOUND_ID_GORDON_LOWER };
    if (mills_mills_ratio(1.0, &r) != MILLS_STATUS_OK) return 1;
    if (mills_compare_at(1.0, ids, 1, &row) == MILLS_STATUS_OK) mills_comparison_free(row);
    return 0;
}
"#;
    let tmp = Path::new(env!("CARGO_TARGET_TMPDIR"));
    let source = tmp.join("mills_header_check.c");
    std::fs::write(&source, program).unwrap();
    for (compiler, lang) in [("cc", "c"), ("c++", "c++")] {
        let status = match Command::new(compiler)
            .args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang, "-I"])
            .arg(dir.join("include"))
            .arg(&source)
            .status()
        {
            Ok(s) => s,
            Err(_) => {
                eprintln!("{compiler} not available, skipping");
                continue;
            }
        };
        assert!(status.success(), "{compiler} rejected the header");
    }
}
