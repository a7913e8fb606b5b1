use alcove_calculus::oracle::{verify_suite, VerifyConfig};

fn assert_all_pass(cfg: &VerifyConfig) {
    let reports = verify_suite(cfg);
    assert!(reports.len() > 1);
    for r in &reports {
        assert!(r.passed(), "{}", r.to_json_line());
    }
}

#[test]
fn a1_all_levis_box_20() {
    let mut cfg = VerifyConfig::new("A1", 5);
    cfg.radius = 20;
    cfg.max_d = 4;
    assert_all_pass(&cfg);
}

#[test]
fn a2_all_levis_up_to_d3() {
    let mut cfg = VerifyConfig::new("A2", 5);
    cfg.radius = 10;
    cfg.samples = 40;
    assert_all_pass(&cfg);
}

#[test]
fn g2_at_seven() {
    let mut cfg = VerifyConfig::new("G2", 7);
    cfg.radius = 7;
    cfg.max_d = 2;
    cfg.samples = 20;
    assert_all_pass(&cfg);
}

#[test]
fn reports_serialise_as_json_lines() {
    let mut cfg = VerifyConfig::new("A1", 5);
    cfg.radius = 5;
    cfg.samples = 5;
    let line = verify_suite(&cfg)[0].to_json_line();
    let value: serde_json::Value = serde_json::from_str(&line).unwrap();
    assert!(value["check"].is_string());
    assert!(value["instances"].as_u64().unwrap() > 0);
    assert_eq!(value["failures"], serde_json::json!([]));
}

#[test]
fn p_below_coxeter_number_is_a_single_entry() {
    let reports = verify_suite(&VerifyConfig::new("B2", 3));
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0].check, "PTooSmall");
}

#[test]
fn box_smaller_than_p_is_rejected() {
    let mut cfg = VerifyConfig::new("A1", 5);
    cfg.radius = 3;
    let reports = verify_suite(&cfg);
    assert_eq!(reports.len(), 1);
    assert!(!reports[0].passed());
}
