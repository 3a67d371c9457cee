use std::fs;
use std::path::Path;

use heavenly::classifier::{ClassifyOptions, Status};
use heavenly::document::classify_document;

const EXPECTED: [(&str, Status, Option<u64>); 12] = [
    ("32a2.json", Status::Heavenly, Some(1)),
    ("64a1.json", Status::Heavenly, Some(1)),
    ("elliptic_x3_minus_2.json", Status::NotHeavenly, None),
    ("jacobian_x5_minus_x.json", Status::Heavenly, Some(2)),
    ("jacobian_x5_minus_x_over_qsqrt2.json", Status::Heavenly, None),
    ("jacobian_x5_plus_x.json", Status::Heavenly, Some(4)),
    ("jacobian_x6_minus_1.json", Status::NotHeavenly, None),
    ("product_32a2_64a1.json", Status::Heavenly, Some(1)),
    ("weil_over_qi.json", Status::Heavenly, Some(8)),
    ("weil_qi_self_conjugate.json", Status::Heavenly, None),
    ("weil_qsqrt2_twist.json", Status::Heavenly, None),
    ("weil_qsqrt3_ramified.json", Status::NotHeavenly, None),
];

#[test]
fn corpus_verdicts_replay() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let mut seen = 0;
    for (name, status, closure) in EXPECTED {
        let text = fs::read_to_string(dir.join(name)).unwrap();
        let doc = classify_document(&text, &ClassifyOptions::default()).unwrap();
        assert_eq!(doc.verdict.status, status, "{name}");
        if closure.is_some() {
            assert_eq!(doc.verdict.closure_degree, closure, "{name}");
        }
        let report = doc.replay().unwrap();
        assert!(report.consistent, "{name}: {:?}", report.checks);
        seen += 1;
    }
    let on_disk = fs::read_dir(&dir)
        .unwrap()
        .filter(|e| e.as_ref().unwrap().path().extension().is_some_and(|x| x == "json"))
        .count();
    assert_eq!(seen, on_disk, "corpus has files without expectations");
}
