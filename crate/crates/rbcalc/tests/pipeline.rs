//! The public API end to end: a Rota-Baxter algebra read from JSON is
//! validated, its cohomology computed, and its Maurer-Cartan and homotopy
//! descriptions checked.

use rbcalc::cohomology::{cohomology_rank, les_check, validate_rb, ComplexId, FiniteRBData};
use rbcalc::linfty::{check_homotopy_rb, mc_check, twisted_differential_check, HomotopyRBStructure};

// k[ε]/(ε²) with T = −λ·id at weight 1/2
const DUAL: &str = r#"{"dim": 2, "lambda": "1/2", "mu": [[[1, 0], [0, 1]], [[0, 1], [0, 0]]], "T": [["-1/2", 0], [0, "-1/2"]]}"#;

#[test]
fn dual_numbers_end_to_end() {
    let data = FiniteRBData::from_json(DUAL).unwrap().with_regular_module();
    assert!(validate_rb(&data).unwrap().is_valid());

    let round = FiniteRBData::from_json(&data.to_json().to_string()).unwrap();
    assert_eq!(round, data);

    let betti = |id| (0..=2).map(|n| cohomology_rank(&data, id, n).unwrap().betti).collect::<Vec<_>>();
    assert_eq!(betti(ComplexId::Alg), vec![2, 1, 1]);
    assert_eq!(betti(ComplexId::Rbo), vec![2, 0, 0]);
    assert_eq!(betti(ComplexId::Rba), vec![0, 1, 1]);
    for n in 0..=2 {
        let (direct, via) = les_check(&data, n).unwrap();
        assert_eq!(direct, via);
    }

    assert!(mc_check(&data).is_mc());
    assert!(twisted_differential_check(&data, 3).passed());

    let hrb = HomotopyRBStructure::from_json(DUAL).unwrap();
    assert_eq!(hrb, HomotopyRBStructure::from_rb(&data));
    assert!(check_homotopy_rb(&hrb, 4).passed());
}

#[test]
fn invalid_operator_is_caught_everywhere() {
    let bad = DUAL.replace(r#"["-1/2", 0], [0, "-1/2"]"#, "[1, 0], [0, 1]");
    let data = FiniteRBData::from_json(&bad).unwrap().with_regular_module();
    let verdict = validate_rb(&data).unwrap();
    assert!(!verdict.is_valid());
    assert!(cohomology_rank(&data, ComplexId::Rbo, 1).is_err());

    let v = mc_check(&data);
    assert!(!v.is_mc() && v.agrees() && !v.rota_baxter);

    let hrb = HomotopyRBStructure::from_json(&bad).unwrap();
    assert!(!check_homotopy_rb(&hrb, 2).get("rota_baxter_identity").unwrap().passed());
}
