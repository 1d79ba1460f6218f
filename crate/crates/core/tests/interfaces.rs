//! Wire-format contracts: the series JSON schema and the verification
//! report schema round-trip bit-exactly.

use sumsq_core::qx::QX;
use sumsq_core::rat::{rat, rat_i};
use sumsq_core::report::{Mismatch, VerificationReport};

#[test]
fn qx_json_schema_and_round_trip() {
    let mut s = QX::zero(12);
    s.set_coeff(0, rat_i(1));
    s.set_coeff(5, rat(-7, 3));
    s.set_coeff(11, rat_i(123456789));
    let j = s.to_json();
    assert_eq!(j["order_quarter"], 12);
    let coeffs = j["coeffs"].as_array().unwrap();
    assert_eq!(coeffs.len(), 3);
    assert_eq!(coeffs[1]["e"], 5);
    assert_eq!(coeffs[1]["v"], "-7/3");
    // nonzero terms are listed in increasing exponent
    let es: Vec<u64> = coeffs.iter().map(|t| t["e"].as_u64().unwrap()).collect();
    assert!(es.windows(2).all(|w| w[0] < w[1]));
    let back = QX::from_json(&j).unwrap();
    assert_eq!(back, s);
    // round trip through the printed string form too
    let text = serde_json::to_string(&j).unwrap();
    let reparsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(QX::from_json(&reparsed).unwrap(), s);
}

#[test]
fn report_json_schema_and_round_trip() {
    let pass = VerificationReport::pass("THM_5_3", Some(2), 200);
    let j = pass.to_json();
    assert_eq!(j["status"], "pass");
    assert_eq!(j["id"], "THM_5_3");
    assert!(j["first_mismatch"].is_null());
    assert_eq!(VerificationReport::from_json(&j).unwrap(), pass);

    let fail = VerificationReport::fail("EQ_5_84", None, 400, 8, rat_i(3), rat(1, 2));
    let j = fail.to_json();
    assert_eq!(j["status"], "fail");
    assert_eq!(j["first_mismatch"]["e"], 8);
    assert_eq!(j["first_mismatch"]["lhs"], "3/1");
    assert_eq!(j["first_mismatch"]["rhs"], "1/2");
    let back = VerificationReport::from_json(&j).unwrap();
    assert_eq!(back, fail);
    assert_eq!(
        back.first_mismatch,
        Some(Mismatch {
            e: 8,
            lhs: rat_i(3),
            rhs: rat(1, 2)
        })
    );
}
