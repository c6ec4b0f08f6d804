//! The full verification report, as written by `prect verify`.

use prect::pipeline::{build_model, verify_model, FamilySpec, Profile, VerifyOptions};

fn main() {
    let model = build_model(FamilySpec::Subplane { p: 3, e: 1, k: 2 }).unwrap();
    let opts = VerifyOptions {
        profile: Profile::Full,
        timings: true,
        ..VerifyOptions::default()
    };
    let rep = verify_model(&model, &opts).unwrap();
    print!("{}", rep.summary());
    println!("timings (ms): {:?}", rep.timings_ms.unwrap_or_default());
    println!("overall: {}", if rep.passed { "pass" } else { "fail" });
}
