//! Worked-example profiles shipped with the crate. They anchor the
//! regression tests and the `verify examples` target.

use crate::io::LabeledProfile;

macro_rules! fixture {
    ($fn_name:ident, $file:literal) => {
        pub fn $fn_name() -> LabeledProfile {
            LabeledProfile::parse_text(include_str!(concat!("../fixtures/", $file)))
                .expect(concat!("fixture ", $file, " parses"))
        }
    };
}

// (3,4): abc bca cab cba
fixture!(mixed_winners, "mixed-winners.txt");
// (3,4): abc acb bac cba, the pessimistic variant
fixture!(mixed_winners_pessimistic, "mixed-winners-pessimistic.txt");
// (3,5): abc abc bac cba cba
fixture!(optimistic_borda_family, "optimistic-borda-family.txt");
// (4,3): abcd bdca cabd
fixture!(four_candidate_sure, "four-candidate-sure.txt");
// (3,5): cba acb bac cba acb
fixture!(not_safe, "not-safe.txt");
// (3,5): cab cab acb acb acb
fixture!(expected_reduction, "expected-reduction.txt");
// (3,4): abc acb bac bac
fixture!(sd_not_safe, "sd-not-safe.txt");
// (4,4): abcd bdca cabd cabd
fixture!(ten_method_profile, "ten-method-profile.txt");

/// Every fixture with its file stem.
pub fn all() -> Vec<(&'static str, LabeledProfile)> {
    vec![
        ("mixed-winners", mixed_winners()),
        ("mixed-winners-pessimistic", mixed_winners_pessimistic()),
        ("optimistic-borda-family", optimistic_borda_family()),
        ("four-candidate-sure", four_candidate_sure()),
        ("not-safe", not_safe()),
        ("expected-reduction", expected_reduction()),
        ("sd-not-safe", sd_not_safe()),
        ("ten-method-profile", ten_method_profile()),
    ]
}
