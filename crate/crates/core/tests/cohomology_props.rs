use gtvar::canonical::classify_ring;
use gtvar::cohomology::{build_rl, default_columns, h, table, CohomologyTable};
use gtvar::{Error, GroupSpec};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn arb_spec() -> impl Strategy<Value = GroupSpec> {
    (2usize..=4)
        .prop_flat_map(|n| ((n as u32 + 1)..=9).prop_map(move |d| (n, d)))
        .prop_flat_map(|(n, d)| prop::collection::vec(0..d, n).prop_map(move |rest| (d, rest)))
        .prop_filter_map("invalid spec", |(d, rest)| {
            let mut a = vec![0];
            a.extend(rest);
            GroupSpec::new(d, &a).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rl_exists_exactly_for_level_gt(s in arb_spec()) {
        match build_rl(&s) {
            Ok(rl) => {
                prop_assert!(classify_ring(&s).is_level_gt);
                prop_assert_eq!(BigInt::from(rl.complement.len()), &rl.big_n + 1);
            }
            Err(Error::NotLevelGt(_)) => prop_assert!(!classify_ring(&s).is_level_gt),
            Err(e) => prop_assert!(false, "{s}: {e}"),
        }
    }

    #[test]
    fn vanishing_windows(s in arb_spec()) {
        let Ok(rl) = build_rl(&s) else { return Ok(()) };
        let n = s.n();
        let top = (s.d() as usize + n + 3) as i64;
        for k in -15..top + 15 {
            for i in 0..=n {
                let v = h(&rl, i, k).unwrap();
                prop_assert!(!v.is_negative(), "{s}: h^{i}({k}) = {v}");
                if 0 < i && i + 1 < n {
                    prop_assert!(v.is_zero());
                }
            }
            if k < top {
                prop_assert!(h(&rl, n, k).unwrap().is_zero());
            } else {
                prop_assert!(h(&rl, n - 1, k).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn table_json_round_trip(s in arb_spec()) {
        let Ok(rl) = build_rl(&s) else { return Ok(()) };
        let (lo, hi) = default_columns(&rl);
        let t = table(&rl, lo, hi).unwrap();
        let back: CohomologyTable = serde_json::from_str(&serde_json::to_string(&t).unwrap()).unwrap();
        prop_assert_eq!(back, t);
    }
}
