use proptest::prelude::*;

use cuspvan::arith::gcd;
use cuspvan::cusps::{are_equivalent, Cusp};
use cuspvan::gauss_eps::{gauss_sum, gauss_sum_closed};
use cuspvan::local_reps::{vanishing_index_table, AbstractLocalData};
use cuspvan::padic_chars::enumerate_chars;

fn abstract_data() -> impl Strategy<Value = (u64, AbstractLocalData)> {
    let p = prop_oneof![Just(2u64), Just(3), Just(5), Just(7)];
    (p, 0u32..3, 0u32..6, 0u32..6, 0u32..6).prop_filter_map("invalid", |(p, kind, x, y, z)| {
        let a = match kind {
            0 => AbstractLocalData::Steinberg { a: x },
            1 => AbstractLocalData::PrincipalSeries { a1: x.min(y), a2: x.max(y), a12inv: z },
            _ => AbstractLocalData::Supercuspidal { n: x + y, a_min: x.max(2) },
        };
        a.validate(p).ok().map(|_| (p, a))
    })
}

proptest! {
    #[test]
    fn table_is_symmetric_in_level((p, a) in abstract_data()) {
        let n = a.conductor();
        for l in 0..=n {
            prop_assert_eq!(
                vanishing_index_table(&a, p, l).unwrap(),
                vanishing_index_table(&a, p, n - l).unwrap()
            );
        }
    }

    #[test]
    fn table_is_bounded((p, a) in abstract_data()) {
        for l in 0..=a.conductor() {
            let e = vanishing_index_table(&a, p, l).unwrap();
            prop_assert!(e <= 3);
            if p >= 5 || l < 2 {
                prop_assert_eq!(e, 0);
            }
        }
    }

    #[test]
    fn canonical_cusp_is_equivalent(n in 1u64..400, pick in 0usize..64, a in -2000i64..2000) {
        let ds = cuspvan::arith::divisors(n);
        let l = ds[pick % ds.len()];
        prop_assume!(gcd(a.unsigned_abs(), n) == 1);
        let c = Cusp::new(a, l, n).unwrap();
        let k = c.canonical();
        prop_assert!(are_equivalent(&c, &k));
        prop_assert_eq!(k.canonical(), k);
        prop_assert!(k.a > 0);
        prop_assert!(c.scaling_matrix().validate_for(&c).is_ok());
    }

    #[test]
    fn gauss_closed_form_matches_sum(
        p in prop_oneof![Just(2u64), Just(3), Just(5), Just(7)],
        a in 0u32..3,
        pick in 0usize..1000,
        r in -2i32..5,
        v in 1i64..500,
    ) {
        prop_assume!(v % p as i64 != 0);
        let chars = enumerate_chars(p, a, false).unwrap();
        let mu = &chars[pick % chars.len()];
        let direct = gauss_sum(v, r, mu).unwrap().value;
        let closed = gauss_sum_closed(v, r, mu).unwrap();
        prop_assert!((direct - closed).norm() < 1e-9);
    }
}
