use num_bigint::BigUint;
use num_traits::{One, Pow};

use hyperramsey::bounds::{
    bound, tow, tow_identity, tow_magnitude, up_arrow, up_arrow_magnitude, Family, Magnitude, Relation, TowBindings,
    DEFAULT_BIT_BUDGET,
};

const BUDGET: u64 = 4096;

#[test]
fn low_arrows_are_products_and_powers() {
    for c in 2..=5u64 {
        for k in 0..=20u64 {
            assert_eq!(up_arrow(c, 0, k, BUDGET).unwrap(), BigUint::from(c * k));
            assert_eq!(up_arrow(c, 1, k, BUDGET).unwrap(), BigUint::from(c).pow(k as u32));
        }
    }
}

#[test]
fn tow_unfolds_one_level_at_a_time() {
    let lists: [&[u64]; 6] = [&[3], &[1, 2], &[2, 1, 1], &[1, 1, 2], &[3, 2], &[1, 2, 1]];
    for c in 2..=3u64 {
        for args in lists {
            let whole = tow(c, args, DEFAULT_BIT_BUDGET).unwrap();
            let want = if args.len() == 1 {
                BigUint::from(c).pow(args[0] as u32)
            } else {
                let rest = tow(c, &args[1..], DEFAULT_BIT_BUDGET).unwrap();
                let e: u32 = (rest * args[0]).try_into().unwrap();
                BigUint::from(c).pow(e)
            };
            assert_eq!(whole, want, "TOW_{c}{args:?}");
        }
    }
}

#[test]
fn three_uniform_ramsey_bound_is_a_tower_of_ones() {
    for k in 3..=3u64 {
        let b = bound(Family::Ramsey, 3, k, 2, DEFAULT_BIT_BUDGET).unwrap();
        let ones = vec![1u64; 2 * k as usize - 1];
        let t = tow(2, &ones, DEFAULT_BIT_BUDGET).unwrap();
        assert_eq!(b.value.as_ref(), Some(&t));
        assert_eq!(up_arrow(2, 2, 2 * k - 1, DEFAULT_BIT_BUDGET).unwrap(), t);
    }
    // beyond exact reach the sizes still coincide
    for k in 4..=12u64 {
        let ones = vec![Magnitude::ONE; 2 * k as usize - 1];
        let via_tow = tow_magnitude(2, &ones);
        let via_arrow = up_arrow_magnitude(2, 2, Magnitude::from_u64(2 * k - 1));
        assert_eq!(via_tow, via_arrow, "k={k}");
        assert_eq!(bound(Family::Ramsey, 3, k, 2, BUDGET).unwrap().magnitude, via_arrow);
    }
}

#[test]
fn identities_on_small_bindings() {
    for ones in 1..=5 {
        let r = tow_identity(7, &TowBindings { ones, ..Default::default() }, DEFAULT_BIT_BUDGET).unwrap();
        assert_eq!(r.relation, Relation::Equal);
        assert!(r.holds && r.lhs.is_one());
    }
    for part in [2u8, 5] {
        for args in [vec![1u64], vec![2, 3], vec![1, 1, 2]] {
            let bind = TowBindings { args, b: 3, ..Default::default() };
            let r = tow_identity(part, &bind, DEFAULT_BIT_BUDGET).unwrap();
            assert_eq!(r.relation, Relation::Equal);
            assert_eq!(r.lhs, r.rhs, "{} vs {}", r.lhs_text, r.rhs_text);
        }
    }
}

#[test]
fn families_grow_with_k() {
    for family in Family::ALL {
        for a in 1..=5u32 {
            for c in 2..=3u8 {
                let mut prev: Option<BigUint> = None;
                for k in a as u64..=a as u64 + 6 {
                    let Ok(b) = bound(family, a, k, c, BUDGET) else { continue };
                    let Some(v) = b.value else { break };
                    if let Some(p) = &prev {
                        assert!(&v >= p, "{family} a={a} c={c} k={k}: {v} < {p}");
                    }
                    prev = Some(v);
                }
            }
        }
    }
}
