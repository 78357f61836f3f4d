use cohodim::cdtype::{CdType, ExtCdType};
use cohodim::prime_base::{ExtInt, Prime, PrimeFn, PrimeSet};
use proptest::prelude::*;

const PRIMES: [u64; 4] = [2, 3, 5, 7];

/// Per listed prime: (in S, in D, value); plus d(0) and a default profile.
fn cdtype() -> impl Strategy<Value = CdType> {
    let local = (any::<bool>(), any::<bool>(), 1i64..=5);
    (1i64..=5, local.clone(), proptest::collection::vec(local, PRIMES.len())).prop_map(|(d0, dflt, locs)| {
        let pick = |(s, d, v): (bool, bool, i64)| -> (bool, bool, i64) {
            // D ⊆ S, value pinned off S, value ≥ 2 on D
            if !s {
                (false, false, d0)
            } else if d {
                (true, true, v.max(2))
            } else {
                (true, false, v)
            }
        };
        let dflt = pick(dflt);
        let locs: Vec<(Prime, (bool, bool, i64))> =
            PRIMES.iter().zip(locs).map(|(&p, l)| (Prime::new(p).unwrap(), pick(l))).collect();
        let set = |f: fn(&(bool, bool, i64)) -> bool| {
            let flips = locs.iter().filter(|(_, l)| f(l) != f(&dflt)).map(|(p, _)| *p);
            if f(&dflt) {
                PrimeSet::cofinite(flips)
            } else {
                PrimeSet::finite(flips)
            }
        };
        let d = PrimeFn::new(ExtInt::Fin(d0), ExtInt::Fin(dflt.2), locs.iter().map(|(p, l)| (*p, ExtInt::Fin(l.2))));
        CdType::triple(set(|l| l.0), set(|l| l.1), d).unwrap()
    })
}

proptest! {
    #[test]
    fn phi_round_trip(f in cdtype()) {
        let phi = f.to_phi();
        prop_assert!(phi.validate().is_empty());
        prop_assert_eq!(CdType::from_phi(&phi).unwrap(), f);
    }

    #[test]
    fn sum_is_commutative_and_associative(a in cdtype(), b in cdtype(), c in cdtype()) {
        prop_assert_eq!(a.sum(&b).unwrap(), b.sum(&a).unwrap());
        prop_assert_eq!(a.sum(&b).unwrap().sum(&c).unwrap(), a.sum(&b.sum(&c).unwrap()).unwrap());
    }

    #[test]
    fn wedge_is_least_upper_bound(a in cdtype(), b in cdtype()) {
        let w = a.wedge(&b).unwrap();
        prop_assert!(a.leq(&w) && b.leq(&w));
        prop_assert_eq!(a.wedge(&a).unwrap(), a.clone());
        prop_assert_eq!(w.norm(), a.norm().max(b.norm()));
    }

    #[test]
    fn json_round_trip(f in cdtype()) {
        let text = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(serde_json::from_str::<CdType>(&text).unwrap(), f.clone());
        let ext: ExtCdType = serde_json::from_str(&serde_json::to_string(&f.as_ext()).unwrap()).unwrap();
        prop_assert_eq!(ext, f.into_ext());
    }

    #[test]
    fn decomposition_recomposes(f in cdtype()) {
        prop_assert_eq!(f.decompose().unwrap().recompose().unwrap(), f);
    }

    #[test]
    fn set_text_round_trip(listed in proptest::collection::btree_set(0usize..PRIMES.len(), 0..4), co in any::<bool>()) {
        let ps = listed.into_iter().map(|i| Prime::new(PRIMES[i]).unwrap());
        let set = if co { PrimeSet::cofinite(ps) } else { PrimeSet::finite(ps) };
        prop_assert_eq!(set.to_string().parse::<PrimeSet>().unwrap(), set);
    }
}
