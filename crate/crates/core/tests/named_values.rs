use cohodim::cdtype::{BasisKind, CdType};
use cohodim::dimension::dim;
use cohodim::groups::GroupExpr;
use cohodim::prime_base::{ExtInt, ExtNat, Prime, PrimeFn, PrimeSet};

fn p(v: u64) -> Prime {
    Prime::new(v).unwrap()
}

/// `({p}, {p}; d)` with `d(p) = high` and `low` elsewhere.
fn singular(prime: Prime, high: i64, low: i64) -> CdType {
    let d = PrimeFn::new(ExtInt::Fin(low), ExtInt::Fin(low), [(prime, ExtInt::Fin(high))]);
    CdType::triple(PrimeSet::singleton(prime), PrimeSet::singleton(prime), d).unwrap()
}

fn n(v: u64) -> ExtNat {
    ExtNat::Fin(v)
}

#[test]
fn pontryagin_surface_dimensions() {
    for (pv, qv) in [(2, 3), (3, 2), (5, 7)] {
        let (pp, q) = (p(pv), p(qv));
        let pi = singular(pp, 2, 1);
        let ones = [
            GroupExpr::ZpInf(pp),
            GroupExpr::Q,
            GroupExpr::Zp(q),
            GroupExpr::ZpInf(q),
            GroupExpr::Zloc(PrimeSet::singleton(q)),
        ];
        for g in &ones {
            assert_eq!(dim(&pi, g).unwrap(), n(1), "{g}");
        }
        assert_eq!(dim(&pi, &GroupExpr::Zp(pp)).unwrap(), n(2));
        assert_eq!(dim(&pi, &GroupExpr::Zloc(PrimeSet::singleton(pp))).unwrap(), n(2));
        assert_eq!(dim(&pi, &GroupExpr::Z).unwrap(), n(2));
    }
}

#[test]
fn products_of_pontryagin_and_cylinder_types() {
    let (two, three) = (p(2), p(3));
    assert_eq!(singular(two, 2, 1).sum(&singular(three, 2, 1)).unwrap().norm(), n(3));
    assert_eq!(singular(two, 4, 3).sum(&singular(three, 4, 3)).unwrap().norm(), n(7));
    let sq = singular(two, 2, 1).sum(&singular(two, 2, 1)).unwrap();
    assert_eq!(sq.norm(), n(4));
    assert_eq!(dim(&sq, &GroupExpr::ZpInf(two)).unwrap(), n(3));
}

#[test]
fn fundamental_type_rows() {
    let q = p(7);
    for pv in [2, 3, 5] {
        let pp = p(pv);
        for k in 2..=5u64 {
            let cols = |kind: BasisKind| -> Vec<i64> {
                let phi = CdType::phi_basis(kind, k).unwrap().to_phi();
                [
                    BasisKind::Zloc(pp),
                    BasisKind::Zp(pp),
                    BasisKind::ZpInf(pp),
                    BasisKind::Q,
                    BasisKind::Zloc(q),
                    BasisKind::Zp(q),
                    BasisKind::ZpInf(q),
                ]
                .into_iter()
                .map(|c| phi.get(c).finite().unwrap())
                .collect()
            };
            let (n, m) = (k as i64, k as i64 - 1);
            assert_eq!(cols(BasisKind::Q), vec![n, 1, 1, n, n, 1, 1]);
            assert_eq!(cols(BasisKind::Zloc(pp)), vec![n, n, n, n, n, 1, 1]);
            assert_eq!(cols(BasisKind::Zp(pp)), vec![n, n, m, 1, 1, 1, 1]);
            assert_eq!(cols(BasisKind::ZpInf(pp)), vec![n, m, m, 1, 1, 1, 1]);
        }
    }
}
