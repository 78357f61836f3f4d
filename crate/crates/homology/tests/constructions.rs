use cohodim_homology::builders::*;
use cohodim_homology::homology::{betti_mod_p, induced_simplicial, integral_homology, Variance};
use cohodim_homology::{cohomology, homology, induced, AbGroup, Coefficients, SimplicialComplex, SimplicialMap};

fn zmod(m: u64) -> Coefficients {
    Coefficients::zmod(m).unwrap()
}

fn show(groups: &[AbGroup]) -> Vec<String> {
    groups.iter().map(|g| g.to_string()).collect()
}

#[test]
fn sphere_and_display() {
    let s = SimplicialComplex::simplex_boundary(3).chain_complex();
    assert_eq!(show(&integral_homology(&s)), ["Z", "0", "Z"]);
    let h = homology(&s, Coefficients::Z);
    assert_eq!(h.to_string(), "H_0 = Z\nH_1 = 0\nH_2 = Z");
}

#[test]
fn mp_pair_homology() {
    for p in [2u64, 3, 5] {
        let cyl = mp_cylinder(p as usize).unwrap();
        let rel = cyl.complex.relative_chain_complex(&cyl.source_end).unwrap();
        let hz = integral_homology(&rel);
        assert_eq!(show(&hz), ["0", format!("Z/{p}").as_str(), "0"], "p = {p}");
        assert_eq!(cyl.complex.cells(2).len(), 12 * p as usize);
        assert_eq!(cyl.complex.euler_characteristic(), 0);
        assert_eq!(cyl.boundary_cycle().unwrap().len(), 6 * p as usize);
    }
}

#[test]
fn mp_pair_vanishing_cohomology() {
    for p in [2usize, 3] {
        let cyl = mp_cylinder(p).unwrap();
        let rel = cyl.complex.relative_chain_complex(&cyl.source_end).unwrap();
        assert!(cohomology(&rel, Coefficients::Q).get(2).is_zero());
        assert!(cohomology(&rel, zmod(5)).get(2).is_zero());
        assert_eq!(cohomology(&rel, zmod(p as u64)).get(2).dimension(), Some(1));
    }
}

#[test]
fn boundary_circle_multiplies_by_p() {
    // LES of the pair: H_1(∂M_p) → H_1(M_p) is ×p, so H_1(M_p, ∂M_p) = Z/p
    for p in [2usize, 3] {
        let cyl = mp_cylinder(p).unwrap();
        let r = induced_simplicial(&cyl.source_inclusion, None, 1, Coefficients::Z, Variance::Homology).unwrap();
        assert_eq!(r.source.to_string(), "Z");
        assert_eq!(r.target.to_string(), "Z");
        assert_eq!(r.matrix[0][0].trim_start_matches('-'), p.to_string());
        assert!(r.injective && !r.surjective);
    }
}

#[test]
fn cylinder_of_identity_is_a_circle() {
    let c = SimplicialComplex::polygon(4);
    let id = SimplicialMap::new(c.clone(), c, (0..4).collect()).unwrap();
    let cyl = mapping_cylinder(&id).unwrap();
    assert_eq!(show(&integral_homology(&cyl.complex.chain_complex())), ["Z", "Z", "0"]);
    assert_eq!(show(&integral_homology(&cyl.source_end.chain_complex())), ["Z", "Z"]);
    let r = induced_simplicial(&cyl.retraction, None, 1, Coefficients::Z, Variance::Homology).unwrap();
    assert!(r.iso());
}

#[test]
fn mp_two_euler_characteristic() {
    let cyl = mp_cylinder(2).unwrap();
    let counts: Vec<usize> = (0..3).map(|k| cyl.complex.cells(k).len()).collect();
    assert_eq!(counts[0] as i64 - counts[1] as i64 + counts[2] as i64, 0);
}

#[test]
fn degree_maps() {
    assert!(degree_map_circle(1, 3).is_err());
    assert!(degree_map_circle(2, 2).is_err());
    for p in [2usize, 3] {
        let f = degree_map_circle(p, 3).unwrap();
        let r = induced_simplicial(&f, None, 1, Coefficients::Z, Variance::Homology).unwrap();
        assert_eq!(r.matrix, vec![vec![p.to_string()]]);
        let q = induced_simplicial(&f, None, 1, zmod(p as u64), Variance::Homology).unwrap();
        assert_eq!(q.matrix, vec![vec!["0".to_string()]]);
        let r5 = induced_simplicial(&f, None, 1, zmod(5), Variance::Cohomology).unwrap();
        assert!(r5.iso());
    }
}

#[test]
fn xi_is_an_iso_mod_p() {
    for p in [2usize, 3, 5] {
        let cyl = mp_cylinder(p).unwrap();
        let xi = collapse_to_cone(&cyl).unwrap();
        let pairs = Some((&cyl.source_end, &xi.base));
        let r = induced_simplicial(&xi.map, pairs, 2, zmod(p as u64), Variance::Cohomology).unwrap();
        assert_eq!(r.source.dimension(), Some(1));
        assert_eq!(r.target.dimension(), Some(1));
        assert!(r.iso(), "p = {p}: {r}");
        // over Z the same map is Z → Z/p, onto but not injective
        let z = induced_simplicial(&xi.map, pairs, 2, Coefficients::Z, Variance::Cohomology).unwrap();
        assert!(z.surjective && !z.injective, "{z}");
    }
}

#[test]
fn pontryagin_first_bond() {
    for p in [2usize, 3] {
        let t = pontryagin_stage(p, 1).unwrap();
        let l2 = &t.stages[1];
        assert_eq!(l2.cells(2).len(), 4 * 12 * p);
        let c2 = l2.chain_complex();
        assert!(cohomology(&c2, Coefficients::Q).get(2).is_zero());
        assert!(cohomology(&c2, zmod(5)).get(2).is_zero());
        assert_eq!(cohomology(&c2, zmod(p as u64)).get(2).dimension(), Some(1));
        let r = induced_simplicial(&t.bonds[0], None, 2, zmod(p as u64), Variance::Cohomology).unwrap();
        assert!(r.iso(), "{r}");
        let r = induced_simplicial(&t.collapses[0], None, 2, zmod(p as u64), Variance::Cohomology).unwrap();
        assert!(r.iso(), "{r}");
    }
}

#[test]
fn pontryagin_second_bond() {
    let t = pontryagin_stage(2, 2).unwrap();
    assert_eq!(t.stages[2].cells(2).len(), 2304);
    let r = induced_simplicial(&t.bonds[1], None, 2, zmod(2), Variance::Cohomology).unwrap();
    assert!(r.iso(), "{r}");
    assert!(pontryagin_stage(2, 3).is_err());
    assert!(pontryagin_stage(2, 0).is_err());
}

#[test]
fn edwards_walsh_skeleta() {
    let simplex = SimplicialComplex::simplex(3);
    let ew = ew_skeleton(&simplex, Coefficients::Z, 2).unwrap();
    assert_eq!(ew.chains, SimplicialComplex::simplex_boundary(3).chain_complex());
    for p in [2u64, 3] {
        let ew = ew_skeleton(&simplex, zmod(p), 2).unwrap();
        assert_eq!(show(&integral_homology(&ew.chains)), ["Z", "0", format!("Z/{p}").as_str(), "0"]);
        let r = induced(&ew.inclusion, 2, zmod(p), Variance::Homology).unwrap();
        assert!(r.injective, "{r}");
    }
    assert!(ew_skeleton(&simplex, Coefficients::Z, 1).is_err());
    assert!(ew_skeleton(&simplex, Coefficients::Q, 2).is_err());
}

#[test]
fn moore_spaces() {
    for (m, n) in [(2u64, 1usize), (3, 2), (6, 1)] {
        let c = moore_space(m, n).unwrap();
        let h = cohodim_homology::homology::reduced_integral_homology(&c);
        for (k, g) in h.iter().enumerate() {
            let want = if k == n { format!("Z/{m}") } else { "0".into() };
            assert_eq!(g.to_string(), want, "M(Z/{m},{n}) degree {k}");
        }
    }
    assert!(moore_space(1, 1).is_err());
    assert!(moore_space(2, 0).is_err());
}

#[test]
fn joins() {
    let s0 = zero_sphere();
    assert_eq!(show(&join_homology(&s0, &s0, Coefficients::Z).groups), ["0", "Z"]);
    let m2 = moore_space(2, 1).unwrap();
    let m3 = moore_space(3, 1).unwrap();
    let j = join_homology(&m2, &m3, Coefficients::Z);
    assert!(j.groups.len() >= 5);
    assert!(j.groups.iter().all(AbGroup::is_zero), "{j}");
    for c in [Coefficients::Q, zmod(2), zmod(3), zmod(5)] {
        assert!(join_homology(&m2, &m3, c).groups.iter().all(AbGroup::is_zero));
    }
    let j22 = join_homology(&m2, &m2, Coefficients::Z);
    assert_eq!(j22.get(3).to_string(), "Z/2");
    assert_eq!(j22.get(4).to_string(), "Z/2");
    assert!(j22.get(2).is_zero());
}

#[test]
fn mod_p_betti_agrees_on_stage_two() {
    let t = pontryagin_stage(3, 1).unwrap();
    let c = t.stages[1].chain_complex();
    let via_uct: Vec<usize> = homology(&c, zmod(3)).dimensions().unwrap();
    assert_eq!(via_uct, betti_mod_p(&c, 3));
}

#[test]
fn projective_plane_torsion() {
    let facets = [
        [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 6, 2],
        [2, 3, 5], [3, 4, 6], [4, 5, 2], [5, 6, 3], [6, 2, 4],
    ];
    let rp2 = SimplicialComplex::from_facets(6, facets.iter().map(|f| f.iter().map(|v| v - 1).collect::<Vec<usize>>())).unwrap();
    let c = rp2.chain_complex();
    assert_eq!(show(&integral_homology(&c)), ["Z", "Z/2", "0"]);
    assert_eq!(homology(&c, zmod(2)).dimensions().unwrap(), betti_mod_p(&c, 2));
    assert_eq!(betti_mod_p(&c, 2), [1, 1, 1]);
    assert_eq!(cohomology(&c, zmod(4)).to_string(), "H^0 = Z/4\nH^1 = Z/2\nH^2 = Z/2");
}

#[test]
fn pontryagin_third_stage_p3() {
    let t = pontryagin_stage(3, 2).unwrap();
    assert_eq!(t.stages[2].cells(2).len(), 5184);
    let r = induced_simplicial(&t.bonds[1], None, 2, zmod(3), Variance::Cohomology).unwrap();
    assert!(r.iso(), "{r}");
}
