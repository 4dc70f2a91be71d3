mod common;

use gammasphere::arith::{binom_u, rat};
use gammasphere::complex::{Face, SimplicialComplex};
use gammasphere::interval::Verdict;
use gammasphere::link::*;
use gammasphere::Int;
use rand::seq::SliceRandom;

#[test]
fn edge_sums_exact_on_cross_polytopes() {
    for d in 2..=7u32 {
        let k = SimplicialComplex::cross_polytope_boundary(d).unwrap();
        let data = LinkData::compute(&k).unwrap();
        for idx in 0..=d as usize + 1 {
            let e = data.edge_sum(idx).unwrap();
            assert!(e.equal(), "d={d} k={idx}: {} vs {}", e.lhs, e.rhs);
            assert_eq!(Int::from(2) * data.c_direct(idx), two_c_closed(&data.h, idx));
        }
    }
}

#[test]
fn vertex_sums_exact_on_both_families() {
    for d in 2..=7u32 {
        for k in [
            SimplicialComplex::cross_polytope_boundary(d).unwrap(),
            SimplicialComplex::simplex_boundary(d).unwrap(),
        ] {
            let data = LinkData::compute(&k).unwrap();
            for i in 0..=d as usize {
                assert!(data.vertex_sum(i).equal(), "d={d} i={i}");
            }
        }
    }
}

#[test]
fn simplex_boundary_rejects_edge_sums() {
    let k = SimplicialComplex::simplex_boundary(3).unwrap();
    assert!(edge_local_global_check(&k, 1).is_err());
}

#[test]
fn contraction_law_on_every_cross_edge() {
    for d in 2..=6u32 {
        let k = SimplicialComplex::cross_polytope_boundary(d).unwrap();
        for e in k.edges() {
            assert!(contraction_h_check(&k, &e).unwrap().equal(), "d={d} e={e:?}");
        }
    }
}

#[test]
fn contraction_law_on_random_subdivisions() {
    let mut r = common::rng(13);
    let base = SimplicialComplex::cross_polytope_boundary(3).unwrap();
    for _ in 0..20 {
        let mut order: Vec<Face> = base.edges();
        order.shuffle(&mut r);
        let k = base.tchebyshev_subdivision(Some(&order)).unwrap();
        let report = k.check_link_condition().unwrap();
        let mut checked = 0;
        for (e, ok) in &report.edges {
            if *ok {
                assert!(contraction_h_check(&k, e).unwrap().equal());
                checked += 1;
            } else {
                assert!(contraction_h_check(&k, e).is_err());
            }
        }
        assert!(checked > 0);
    }
}

#[test]
fn alpha_beta_extremes_at_d50() {
    // h = binomial coefficients is the smallest h allowed by γ ≥ 0.
    let d = 50i64;
    let h: Vec<Int> = (0..=d).map(|i| binom_u(d, i)).collect();
    for k in 1..(d as usize / 2) {
        let (a, b) = alpha_beta(&h, k);
        let (a, b) = (a.unwrap(), b.unwrap());
        assert!(a <= b);
        assert!(a <= rat(30, 100), "k={k} alpha={a}");
        assert!(b >= rat(13, 1), "k={k} beta={b}");
    }
}

#[test]
fn interlacing_alpha_below_beta_on_spheres() {
    for d in 3..=7u32 {
        let k = SimplicialComplex::cross_polytope_boundary(d).unwrap();
        let rep = interlacing_bounds(&k).unwrap();
        assert!(rep.alpha_le_beta());
        assert!(rep.all_hold(), "d={d}");
    }
}

#[test]
fn sandwich_verdicts_are_three_valued() {
    let k = SimplicialComplex::cross_polytope_boundary(6).unwrap();
    let s = global_sandwich_check(&k, 2).unwrap();
    assert!([Verdict::True, Verdict::False, Verdict::Unknown].contains(&s.lower_ok));
    assert!(s.all_true());
}
