//! Acceptance gate: the ten headline checks, one per test, each printing a
//! single PASS line. Every comparison is exact ring equality; nothing here
//! is approximate.

mod common;

use ceresa_core::chains::{
    boundary, integrate, is_pointwise_degenerate, reduce_mod_lattice,
    tropical_flux, verify_verdict, zharkov_chain_k4,
};
use ceresa_core::exterior::{complement, inv_count, subsets};
use ceresa_core::intmat::{snf, IntMatrix};
use ceresa_core::lift::{
    integrate_x, omega_power, pairing_check, phi_hat, psi_hat, symplectic_form,
    symplectic_period_group, wedge_x,
};
use ceresa_core::torus::{determinantal_form, evaluate_form, period_group, period_oracle};
use ceresa_core::{
    ConstantFormX, ExteriorElement, FluxVerdict, FramedChain, PeriodGroup, Scalar,
    TropicalTorus,
};
use common::*;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

fn k4_setup() -> (ceresa_core::MetricGraph, ceresa_core::CycleBasis, TropicalTorus) {
    let g = k4_symbolic();
    let basis = g.cycle_basis().unwrap();
    let torus = TropicalTorus::new(g.polarisation_matrix(&basis));
    (g, basis, torus)
}

#[test]
fn criterion_01_k4_polarisation_matrix_is_exact() {
    let (_, _, torus) = k4_setup();
    let v = |i| Scalar::var(i, 6);
    let (a, b, c, d, e, f) = (v(0), v(1), v(2), v(3), v(4), v(5));
    let expect = vec![
        vec![&(&a + &e) + &f, (-&f).clone(), (-&e).clone()],
        vec![(-&f).clone(), &(&b + &d) + &f, (-&d).clone()],
        vec![(-&e).clone(), (-&d).clone(), &(&c + &d) + &e],
    ];
    assert_eq!(torus.q, expect, "K4 polarisation matrix");
    println!("PASS criterion 1: K4 polarisation matrix matches entry by entry");
}

#[test]
fn criterion_02_k4_period_polynomials_as_a_set() {
    let (_, _, torus) = k4_setup();
    let omega = determinantal_form(3, 2, 1).unwrap();
    let group = period_group(&omega, &torus);
    let v = |i| Scalar::var(i, 6);
    let m = |i: usize, jj: usize| &v(i) * &v(jj);
    let sum = |ps: &[(usize, usize)]| {
        ps.iter().fold(Scalar::zero(6), |acc, &(i, jj)| &acc + &m(i, jj))
    };
    let expect = PeriodGroup::new(vec![
        sum(&[(0, 1), (0, 3), (0, 5), (1, 4), (3, 4), (4, 5), (1, 5), (3, 5)]),
        sum(&[(0, 3), (4, 3), (3, 5), (4, 5)]),
        sum(&[(0, 2), (0, 3), (0, 4), (4, 2), (4, 3), (2, 5), (3, 5), (4, 5)]),
        sum(&[(3, 5), (1, 4), (3, 4), (4, 5)]),
        sum(&[(1, 2), (1, 3), (1, 4), (2, 3), (3, 4), (2, 5), (3, 5), (4, 5)]),
        sum(&[(2, 5), (3, 5), (4, 5), (3, 4)]),
    ]);
    assert_eq!(expect.generators.len(), 6, "six distinct period polynomials");
    assert_eq!(group, expect, "period polynomials of the K4 Jacobian");
    println!("PASS criterion 2: the six K4 period polynomials come out exactly");
}

#[test]
fn criterion_03_symbolic_k4_flux_is_certified_infinite_order() {
    let (g, basis, torus) = k4_setup();
    let gamma = zharkov_chain_k4(&g).unwrap();

    // boundary identity: the chain bounds C - C^- modulo the lattice
    let (z_plus, _) = g.abel_jacobi_cycle(&basis).unwrap();
    let (from_second, _) = g.abel_jacobi_cycle_from(&basis, g.basepoint2.unwrap()).unwrap();
    let z_minus = from_second.involution();
    let residue = reduce_mod_lattice(
        &boundary(&gamma).unwrap().sub(&z_plus.sub(&z_minus)),
    );
    assert!(residue.cells.is_empty(), "boundary identity modulo the period lattice");

    // four of the five cells are pointwise degenerate and integrate to zero
    let omega = determinantal_form(3, 2, 1).unwrap();
    let degeneracies: Vec<bool> = gamma
        .cells
        .iter()
        .map(|c| is_pointwise_degenerate(c).unwrap())
        .collect();
    assert_eq!(degeneracies, vec![true, true, false, true, true]);
    for (i, cell) in gamma.cells.iter().enumerate() {
        if degeneracies[i] {
            let single = FramedChain::new(3, 2, 1, vec![cell.clone()], gamma.lattice.clone());
            assert!(integrate(&omega, &single).is_zero(), "degenerate cell integrates to zero");
        }
    }

    // the flux and its classification
    let (value, verdict) = tropical_flux(&z_plus, &z_minus, &gamma, &torus, 2, 1).unwrap();
    let a = Scalar::var(0, 6);
    let d = Scalar::var(3, 6);
    assert_eq!(value, -&(&a * &d), "flux equals -ad");
    assert!(matches!(verdict, FluxVerdict::InfiniteOrder { .. }), "infinite order verdict");
    let periods = period_group(&omega, &torus);
    assert!(verify_verdict(&value, &periods, &verdict), "certificate re-verifies");
    println!("PASS criterion 3: symbolic K4 flux is -ad and certified of infinite order");
}

#[test]
fn criterion_04_equilateral_specialisation_is_torsion_of_order_four() {
    let g = k4_torsion();
    let basis = g.cycle_basis().unwrap();
    let torus = TropicalTorus::new(g.polarisation_matrix(&basis));
    let (z_plus, _) = g.abel_jacobi_cycle(&basis).unwrap();
    let (from_second, _) = g.abel_jacobi_cycle_from(&basis, g.basepoint2.unwrap()).unwrap();
    let z_minus = from_second.involution();
    let gamma = zharkov_chain_k4(&g).unwrap();
    let (value, verdict) = tropical_flux(&z_plus, &z_minus, &gamma, &torus, 2, 1).unwrap();
    let s = Scalar::var(2, 3);
    assert_eq!(value, -&(&s * &s), "flux specialises to -s^2");
    match &verdict {
        FluxVerdict::Torsion { order, .. } => assert_eq!(order, &BigInt::from(4)),
        other => panic!("expected torsion, got {other:?}"),
    }
    let omega = determinantal_form(3, 2, 1).unwrap();
    let periods = period_group(&omega, &torus);
    assert!(verify_verdict(&value, &periods, &verdict), "torsion witness re-verifies");
    println!("PASS criterion 4: a = d = e = f specialisation is torsion of order exactly 4");
}

#[test]
fn criterion_05_period_group_equals_the_integration_oracle() {
    let mut r = rng(0xacce);
    for _ in 0..50 {
        let n = r.gen_range(1..=4usize);
        let q = random_symmetric_q(&mut r, n, 4);
        let torus = TropicalTorus::new(q);
        for j in 0..=n {
            for k in 0..=(n - j) {
                let omega = determinantal_form(n, j, k).unwrap();
                assert_eq!(
                    period_group(&omega, &torus),
                    period_oracle(&omega, &torus),
                    "periods against the chain-level oracle (n={n}, j={j}, k={k})"
                );
            }
        }
    }
    println!("PASS criterion 5: determinantal periods match the integration oracle on 50 random tori");
}

#[test]
fn criterion_06_forms_vanish_on_dependent_tuples() {
    let mut r = rng(0x6de9);
    for _ in 0..500 {
        let n = r.gen_range(1..=5usize);
        let total = r.gen_range(1..=n);
        let k = r.gen_range(0..=total);
        let j = total - k;
        let mut vecs: Vec<Vec<Scalar>> =
            (0..total - 1).map(|_| random_vector(&mut r, n, 3)).collect();
        let mut last = zero_vec(n);
        for v in &vecs {
            let c = r.gen_range(-2..=2i64);
            for (li, vi) in last.iter_mut().zip(v) {
                *li = &*li + &vi.scale(&ratio(c, 1));
            }
        }
        vecs.push(last);
        let (coframe_vecs, eval_vecs) =
            if j > 0 { (&vecs[..k], &vecs[k..]) } else { (&vecs[..], &vecs[..0]) };
        let mut coframe = ExteriorElement::basis(n, &[]);
        for w in coframe_vecs {
            coframe = coframe.wedge(&ExteriorElement::from_vector(n, w));
        }
        let omega = determinantal_form(n, j, k).unwrap();
        assert!(
            evaluate_form(&omega, &coframe, eval_vecs).is_zero(),
            "dependent tuples evaluate to zero"
        );
    }
    println!("PASS criterion 6: 500 dependent tuples all evaluate to zero");
}

#[test]
fn criterion_07_symplectic_lift_respects_the_pairing() {
    // the flagship example
    let torus3 = TropicalTorus::new(identity_lattice(3));
    let omega21 = determinantal_form(3, 2, 1).unwrap();
    let half = omega_power(&torus3, 2).scale(&sc(1, 2));
    assert_eq!(psi_hat(&omega21), half, "the (2,1) form lifts to omega^2/2");

    // the closed form of the lift, term by term, in every low rank
    for n in 1..=4usize {
        let torus = TropicalTorus::new(identity_lattice(n));
        for j in 0..=n {
            for k in 0..=(n - j) {
                let omega = determinantal_form(n, j, k).unwrap();
                let mut fact = 1i64;
                for i in 2..=j as i64 {
                    fact *= i;
                }
                let sigma = omega_power(&torus, j).scale(&sc(1, fact));
                let mut rhs = ConstantFormX::zero(n, j + (n - k));
                for i_set in subsets(n, j + k) {
                    let comp = complement(&i_set, n);
                    let vol_idx: Vec<usize> = comp.iter().map(|c| c + n).collect();
                    let vol =
                        ConstantFormX { n, el: ExteriorElement::basis(2 * n, &vol_idx) };
                    let exponent =
                        inv_count(&i_set, &comp) + k + j * (j.saturating_sub(1)) / 2;
                    let sign = if exponent % 2 == 0 { 1 } else { -1 };
                    rhs = rhs.add(&wedge_x(&vol, &sigma).scale(&si(sign)));
                }
                assert_eq!(psi_hat(&omega), rhs, "closed form at (n,j,k)=({n},{j},{k})");
            }
        }
    }

    // the pairing on the Ceresa chain, with the same value on both sides
    let (g, _, torus) = k4_setup();
    let gamma = zharkov_chain_k4(&g).unwrap();
    assert!(pairing_check(&gamma, &omega21, &torus).unwrap());
    let a = Scalar::var(0, 6);
    let d = Scalar::var(3, 6);
    let lifted_value = integrate_x(&psi_hat(&omega21), &phi_hat(&gamma, &torus).unwrap());
    assert_eq!(lifted_value, -&(&a * &d), "lifted integral is also -ad");
    assert_eq!(integrate(&omega21, &gamma), lifted_value, "both sides agree");

    // and on random framed chains
    let mut r = rng(0x7a1e);
    let mut done = 0usize;
    while done < 200 {
        let n = r.gen_range(1..=3usize);
        let j = r.gen_range(1..=n.min(2));
        let k = r.gen_range(0..=(n - j));
        let torus = TropicalTorus::new(random_symmetric_q(&mut r, n, 3));
        let cells = r.gen_range(1..=2usize);
        let chain = random_chain(&mut r, &torus, j, k, cells);
        let omega = determinantal_form(n, j, k).unwrap();
        assert!(
            pairing_check(&chain, &omega, &torus).unwrap(),
            "pairing identity on a random chain (n={n}, j={j}, k={k})"
        );
        done += 1;
    }
    println!("PASS criterion 7: the symplectic lift preserves integrals, exactly, on 200 random chains");
}

#[test]
fn criterion_08_symplectic_periods_match_the_tropical_ones() {
    let (_, _, torus) = k4_setup();
    let omega_x = symplectic_form(&torus);
    let group = symplectic_period_group(&omega_x, &torus);
    let mut entries = Vec::new();
    for row in &torus.q {
        for v in row {
            entries.push(v.clone());
        }
    }
    assert_eq!(entries.len(), 9);
    assert_eq!(group, PeriodGroup::new(entries), "omega periods are the matrix entries");

    let half = omega_power(&torus, 2).scale(&sc(1, 2));
    let lifted = symplectic_period_group(&half, &torus);
    let tropical = period_group(&determinantal_form(3, 2, 1).unwrap(), &torus);
    assert!(lifted.same_group(&tropical), "half omega squared has the flux period group");
    println!("PASS criterion 8: symplectic periods match the polarisation and the flux group");
}

#[test]
fn criterion_09_circle_length_is_its_period() {
    let g = loop_graph();
    let basis = g.cycle_basis().unwrap();
    let l = Scalar::var(0, 1);
    let q = g.polarisation_matrix(&basis);
    assert_eq!(q, vec![vec![l.clone()]]);
    let cell = ceresa_core::FramedCell {
        base: vec![Scalar::zero(1)],
        spans: vec![vec![l.clone()]],
        weight: 1,
        framing: ExteriorElement::basis(1, &[]),
        factors: None,
    };
    let chain = FramedChain::new(1, 1, 0, vec![cell], vec![vec![l.clone()]]);
    let omega = determinantal_form(1, 1, 0).unwrap();
    assert_eq!(integrate(&omega, &chain), l, "integrating dx over the circle gives l");
    println!("PASS criterion 9: the length form integrates to the circumference");
}

#[test]
fn criterion_10_structural_invariants_hold_on_seeded_instances() {
    // boundary of boundary
    let mut r = rng(0x10aa);
    let torus = TropicalTorus::new(random_symmetric_q(&mut r, 3, 3));
    for _ in 0..10 {
        let dim = r.gen_range(2..=3usize);
        let k = r.gen_range(0..=2usize);
        let chain = random_chain(&mut r, &torus, dim, k, 3);
        let bb = boundary(&boundary(&chain).unwrap()).unwrap();
        assert!(reduce_mod_lattice(&bb).cells.is_empty(), "dd = 0");
    }

    // subdivision and translation invariance of the integral
    for _ in 0..10 {
        let n = r.gen_range(2..=4usize);
        let j = 2usize;
        let k = r.gen_range(0..=(n - j));
        let omega = determinantal_form(n, j, k).unwrap();
        let cell = random_cell(&mut r, n, j, k);
        let t = TropicalTorus::new(random_symmetric_q(&mut r, n, 3));
        let whole = FramedChain::new(n, j, k, vec![cell.clone()], t.lattice());
        let half: Vec<Scalar> = cell.spans[0].iter().map(|s| s.scale(&ratio(1, 2))).collect();
        let mut first = cell.clone();
        first.spans[0] = half.clone();
        let mut second = cell.clone();
        second.base = cell.base.iter().zip(&half).map(|(b, h)| b + h).collect();
        second.spans[0] = half;
        let split = FramedChain::new(n, j, k, vec![first, second], t.lattice());
        assert_eq!(integrate(&omega, &whole), integrate(&omega, &split), "subdivision");
        let mut moved = cell.clone();
        moved.base = random_vector(&mut r, n, 5);
        let shifted = FramedChain::new(n, j, k, vec![moved], t.lattice());
        assert_eq!(integrate(&omega, &whole), integrate(&omega, &shifted), "translation");
    }

    // Smith normal form postconditions
    for _ in 0..20 {
        let rows = r.gen_range(1..=6usize);
        let cols = r.gen_range(1..=6usize);
        let data: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..cols).map(|_| r.gen_range(-9..=9i64)).collect())
            .collect();
        let m = IntMatrix::from_rows(&data);
        let d = snf(&m);
        assert_eq!(d.u.mul(&m).mul(&d.v), d.s, "U M V = S");
        assert!(d.u.det().abs().is_one() && d.v.det().abs().is_one(), "unimodular transforms");
        let diag = d.diagonal();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative() && !w[1].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!((&w[1] % &w[0]).is_zero(), "divisibility chain");
            }
        }
    }
    println!("PASS criterion 10: boundary, invariance, and normal form properties hold on seeded instances");
}
