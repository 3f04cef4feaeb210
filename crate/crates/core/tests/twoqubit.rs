mod common;

use std::f64::consts::{FRAC_PI_2, PI};

use common::*;
use geoloop::*;
use proptest::prelude::*;

fn m4(u: &CMatrix4<f64>) -> M4 {
    let mut out = [[c(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = u[(i, j)];
        }
    }
    out
}

fn max_dev4(a: &M4, b: &M4) -> f64 {
    a.iter().flatten().zip(b.iter().flatten()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn block(u: &Gate4, b_down: bool) -> M2 {
    let o = if b_down { 2 } else { 0 };
    let m = u.matrix();
    [[m[(o, o)], m[(o, o + 1)]], [m[(o + 1, o)], m[(o + 1, o + 1)]]]
}

fn params() -> Nmr {
    NmrParams::new(2.0 * PI * 400.0, 2.0 * PI * 100.0, 0.215)
}

#[test]
fn hamiltonian_diagonal_matches_kronecker_expansion() {
    let p = NmrParams::new(1.3, -0.4, 0.7);
    // the oracle builds σz^a ⊗ I^b in standard Kronecker order (a slowest),
    // then permutes to the a-fastest basis used by the crate
    let (z, id) = (sigma_z(), id2());
    let mut lab = [[c(0.0, 0.0); 4]; 4];
    for (m, k) in [(kron(&z, &id), p.omega_a), (kron(&id, &z), p.omega_b), (kron(&z, &z), PI * p.coupling_j)] {
        for i in 0..4 {
            for j in 0..4 {
                lab[i][j] += m[i][j] * (k / 2.0);
            }
        }
    }
    // standard index a*2 + b  ->  crate index a + 2b
    let perm = [0, 2, 1, 3];
    let mut want = [[c(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            want[perm[i]][perm[j]] = lab[i][j];
        }
    }
    let h = nmr_hamiltonian(&p);
    assert!(max_dev4(&m4(&h), &want) < 1e-15);
    let pj = PI * p.coupling_j;
    let diag = [
        (p.omega_a + p.omega_b + pj) / 2.0,
        (-p.omega_a + p.omega_b - pj) / 2.0,
        (p.omega_a - p.omega_b - pj) / 2.0,
        (-p.omega_a - p.omega_b + pj) / 2.0,
    ];
    for k in 0..4 {
        assert!((h[(k, k)] - c(diag[k], 0.0)).norm() < 1e-15);
    }
    assert!(h.is_hermitian(0.0));
    let za = CMatrix4::from_diagonal([c(1.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)]);
    let zb = CMatrix4::from_diagonal([c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(-1.0, 0.0)]);
    assert_eq!(h.commutator(&za).max_abs(), 0.0);
    assert_eq!(h.commutator(&zb).max_abs(), 0.0);
}

#[test]
fn step_states_of_the_conditional_sequence() {
    let s = two_qubit_schedule(1.7, &params(), Mode::Natural).unwrap();
    let up_eff = s.effective_schedule(BState::Up).unwrap();
    let after_first = Sched::new(vec![up_eff.segments[0]], "").propagate(&State::up());
    let r = 1.0 / 2f64.sqrt();
    assert!((after_first.amp_up() - c(r, 0.0)).norm() < 1e-12);
    assert!((after_first.amp_down() - c(r, 0.0)).norm() < 1e-12);
    let end = up_eff.propagate(&State::up());
    assert!((end.amp_up() - c(0.0, -1.0)).norm() < 1e-12);
    assert!(end.amp_down().norm() < 1e-12);
}

#[test]
fn natural_mode_reproduces_truth_table() {
    let u = two_qubit_unitary(&two_qubit_schedule(0.9, &params(), Mode::Natural).unwrap()).unwrap();
    let r = compare_gates(&u, &u2_gate::<f64>()).unwrap();
    assert!(r.max_entry_deviation <= 1e-12);
    let basis = |k: usize| {
        let mut v = [c(0.0, 0.0); 4];
        v[k] = c(1.0, 0.0);
        v
    };
    // |↑↑⟩ → −i|↑↑⟩, |↓↑⟩ → i|↓↑⟩, |↑↓⟩ → |↓↓⟩, |↓↓⟩ → −|↑↓⟩
    let expected = [(0, c(0.0, -1.0)), (1, c(0.0, 1.0)), (3, c(1.0, 0.0)), (2, c(-1.0, 0.0))];
    for (k, (target, amp)) in expected.into_iter().enumerate() {
        let out = u.apply(&basis(k));
        for (i, z) in out.iter().enumerate() {
            let want = if i == target { amp } else { c(0.0, 0.0) };
            assert!((z - want).norm() < 1e-12, "column {k} row {i}");
        }
    }
}

#[test]
fn line_selective_mode_is_conditional_phase_gate() {
    let u = two_qubit_unitary(&two_qubit_schedule(2.5, &params(), Mode::LineSelective).unwrap()).unwrap();
    assert!(compare_gates(&u, &u2_prime_gate::<f64>()).unwrap().max_entry_deviation <= 1e-12);
    assert!(u.matrix().unitarity_defect() <= 1e-12);
}

#[test]
fn controlled_u_examples() {
    let minus_i = c(0.0, -1.0);
    let u0 = controlled_u(0.0, 1.0, 1.0).unwrap();
    let want0 = CMatrix4::from_diagonal([minus_i, c(0.0, 1.0), c(1.0, 0.0), c(1.0, 0.0)]);
    assert!((u0.into_matrix() - want0).max_abs() <= 1e-12);

    let u = controlled_u(FRAC_PI_2, 1.0, 1.0).unwrap();
    assert!(max_dev2(&block(&u, false), &scale2(&sigma_x(), minus_i)) <= 1e-12);
    assert!(max_dev2(&block(&u, true), &id2()) <= 1e-12);
    assert!(u[(0, 2)].norm() + u[(3, 1)].norm() <= 1e-12);

    for k in 0..=20 {
        let chi = FRAC_PI_2 * k as f64 / 20.0;
        let u = controlled_u(chi, 0.7, 1.9).unwrap();
        // oracle: block assembly of the closed-form 2×2 gate
        let mut want = [[c(0.0, 0.0); 4]; 4];
        let uc = u_chi_entries(chi);
        for i in 0..2 {
            for j in 0..2 {
                want[i][j] = uc[i][j];
            }
            want[i + 2][i + 2] = c(1.0, 0.0);
        }
        assert!(max_dev4(&m4(u.matrix()), &want) <= 1e-12);
    }
}

#[test]
fn effective_field_cases() {
    let p = params().with_conditional_accessory();
    let up = effective_field_a(&p, BState::Up).unwrap();
    // H_a = (c/2)σz = πJ σz
    assert!((up / 2.0 - PI * p.coupling_j).abs() < 1e-12);
    assert!(effective_field_a(&p, BState::Down).unwrap().abs() < 1e-12);
}

#[test]
fn b_up_cycle_is_purely_geometric() {
    let s = two_qubit_schedule(1.1, &params(), Mode::Natural).unwrap();
    let eff = s.effective_schedule(BState::Up).unwrap();
    let d = geometric_phase(&eff, &State::up()).unwrap();
    assert!(dynamical_phase(&eff, &State::up()).abs() <= 1e-12);
    assert!((d.total + FRAC_PI_2).abs() <= 1e-12);
    assert!((d.geometric + FRAC_PI_2).abs() <= 1e-12);
}

#[test]
fn u2_is_entangling() {
    let u = two_qubit_unitary(&two_qubit_schedule(1.0, &params(), Mode::Natural).unwrap()).unwrap();
    assert!(geoloop::twoqubit::operator_schmidt_rank(u.matrix(), 1e-9) > 1);
}

fn commutes_with_z_on_b(u: &Gate4) -> f64 {
    let zb = CMatrix4::from_diagonal([c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(-1.0, 0.0)]);
    u.matrix().commutator(&zb).max_abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn block_structure_and_conditional_reduction(
        omega in 0.1f64..10.0,
        j in 0.01f64..5.0,
        wa in -50.0f64..50.0,
        acc_shift in -3.0f64..3.0,
        natural in prop::bool::ANY,
    ) {
        let mode = if natural { Mode::Natural } else { Mode::LineSelective };
        let p = NmrParams::new(wa, 1.0, j).with_accessory(wa - PI * j + acc_shift);
        let s = two_qubit_schedule(omega, &p, mode).unwrap();
        let u = two_qubit_unitary(&s).unwrap();
        prop_assert!(commutes_with_z_on_b(&u) <= 1e-12);
        prop_assert!(u.matrix().unitarity_defect() <= 1e-12);

        // oracle: series exponentials of the three step Hamiltonians per block
        let y = series_propagator([0.0, 1.0, 0.0], omega, PI / (2.0 * omega));
        let tau2 = 1.0 / (2.0 * j);
        let c_up = effective_field_a(&p, BState::Up).unwrap();
        let c_down = effective_field_a(&p, BState::Down).unwrap();
        let coup = |cz: f64| expm2(&scale2(&sigma_z(), c(0.0, -cz / 2.0 * tau2)));
        let up = mul2(&y, &mul2(&coup(c_up), &y));
        prop_assert!(max_dev2(&block(&u, false), &up) <= 1e-12);
        let down = if natural { mul2(&y, &mul2(&coup(c_down), &y)) } else { id2() };
        prop_assert!(max_dev2(&block(&u, true), &down) <= 1e-12);
    }

    #[test]
    fn controlled_u_commutes_with_b(chi in 0.0f64..=FRAC_PI_2, w in 0.1f64..5.0, w2 in 0.1f64..5.0) {
        let u = controlled_u(chi, w, w2).unwrap();
        prop_assert!(commutes_with_z_on_b(&u) <= 1e-12);
        prop_assert!(compare_gates(&u, &controlled_u_gate(chi)).unwrap().max_entry_deviation <= 1e-12);
    }
}
