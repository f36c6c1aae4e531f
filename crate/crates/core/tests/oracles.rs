//! Operation examples checked against independent brute-force oracles.

mod common;

use std::f64::consts::{PI, TAU};

use common::*;
use polyphase::*;
use rand::Rng;

/// Achievable `|x_prev·e^{jπ} + d_i·e^{jφ}|` over a fine sweep of `φ`,
/// filtered to moduli that leave edges `i+1..N` closable with it.
fn swept_modulus_range(x_prev: f64, d: &[f64], i: usize) -> (f64, f64) {
    let rest = &d[i..];
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let steps = 200_000;
    for k in 0..=steps {
        let phi = TAU * k as f64 / steps as f64;
        let x = (Complex::from_polar(x_prev, PI) + Complex::from_polar(d[i - 1], phi)).norm();
        let mut all: Vec<f64> = rest.to_vec();
        all.push(x);
        let longest = all.iter().copied().fold(0.0, f64::max);
        let total: f64 = all.iter().sum();
        if longest <= total - longest + 1e-12 {
            lo = lo.min(x);
            hi = hi.max(x);
        }
    }
    (lo, hi)
}

#[test]
fn modulus_interval_matches_sweep() {
    for (x_prev, d, i) in [
        (3.0, vec![3.0, 2.0, 2.0, 1.0], 2),
        (1.0, vec![1.0, 1.0, 1.0, 1.0, 1.0], 2),
        (2.5, vec![3.0, 2.0, 1.5, 1.0, 0.5], 3),
    ] {
        let e = EdgeList::new(d.clone()).unwrap();
        let (lo, hi) = step_feasible_modulus_interval(x_prev, &e, i).unwrap();
        let (slo, shi) = swept_modulus_range(x_prev, &d, i);
        // Sweep resolution: |dx/dφ| ≤ d_i, step 2π/2e5.
        assert!((lo - slo).abs() < 2e-4, "x_min {lo} vs sweep {slo}");
        assert!((hi - shi).abs() < 2e-4, "x_max {hi} vs sweep {shi}");
    }
}

#[test]
fn frozen_modulus_intervals() {
    // Values confirmed by `modulus_interval_matches_sweep`.
    let e = EdgeList::new(vec![3.0, 2.0, 2.0, 1.0]).unwrap();
    assert_eq!(step_feasible_modulus_interval(3.0, &e, 2).unwrap(), (1.0, 3.0));
    let e = EdgeList::new(vec![1.0; 5]).unwrap();
    assert_eq!(step_feasible_modulus_interval(1.0, &e, 2).unwrap(), (0.0, 2.0));
}

fn remainder_feasible(x: f64, rest: &[f64], slack: f64) -> bool {
    let longest = rest.iter().copied().fold(x, f64::max);
    let total = x + rest.iter().sum::<f64>();
    longest <= total - longest + slack
}

#[test]
fn arc_soundness_on_grid() {
    let mut rng = rng(11);
    for _ in 0..300 {
        let n = rng.gen_range(4..=9);
        let e = random_feasible_edges(&mut rng, n);
        let d = e.as_slice();
        // Walk a random admissible chain, checking every step.
        let mut state = ChainState::initial(&e);
        for i in 2..=n - 2 {
            let arcs = step_phase_arcs(state.x, state.gamma, &e, i).unwrap();
            let tol = 1e-9 * e.total();
            for k in 0..720 {
                let phi = TAU * k as f64 / 720.0;
                let x = advance_chain(state, d[i - 1], phi).x;
                let ok = remainder_feasible(x, &d[i..], tol);
                if arcs.contains(phi, 0.0) {
                    assert!(ok, "inside arc but remainder infeasible");
                } else if !arcs.contains(phi, 1e-6) {
                    assert!(!ok, "outside arc but remainder feasible (x = {x})");
                }
            }
            let arc = arcs.arcs()[rng.gen_range(0..arcs.arcs().len())];
            let phi = arc.at(rng.gen_range(0.0..=1.0));
            state = advance_chain(state, d[i - 1], phi);
        }
    }
}

#[test]
fn frozen_phase_arc_example() {
    let e = EdgeList::new(vec![3.0, 2.0, 2.0, 1.0]).unwrap();
    let arcs = step_phase_arcs(3.0, PI, &e, 2).unwrap();
    let dmax = (1.0_f64 / 3.0).acos();
    let mut ends: Vec<f64> = arcs.arcs().iter().flat_map(|a| [a.lo(), a.hi()]).collect();
    ends.sort_by(f64::total_cmp);
    let expect = [0.0, dmax, TAU - dmax, 0.0];
    let mut expect = expect.to_vec();
    expect.sort_by(f64::total_cmp);
    for (a, b) in ends.iter().zip(&expect) {
        assert!((a - b).abs() < 1e-12, "{ends:?} vs {expect:?}");
    }
}

#[test]
fn chain_matches_direct_summation() {
    let mut rng = rng(5);
    for _ in 0..200 {
        let n = rng.gen_range(2..30);
        let d: Vec<f64> = (0..n).map(|_| rng.gen_range(0.01..2.0)).collect();
        let p: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..TAU)).collect();
        let mut state = ChainState {
            step: 1,
            x: d[0],
            gamma: p[0],
        };
        for i in 1..n {
            state = advance_chain(state, d[i], p[i]);
        }
        let direct = direct_sum(&d, &p);
        assert!((state.partial_sum() - direct).norm() <= 1e-12 * d.iter().sum::<f64>());
    }
}

#[test]
fn triangle_example_closes() {
    let e = EdgeList::new(vec![3.0, 2.0, 2.0, 1.0]).unwrap();
    let sol = triangle_construct(&e).unwrap();
    let a = (1.0_f64 / 3.0).acos();
    assert_eq!(sol.m, 2);
    assert!((sol.alpha1 - a).abs() < 1e-15);
    assert!((sol.alpha2 - a).abs() < 1e-15);
    assert!((sol.alpha1 - 1.230959).abs() < 1e-6);
    assert!(direct_sum(e.as_slice(), &sol.phases).norm() <= 1e-10 * e.total());
}

/// Plain enumeration of `|Q(2,i) - Q(i+1,N)|`.
fn enumerate_splits(d: &[f64]) -> Vec<f64> {
    (2..d.len())
        .map(|i| (d[1..i].iter().sum::<f64>() - d[i..].iter().sum::<f64>()).abs())
        .collect()
}

#[test]
fn split_index_matches_enumeration() {
    assert_eq!(enumerate_splits(&[3.0, 2.0, 2.0, 1.0]), vec![1.0, 3.0]);
    assert_eq!(enumerate_splits(&[4.0, 1.0, 1.0, 1.0, 1.0]), vec![2.0, 0.0, 2.0]);
    let mut rng = rng(8);
    for _ in 0..500 {
        let n = rng.gen_range(3..20);
        let e = random_feasible_edges(&mut rng, n);
        let gaps = enumerate_splits(e.as_slice());
        let min = gaps.iter().copied().fold(f64::INFINITY, f64::min);
        let m = best_split_index(&e).unwrap();
        assert!((gaps[m - 2] - min).abs() <= 1e-12 * e.total());
        assert!((lemma1_gap(&e).unwrap() - min).abs() <= 1e-12 * e.total());
    }
}

/// Minimizes `|e^{jφ} - e^{j·ref}|` over `points` grid samples of the union.
fn grid_minimum(arcs: &PhaseArcSet<f64>, reference: f64, points: usize) -> f64 {
    let per_arc = points / arcs.arcs().len();
    arcs.arcs()
        .iter()
        .flat_map(|a| (0..=per_arc).map(move |k| a.at(k as f64 / per_arc as f64)))
        .map(|phi| chordal_distance(phi, reference))
        .fold(f64::INFINITY, f64::min)
}

#[test]
fn select_phase_matches_grid() {
    let mut rng = rng(21);
    for _ in 0..200 {
        let count = rng.gen_range(1..=2);
        let arcs = PhaseArcSet::new(
            (0..count)
                .map(|_| {
                    let lo = rng.gen_range(-TAU..TAU);
                    PhaseArc::between(lo, lo + rng.gen_range(0.0..PI))
                })
                .collect(),
        );
        let reference = rng.gen_range(0.0..TAU);
        let got = select_phase(&arcs, reference).unwrap();
        assert!(arcs.contains(got, 1e-12));
        let best = grid_minimum(&arcs, reference, 100_000);
        assert!(chordal_distance(got, reference) <= best + 1e-8);
    }
}

#[test]
fn steering_table4_at_minus_30() {
    let g = table4_geometry();
    let a = steering_vector(&g, deg(-30.0));
    for (a, &x) in a.iter().zip(&TABLE4_POSITIONS) {
        assert!((a.norm() - 1.0).abs() < 1e-14);
        assert!((a - Complex::from_polar(1.0, -PI * x)).norm() < 1e-12);
    }
}

#[test]
fn table4_h_is_nonzero() {
    let g = table4_geometry();
    let spec = AdjustmentSpec::new(deg(-30.0), deg(52.0), PowerLevel::from_linear(1e-3).unwrap(), None)
        .unwrap();
    for k in 0..16 {
        let h = compose_h(&g, &spec, k as f64 * TAU / 16.0);
        let norm = h.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        assert!(norm > 1.0);
    }
}

fn random_weight(rng: &mut impl Rng, n: usize) -> WeightVector<f64> {
    WeightVector::new(
        (0..n)
            .map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect(),
    )
    .unwrap()
}

fn norm(x: &[Complex<f64>]) -> f64 {
    x.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

#[test]
fn reference_weight_is_orthogonal_and_minimal() {
    let mut rng = rng(3);
    for _ in 0..50 {
        let n = rng.gen_range(3..16);
        let w = random_weight(&mut rng, n);
        let h = random_weight(&mut rng, n).entries().to_vec();
        let wbar = reference_weight(&w, &h).unwrap();
        assert!(hermitian_inner(&h, wbar.entries()).norm() <= 1e-12 * norm(&h) * wbar.norm());

        let base: Vec<Complex<f64>> =
            wbar.entries().iter().zip(w.entries()).map(|(a, b)| a - b).collect();
        let base_norm = norm(&base);
        for _ in 0..100 {
            // Random direction inside the orthogonal complement of h.
            let u = random_weight(&mut rng, n).entries().to_vec();
            let coef = hermitian_inner(&h, &u) / norm(&h).powi(2);
            let u: Vec<_> = u.iter().zip(&h).map(|(u, h)| u - h * coef).collect();
            let un = norm(&u);
            let moved: Vec<_> = base.iter().zip(&u).map(|(b, u)| b + u * (1e-3 / un)).collect();
            assert!(base_norm <= norm(&moved) + 1e-15);
        }
    }
}

#[test]
fn orthogonality_bridge_identity() {
    // w_new^H h = Σ v_n e^{-jφ_n} with v_n = h_n |w_pre,n|.
    let mut rng = rng(17);
    for _ in 0..100 {
        let n = rng.gen_range(3..20);
        let w_pre = random_weight(&mut rng, n);
        let h = random_weight(&mut rng, n).entries().to_vec();
        let phi: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..TAU)).collect();
        let w_new: Vec<Complex<f64>> = w_pre
            .entries()
            .iter()
            .zip(&phi)
            .map(|(w, &p)| Complex::from_polar(w.norm(), p))
            .collect();
        let lhs = hermitian_inner(&w_new, &h);
        let rhs: Complex<f64> = (0..n)
            .map(|k| h[k] * w_pre.entries()[k].norm() * Complex::from_polar(1.0, -phi[k]))
            .sum();
        assert!((lhs - rhs).norm() <= 1e-12);
    }
}

#[test]
fn final_candidates_close_after_either_choice() {
    let mut rng = rng(29);
    for _ in 0..200 {
        let (a, b) = (rng.gen_range(0.1..1.0), rng.gen_range(0.1..1.0));
        let x: f64 = rng.gen_range(f64::abs(a - b)..=a + b);
        let state = ChainState {
            step: 3,
            x,
            gamma: rng.gen_range(0.0..TAU),
        };
        let cands = final_two_edges(state, a, b).unwrap();
        for arc in cands.arcs() {
            let p = arc.lo();
            let last = closing_phase(state, a, p);
            let sum = state.partial_sum() + Complex::from_polar(a, p) + Complex::from_polar(b, last);
            assert!(sum.norm() <= 1e-10 * (x + a + b));
        }
    }
}
