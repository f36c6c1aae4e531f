#![allow(dead_code)]

use polyphase::{Angle, ArrayGeometry, Complex, EdgeList};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Non-uniform 11-element array: positions in wavelengths.
pub const TABLE4_POSITIONS: [f64; 11] =
    [0.00, 0.30, 0.90, 1.55, 2.05, 2.60, 3.05, 3.60, 4.05, 4.55, 5.00];

/// Amplitude taper of the pre-assigned weight.
pub const TABLE4_GAINS: [f64; 11] =
    [1.12, 1.10, 1.00, 1.05, 0.98, 1.06, 0.91, 0.95, 1.02, 0.92, 0.98];

/// Published adjusted weights (4 decimals) for θ0 = -30°, θc = 52°, -30 dB.
pub const TABLE4_WEIGHTS: [(f64, f64); 11] = [
    (1.1169, 0.0838),
    (0.5680, -0.9420),
    (-0.9167, -0.3996),
    (0.0797, 1.0470),
    (0.9661, -0.1647),
    (-0.4119, -0.9767),
    (-0.8384, -0.3538),
    (0.3063, 0.8993),
    (1.0014, -0.1938),
    (-0.0239, -0.9197),
    (-0.9758, 0.0910),
];

pub fn table4_geometry() -> ArrayGeometry<f64> {
    ArrayGeometry::new(TABLE4_POSITIONS.to_vec()).unwrap()
}

pub fn table4_weights() -> Vec<Complex<f64>> {
    TABLE4_WEIGHTS.iter().map(|&(re, im)| Complex::new(re, im)).collect()
}

pub fn deg(x: f64) -> Angle<f64> {
    Angle::from_degrees(x)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random positive lengths, sorted descending, with `d_1 ≤ Q(2, N)`.
pub fn random_feasible_edges(rng: &mut impl Rng, n: usize) -> EdgeList<f64> {
    loop {
        let mut d: Vec<f64> = (0..n).map(|_| rng.gen_range(0.01..1.0)).collect();
        // Occasionally make the longest edge dominant to probe the boundary.
        if rng.gen_bool(0.3) {
            let rest: f64 = d[1..].iter().sum();
            d[0] = rest * rng.gen_range(0.5..=1.0);
        }
        let e = EdgeList::from_unsorted(d).unwrap();
        if polyphase::is_polygon_feasible(&e) {
            return e;
        }
    }
}

/// Direct complex sum `Σ d_i e^{jφ_i}`.
pub fn direct_sum(d: &[f64], phases: &[f64]) -> Complex<f64> {
    d.iter()
        .zip(phases)
        .map(|(&d, &p)| Complex::from_polar(d, p))
        .sum()
}
