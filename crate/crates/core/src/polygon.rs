//! Closing a set of edge lengths into a polygon in the complex plane.
//!
//! Given lengths `d_1 ≥ … ≥ d_N > 0`, find directions `φ_i` with
//! `Σ d_i·e^{jφ_i} = 0`. Two constructions are provided: the closed-form
//! three-block triangle, and a sequential chain that commits one edge at a
//! time while keeping the remaining edges closable, exposing at every step
//! the full arc of admissible directions.
//!
//! Edge, split and step indices in this module are 1-based to match the
//! usual statement of the geometry: edge `i` is `d[i - 1]`.

use num_complex::Complex;

use crate::arcs::PhaseArcSet;
use crate::error::{Error, Result};
use crate::scalar::{acos_clamped, wrap_two_pi, Scalar};

/// Positive edge lengths in non-increasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeList<T> {
    d: Vec<T>,
}

impl<T: Scalar> EdgeList<T> {
    /// Validates an already sorted list.
    pub fn new(d: Vec<T>) -> Result<Self> {
        if d.is_empty() {
            return Err(Error::InvalidInput("edge list is empty".into()));
        }
        if let Some(i) = d.iter().position(|&x| !(x > T::zero()) || !x.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "edge {} must be positive and finite",
                i + 1
            )));
        }
        if let Some(i) = d.windows(2).position(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!(
                "edges must be non-increasing (edge {} < edge {})",
                i + 1,
                i + 2
            )));
        }
        Ok(Self { d })
    }

    /// Sorts descending, then validates.
    pub fn from_unsorted(mut d: Vec<T>) -> Result<Self> {
        d.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
        Self::new(d)
    }

    pub fn as_slice(&self) -> &[T] {
        &self.d
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    /// Edge `i`, 1-based.
    pub fn edge(&self, i: usize) -> T {
        self.d[i - 1]
    }

    pub fn total(&self) -> T {
        self.d.iter().copied().sum()
    }

    /// `Q(k, l) = Σ_{i=k}^{l} d_i`.
    pub fn partial_sum(&self, k: usize, l: usize) -> Result<T> {
        if k < 1 || k > l || l > self.len() {
            return Err(Error::IndexOutOfRange { k, l, len: self.len() });
        }
        Ok(self.d[k - 1..l].iter().copied().sum())
    }

    /// Sum of edges `k..=N`; zero when `k > N`.
    fn tail(&self, k: usize) -> T {
        self.d.get(k - 1..).map_or(T::zero(), |s| s.iter().copied().sum())
    }

    /// `Σ d_i e^{jφ_i}` for a full phase assignment.
    pub fn closure_residual(&self, phases: &[T]) -> T {
        self.d
            .iter()
            .zip(phases)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (&d, &p)| {
                acc + Complex::from_polar(d, p)
            })
            .norm()
    }

    fn require_at_least(&self, n: usize) -> Result<()> {
        if self.len() < n {
            return Err(Error::InvalidInput(format!(
                "need at least {n} edges, got {}",
                self.len()
            )));
        }
        Ok(())
    }
}

/// `d_1 ≤ Q(2, N)`: the longest edge is no longer than all others together.
/// Equality is admitted (the polygon degenerates to a segment).
pub fn is_polygon_feasible<T: Scalar>(d: &EdgeList<T>) -> bool {
    d.len() >= 2 && d.edge(1) <= d.tail(2)
}

/// Split imbalances `|Q(2,i) - Q(i+1,N)|` for `i = 2..=N-1`.
fn split_gaps<T: Scalar>(d: &EdgeList<T>) -> impl Iterator<Item = (usize, T)> + '_ {
    let n = d.len();
    let mut head = T::zero();
    let total_rest = d.tail(2);
    (2..n).map(move |i| {
        head = head + d.edge(i);
        (i, (head - (total_rest - head)).abs())
    })
}

/// Split index `m ∈ {2, …, N-1}` minimizing `|Q(2,m) - Q(m+1,N)|`;
/// the smallest index wins ties.
pub fn best_split_index<T: Scalar>(d: &EdgeList<T>) -> Result<usize> {
    d.require_at_least(3)?;
    let mut best = (0, T::infinity());
    for (i, gap) in split_gaps(d) {
        if gap < best.1 {
            best = (i, gap);
        }
    }
    Ok(best.0)
}

/// `min_i |Q(2,i) - Q(i+1,N)|`; bounded above by `d_1` for feasible lists.
pub fn lemma1_gap<T: Scalar>(d: &EdgeList<T>) -> Result<T> {
    d.require_at_least(3)?;
    Ok(split_gaps(d).map(|(_, g)| g).fold(T::infinity(), T::min))
}

/// Closed-form triangle solution.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleSolution<T> {
    pub m: usize,
    pub alpha1: T,
    pub alpha2: T,
    /// One direction per edge, in edge order.
    pub phases: Vec<T>,
}

/// Groups edges into `d_1`, `Q(2,m)` and `Q(m+1,N)` and closes the
/// resulting triangle: `φ_1 = π`, `φ_i = α1` for `2 ≤ i ≤ m`, and
/// `φ_i = α1 + α2 + π` for the rest.
pub fn triangle_construct<T: Scalar>(d: &EdgeList<T>) -> Result<TriangleSolution<T>> {
    d.require_at_least(3)?;
    if !is_polygon_feasible(d) {
        return Err(infeasible(d));
    }
    let n = d.len();
    let m = best_split_index(d)?;
    let d1 = d.edge(1);
    let head = d.partial_sum(2, m)?;
    let rest = d.partial_sum(m + 1, n)?;
    let two = T::lit(2.0);
    let alpha1 = acos_clamped((d1 * d1 + head * head - rest * rest) / (two * d1 * head));
    let alpha2 = acos_clamped((head * head + rest * rest - d1 * d1) / (two * head * rest));
    let phases = (1..=n)
        .map(|i| match i {
            1 => T::PI(),
            i if i <= m => alpha1,
            _ => wrap_two_pi(alpha1 + alpha2 + T::PI()),
        })
        .collect();
    Ok(TriangleSolution {
        m,
        alpha1,
        alpha2,
        phases,
    })
}

fn infeasible<T: Scalar>(d: &EdgeList<T>) -> Error {
    Error::InfeasibleEdges {
        longest: d.edge(1).to_f64().unwrap_or(f64::NAN),
        rest: d.tail(2).to_f64().unwrap_or(f64::NAN),
    }
}

/// Committed partial sum `x·e^{jγ}` after edge `step`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainState<T> {
    pub step: usize,
    pub x: T,
    pub gamma: T,
}

impl<T: Scalar> ChainState<T> {
    /// `x_1 = d_1`, `γ_1 = π`.
    pub fn initial(d: &EdgeList<T>) -> Self {
        Self {
            step: 1,
            x: d.edge(1),
            gamma: T::PI(),
        }
    }

    pub fn partial_sum(&self) -> Complex<T> {
        Complex::from_polar(self.x, self.gamma)
    }
}

/// Adds edge `d_i·e^{jφ}` to the chain. A vanishing sum gets phase 0.
pub fn advance_chain<T: Scalar>(state: ChainState<T>, d_i: T, phi: T) -> ChainState<T> {
    let sum = state.partial_sum() + Complex::from_polar(d_i, phi);
    let x = sum.norm();
    let gamma = if x.is_zero() {
        T::zero()
    } else {
        wrap_two_pi(sum.arg())
    };
    ChainState {
        step: state.step + 1,
        x,
        gamma,
    }
}

/// Range `[x_min, x_max]` of the next partial-sum modulus `x_i` that keeps
/// both `{x_{i-1}, d_i, x_i}` a triangle and `{x_i, d_{i+1}, …, d_N}` a
/// polygon. Valid for `2 ≤ i ≤ N-2`.
///
/// An inversion within the geometry slack of `Σd` (rounding drift along the
/// chain) collapses to a single point.
pub fn step_feasible_modulus_interval<T: Scalar>(
    x_prev: T,
    d: &EdgeList<T>,
    i: usize,
) -> Result<(T, T)> {
    let n = d.len();
    if i < 2 || i + 2 > n {
        return Err(Error::IndexOutOfRange { k: i, l: i, len: n });
    }
    let d_i = d.edge(i);
    let x_min = (x_prev - d_i).abs().max(d.edge(i + 1) - d.tail(i + 2));
    let x_max = (x_prev + d_i).min(d.tail(i + 1));
    if x_min <= x_max {
        return Ok((x_min, x_max));
    }
    if x_min - x_max <= T::geometry_slack() * d.total() {
        let mid = (x_min + x_max) / T::lit(2.0);
        return Ok((mid, mid));
    }
    Err(Error::EmptyInterval {
        step: i,
        x_min: x_min.to_f64().unwrap_or(f64::NAN),
        x_max: x_max.to_f64().unwrap_or(f64::NAN),
    })
}

/// Included angle at the chain tip between the previous partial sum (length
/// `x_prev`) and edge `d_i` that yields a new partial sum of length `x_new`.
fn included_angle<T: Scalar>(x_prev: T, d_i: T, x_new: T) -> T {
    acos_clamped((x_prev * x_prev + d_i * d_i - x_new * x_new) / (T::lit(2.0) * x_prev * d_i))
}

/// Directions for edge `i` that keep the remaining edges closable:
/// `[γ+π-δmax, γ+π-δmin] ∪ [γ+π+δmin, γ+π+δmax]`.
pub fn step_phase_arcs<T: Scalar>(
    x_prev: T,
    gamma_prev: T,
    d: &EdgeList<T>,
    i: usize,
) -> Result<PhaseArcSet<T>> {
    let (x_min, x_max) = step_feasible_modulus_interval(x_prev, d, i)?;
    if x_prev <= T::inactive_threshold() * d.total() {
        return Err(Error::ZeroModulus);
    }
    let d_i = d.edge(i);
    let delta_min = included_angle(x_prev, d_i, x_min);
    let delta_max = included_angle(x_prev, d_i, x_max);
    Ok(PhaseArcSet::mirrored(gamma_prev + T::PI(), delta_min, delta_max))
}

/// Candidates for edge `N-1` given the committed chain `x_{N-2}·e^{jγ}`:
/// the at most two directions that let `d_N` close the triangle. When the
/// chain has collapsed to the origin every direction qualifies.
pub fn final_two_edges<T: Scalar>(
    state: ChainState<T>,
    d_prev: T,
    d_last: T,
) -> Result<PhaseArcSet<T>> {
    let x = state.x;
    let slack = T::geometry_slack() * (x + d_prev + d_last);
    if x > d_prev + d_last + slack || d_prev > x + d_last + slack || d_last > x + d_prev + slack
    {
        return Err(Error::BrokenTriangle {
            x: x.to_f64().unwrap_or(f64::NAN),
            d_prev: d_prev.to_f64().unwrap_or(f64::NAN),
            d_last: d_last.to_f64().unwrap_or(f64::NAN),
        });
    }
    if x <= T::inactive_threshold() * (d_prev + d_last) {
        return Ok(PhaseArcSet::full());
    }
    let delta = included_angle(x, d_prev, d_last);
    let center = state.gamma + T::PI();
    Ok(PhaseArcSet::mirrored(center, delta, delta))
}

/// Direction of the last edge: it must point from the tip of the partial
/// sum back to the origin.
pub fn closing_phase<T: Scalar>(state: ChainState<T>, d_prev: T, phi_prev: T) -> T {
    let tip = state.partial_sum() + Complex::from_polar(d_prev, phi_prev);
    wrap_two_pi(tip.arg() + T::PI())
}

/// Sequential polygon construction.
///
/// `choose(i, arcs)` picks the direction of edge `i` (for `2 ≤ i ≤ N-1`)
/// from the admissible set; its answer must lie in `arcs`. Edge 1 is fixed
/// at `π` and edge `N` closes the polygon. Returns one direction per edge.
pub fn sequential_construct<T, F>(d: &EdgeList<T>, mut choose: F) -> Result<Vec<T>>
where
    T: Scalar,
    F: FnMut(usize, &PhaseArcSet<T>) -> Result<T>,
{
    d.require_at_least(3)?;
    if !is_polygon_feasible(d) {
        return Err(infeasible(d));
    }
    let n = d.len();
    let mut phases = Vec::with_capacity(n);
    phases.push(T::PI());
    let mut state = ChainState::initial(d);
    for i in 2..=n - 2 {
        let arcs = match step_phase_arcs(state.x, state.gamma, d, i) {
            Err(Error::ZeroModulus) => PhaseArcSet::full(),
            other => other?,
        };
        let phi = choose(i, &arcs)?;
        phases.push(phi);
        state = advance_chain(state, d.edge(i), phi);
    }
    let (d_prev, d_last) = (d.edge(n - 1), d.edge(n));
    let candidates = final_two_edges(state, d_prev, d_last)?;
    let phi_prev = choose(n - 1, &candidates)?;
    phases.push(phi_prev);
    phases.push(closing_phase(state, d_prev, phi_prev));
    Ok(phases)
}
