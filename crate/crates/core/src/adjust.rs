//! Phase-only adjustment of the response level at one direction.
//!
//! The level constraint `|w^H a(θc)|² = ρc·|w^H a(θ0)|²` is linearized with a
//! free phase `ψc` into `w^H h = 0`, `h = a(θc) - √ρc·e^{jψc}·a(θ0)`. With
//! `w_n = |w_pre,n|·e^{jφ_n}` this reads `Σ v_n e^{-jφ_n} = 0` for
//! `v_n = h_n·|w_pre,n|`: rotate the vectors `v_n` so they close into a
//! polygon. The rotations are then mapped back to element phases.

use num_complex::Complex;
use rayon::prelude::*;

use crate::arcs::PhaseArcSet;
use crate::array::{
    degree_grid, hermitian_inner, main_beam_response, power_response, steering_vector, Angle,
    ArrayGeometry, PowerLevel, WeightVector,
};
use crate::error::{Error, Result};
use crate::polygon::{is_polygon_feasible, sequential_construct, triangle_construct, EdgeList};
use crate::scalar::{wrap_two_pi, Scalar};

/// What to adjust: the level `rho_c` at `theta_c`, relative to `theta0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdjustmentSpec<T> {
    pub theta0: Angle<T>,
    pub theta_c: Angle<T>,
    pub rho_c: PowerLevel<T>,
    pub psi_c: Option<T>,
}

impl<T: Scalar> AdjustmentSpec<T> {
    pub fn new(
        theta0: Angle<T>,
        theta_c: Angle<T>,
        rho_c: PowerLevel<T>,
        psi_c: Option<T>,
    ) -> Result<Self> {
        if theta_c == theta0 && rho_c.linear() != T::one() {
            return Err(Error::InvalidInput(
                "thetaC equals theta0 but the requested level is not 0 dB".into(),
            ));
        }
        if let Some(psi) = psi_c {
            if !(psi >= T::zero() && psi < T::TAU()) {
                return Err(Error::InvalidInput(format!("psiC = {psi} outside [0, 2π)")));
            }
        }
        Ok(Self {
            theta0,
            theta_c,
            rho_c,
            psi_c,
        })
    }
}

/// Tunables of the adjustment; the defaults are the reference settings.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjustOptions<T> {
    /// Number of uniformly spaced `ψc` candidates searched when the spec
    /// leaves `ψc` open.
    pub psi_candidates: usize,
    /// Distortion grid in degrees.
    pub grid_from_deg: T,
    pub grid_to_deg: T,
    pub grid_step_deg: T,
    /// Half-width in degrees of the window around `θc` left out of the
    /// distortion metric.
    pub exclusion_deg: T,
    /// Pattern values are floored here before differencing, so exact nulls
    /// of either pattern stay finite.
    pub db_floor: T,
}

impl<T: Scalar> Default for AdjustOptions<T> {
    fn default() -> Self {
        Self {
            psi_candidates: 64,
            grid_from_deg: T::lit(-90.0),
            grid_to_deg: T::lit(90.0),
            grid_step_deg: T::lit(0.05),
            exclusion_deg: T::lit(2.0),
            db_floor: T::lit(-120.0),
        }
    }
}

/// Outcome of a successful adjustment.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjustmentReport<T> {
    pub w_new: WeightVector<T>,
    pub psi_used: T,
    /// `|w_new^H h|` for the `h` built from `psi_used`.
    pub residual: T,
    pub achieved: PowerLevel<T>,
    /// Mean absolute dB deviation from the `w_pre` pattern outside the
    /// exclusion window around `θc`.
    pub distortion_db: T,
}

/// `h = a(θc) - √ρc·e^{jψ}·a(θ0)`.
pub fn compose_h<T: Scalar>(
    geom: &ArrayGeometry<T>,
    spec: &AdjustmentSpec<T>,
    psi: T,
) -> Vec<Complex<T>> {
    let ac = steering_vector(geom, spec.theta_c);
    let a0 = steering_vector(geom, spec.theta0);
    let k = Complex::from_polar(spec.rho_c.linear().sqrt(), psi);
    ac.into_iter().zip(a0).map(|(c, o)| c - k * o).collect()
}

/// Edge magnitudes `|v_n| = |h_n|·|w_pre,n|` and their directions `∠h_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct RotationProblem<T> {
    pub magnitudes: Vec<T>,
    pub phases: Vec<T>,
    /// Indices with non-negligible magnitude, ascending.
    pub active: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Rotation<T> {
    /// Every product `h_n·|w_pre,n|` vanishes; any phases satisfy the
    /// constraint.
    TriviallySatisfied,
    Problem(RotationProblem<T>),
}

pub fn compose_rotation_problem<T: Scalar>(
    h: &[Complex<T>],
    w_pre: &WeightVector<T>,
) -> Result<Rotation<T>> {
    if h.len() != w_pre.len() {
        return Err(Error::LengthMismatch {
            expected: w_pre.len(),
            actual: h.len(),
        });
    }
    let magnitudes: Vec<T> = h
        .iter()
        .zip(w_pre.entries())
        .map(|(h, w)| h.norm() * w.norm())
        .collect();
    let peak = magnitudes.iter().copied().fold(T::zero(), T::max);
    if peak.is_zero() {
        return Ok(Rotation::TriviallySatisfied);
    }
    let cutoff = T::inactive_threshold() * peak;
    let active = (0..magnitudes.len())
        .filter(|&n| magnitudes[n] > cutoff)
        .collect();
    let phases = h.iter().map(|h| wrap_two_pi(h.arg())).collect();
    Ok(Rotation::Problem(RotationProblem {
        magnitudes,
        phases,
        active,
    }))
}

/// Sorted position ↔ original element index, over the active elements.
/// Both directions are 0-based.
#[derive(Debug, Clone, PartialEq)]
pub struct SortPermutation {
    forward: Vec<usize>,
    inverse: Vec<Option<usize>>,
}

impl SortPermutation {
    /// Original index `ς(i)` of sorted position `i`.
    pub fn original(&self, i: usize) -> usize {
        self.forward[i]
    }

    /// Sorted position of original index `n`, `None` when inactive.
    pub fn sorted(&self, n: usize) -> Option<usize> {
        self.inverse[n]
    }

    pub fn forward(&self) -> &[usize] {
        &self.forward
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }
}

/// Orders the active magnitudes descending (ties by element index).
///
/// Fewer than three active edges only close when there are exactly two of
/// equal length (to 1e-12 relative).
pub fn sort_edges<T: Scalar>(rp: &RotationProblem<T>) -> Result<(EdgeList<T>, SortPermutation)> {
    let mut forward = rp.active.clone();
    forward.sort_by(|&a, &b| {
        rp.magnitudes[b]
            .partial_cmp(&rp.magnitudes[a])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    let d: Vec<T> = forward.iter().map(|&n| rp.magnitudes[n]).collect();
    match d.len() {
        0 | 1 => return Err(Error::TooFewActiveEdges { active: d.len() }),
        2 if (d[0] - d[1]) > T::lit(1e-12) * d[0] => {
            return Err(Error::TooFewActiveEdges { active: 2 })
        }
        _ => {}
    }
    let mut inverse = vec![None; rp.magnitudes.len()];
    for (i, &n) in forward.iter().enumerate() {
        inverse[n] = Some(i);
    }
    Ok((EdgeList::new(d)?, SortPermutation { forward, inverse }))
}

/// Minimum-norm perturbation of `w_pre` orthogonal to `h`:
/// `w̄ = w_pre - h·(h^H w_pre)/(h^H h)`.
pub fn reference_weight<T: Scalar>(
    w_pre: &WeightVector<T>,
    h: &[Complex<T>],
) -> Result<WeightVector<T>> {
    let hh = h.iter().map(|x| x.norm_sqr()).sum::<T>();
    if !(hh > T::zero()) {
        return Err(Error::InvalidInput("reference weight needs a nonzero h".into()));
    }
    let coef = hermitian_inner(h, w_pre.entries()) / hh;
    WeightVector::new(
        w_pre
            .entries()
            .iter()
            .zip(h)
            .map(|(w, h)| w - h * coef)
            .collect(),
    )
}

/// Point of `arcs` closest to `reference` in chordal distance
/// `|e^{jφ} - e^{j·ref}|`.
pub fn select_phase<T: Scalar>(arcs: &PhaseArcSet<T>, reference: T) -> Result<T> {
    arcs.nearest(reference)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Method {
    Guided,
    Triangle,
}

/// Precomputed steering vectors and `w_pre` pattern for the distortion
/// metric, shared by every `ψc` candidate.
struct DistortionGrid<T> {
    steering: Vec<Vec<Complex<T>>>,
    pre_db: Vec<T>,
    floor: T,
}

impl<T: Scalar> DistortionGrid<T> {
    fn new(
        geom: &ArrayGeometry<T>,
        w_pre: &WeightVector<T>,
        spec: &AdjustmentSpec<T>,
        opts: &AdjustOptions<T>,
    ) -> Result<Self> {
        let grid = degree_grid(opts.grid_from_deg, opts.grid_to_deg, opts.grid_step_deg)?;
        let exclusion = opts.exclusion_deg.to_radians();
        let steering: Vec<_> = grid
            .into_iter()
            .filter(|t| (t.radians() - spec.theta_c.radians()).abs() > exclusion)
            .map(|t| steering_vector(geom, t))
            .collect();
        let mut this = Self {
            steering,
            pre_db: Vec::new(),
            floor: opts.db_floor,
        };
        this.pre_db = this.pattern_db(w_pre, &steering_vector(geom, spec.theta0))?;
        Ok(this)
    }

    fn pattern_db(&self, w: &WeightVector<T>, a0: &[Complex<T>]) -> Result<Vec<T>> {
        let main = main_beam_response(w, a0)?;
        Ok(self
            .steering
            .iter()
            .map(|a| {
                let r = w.inner(a).norm() / main;
                PowerLevel::from_linear(r * r).unwrap().db().max(self.floor)
            })
            .collect())
    }

    fn distortion(&self, w: &WeightVector<T>, a0: &[Complex<T>]) -> Result<T> {
        if self.pre_db.is_empty() {
            return Ok(T::zero());
        }
        let new_db = self.pattern_db(w, a0)?;
        let total: T = new_db
            .iter()
            .zip(&self.pre_db)
            .map(|(a, b)| (*a - *b).abs())
            .sum();
        Ok(total / T::from_usize(new_db.len()).unwrap())
    }
}

/// Element phases for one `ψ`; the returned weight keeps every magnitude of
/// `w_pre`.
fn rotate_phases<T: Scalar>(
    w_pre: &WeightVector<T>,
    h: &[Complex<T>],
    method: Method,
) -> Result<WeightVector<T>> {
    let rp = match compose_rotation_problem(h, w_pre)? {
        Rotation::TriviallySatisfied => return Ok(w_pre.clone()),
        Rotation::Problem(rp) => rp,
    };
    let (d, perm) = sort_edges(&rp)?;
    let theta = |i: usize| rp.phases[perm.original(i)];

    // Element phases the construction should stay close to. Only the
    // guided method consults them beyond the first edge.
    let target: Vec<T> = match method {
        Method::Guided => reference_weight(w_pre, h)
            .unwrap_or_else(|_| w_pre.clone())
            .entries()
            .iter()
            .map(|w| w.arg())
            .collect(),
        Method::Triangle => w_pre.entries().iter().map(|w| w.arg()).collect(),
    };
    // The first edge is pinned at polygon direction π, i.e. element phase
    // ϑ_ς(1) - π. The polygon is solved in that frame and rotated by `beta`
    // afterwards, so element ς(1) lands on its target phase.
    let beta = target[perm.original(0)] - (theta(0) - T::PI());

    let polygon: Vec<T> = if d.len() == 2 {
        vec![T::PI(), T::zero()]
    } else {
        match method {
            Method::Triangle => triangle_construct(&d)?.phases,
            Method::Guided => sequential_construct(&d, |i, arcs| {
                let k = i - 1;
                let element_arcs = arcs.reflect(theta(k));
                let reference = target[perm.original(k)] - beta;
                let phi = select_phase(&element_arcs, reference)?;
                Ok(wrap_two_pi(theta(k) - phi))
            })?,
        }
    };

    let mut entries = w_pre.entries().to_vec();
    for (i, &varphi) in polygon.iter().enumerate() {
        let n = perm.original(i);
        let phase = wrap_two_pi(theta(i) - varphi + beta);
        entries[n] = Complex::from_polar(w_pre.entries()[n].norm(), phase);
    }
    WeightVector::new(entries)
}

fn check_inputs<T: Scalar>(geom: &ArrayGeometry<T>, w_pre: &WeightVector<T>) -> Result<()> {
    if w_pre.len() != geom.len() {
        return Err(Error::LengthMismatch {
            expected: geom.len(),
            actual: w_pre.len(),
        });
    }
    Ok(())
}

fn solve_at_psi<T: Scalar>(
    geom: &ArrayGeometry<T>,
    w_pre: &WeightVector<T>,
    spec: &AdjustmentSpec<T>,
    psi: T,
    method: Method,
    grid: &DistortionGrid<T>,
) -> Result<AdjustmentReport<T>> {
    let h = compose_h(geom, spec, psi);
    let w_new = rotate_phases(w_pre, &h, method)?;
    let residual = w_new.inner(&h).norm();
    let achieved = power_response(&w_new, geom, spec.theta_c, spec.theta0)?;
    let distortion_db = grid.distortion(&w_new, &steering_vector(geom, spec.theta0))?;
    Ok(AdjustmentReport {
        w_new,
        psi_used: psi,
        residual,
        achieved,
        distortion_db,
    })
}

/// Lemma-2 style feasibility of the rotation problem at one `ψ`.
pub fn psi_is_feasible<T: Scalar>(
    geom: &ArrayGeometry<T>,
    w_pre: &WeightVector<T>,
    spec: &AdjustmentSpec<T>,
    psi: T,
) -> bool {
    let h = compose_h(geom, spec, psi);
    match compose_rotation_problem(&h, w_pre) {
        Ok(Rotation::TriviallySatisfied) => true,
        Ok(Rotation::Problem(rp)) => match sort_edges(&rp) {
            Ok((d, _)) => d.len() == 2 || is_polygon_feasible(&d),
            Err(_) => false,
        },
        Err(_) => false,
    }
}

fn psi_candidates<T: Scalar>(count: usize) -> impl IndexedParallelIterator<Item = (usize, T)> {
    (0..count).into_par_iter().map(move |k| {
        (
            k,
            T::TAU() * T::from_usize(k).unwrap() / T::from_usize(count).unwrap(),
        )
    })
}

fn search_psi<T: Scalar>(
    geom: &ArrayGeometry<T>,
    w_pre: &WeightVector<T>,
    spec: &AdjustmentSpec<T>,
    method: Method,
    opts: &AdjustOptions<T>,
    grid: &DistortionGrid<T>,
) -> Result<AdjustmentReport<T>> {
    let count = opts.psi_candidates.max(1);
    let results: Vec<(usize, AdjustmentReport<T>)> = psi_candidates::<T>(count)
        .filter(|&(_, psi)| psi_is_feasible(geom, w_pre, spec, psi))
        .filter_map(|(k, psi)| {
            solve_at_psi(geom, w_pre, spec, psi, method, grid)
                .ok()
                .map(|r| (k, r))
        })
        .collect();
    // `collect` keeps candidate order, so the first minimum is the lowest
    // index among ties.
    results
        .into_iter()
        .fold(None::<(usize, AdjustmentReport<T>)>, |best, cur| match best {
            Some(b) if b.1.distortion_db <= cur.1.distortion_db => Some(b),
            _ => Some(cur),
        })
        .map(|(_, r)| r)
        .ok_or(Error::NoFeasiblePsi { candidates: count })
}

fn run<T: Scalar>(
    geom: &ArrayGeometry<T>,
    w_pre: &WeightVector<T>,
    spec: &AdjustmentSpec<T>,
    method: Method,
    opts: &AdjustOptions<T>,
) -> Result<AdjustmentReport<T>> {
    check_inputs(geom, w_pre)?;
    let grid = DistortionGrid::new(geom, w_pre, spec, opts)?;
    match spec.psi_c {
        Some(psi) => solve_at_psi(geom, w_pre, spec, psi, method, &grid),
        // h does not depend on ψ for a null.
        None if spec.rho_c.is_null() => solve_at_psi(geom, w_pre, spec, T::zero(), method, &grid),
        None => search_psi(geom, w_pre, spec, method, opts, &grid),
    }
}

/// Picks `ψc` from the candidate grid by minimal distortion of the guided
/// adjustment. A `ψc` given in the spec is returned as is; a null request
/// uses 0.
pub fn choose_psi<T: Scalar>(
    geom: &ArrayGeometry<T>,
    spec: &AdjustmentSpec<T>,
    w_pre: &WeightVector<T>,
    opts: &AdjustOptions<T>,
) -> Result<T> {
    if let Some(psi) = spec.psi_c {
        return Ok(psi);
    }
    if spec.rho_c.is_null() {
        return Ok(T::zero());
    }
    check_inputs(geom, w_pre)?;
    let grid = DistortionGrid::new(geom, w_pre, spec, opts)?;
    search_psi(geom, w_pre, spec, Method::Guided, opts, &grid).map(|r| r.psi_used)
}

/// Reference-guided phase-only adjustment with default options.
pub fn adjust<T: Scalar>(
    geom: &ArrayGeometry<T>,
    w_pre: &WeightVector<T>,
    spec: &AdjustmentSpec<T>,
) -> Result<AdjustmentReport<T>> {
    adjust_with(geom, w_pre, spec, &AdjustOptions::default())
}

pub fn adjust_with<T: Scalar>(
    geom: &ArrayGeometry<T>,
    w_pre: &WeightVector<T>,
    spec: &AdjustmentSpec<T>,
    opts: &AdjustOptions<T>,
) -> Result<AdjustmentReport<T>> {
    run(geom, w_pre, spec, Method::Guided, opts)
}

/// Baseline: phases straight from the closed-form triangle construction.
pub fn triangle_adjust<T: Scalar>(
    geom: &ArrayGeometry<T>,
    w_pre: &WeightVector<T>,
    spec: &AdjustmentSpec<T>,
) -> Result<AdjustmentReport<T>> {
    triangle_adjust_with(geom, w_pre, spec, &AdjustOptions::default())
}

pub fn triangle_adjust_with<T: Scalar>(
    geom: &ArrayGeometry<T>,
    w_pre: &WeightVector<T>,
    spec: &AdjustmentSpec<T>,
    opts: &AdjustOptions<T>,
) -> Result<AdjustmentReport<T>> {
    run(geom, w_pre, spec, Method::Triangle, opts)
}
