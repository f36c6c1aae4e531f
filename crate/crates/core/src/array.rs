//! Linear array geometry, steering vectors, weights and beampatterns.
//!
//! Elements are isotropic and sit on a line at positions given in carrier
//! wavelengths. The steering vector for direction `θ` (measured from
//! broadside) is `a_n(θ) = exp(j·2π·x_n·sin θ)` and the array response of a
//! weight vector `w` is `w^H a(θ)`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Element positions in wavelengths.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrayGeometry<T> {
    positions: Vec<T>,
}

impl<T: Scalar> ArrayGeometry<T> {
    pub fn new(positions: Vec<T>) -> Result<Self> {
        if positions.is_empty() {
            return Err(Error::InvalidInput("array needs at least one element".into()));
        }
        if let Some(n) = positions.iter().position(|x| !x.is_finite()) {
            return Err(Error::InvalidInput(format!("position {n} is not finite")));
        }
        Ok(Self { positions })
    }

    pub fn positions(&self) -> &[T] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

/// Direction measured from broadside, stored in radians.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Angle<T>(T);

impl<T: Scalar> Angle<T> {
    pub fn from_radians(rad: T) -> Self {
        Self(rad)
    }

    pub fn from_degrees(deg: T) -> Self {
        Self(deg.to_radians())
    }

    /// Checked constructor for external input: finite and within ±90°.
    pub fn steering_degrees(deg: T) -> Result<Self> {
        let limit = T::lit(90.0);
        if !deg.is_finite() || deg.abs() > limit {
            return Err(Error::InvalidInput(format!(
                "steering angle {deg}° outside [-90°, 90°]"
            )));
        }
        Ok(Self::from_degrees(deg))
    }

    pub fn radians(self) -> T {
        self.0
    }

    pub fn degrees(self) -> T {
        self.0.to_degrees()
    }
}

/// Complex excitation, one entry per element. Never identically zero.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector<T> {
    entries: Vec<Complex<T>>,
}

impl<T: Scalar> WeightVector<T> {
    pub fn new(entries: Vec<Complex<T>>) -> Result<Self> {
        if entries.iter().any(|w| !w.re.is_finite() || !w.im.is_finite()) {
            return Err(Error::InvalidInput("weight entries must be finite".into()));
        }
        if entries.iter().all(|w| w.re.is_zero() && w.im.is_zero()) {
            return Err(Error::InvalidInput("weight vector is identically zero".into()));
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn norm(&self) -> T {
        self.entries.iter().map(|w| w.norm_sqr()).sum::<T>().sqrt()
    }

    pub fn magnitudes(&self) -> Vec<T> {
        self.entries.iter().map(|w| w.norm()).collect()
    }

    /// `w^H x`.
    pub fn inner(&self, x: &[Complex<T>]) -> Complex<T> {
        hermitian_inner(&self.entries, x)
    }

    /// Multiplies every entry by `e^{jc}`.
    pub fn rotated(&self, c: T) -> Self {
        let rot = Complex::from_polar(T::one(), c);
        Self {
            entries: self.entries.iter().map(|w| w * rot).collect(),
        }
    }

    fn check_len(&self, geom: &ArrayGeometry<T>) -> Result<()> {
        if self.len() != geom.len() {
            return Err(Error::LengthMismatch {
                expected: geom.len(),
                actual: self.len(),
            });
        }
        Ok(())
    }
}

/// `Σ conj(a_n)·b_n`.
pub fn hermitian_inner<T: Scalar>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    a.iter()
        .zip(b)
        .fold(Complex::new(T::zero(), T::zero()), |acc, (x, y)| acc + x.conj() * y)
}

/// Normalized power ratio; `0` is an exact null.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PowerLevel<T>(T);

impl<T: Scalar> PowerLevel<T> {
    pub fn from_linear(linear: T) -> Result<Self> {
        if !(linear >= T::zero()) || linear.is_infinite() {
            return Err(Error::InvalidInput(format!(
                "power level must be finite and nonnegative, got {linear}"
            )));
        }
        Ok(Self(linear))
    }

    /// `-inf` dB maps to the exact null.
    pub fn from_db(db: T) -> Result<Self> {
        if db.is_nan() || db == T::infinity() {
            return Err(Error::InvalidInput(format!("invalid dB level {db}")));
        }
        Ok(Self(T::lit(10.0).powf(db / T::lit(10.0))))
    }

    pub fn null() -> Self {
        Self(T::zero())
    }

    pub fn linear(self) -> T {
        self.0
    }

    pub fn db(self) -> T {
        T::lit(10.0) * self.0.log10()
    }

    pub fn is_null(self) -> bool {
        self.0.is_zero()
    }
}

pub fn steering_vector<T: Scalar>(geom: &ArrayGeometry<T>, theta: Angle<T>) -> Vec<Complex<T>> {
    let k = T::TAU() * theta.radians().sin();
    geom.positions()
        .iter()
        .map(|&x| Complex::from_polar(T::one(), k * x))
        .collect()
}

/// `|w^H a(θ0)|`, checked against the degeneracy guard `1e-12·‖w‖·√N`.
pub(crate) fn main_beam_response<T: Scalar>(
    w: &WeightVector<T>,
    a0: &[Complex<T>],
) -> Result<T> {
    let response = w.inner(a0).norm();
    let n = T::from_usize(w.len()).unwrap();
    let threshold = T::degenerate_threshold() * w.norm() * n.sqrt();
    if !(response > threshold) {
        return Err(Error::DegenerateMainBeam {
            response: response.to_f64().unwrap_or(f64::NAN),
            threshold: threshold.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(response)
}

/// `|w^H a(θc)|² / |w^H a(θ0)|²`.
pub fn power_response<T: Scalar>(
    w: &WeightVector<T>,
    geom: &ArrayGeometry<T>,
    theta_c: Angle<T>,
    theta_0: Angle<T>,
) -> Result<PowerLevel<T>> {
    w.check_len(geom)?;
    let a0 = steering_vector(geom, theta_0);
    let main = main_beam_response(w, &a0)?;
    let ac = steering_vector(geom, theta_c);
    let ratio = w.inner(&ac).norm() / main;
    Ok(PowerLevel(ratio * ratio))
}

/// Pattern in dB relative to the main beam at every grid angle.
pub fn sample_pattern<T: Scalar>(
    w: &WeightVector<T>,
    geom: &ArrayGeometry<T>,
    theta_0: Angle<T>,
    grid: &[Angle<T>],
) -> Result<Vec<(Angle<T>, T)>> {
    if grid.is_empty() {
        return Err(Error::InvalidInput("pattern grid is empty".into()));
    }
    w.check_len(geom)?;
    let main = main_beam_response(w, &steering_vector(geom, theta_0))?;
    Ok(grid
        .iter()
        .map(|&theta| {
            let r = w.inner(&steering_vector(geom, theta)).norm() / main;
            (theta, PowerLevel(r * r).db())
        })
        .collect())
}

/// `w_pre = g ⊙ a(θ0)`: a beam steered to `θ0` with the given amplitude taper.
pub fn build_preassigned_weight<T: Scalar>(
    geom: &ArrayGeometry<T>,
    gains: &[T],
    theta_0: Angle<T>,
) -> Result<WeightVector<T>> {
    if gains.len() != geom.len() {
        return Err(Error::LengthMismatch {
            expected: geom.len(),
            actual: gains.len(),
        });
    }
    if let Some(n) = gains.iter().position(|&g| !(g > T::zero()) || !g.is_finite()) {
        return Err(Error::InvalidInput(format!("gain {n} must be positive and finite")));
    }
    let a0 = steering_vector(geom, theta_0);
    WeightVector::new(gains.iter().zip(a0).map(|(&g, a)| a.scale(g)).collect())
}

/// Uniform grid `from, from+step, …` up to `to` inclusive, in degrees.
pub fn degree_grid<T: Scalar>(from: T, to: T, step: T) -> Result<Vec<Angle<T>>> {
    if !(step > T::zero()) || !step.is_finite() {
        return Err(Error::InvalidInput(format!("grid step must be positive, got {step}")));
    }
    if !from.is_finite() || !to.is_finite() || from > to {
        return Err(Error::InvalidInput(format!("invalid grid range [{from}, {to}]")));
    }
    let count = ((to - from) / step + T::lit(1e-9)).floor().to_usize().unwrap() + 1;
    Ok((0..count)
        .map(|k| Angle::from_degrees(from + T::from_usize(k).unwrap() * step))
        .collect())
}
