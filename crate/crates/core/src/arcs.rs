//! Closed arcs on the unit circle and small unions of them.

use crate::error::{Error, Result};
use crate::scalar::{wrap_two_pi, Scalar};

/// Counter-clockwise arc from `start` spanning `span` radians.
///
/// `start` is kept in [0, 2π) and `span` in [0, 2π]; a zero span is a single
/// point and a span of 2π is the whole circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseArc<T> {
    start: T,
    span: T,
}

impl<T: Scalar> PhaseArc<T> {
    /// Arc from `lo` counter-clockwise to `hi`, with `lo <= hi` as raw
    /// (unwrapped) values.
    pub fn between(lo: T, hi: T) -> Self {
        let span = (hi - lo).max(T::zero()).min(T::TAU());
        Self {
            start: wrap_two_pi(lo),
            span,
        }
    }

    pub fn point(at: T) -> Self {
        Self::between(at, at)
    }

    pub fn full() -> Self {
        Self {
            start: T::zero(),
            span: T::TAU(),
        }
    }

    /// Start of the arc in [0, 2π).
    pub fn lo(&self) -> T {
        self.start
    }

    /// End of the arc in [0, 2π).
    pub fn hi(&self) -> T {
        wrap_two_pi(self.start + self.span)
    }

    pub fn span(&self) -> T {
        self.span
    }

    pub fn is_full(&self) -> bool {
        self.span >= T::TAU()
    }

    /// Membership with an angular margin on both ends.
    pub fn contains(&self, phi: T, margin: T) -> bool {
        if self.is_full() {
            return true;
        }
        let d = wrap_two_pi(phi - self.start);
        d <= self.span + margin || d >= T::TAU() - margin
    }

    /// Image of the arc under `φ ↦ about - φ`.
    pub fn reflect(&self, about: T) -> Self {
        if self.is_full() {
            return *self;
        }
        Self {
            start: wrap_two_pi(about - self.start - self.span),
            span: self.span,
        }
    }

    /// Point at fraction `t ∈ [0, 1]` along the arc.
    pub fn at(&self, t: T) -> T {
        wrap_two_pi(self.start + t * self.span)
    }
}

/// Angular distance on the circle, in [0, π].
pub fn circular_distance<T: Scalar>(a: T, b: T) -> T {
    let d = wrap_two_pi(a - b);
    d.min(T::TAU() - d)
}

/// Chordal distance `|e^{ja} - e^{jb}|`.
pub fn chordal_distance<T: Scalar>(a: T, b: T) -> T {
    T::lit(2.0) * (circular_distance(a, b) / T::lit(2.0)).sin()
}

/// Union of closed arcs; at most two in practice.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseArcSet<T> {
    arcs: Vec<PhaseArc<T>>,
}

impl<T: Scalar> PhaseArcSet<T> {
    pub fn new(arcs: Vec<PhaseArc<T>>) -> Self {
        Self { arcs }
    }

    pub fn full() -> Self {
        Self::new(vec![PhaseArc::full()])
    }

    /// The two mirror arcs `[c-δmax, c-δmin] ∪ [c+δmin, c+δmax]`.
    pub fn mirrored(center: T, delta_min: T, delta_max: T) -> Self {
        if delta_max >= T::PI() && delta_min <= T::zero() {
            return Self::full();
        }
        Self::new(vec![
            PhaseArc::between(center - delta_max, center - delta_min),
            PhaseArc::between(center + delta_min, center + delta_max),
        ])
    }

    pub fn arcs(&self) -> &[PhaseArc<T>] {
        &self.arcs
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn contains(&self, phi: T, margin: T) -> bool {
        self.arcs.iter().any(|a| a.contains(phi, margin))
    }

    pub fn reflect(&self, about: T) -> Self {
        Self::new(self.arcs.iter().map(|a| a.reflect(about)).collect())
    }

    /// Point of the union closest to `reference` on the circle.
    ///
    /// Returns `reference` itself (wrapped) when it is covered, otherwise the
    /// nearest arc endpoint. Equidistant candidates resolve to the smaller
    /// angle in [0, 2π).
    pub fn nearest(&self, reference: T) -> Result<T> {
        if self.arcs.is_empty() {
            return Err(Error::EmptyArcSet);
        }
        let reference = wrap_two_pi(reference);
        if self.contains(reference, T::zero()) {
            return Ok(reference);
        }
        let tie = T::tie_tolerance();
        let mut best: Option<(T, T)> = None;
        for arc in &self.arcs {
            for end in [arc.lo(), arc.hi()] {
                let dist = circular_distance(end, reference);
                best = match best {
                    None => Some((end, dist)),
                    Some((b, bd)) => {
                        if dist < bd - tie || ((dist - bd).abs() <= tie && end < b) {
                            Some((end, dist))
                        } else {
                            Some((b, bd))
                        }
                    }
                };
            }
        }
        Ok(best.map(|(p, _)| p).unwrap())
    }
}
