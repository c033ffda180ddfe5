//! Generalized Lüroth Series (GLS) neurons.
//!
//! Two piecewise-linear maps on the closed unit interval are provided:
//!
//! * skew-tent: `x / b` on `[0, b)`, `(1 - x) / (1 - b)` on `[b, 1]`
//! * skew-binary: `x / b` on `[0, b)`, `(x - b) / (1 - b)` on `[b, 1]`
//!
//! The domain is closed at 1 so that the tent peak `T(b) = 1` can be iterated
//! further (it maps to 0). Both maps fix 0.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapKind {
    #[default]
    SkewTent,
    SkewBinary,
}

impl MapKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MapKind::SkewTent => "skew-tent",
            MapKind::SkewBinary => "skew-binary",
        }
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MapKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "skew-tent" | "tent" => Ok(MapKind::SkewTent),
            "skew-binary" | "binary" => Ok(MapKind::SkewBinary),
            other => Err(Error::invalid(
                "map",
                other,
                "expected skew-tent or skew-binary",
            )),
        }
    }
}

pub(crate) fn check_b(b: f64) -> Result<()> {
    if b > 0.0 && b < 1.0 {
        Ok(())
    } else {
        Err(Error::invalid(
            "b",
            b,
            "must lie in the open interval (0, 1)",
        ))
    }
}

fn check_x(x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::invalid("x", x, "must lie in [0, 1]"))
    }
}

#[inline]
fn tent(x: f64, b: f64) -> f64 {
    if x < b {
        x / b
    } else {
        (1.0 - x) / (1.0 - b)
    }
}

#[inline]
fn binary(x: f64, b: f64) -> f64 {
    if x < b {
        x / b
    } else {
        (x - b) / (1.0 - b)
    }
}

/// One application of the skew-tent map.
pub fn skew_tent_step(x: f64, b: f64) -> Result<f64> {
    check_b(b)?;
    check_x(x)?;
    Ok(tent(x, b))
}

/// One application of the skew-binary map.
pub fn skew_binary_step(x: f64, b: f64) -> Result<f64> {
    check_b(b)?;
    check_x(x)?;
    Ok(binary(x, b))
}

/// A chaotic neuron: a map variant together with its skew / discrimination
/// threshold `b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GlsNeuron {
    kind: MapKind,
    b: f64,
}

impl GlsNeuron {
    pub fn new(kind: MapKind, b: f64) -> Result<Self> {
        check_b(b)?;
        Ok(Self { kind, b })
    }

    pub fn skew_tent(b: f64) -> Result<Self> {
        Self::new(MapKind::SkewTent, b)
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn step(&self, x: f64) -> Result<f64> {
        check_x(x)?;
        Ok(self.apply(x))
    }

    /// Unchecked step; `x` must already be in `[0, 1]`.
    #[inline]
    pub(crate) fn apply(&self, x: f64) -> f64 {
        match self.kind {
            MapKind::SkewTent => tent(x, self.b),
            MapKind::SkewBinary => binary(x, self.b),
        }
    }

    /// Iterate the map `steps` times from `x0`.
    pub fn iterate(&self, x0: f64, steps: usize) -> Result<Trajectory> {
        check_x(x0)?;
        let mut values = Vec::with_capacity(steps + 1);
        let mut x = x0;
        values.push(x);
        for _ in 0..steps {
            x = self.apply(x);
            values.push(x);
        }
        Ok(Trajectory(values))
    }
}

/// Activity values `A(0), A(1), ..., A(steps)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory(Vec<f64>);

impl Trajectory {
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl std::ops::Index<usize> for Trajectory {
    type Output = f64;

    fn index(&self, t: usize) -> &f64 {
        &self.0[t]
    }
}

pub fn iterate(neuron: &GlsNeuron, x0: f64, steps: usize) -> Result<Trajectory> {
    neuron.iterate(x0, steps)
}
