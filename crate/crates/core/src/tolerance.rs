//! Three-valued sign tests with a declared floating-point band.
//!
//! Every realizability condition is an exact-arithmetic statement about the
//! sign of a polynomial in the coefficients. A [`Tracked`] value carries the
//! largest monomial magnitude that went into it, and [`SignWithTolerance`]
//! classifies the value as `Boundary` whenever it is within
//! [`EPS_REL`] of that scale.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Relative width of the boundary band.
pub const EPS_REL: f64 = 1e-12;

/// A real value together with the largest absolute monomial that entered it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tracked {
    pub value: f64,
    pub scale: f64,
}

impl Tracked {
    /// A leaf quantity (a coefficient, a canonical parameter, a constant).
    pub fn leaf(value: f64) -> Self {
        Tracked {
            value,
            scale: value.abs(),
        }
    }

    pub fn constant(value: f64) -> Self {
        Self::leaf(value)
    }

    pub fn sign(self) -> SignWithTolerance {
        SignWithTolerance::new(self.value, EPS_REL * self.scale)
    }

    pub fn scaled(self, k: f64) -> Self {
        Tracked {
            value: self.value * k,
            scale: self.scale * k.abs(),
        }
    }

    pub fn square(self) -> Self {
        self * self
    }

    pub fn recip(self) -> Self {
        Tracked {
            value: 1.0 / self.value,
            scale: 1.0 / self.scale,
        }
    }
}

impl From<f64> for Tracked {
    fn from(v: f64) -> Self {
        Tracked::leaf(v)
    }
}

impl Add for Tracked {
    type Output = Tracked;
    fn add(self, rhs: Tracked) -> Tracked {
        Tracked {
            value: self.value + rhs.value,
            scale: self.scale.max(rhs.scale),
        }
    }
}

impl Sub for Tracked {
    type Output = Tracked;
    fn sub(self, rhs: Tracked) -> Tracked {
        Tracked {
            value: self.value - rhs.value,
            scale: self.scale.max(rhs.scale),
        }
    }
}

impl Mul for Tracked {
    type Output = Tracked;
    fn mul(self, rhs: Tracked) -> Tracked {
        Tracked {
            value: self.value * rhs.value,
            scale: self.scale * rhs.scale,
        }
    }
}

impl Mul<f64> for Tracked {
    type Output = Tracked;
    fn mul(self, k: f64) -> Tracked {
        self.scaled(k)
    }
}

impl Neg for Tracked {
    type Output = Tracked;
    fn neg(self) -> Tracked {
        Tracked {
            value: -self.value,
            scale: self.scale,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Boundary,
    Positive,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Boundary => Sign::Boundary,
            Sign::Positive => Sign::Negative,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignWithTolerance {
    pub value: f64,
    pub band: f64,
    pub verdict: Sign,
}

impl SignWithTolerance {
    pub fn new(value: f64, band: f64) -> Self {
        let band = band.abs();
        let verdict = if value.abs() <= band {
            Sign::Boundary
        } else if value > 0.0 {
            Sign::Positive
        } else {
            Sign::Negative
        };
        SignWithTolerance {
            value,
            band,
            verdict,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.verdict == Sign::Positive
    }

    pub fn is_negative(&self) -> bool {
        self.verdict == Sign::Negative
    }

    pub fn is_boundary(&self) -> bool {
        self.verdict == Sign::Boundary
    }

    pub fn negated(&self) -> Self {
        SignWithTolerance {
            value: -self.value,
            band: self.band,
            verdict: self.verdict.flip(),
        }
    }

    // Atomic comparisons against zero.

    pub fn ge0(&self) -> Truth {
        match self.verdict {
            Sign::Positive => Truth::Yes,
            Sign::Boundary => Truth::BoundaryYes,
            Sign::Negative => Truth::No,
        }
    }

    pub fn gt0(&self) -> Truth {
        match self.verdict {
            Sign::Positive => Truth::Yes,
            Sign::Boundary => Truth::BoundaryNo,
            Sign::Negative => Truth::No,
        }
    }

    pub fn le0(&self) -> Truth {
        self.negated().ge0()
    }

    pub fn lt0(&self) -> Truth {
        self.negated().gt0()
    }
}

impl fmt::Display for SignWithTolerance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e} ({:?}, band {:e})", self.value, self.verdict, self.band)
    }
}

/// Outcome of a condition evaluated with boundary bands.
///
/// `BoundaryYes` means the condition holds only because a non-strict test
/// accepted a boundary value; `BoundaryNo` means it fails only because a
/// strict test rejected one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Truth {
    Yes,
    No,
    BoundaryYes,
    BoundaryNo,
}

impl Truth {
    pub fn holds(self) -> bool {
        matches!(self, Truth::Yes | Truth::BoundaryYes)
    }

    pub fn touched_boundary(self) -> bool {
        matches!(self, Truth::BoundaryYes | Truth::BoundaryNo)
    }

    pub fn from_bool(b: bool) -> Truth {
        if b {
            Truth::Yes
        } else {
            Truth::No
        }
    }

    pub fn and(self, other: Truth) -> Truth {
        use Truth::*;
        match (self, other) {
            (No, _) | (_, No) => No,
            (BoundaryNo, _) | (_, BoundaryNo) => BoundaryNo,
            (BoundaryYes, _) | (_, BoundaryYes) => BoundaryYes,
            (Yes, Yes) => Yes,
        }
    }

    pub fn or(self, other: Truth) -> Truth {
        use Truth::*;
        match (self, other) {
            (Yes, _) | (_, Yes) => Yes,
            (BoundaryYes, _) | (_, BoundaryYes) => BoundaryYes,
            (BoundaryNo, _) | (_, BoundaryNo) => BoundaryNo,
            (No, No) => No,
        }
    }

    pub fn all<I: IntoIterator<Item = Truth>>(items: I) -> Truth {
        items.into_iter().fold(Truth::Yes, Truth::and)
    }

    pub fn any<I: IntoIterator<Item = Truth>>(items: I) -> Truth {
        items.into_iter().fold(Truth::No, Truth::or)
    }

    /// Mark a definite outcome as boundary-affected.
    pub fn with_boundary(self) -> Truth {
        match self {
            Truth::Yes => Truth::BoundaryYes,
            Truth::No => Truth::BoundaryNo,
            t => t,
        }
    }
}

/// "The signs of these three quantities are not all the same", with the
/// zero rule used throughout the mixed-type conditions: when one quantity
/// is zero the other two must be nonzero and of different signs.
///
/// Two or more boundary values make the test a near-miss (`BoundaryNo`).
pub fn signs_not_all_same(values: [&SignWithTolerance; 3]) -> Truth {
    let boundary: Vec<usize> = (0..3).filter(|&i| values[i].is_boundary()).collect();
    match boundary.len() {
        0 => {
            let pos = values.iter().filter(|v| v.is_positive()).count();
            Truth::from_bool(pos != 0 && pos != 3)
        }
        1 => {
            let others: Vec<&SignWithTolerance> = (0..3)
                .filter(|&i| i != boundary[0])
                .map(|i| values[i])
                .collect();
            if others[0].verdict != others[1].verdict {
                Truth::BoundaryYes
            } else {
                Truth::BoundaryNo
            }
        }
        _ => Truth::BoundaryNo,
    }
}
