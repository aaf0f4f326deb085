//! The canonical form Z_c(s) = alpha Z(beta s) with coefficients
//! (1, 2U sqrt(W), W) over (1, 2V / sqrt(W), 1/W).

use serde::{Deserialize, Serialize};

use crate::biquad::Biquadratic;
use crate::error::Error;
use crate::tolerance::{Tracked, Truth};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub struct CanonicalTriple {
    pub u: f64,
    pub v: f64,
    pub w: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CanonicalTransform {
    pub alpha: f64,
    pub beta: f64,
}

impl CanonicalTriple {
    pub fn new(u: f64, v: f64, w: f64) -> Result<Self, Error> {
        if !(u.is_finite() && v.is_finite() && w.is_finite()) {
            return Err(Error::NonFinite);
        }
        if u <= 0.0 || v <= 0.0 || w <= 0.0 {
            return Err(Error::ZeroCoefficient);
        }
        Ok(CanonicalTriple { u, v, w })
    }

    /// W -> 1/W
    pub fn star(self) -> Self {
        CanonicalTriple {
            w: 1.0 / self.w,
            ..self
        }
    }

    /// U <-> V
    pub fn dag(self) -> Self {
        CanonicalTriple {
            u: self.v,
            v: self.u,
            w: self.w,
        }
    }

    pub fn to_biquadratic(self) -> Biquadratic {
        from_canonical(self)
    }

    pub fn invariants(self) -> CanonicalInvariantSet {
        canonical_invariants(self)
    }
}

pub fn to_canonical(z: &Biquadratic) -> Result<(CanonicalTriple, CanonicalTransform), Error> {
    if !z.all_positive() {
        return Err(Error::ZeroCoefficient);
    }
    let w = ((z.a0 * z.b2) / (z.a2 * z.b0)).sqrt();
    let u = z.a1 / (2.0 * (z.a0 * z.a2).sqrt());
    let v = z.b1 / (2.0 * (z.b0 * z.b2).sqrt());
    let alpha = z.b2 / z.a2;
    let beta = ((z.a0 * z.b0) / (z.a2 * z.b2)).sqrt().sqrt();
    Ok((CanonicalTriple { u, v, w }, CanonicalTransform { alpha, beta }))
}

pub fn from_canonical(t: CanonicalTriple) -> Biquadratic {
    let sw = t.w.sqrt();
    Biquadratic::raw([1.0, 2.0 * t.u * sw, t.w, 1.0, 2.0 * t.v / sw, 1.0 / t.w])
}

/// Leaves U, V, W, 1/W for the canonical polynomials.
#[derive(Clone, Copy)]
struct Leaves {
    u: Tracked,
    v: Tracked,
    w: Tracked,
    wi: Tracked,
}

impl Leaves {
    fn of(t: CanonicalTriple) -> Self {
        Leaves {
            u: Tracked::leaf(t.u),
            v: Tracked::leaf(t.v),
            w: Tracked::leaf(t.w),
            wi: Tracked::leaf(1.0 / t.w),
        }
    }
    fn star(self) -> Self {
        Leaves {
            w: self.wi,
            wi: self.w,
            ..self
        }
    }
    fn dag(self) -> Self {
        Leaves {
            u: self.v,
            v: self.u,
            ..self
        }
    }
}

fn lambda(l: Leaves) -> Tracked {
    l.u * l.v * 4.0 - l.v * l.v * l.w * 4.0 + (l.w - l.wi)
}

fn eta(l: Leaves) -> Tracked {
    l.u * l.u * 4.0
        + l.v * l.v * 4.0
        + l.u * l.v * (l.w * 3.0 - l.wi) * 4.0
        + (l.w - l.wi) * (l.w * 9.0 - l.wi)
}

fn zeta(l: Leaves) -> Tracked {
    -(l.u * l.u * 4.0) - l.v * l.v * 4.0 + l.u * l.v * (l.w + l.wi) * 4.0
        - (l.w - l.wi) * (l.w * 3.0 - l.wi)
}

fn r_c(l: Leaves) -> Tracked {
    let d = l.w - l.wi;
    -(l.u * l.u * 4.0) - l.v * l.v * 4.0 + l.u * l.v * (l.w + l.wi) * 4.0 - d * d
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CanonicalInvariantSet {
    pub sigma_c: Tracked,
    pub delta_ab_c: Tracked,
    pub r_c: Tracked,
    pub gamma_ac: Tracked,
    pub gamma_bc: Tracked,
    pub lambda_c: Tracked,
    pub lambda_c_star: Tracked,
    pub lambda_c_dag: Tracked,
    pub lambda_c_star_dag: Tracked,
    pub eta_c: Tracked,
    pub eta_c_star: Tracked,
    pub zeta_c: Tracked,
    pub zeta_c_star: Tracked,
    /// Image of M R + 2 a0 a2 b0 b2 delta_ab.
    pub mr_c: Tracked,
}

pub fn canonical_invariants(t: CanonicalTriple) -> CanonicalInvariantSet {
    let l = Leaves::of(t);
    let (u, v) = (l.u, l.v);
    let s = l.w + l.wi;
    let uv4 = u * v * 4.0;
    CanonicalInvariantSet {
        sigma_c: uv4 + Tracked::constant(2.0) - s,
        delta_ab_c: uv4 - s * 2.0,
        r_c: r_c(l),
        gamma_ac: -(v * v * 4.0) + uv4 * s - s * s,
        gamma_bc: -(u * u * 4.0) + uv4 * s - s * s,
        lambda_c: lambda(l),
        lambda_c_star: lambda(l.star()),
        lambda_c_dag: lambda(l.dag()),
        lambda_c_star_dag: lambda(l.star().dag()),
        eta_c: eta(l),
        eta_c_star: eta(l.star()),
        zeta_c: zeta(l),
        zeta_c_star: zeta(l.star()),
        mr_c: -(s * s * s) + uv4 * s * s - (u * u + v * v) * s * 4.0 + u * v * 8.0,
    }
}

/// Regularity from the canonical lambda tests (strict, so a boundary value
/// counts as not regular and is flagged).
pub fn regularity(z: &Biquadratic) -> Result<Truth, Error> {
    if !z.membership().in_zb() {
        return Err(Error::NotInZb);
    }
    let (t, _) = to_canonical(z)?;
    Ok(regularity_canonical(t))
}

pub fn regularity_canonical(t: CanonicalTriple) -> Truth {
    let ci = canonical_invariants(t);
    if t.w < 1.0 {
        ci.lambda_c.sign().gt0().or(ci.lambda_c_dag.sign().gt0())
    } else {
        ci.lambda_c_star.sign().gt0().or(ci.lambda_c_star_dag.sign().gt0())
    }
}

pub fn is_regular(z: &Biquadratic) -> Result<bool, Error> {
    regularity(z).map(Truth::holds)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Lemma4Outcome {
    HypothesisFails,
    ImplicationHolds { value: f64, scale: f64 },
    CounterexampleFound { value: f64, scale: f64 },
}

/// Hypotheses: W != 3, R_c > 0, and the second quadratic form >= 0.
pub fn lemma4_hypothesis(t: CanonicalTriple) -> bool {
    if (t.w - 3.0).abs() <= 3.0 * crate::tolerance::EPS_REL {
        return false;
    }
    let l = Leaves::of(t);
    let h1 = r_c(l);
    let h2 = -(l.u * l.u * 4.0) - l.v * l.v * 4.0 + l.u * l.v * (l.w - l.wi * 3.0) * 4.0
        - (l.w - l.wi) * (l.w - l.wi * 9.0);
    h1.sign().is_positive() && h2.sign().ge0().holds()
}

pub fn lemma4_conclusion(t: CanonicalTriple) -> Tracked {
    let l = Leaves::of(t);
    let zs = zeta(l.star());
    let ls = lambda(l.star());
    zs * l.wi * (l.u * l.w - l.v) * (l.u * l.w - l.v * 3.0) * 4.0
        + ls * (l.v * l.v - l.u * l.u) * 8.0
}

pub fn lemma4_check(t: CanonicalTriple) -> Lemma4Outcome {
    if !lemma4_hypothesis(t) {
        return Lemma4Outcome::HypothesisFails;
    }
    let c = lemma4_conclusion(t);
    if c.value > -1e-10 * c.scale {
        Lemma4Outcome::ImplicationHolds {
            value: c.value,
            scale: c.scale,
        }
    } else {
        Lemma4Outcome::CounterexampleFound {
            value: c.value,
            scale: c.scale,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_complex::Complex64;

    fn z(c: [f64; 6]) -> Biquadratic {
        Biquadratic::new(c[0], c[1], c[2], c[3], c[4], c[5]).unwrap()
    }

    #[test]
    fn to_canonical_examples() {
        let (t, tr) = to_canonical(&z([1.0, 5.0, 2.0, 2.0, 5.0, 1.0])).unwrap();
        assert_relative_eq!(t.w, 2.0, max_relative = 1e-15);
        assert_relative_eq!(t.u, 5.0 / (2.0 * 2f64.sqrt()), max_relative = 1e-15);
        assert_relative_eq!(t.v, t.u, max_relative = 1e-15);
        assert_relative_eq!(tr.alpha, 2.0);
        assert_relative_eq!(tr.beta, 1.0);

        let (t, _) = to_canonical(&z([2.0, 1.0, 2.0, 3.0, 1.0, 3.0])).unwrap();
        assert_eq!(t.w, 1.0);

        let (t, _) = to_canonical(&z([1.0, 2.171e8, 4.824e9, 1.632, 1.575e8, 2.838e8])).unwrap();
        assert_relative_eq!(t.w, 5.266, max_relative = 1e-3);

        assert!(matches!(
            to_canonical(&z([1.0, 0.0, 1.0, 1.0, 1.0, 1.0])),
            Err(Error::ZeroCoefficient)
        ));
    }

    #[test]
    fn from_canonical_examples() {
        let u = 5.0 / (2.0 * 2f64.sqrt());
        let b = from_canonical(CanonicalTriple::new(u, u, 2.0).unwrap());
        let src = z([1.0, 5.0, 2.0, 2.0, 5.0, 1.0]).scaled(2.0, 1.0);
        assert!(b.equivalent(&src, 1e-14));
        let unit = from_canonical(CanonicalTriple::new(1.0, 1.0, 1.0).unwrap());
        assert_eq!(unit.coeffs(), [1.0, 2.0, 1.0, 1.0, 2.0, 1.0]);
    }

    #[test]
    fn transform_reproduces_scaled_impedance() {
        let zz = z([1.665e5, 5.776e5, 5.466e7, 1.0, 1.544e6, 0.342]);
        let (t, tr) = to_canonical(&zz).unwrap();
        let zc = from_canonical(t);
        for k in -8..=8 {
            let s = Complex64::new(0.0, 10f64.powi(k));
            let lhs = zz.eval(s * tr.beta) * tr.alpha;
            let rhs = zc.eval(s);
            assert!((lhs - rhs).norm() <= 1e-9 * rhs.norm());
        }
    }

    #[test]
    fn canonical_invariant_examples() {
        let u = 5.0 / (2.0 * 2f64.sqrt());
        let ci = canonical_invariants(CanonicalTriple::new(u, u, 2.0).unwrap());
        assert_relative_eq!(ci.sigma_c.value, 12.0, max_relative = 1e-14);
        assert_relative_eq!(ci.r_c.value, 4.0, max_relative = 1e-13);
        let ci = canonical_invariants(CanonicalTriple::new(1.0, 1.0, 1.0).unwrap());
        assert_eq!(ci.sigma_c.value, 4.0);
        assert_eq!(ci.r_c.value, 0.0);
        assert_eq!(ci.lambda_c.value, 0.0);
    }

    #[test]
    fn regularity_examples() {
        assert!(is_regular(&z([1.665e5, 5.776e5, 5.466e7, 1.0, 1.544e6, 0.342])).unwrap());
        let zz = z([2.0, 6.0, 3.0, 1.0, 3.0, 1.0]);
        let (t, _) = to_canonical(&zz).unwrap();
        let ci = canonical_invariants(t);
        assert!(t.w > 1.0);
        // Eb = -1 and Da = 15 for this impedance, so lambda* < 0 < lambda*dag.
        assert_relative_eq!(ci.lambda_c_star.value, -0.408248290463863, max_relative = 1e-12);
        assert_relative_eq!(ci.lambda_c_star_dag.value, 2.041241452319315, max_relative = 1e-12);
        assert!(is_regular(&zz).unwrap());
        assert!(matches!(is_regular(&z([1.0; 6])), Err(Error::NotInZb)));
    }

    #[test]
    fn star_and_dag_are_involutions() {
        let t = CanonicalTriple::new(0.7, 1.9, 3.3).unwrap();
        assert_eq!(t.dag().dag(), t);
        assert_relative_eq!(t.star().star().w, t.w, max_relative = 1e-15);
        let a = canonical_invariants(t);
        let b = canonical_invariants(t.dag().dag());
        assert_eq!(a, b);
    }

    #[test]
    fn lemma4_examples() {
        let u = 5.0 / (2.0 * 2f64.sqrt());
        assert_eq!(
            lemma4_check(CanonicalTriple::new(u, u, 2.0).unwrap()),
            Lemma4Outcome::HypothesisFails
        );
        assert_eq!(
            lemma4_check(CanonicalTriple::new(5.0, 5.0, 3.0).unwrap()),
            Lemma4Outcome::HypothesisFails
        );
        let mut found = 0;
        for i in 1..60 {
            for j in 1..60 {
                let t = CanonicalTriple::new(i as f64 * 0.25, j as f64 * 0.25, 6.0).unwrap();
                match lemma4_check(t) {
                    Lemma4Outcome::ImplicationHolds { .. } => found += 1,
                    Lemma4Outcome::CounterexampleFound { .. } => panic!("{t:?}"),
                    Lemma4Outcome::HypothesisFails => {}
                }
            }
        }
        assert!(found > 0);
    }
}
