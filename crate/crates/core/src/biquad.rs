//! Biquadratic impedances, their invariant quantities and the membership screen.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::tolerance::{SignWithTolerance, Tracked};

/// Z(s) = (a2 s^2 + a1 s + a0) / (b2 s^2 + b1 s + b0).
///
/// Coefficients are stored exactly as given; no normalization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Biquadratic {
    pub a2: f64,
    pub a1: f64,
    pub a0: f64,
    pub b2: f64,
    pub b1: f64,
    pub b0: f64,
}

#[derive(Serialize, Deserialize)]
struct BiquadJson {
    num: [f64; 3],
    den: [f64; 3],
}

impl Serialize for Biquadratic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        BiquadJson {
            num: self.num(),
            den: self.den(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Biquadratic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = BiquadJson::deserialize(d)?;
        Biquadratic::from_parts(j.num, j.den).map_err(serde::de::Error::custom)
    }
}

impl Biquadratic {
    /// Validated constructor, coefficients in the order a2, a1, a0, b2, b1, b0.
    pub fn new(a2: f64, a1: f64, a0: f64, b2: f64, b1: f64, b0: f64) -> Result<Self, Error> {
        let all = [a2, a1, a0, b2, b1, b0];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        if all.iter().any(|&x| x < 0.0) {
            return Err(Error::NegativeCoefficient);
        }
        if a2 == 0.0 && a1 == 0.0 && a0 == 0.0 {
            return Err(Error::ZeroPolynomial("numerator"));
        }
        if b2 == 0.0 && b1 == 0.0 && b0 == 0.0 {
            return Err(Error::ZeroPolynomial("denominator"));
        }
        Ok(Biquadratic {
            a2,
            a1,
            a0,
            b2,
            b1,
            b0,
        })
    }

    pub fn from_parts(num: [f64; 3], den: [f64; 3]) -> Result<Self, Error> {
        Self::new(num[0], num[1], num[2], den[0], den[1], den[2])
    }

    /// Unchecked constructor for internal use on values known to be valid.
    pub(crate) fn raw(c: [f64; 6]) -> Self {
        Biquadratic {
            a2: c[0],
            a1: c[1],
            a0: c[2],
            b2: c[3],
            b1: c[4],
            b0: c[5],
        }
    }

    pub fn num(&self) -> [f64; 3] {
        [self.a2, self.a1, self.a0]
    }

    pub fn den(&self) -> [f64; 3] {
        [self.b2, self.b1, self.b0]
    }

    pub fn coeffs(&self) -> [f64; 6] {
        [self.a2, self.a1, self.a0, self.b2, self.b1, self.b0]
    }

    /// 1/Z: numerator and denominator swapped.
    pub fn reciprocal(&self) -> Self {
        Biquadratic::raw([self.b2, self.b1, self.b0, self.a2, self.a1, self.a0])
    }

    /// k * Z(m s) with coefficients rescaled accordingly.
    pub fn scaled(&self, k: f64, m: f64) -> Self {
        Biquadratic::raw([
            k * self.a2 * m * m,
            k * self.a1 * m,
            k * self.a0,
            self.b2 * m * m,
            self.b1 * m,
            self.b0,
        ])
    }

    pub fn all_positive(&self) -> bool {
        self.coeffs().iter().all(|&x| x > 0.0)
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        let n = (s * self.a2 + self.a1) * s + self.a0;
        let d = (s * self.b2 + self.b1) * s + self.b0;
        n / d
    }

    pub fn invariants(&self) -> InvariantSet {
        InvariantSet::of(self)
    }

    /// a1 b1 - (sqrt(a0 b2) - sqrt(a2 b0))^2, nonnegative iff positive-real.
    pub fn is_positive_real(&self) -> SignWithTolerance {
        let p = (self.a0 * self.b2).sqrt();
        let q = (self.a2 * self.b0).sqrt();
        let value = self.a1 * self.b1 - (p - q) * (p - q);
        let scale = (self.a1 * self.b1).max(self.a0 * self.b2).max(self.a2 * self.b0);
        SignWithTolerance::new(value, crate::tolerance::EPS_REL * scale)
    }

    pub fn membership(&self) -> MembershipVerdict {
        if self.is_positive_real().is_negative() {
            return MembershipVerdict::NotPositiveReal;
        }
        if !self.all_positive() {
            return MembershipVerdict::ZeroCoefficient;
        }
        let inv = self.invariants();
        let r = inv.r.sign();
        let b = inv.b.sign();
        if r.is_boundary() {
            return MembershipVerdict::FewerThanFive { clause: 1 };
        }
        if b.is_boundary() {
            return MembershipVerdict::FewerThanFive { clause: 2 };
        }
        if b.is_positive() && (inv.da.sign().is_boundary() || inv.eb.sign().is_boundary()) {
            return MembershipVerdict::FewerThanFive { clause: 3 };
        }
        if b.is_negative() && (inv.db.sign().is_boundary() || inv.ea.sign().is_boundary()) {
            return MembershipVerdict::FewerThanFive { clause: 4 };
        }
        if inv.gamma_a.sign().is_boundary() || inv.gamma_b.sign().is_boundary() {
            return MembershipVerdict::FewerThanFive { clause: 5 };
        }
        MembershipVerdict::InZb
    }

    /// Cross-product equivalence: a_i b'_j - a_j b'_i over all pairings of
    /// the six coefficients, each relative to |a_i b'_j| + |a_j b'_i|, so
    /// small coefficients count as much as large ones.
    pub fn equivalence_residual(&self, other: &Biquadratic) -> f64 {
        let x = self.coeffs();
        let y = other.coeffs();
        if x.iter().all(|v| *v == 0.0) || y.iter().all(|v| *v == 0.0) {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for i in 0..6 {
            for j in (i + 1)..6 {
                let (p, q) = (x[i] * y[j], x[j] * y[i]);
                let s = p.abs() + q.abs();
                if s > 0.0 {
                    worst = worst.max((p - q).abs() / s);
                }
            }
        }
        worst
    }

    pub fn equivalent(&self, other: &Biquadratic, tol: f64) -> bool {
        self.equivalence_residual(other) <= tol
    }
}

impl fmt::Display for Biquadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} s^2 + {} s + {}) / ({} s^2 + {} s + {})",
            self.a2, self.a1, self.a0, self.b2, self.b1, self.b0
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum MembershipVerdict {
    NotPositiveReal,
    /// Some coefficient is zero; realizable with fewer than five elements.
    ZeroCoefficient,
    FewerThanFive { clause: u8 },
    InZb,
}

impl MembershipVerdict {
    pub fn in_zb(self) -> bool {
        self == MembershipVerdict::InZb
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReactiveGate {
    SameTypeOnly,
    MixedTypeOnly,
    None,
}

/// The derived quantities used by every realizability condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InvariantSet {
    pub a: Tracked,
    pub b: Tracked,
    pub c: Tracked,
    pub da: Tracked,
    pub db: Tracked,
    pub ea: Tracked,
    pub eb: Tracked,
    pub m: Tracked,
    pub delta_a: Tracked,
    pub delta_b: Tracked,
    pub delta_ab: Tracked,
    pub r: Tracked,
    pub gamma_a: Tracked,
    pub gamma_b: Tracked,
    /// The coefficients themselves, as leaves.
    pub coeffs: [Tracked; 6],
}

impl InvariantSet {
    pub fn of(z: &Biquadratic) -> Self {
        let [a2, a1, a0, b2, b1, b0] = z.coeffs().map(Tracked::leaf);
        let a = a0 * b1 - a1 * b0;
        let b = a0 * b2 - a2 * b0;
        let c = a1 * b2 - a2 * b1;
        let da = a1 * a - a0 * b;
        let db = -(b1 * a) + b0 * b;
        let ea = a2 * b - a1 * c;
        let eb = -(b2 * b) + b1 * c;
        let m = a0 * b2 + a2 * b0;
        let delta_a = a1 * a1 - a0 * a2 * 4.0;
        let delta_b = b1 * b1 - b0 * b2 * 4.0;
        let delta_ab = a1 * b1 - m * 2.0;
        let r = a * c - b * b;
        let gamma_a = r + b0 * b2 * delta_a;
        let gamma_b = r + a0 * a2 * delta_b;
        InvariantSet {
            a,
            b,
            c,
            da,
            db,
            ea,
            eb,
            m,
            delta_a,
            delta_b,
            delta_ab,
            r,
            gamma_a,
            gamma_b,
            coeffs: [a2, a1, a0, b2, b1, b0],
        }
    }

    pub fn a2(&self) -> Tracked {
        self.coeffs[0]
    }
    pub fn a1(&self) -> Tracked {
        self.coeffs[1]
    }
    pub fn a0(&self) -> Tracked {
        self.coeffs[2]
    }
    pub fn b2(&self) -> Tracked {
        self.coeffs[3]
    }
    pub fn b1(&self) -> Tracked {
        self.coeffs[4]
    }
    pub fn b0(&self) -> Tracked {
        self.coeffs[5]
    }

    /// a0 a2 b0 b2
    pub fn p4(&self) -> Tracked {
        self.a0() * self.a2() * self.b0() * self.b2()
    }

    /// M R + 2 a0 a2 b0 b2 delta_ab, the middle coefficient of the Fig. 1 and
    /// Fig. 5 quadratics.
    pub fn mr_term(&self) -> Tracked {
        self.m * self.r + self.p4() * self.delta_ab * 2.0
    }

    pub fn reactive_gate(&self) -> ReactiveGate {
        let s = self.r.sign();
        if s.is_positive() {
            ReactiveGate::SameTypeOnly
        } else if s.is_negative() {
            ReactiveGate::MixedTypeOnly
        } else {
            ReactiveGate::None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: [f64; 6]) -> Biquadratic {
        Biquadratic::new(c[0], c[1], c[2], c[3], c[4], c[5]).unwrap()
    }

    #[test]
    fn constructor_validation() {
        assert!(Biquadratic::new(1.0, 2.171e8, 4.824e9, 1.632, 1.575e8, 2.838e8).is_ok());
        assert!(Biquadratic::new(1.0, 1.0, 1.0, 1.0, 1.0, 1.0).is_ok());
        assert!(matches!(
            Biquadratic::new(1.0, -1.0, 1.0, 1.0, 1.0, 1.0),
            Err(Error::NegativeCoefficient)
        ));
        assert!(matches!(
            Biquadratic::new(f64::NAN, 1.0, 1.0, 1.0, 1.0, 1.0),
            Err(Error::NonFinite)
        ));
        assert!(matches!(
            Biquadratic::new(0.0, 0.0, 0.0, 1.0, 1.0, 1.0),
            Err(Error::ZeroPolynomial(_))
        ));
    }

    #[test]
    fn invariants_worked_examples() {
        let i = z([1.0, 5.0, 2.0, 2.0, 5.0, 1.0]).invariants();
        let v = |t: Tracked| t.value;
        assert_eq!(
            [v(i.a), v(i.b), v(i.c), v(i.r), v(i.m)],
            [5.0, 3.0, 5.0, 16.0, 5.0]
        );
        assert_eq!(
            [v(i.delta_a), v(i.delta_b), v(i.delta_ab), v(i.gamma_a), v(i.gamma_b)],
            [17.0, 17.0, 15.0, 50.0, 50.0]
        );
        assert_eq!([v(i.da), v(i.eb)], [19.0, 19.0]);

        let i = z([2.0, 6.0, 3.0, 1.0, 3.0, 1.0]).invariants();
        assert_eq!([v(i.a), v(i.b), v(i.c), v(i.r)], [3.0, 1.0, 0.0, -1.0]);

        let i = z([1.0; 6]).invariants();
        assert_eq!([v(i.a), v(i.b), v(i.c), v(i.r)], [0.0; 4]);
    }

    #[test]
    fn positive_real_examples() {
        assert!(z([1.0, 0.0, 1.0, 1.0, 1.0, 1.0]).is_positive_real().is_boundary());
        assert!(z([1.0, 0.1, 4.0, 1.0, 0.1, 1.0]).is_positive_real().is_negative());
        assert!(z([1.0, 2.171e8, 4.824e9, 1.632, 1.575e8, 2.838e8])
            .is_positive_real()
            .is_positive());
    }

    #[test]
    fn membership_examples() {
        assert_eq!(
            z([1.0; 6]).membership(),
            MembershipVerdict::FewerThanFive { clause: 1 }
        );
        assert_eq!(
            z([1.0, 5.0, 2.0, 2.0, 5.0, 1.0]).membership(),
            MembershipVerdict::InZb
        );
        assert_eq!(
            z([1.665e5, 5.776e5, 5.466e7, 1.0, 1.544e6, 0.342]).membership(),
            MembershipVerdict::InZb
        );
        assert_eq!(
            z([1.0, 2.0, 0.0, 1.0, 1.0, 1.0]).membership(),
            MembershipVerdict::ZeroCoefficient
        );
    }

    #[test]
    fn balanced_case_hits_b_clause() {
        // s^2 + 2s + 1 over s^2 + 3s + 1: B = 0, A = 1, C = -1, R = -1.
        assert_eq!(
            z([1.0, 2.0, 1.0, 1.0, 3.0, 1.0]).membership(),
            MembershipVerdict::FewerThanFive { clause: 2 }
        );
    }

    #[test]
    fn reactive_gate() {
        assert_eq!(
            z([1.0, 5.0, 2.0, 2.0, 5.0, 1.0]).invariants().reactive_gate(),
            ReactiveGate::SameTypeOnly
        );
        assert_eq!(
            z([2.0, 6.0, 3.0, 1.0, 3.0, 1.0]).invariants().reactive_gate(),
            ReactiveGate::MixedTypeOnly
        );
        assert_eq!(z([1.0; 6]).invariants().reactive_gate(), ReactiveGate::None);
    }

    #[test]
    fn equivalence() {
        let p = z([1.0, 5.0, 2.0, 2.0, 5.0, 1.0]);
        assert!(p.equivalent(&Biquadratic::raw(p.coeffs().map(|c| 7.0 * c)), 1e-14));
        assert!(!p.equivalent(&p.scaled(7.0, 1.0), 1e-6));
        assert!(p.equivalent(&z([2.0, 10.0, 4.0, 4.0, 10.0, 2.0]), 1e-14));
        assert!(!p.equivalent(&z([1.0, 5.0, 2.0, 2.0, 5.0, 1.01]), 1e-6));
    }

    #[test]
    fn json_shape() {
        let p = z([1.0, 5.0, 2.0, 2.0, 5.0, 1.0]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"num":[1.0,5.0,2.0],"den":[2.0,5.0,1.0]}"#);
        let back: Biquadratic = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<Biquadratic>(r#"{"num":[1,-1,1],"den":[1,1,1]}"#).is_err());
    }
}
