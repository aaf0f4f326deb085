//! Small real-polynomial helpers: stable quadratic roots, products, and
//! complex root finding for the few cubics that show up in forward analysis.

use num_complex::Complex64;

use crate::tolerance::{Tracked, EPS_REL};

#[derive(Debug, Clone, PartialEq)]
pub struct QuadRoots {
    /// Real roots in ascending order (empty if complex).
    pub roots: Vec<f64>,
    pub discriminant: f64,
    /// The discriminant was inside its boundary band and clamped to zero.
    pub clamped: bool,
}

/// Real roots of a x^2 + b x + c. The discriminant band is relative to
/// max(b^2, |4ac|).
pub fn quadratic_roots(a: f64, b: f64, c: f64) -> QuadRoots {
    quadratic_roots_tracked(Tracked::leaf(a), Tracked::leaf(b), Tracked::leaf(c))
}

/// Same, but with the coefficients' own scales feeding the discriminant band.
pub fn quadratic_roots_tracked(a: Tracked, b: Tracked, c: Tracked) -> QuadRoots {
    let disc_t = b * b - a * c * 4.0;
    let on_boundary = disc_t.value.abs() <= EPS_REL * disc_t.scale;
    quadratic_roots_with_discriminant(a, b, c, disc_t.value, on_boundary)
}

/// Same, with the discriminant supplied by the caller, typically from a
/// factored form that avoids the cancellation in b^2 - 4ac near a double
/// root. `on_boundary` clamps it to zero.
pub fn quadratic_roots_with_discriminant(a: Tracked, b: Tracked, c: Tracked, disc: f64, on_boundary: bool) -> QuadRoots {
    let mut disc = disc;
    if a.value == 0.0 {
        let roots = if b.value != 0.0 {
            vec![-c.value / b.value]
        } else {
            vec![]
        };
        return QuadRoots {
            roots,
            discriminant: disc,
            clamped: false,
        };
    }
    let mut clamped = false;
    if on_boundary {
        disc = 0.0;
        clamped = true;
    }
    if disc < 0.0 {
        return QuadRoots {
            roots: vec![],
            discriminant: disc,
            clamped,
        };
    }
    let (a, b, c) = (a.value, b.value, c.value);
    let sq = disc.sqrt();
    let q = -0.5 * (b + b.signum() * sq);
    let mut roots = if q == 0.0 {
        vec![0.0, 0.0]
    } else {
        vec![q / a, c / q]
    };
    if clamped {
        let r = -b / (2.0 * a);
        roots = vec![r, r];
    }
    roots.sort_by(|x, y| x.partial_cmp(y).unwrap());
    QuadRoots {
        roots,
        discriminant: disc,
        clamped,
    }
}

/// Ascending-coefficient polynomial product.
pub fn mul(p: &[f64], q: &[f64]) -> Vec<f64> {
    if p.is_empty() || q.is_empty() {
        return vec![];
    }
    let mut out = vec![0.0; p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

pub fn add_into(acc: &mut Vec<f64>, p: &[f64]) {
    if acc.len() < p.len() {
        acc.resize(p.len(), 0.0);
    }
    for (a, b) in acc.iter_mut().zip(p) {
        *a += b;
    }
}

pub fn eval(p: &[f64], x: Complex64) -> Complex64 {
    p.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
}

/// All complex roots of an ascending-coefficient polynomial (Durand-Kerner
/// with a final Newton polish). Leading zeros are dropped.
pub fn roots(p: &[f64]) -> Vec<Complex64> {
    let mut p: Vec<f64> = p.to_vec();
    while p.last().map_or(false, |&c| c == 0.0) {
        p.pop();
    }
    let n = p.len().saturating_sub(1);
    if n == 0 {
        return vec![];
    }
    let lead = p[n];
    let monic: Vec<f64> = p.iter().map(|c| c / lead).collect();
    let radius = 1.0 + monic[..n].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| seed.powu(k as u32) * radius)
        .collect();
    for _ in 0..500 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            if den.norm() == 0.0 {
                den = Complex64::new(1e-300, 0.0);
            }
            let step = eval(&monic, z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm() / z[i].norm().max(1e-300));
        }
        if delta < 1e-15 {
            break;
        }
    }
    let dp: Vec<f64> = (1..=n).map(|k| monic[k] * k as f64).collect();
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let d = eval(&dp, *zi);
            if d.norm() == 0.0 {
                break;
            }
            let step = eval(&monic, *zi) / d;
            if !step.re.is_finite() || !step.im.is_finite() {
                break;
            }
            *zi -= step;
        }
    }
    z
}

/// Divide an ascending polynomial by (x - r) for real r, dropping the remainder.
pub fn deflate(p: &[f64], r: f64) -> Vec<f64> {
    let n = p.len();
    if n < 2 {
        return vec![];
    }
    let mut q = vec![0.0; n - 1];
    let mut carry = 0.0;
    for k in (1..n).rev() {
        carry = p[k] + carry * r;
        q[k - 1] = carry;
    }
    q
}
