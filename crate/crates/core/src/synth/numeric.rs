//! Numeric coefficient matching for configurations without printed element
//! formulas.
//!
//! The target is first brought to unit frequency and impedance level. The
//! unknowns are the logarithms of the five element values, and the residual is
//! the cross product a(s) bt(s) - b(s) at(s) of the network and target
//! polynomials, each coefficient divided by the sum of the magnitudes that
//! enter it. A zero residual means the two impedances are equal, including the
//! three-reactive case where a(s), b(s) are cubics sharing a real root.

use nalgebra::{DMatrix, DVector};

use super::{finish, Method, SynthScratch, SynthesisOutcome};
use crate::biquad::Biquadratic;
use crate::classify;
use crate::error::Error;
use crate::forward::{expand, forward_impedance};
use crate::par;
use crate::poly;
use crate::topology::{ConfigId, Configuration, Kind, Realization, FIG7_VARIANTS};

/// Quasi-random starts per configuration.
pub const STARTS: usize = 64;
/// Accepted cross-product residual for a numeric match.
pub const NUMERIC_TOL: f64 = 1e-6;
/// Target for the normalized residual inside the solver.
pub const CONVERGED: f64 = 1e-12;
const MAX_ITER: usize = 200;
/// Starts are run in blocks; the first block with a success ends the search.
const BLOCK: usize = 8;
/// Refinement steps for closed-form values.
const POLISH_ITER: usize = 20;
/// Iterations over which the cost has to improve to keep going.
const STALL_WINDOW: usize = 25;
/// log10 range of the starting values.
const START_DECADES: f64 = 3.0;
/// Natural-log box the solver stays in.
const LOG_BOUND: f64 = 20.0;

#[derive(Debug, Clone, PartialEq)]
pub struct LmResult {
    pub x: Vec<f64>,
    /// Largest absolute residual component at x.
    pub max_residual: f64,
    pub iterations: usize,
}

fn max_abs(r: &[f64]) -> f64 {
    r.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

fn sumsq(r: &[f64]) -> f64 {
    r.iter().map(|v| v * v).sum()
}

/// Levenberg-Marquardt with a central-difference Jacobian and Marquardt
/// diagonal scaling. Parameters are kept inside [-bound, bound].
pub fn least_squares<F>(f: F, x0: &[f64], tol: f64, max_iter: usize, bound: f64) -> LmResult
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let n = x0.len();
    let mut x = x0.to_vec();
    let mut r = f(&x);
    let mut cost = sumsq(&r);
    let mut mu = 1e-3;
    let mut it = 0;
    let mut history = Vec::with_capacity(max_iter);
    while it < max_iter {
        if !cost.is_finite() || max_abs(&r) <= tol {
            break;
        }
        // Stuck in a local minimum: less than 10% progress over a window.
        if it >= STALL_WINDOW && cost > 0.9 * history[it - STALL_WINDOW] {
            break;
        }
        history.push(cost);
        it += 1;
        let m = r.len();
        let mut jac = DMatrix::<f64>::zeros(m, n);
        for j in 0..n {
            let h = 1e-6 * (1.0 + x[j].abs());
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[j] += h;
            xm[j] -= h;
            let (rp, rm) = (f(&xp), f(&xm));
            for i in 0..m {
                jac[(i, j)] = (rp[i] - rm[i]) / (2.0 * h);
            }
        }
        let rv = DVector::from_vec(r.clone());
        let jt = jac.transpose();
        let g = &jt * &rv;
        let h = &jt * &jac;
        let mut accepted = false;
        for _ in 0..12 {
            let mut a = h.clone();
            for k in 0..n {
                a[(k, k)] += mu * (h[(k, k)] + 1e-12);
            }
            let Some(step) = a.cholesky().map(|c| c.solve(&(-&g))) else {
                mu *= 10.0;
                continue;
            };
            let xn: Vec<f64> = x
                .iter()
                .zip(step.iter())
                .map(|(xi, d)| (xi + d).clamp(-bound, bound))
                .collect();
            let rn = f(&xn);
            let cn = sumsq(&rn);
            if cn.is_finite() && cn < cost {
                let gain = (cost - cn) / cost;
                x = xn;
                r = rn;
                cost = cn;
                mu = (mu * 0.3).max(1e-15);
                accepted = true;
                if gain < 1e-12 && step.norm() < 1e-12 {
                    accepted = false;
                }
                break;
            }
            mu *= 10.0;
        }
        if !accepted {
            break;
        }
    }
    LmResult {
        max_residual: max_abs(&r),
        x,
        iterations: it,
    }
}

/// Target brought to unit frequency and impedance level:
/// Zn(s) = Z(s / beta) / kappa.
#[derive(Debug, Clone, Copy)]
struct Normalized {
    num: [f64; 3],
    den: [f64; 3],
    beta: f64,
    kappa: f64,
}

fn normalize(z: &Biquadratic) -> Normalized {
    let [a2, a1, a0, b2, b1, b0] = z.coeffs();
    let beta = ((a2 * b2) / (a0 * b0)).powf(0.25);
    let kappa = (a0 * a2 / (b0 * b2)).sqrt();
    let num = [a0 / kappa, a1 / (kappa * beta), a2 / (kappa * beta * beta)];
    let den = [b0, b1 / beta, b2 / (beta * beta)];
    let m = num.iter().chain(den.iter()).fold(0.0f64, |m, v| m.max(*v));
    Normalized {
        num: num.map(|v| v / m),
        den: den.map(|v| v / m),
        beta,
        kappa,
    }
}

/// Undo the normalization on one element value.
fn denormalize(kind: Kind, v: f64, n: &Normalized) -> f64 {
    match kind {
        Kind::R => v * n.kappa,
        Kind::L => v * n.kappa * n.beta,
        Kind::C => v * n.beta / n.kappa,
    }
}

/// Normalized cross-product residual of a network (values in edge order)
/// against a target given by ascending coefficients.
pub fn cross_residual(cfg: &Configuration, values: &[f64], num: &[f64], den: &[f64]) -> Vec<f64> {
    let (a, b) = expand(cfg, values);
    let len = a.len().max(b.len()) + num.len().max(den.len()) - 1;
    let mut cross = vec![0.0; len];
    let mut scale = vec![0.0; len];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in den.iter().enumerate() {
            cross[i + j] += ai * bj;
            scale[i + j] += (ai * bj).abs();
        }
    }
    for (i, bi) in b.iter().enumerate() {
        for (j, aj) in num.iter().enumerate() {
            cross[i + j] -= bi * aj;
            scale[i + j] += (bi * aj).abs();
        }
    }
    cross
        .iter()
        .zip(&scale)
        .map(|(c, s)| if *s > 0.0 { c / s } else { 0.0 })
        .collect()
}

/// Newton-like refinement of a realization that already matches z to a few
/// digits. Returns the refined values when they match better.
pub(crate) fn polish(z: &Biquadratic, r: &Realization) -> Option<Realization> {
    let cfg = r.configuration();
    let n = normalize(z);
    let x0: Vec<f64> = cfg
        .edges
        .iter()
        .zip(r.edge_values())
        .map(|(e, v)| (v / denormalize(e.kind, 1.0, &n)).ln())
        .collect();
    let f = |x: &[f64]| {
        let v: Vec<f64> = x.iter().map(|t| t.exp()).collect();
        cross_residual(cfg, &v, &n.num, &n.den)
    };
    let res = least_squares(f, &x0, CONVERGED, POLISH_ITER, LOG_BOUND);
    let values = cfg
        .edges
        .iter()
        .zip(&res.x)
        .map(|(e, x)| (e.label.clone(), denormalize(e.kind, x.exp(), &n)))
        .collect();
    Realization::new(r.config, values).ok()
}

/// Radical inverse in the given base (van der Corput).
fn radical_inverse(mut i: usize, base: usize) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

const PRIMES: [usize; 6] = [2, 3, 5, 7, 11, 13];

/// Starting points in natural-log space, Halton sequence over
/// [1e-3, 1e3] in each coordinate.
pub fn halton_starts(count: usize, dim: usize) -> Vec<Vec<f64>> {
    (1..=count)
        .map(|i| {
            (0..dim)
                .map(|d| {
                    let u = radical_inverse(i, PRIMES[d]);
                    (2.0 * u - 1.0) * START_DECADES * std::f64::consts::LN_10
                })
                .collect()
        })
        .collect()
}

pub fn fig7_family(dual: bool) -> Vec<ConfigId> {
    (1..=FIG7_VARIANTS)
        .map(|k| if dual { ConfigId::Fig7b(k) } else { ConfigId::Fig7a(k) })
        .collect()
}

fn numeric_gate(z: &Biquadratic, id: ConfigId) -> Result<(), Error> {
    let (a, b) = classify::cond_l7(&z.invariants());
    let ok = match id {
        ConfigId::Fig3a => a.holds(),
        ConfigId::Fig3b => b.holds(),
        _ => true,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::ConditionNotMet(format!("{id}: mixed-type bridge condition fails")))
    }
}

/// Multi-start matching of z on one configuration.
pub fn synth_numeric(z: &Biquadratic, id: ConfigId) -> Result<SynthesisOutcome, Error> {
    numeric_gate(z, id)?;
    if !z.all_positive() {
        return Err(Error::ZeroCoefficient);
    }
    let cfg = id.configuration();
    let n = normalize(z);
    let starts = halton_starts(STARTS, cfg.edges.len());
    let attempt = |x0: &Vec<f64>| -> Option<(SynthesisOutcome, usize)> {
        let f = |x: &[f64]| {
            let v: Vec<f64> = x.iter().map(|t| t.exp()).collect();
            cross_residual(cfg, &v, &n.num, &n.den)
        };
        let res = least_squares(f, x0, CONVERGED, MAX_ITER, LOG_BOUND);
        let values = cfg
            .edges
            .iter()
            .zip(&res.x)
            .map(|(e, x)| (e.label.clone(), denormalize(e.kind, x.exp(), &n)))
            .collect();
        let r = Realization::new(id, values).ok()?;
        let out = finish(z, r, SynthScratch::default(), Method::NumericMatch).ok()?;
        (out.residual <= NUMERIC_TOL).then_some((out, res.iterations))
    };
    let mut tried = 0;
    for block in starts.chunks(BLOCK) {
        let results = par::map(block, attempt);
        for (k, r) in results.into_iter().enumerate() {
            if let Some((mut out, iters)) = r {
                out.scratch.starts = Some(tried + k + 1);
                out.scratch.iterations = Some(iters);
                return Ok(out);
            }
        }
        tried += block.len();
    }
    Err(Error::SearchExhausted(format!("{id}: no match from {STARTS} starts")))
}

/// First configuration in the list that matches.
pub fn synth_numeric_family(z: &Biquadratic, ids: &[ConfigId]) -> Result<SynthesisOutcome, Error> {
    let mut last = Error::SearchExhausted("empty configuration list".into());
    for &id in ids {
        match synth_numeric(z, id) {
            Ok(o) => return Ok(o),
            Err(e) => last = e,
        }
    }
    Err(last)
}

/// Adjust one element of a three-reactive configuration (and a real pole
/// -p) so that numerator and denominator share the root -p, making the
/// impedance biquadratic. `values` are in edge order; `free` indexes the
/// element that is solved for.
pub fn cancelling_realization(id: ConfigId, values: &[f64], free: usize) -> Option<Realization> {
    let cfg = id.configuration();
    let eval_at = |x: &[f64]| {
        let mut v = values.to_vec();
        v[free] = x[0].exp();
        let p = x[1].exp();
        let (a, b) = expand(cfg, &v);
        let at = |q: &[f64]| {
            let val = poly::eval(q, (-p).into()).re;
            let s: f64 = q.iter().enumerate().map(|(k, c)| c.abs() * p.powi(k as i32)).sum();
            if s > 0.0 {
                val / s
            } else {
                0.0
            }
        };
        vec![at(&a), at(&b)]
    };
    let x0v = values[free].ln();
    for lp in [-4.0f64, -2.0, 0.0, 2.0, 4.0] {
        for dv in [0.0, -2.0, 2.0] {
            let res = least_squares(eval_at, &[x0v + dv, lp], 1e-15, 300, LOG_BOUND);
            if res.max_residual > 1e-13 {
                continue;
            }
            let mut v = values.to_vec();
            v[free] = res.x[0].exp();
            let pairs = cfg.edges.iter().zip(&v).map(|(e, x)| (e.label.clone(), *x)).collect();
            let r = Realization::new(id, pairs).ok()?;
            if forward_impedance(&r).is_ok() {
                return Some(r);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forward::forward_impedance;

    #[test]
    fn lm_solves_a_small_system() {
        let f = |x: &[f64]| vec![x[0] * x[0] - 4.0, x[0] * x[1] - 6.0];
        let r = least_squares(f, &[1.0, 1.0], 1e-14, 100, 1e3);
        assert!((r.x[0] - 2.0).abs() < 1e-10 && (r.x[1] - 3.0).abs() < 1e-10);
    }

    #[test]
    fn halton_is_deterministic_and_bounded() {
        let s = halton_starts(64, 5);
        assert_eq!(s.len(), 64);
        assert_eq!(s, halton_starts(64, 5));
        let b = START_DECADES * std::f64::consts::LN_10;
        assert!(s.iter().flatten().all(|x| x.abs() <= b));
        assert_eq!(radical_inverse(1, 2), 0.5);
        assert_eq!(radical_inverse(3, 2), 0.75);
    }

    #[test]
    fn normalization_round_trips_values() {
        let z = Biquadratic::new(1.0, 2.171e8, 4.824e9, 1.632, 1.575e8, 2.838e8).unwrap();
        let n = normalize(&z);
        for k in [Kind::R, Kind::L, Kind::C] {
            assert!(denormalize(k, 1.0, &n).is_finite());
        }
        assert!((n.num[0] * n.den[0] / (n.num[2] * n.den[2]) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fig3a_round_trip() {
        let r = Realization::from_pairs(
            ConfigId::Fig3a,
            &[("R1", 2.0), ("R2", 0.5), ("R3", 3.0), ("L1", 0.7), ("C1", 1.3)],
        )
        .unwrap();
        let z = forward_impedance(&r).unwrap();
        let (a, _) = classify::cond_l7(&z.invariants());
        if a.holds() {
            let out = synth_numeric(&z, ConfigId::Fig3a).unwrap();
            assert!(out.residual <= NUMERIC_TOL);
        } else {
            assert!(synth_numeric(&z, ConfigId::Fig3a).is_err());
        }
    }

    #[test]
    fn fig7_cancellation_and_recovery() {
        let id = ConfigId::Fig7a(1);
        let r = cancelling_realization(id, &[1.0, 0.8, 1.5, 0.6, 1.2], 4).expect("cancellation");
        let z = forward_impedance(&r).unwrap();
        let out = synth_numeric_family(&z, &fig7_family(false)).unwrap();
        assert!(out.residual <= NUMERIC_TOL);
    }

    #[test]
    fn example1_is_gated_off_fig3() {
        let z = Biquadratic::new(1.0, 2.171e8, 4.824e9, 1.632, 1.575e8, 2.838e8).unwrap();
        assert!(matches!(synth_numeric(&z, ConfigId::Fig3a), Err(Error::ConditionNotMet(_))));
    }
}
