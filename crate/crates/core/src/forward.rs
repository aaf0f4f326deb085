//! Forward analysis: the impedance of a realization, three ways.
//!
//! * closed forms for the configurations with printed polynomials,
//! * a generic matrix-tree expansion: Z = sum over 2-forests separating the
//!   terminals of the product of admittances, divided by the same sum over
//!   spanning trees,
//! * direct complex nodal analysis at a given frequency (independent of both).

use num_complex::Complex64;

use crate::biquad::Biquadratic;
use crate::error::Error;
use crate::poly;
use crate::topology::{ConfigId, Configuration, Kind, Realization, T, TP};

/// Admittance of one element as (numerator, denominator), each a + b s.
fn admittance(kind: Kind, v: f64) -> ([f64; 2], [f64; 2]) {
    match kind {
        Kind::R => ([1.0, 0.0], [v, 0.0]),
        Kind::C => ([0.0, v], [1.0, 0.0]),
        Kind::L => ([1.0, 0.0], [0.0, v]),
    }
}

const MAX_EDGES: usize = 8;

/// Raw numerator and denominator of Z(s) (ascending powers, common powers of
/// s not yet removed) for element values given in edge order.
pub fn expand(cfg: &Configuration, values: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = cfg.edges.len();
    assert!(n < MAX_EDGES);
    let adm: Vec<_> = cfg
        .edges
        .iter()
        .zip(values)
        .map(|(e, &v)| admittance(e.kind, v))
        .collect();
    // Every factor is linear in s, so a product of n of them fits in n + 1
    // coefficients.
    let sum = |masks: &[u32]| {
        let mut acc = [0.0; MAX_EDGES];
        for &m in masks {
            let mut term = [0.0; MAX_EDGES];
            term[0] = 1.0;
            for (i, (num, den)) in adm.iter().enumerate() {
                let [c0, c1] = if m & (1 << i) != 0 { *num } else { *den };
                for k in (0..=i + 1).rev() {
                    let lo = if k > 0 { term[k - 1] * c1 } else { 0.0 };
                    term[k] = term[k] * c0 + lo;
                }
            }
            for k in 0..=n {
                acc[k] += term[k];
            }
        }
        acc[..=n].to_vec()
    };
    (sum(&cfg.two_forests), sum(&cfg.trees))
}

/// Drop the shared power of s and trailing zeros. Every monomial of the raw
/// expansion is nonnegative, so zeros are exact.
pub fn strip(mut num: Vec<f64>, mut den: Vec<f64>) -> (Vec<f64>, Vec<f64>) {
    while !num.is_empty() && !den.is_empty() && num[0] == 0.0 && den[0] == 0.0 {
        num.remove(0);
        den.remove(0);
    }
    while num.len() > 1 && *num.last().unwrap() == 0.0 {
        num.pop();
    }
    while den.len() > 1 && *den.last().unwrap() == 0.0 {
        den.pop();
    }
    (num, den)
}

fn to_biquadratic(num: &[f64], den: &[f64]) -> Result<Biquadratic, Error> {
    if num.len() > 3 || den.len() > 3 {
        return Err(Error::NotBiquadratic);
    }
    let c = |p: &[f64], k: usize| p.get(k).copied().unwrap_or(0.0);
    Biquadratic::new(c(num, 2), c(num, 1), c(num, 0), c(den, 2), c(den, 1), c(den, 0))
}

/// Relative tolerance for declaring a numerator and denominator root common.
const COMMON_ROOT_TOL: f64 = 1e-6;

/// Cancel one common real root of a cubic pair, if there is one.
fn cancel_common_root(num: &[f64], den: &[f64]) -> Result<(Vec<f64>, Vec<f64>), Error> {
    let rn = poly::roots(num);
    let rd = poly::roots(den);
    let mut best: Option<(f64, f64)> = None;
    for a in &rn {
        for b in &rd {
            let gap = (a - b).norm() / a.norm().max(b.norm()).max(f64::MIN_POSITIVE);
            if best.map_or(true, |(g, _)| gap < g) {
                best = Some((gap, 0.5 * (a.re + b.re)));
            }
        }
    }
    match best {
        Some((gap, r)) if gap <= COMMON_ROOT_TOL => {
            let clean = |p: Vec<f64>| {
                let m = p.iter().fold(0.0f64, |m, x| m.max(x.abs()));
                p.into_iter()
                    .map(|x| if x.abs() <= 1e-12 * m { 0.0 } else { x })
                    .collect::<Vec<f64>>()
            };
            Ok((clean(poly::deflate(num, r)), clean(poly::deflate(den, r))))
        }
        _ => Err(Error::NotBiquadratic),
    }
}

/// Impedance by the generic expansion, for any catalogued configuration.
pub fn generic_impedance(r: &Realization) -> Result<Biquadratic, Error> {
    let cfg = r.configuration();
    let (num, den) = expand(cfg, &r.edge_values());
    let (mut num, mut den) = strip(num, den);
    if num.len() > 3 || den.len() > 3 {
        let (n, d) = cancel_common_root(&num, &den)?;
        let (n, d) = strip(n, d);
        num = n;
        den = d;
    }
    to_biquadratic(&num, &den)
}

/// The printed closed forms, for the four configurations that have one.
pub fn closed_form(r: &Realization) -> Option<Biquadratic> {
    let v = |l: &str| r.values[l];
    let z = match r.config {
        ConfigId::Fig1a => {
            let (r1, r2, r3, c1, c2) = (v("R1"), v("R2"), v("R3"), v("C1"), v("C2"));
            [
                r1 * r2 * r3 * c1 * c2,
                (r1 * r2 + r2 * r3 + r1 * r3) * c1 + (r1 + r2) * r3 * c2,
                r1 + r2,
                (r1 + r3) * r2 * c1 * c2,
                (r1 + r3) * c1 + (r1 + r2 + r3) * c2,
                1.0,
            ]
        }
        ConfigId::Fig2a => {
            let (r1, r2, r3, c1, c2) = (v("R1"), v("R2"), v("R3"), v("C1"), v("C2"));
            [
                r1 * r2 * r3 * c1 * c2,
                (r2 + r3) * r1 * c1 + (r1 + r3) * r2 * c2,
                r1 + r2 + r3,
                (r1 * r2 + r2 * r3 + r3 * r1) * c1 * c2,
                (r2 + r3) * c1 + (r1 + r3) * c2,
                1.0,
            ]
        }
        ConfigId::Fig6No104 => {
            let (r1, r2, r3, l1, c1) = (v("R1"), v("R2"), v("R3"), v("L1"), v("C1"));
            [
                (r1 + r3) * l1 * c1,
                (r1 * r3 + r2 * r3 + r1 * r2) * c1 + l1,
                r2 + r3,
                l1 * c1,
                (r1 + r2) * c1,
                1.0,
            ]
        }
        ConfigId::Fig5 => {
            let (r1, r2, r3, l1, c1) = (v("R1"), v("R2"), v("R3"), v("L1"), v("C1"));
            [
                (r1 + r2) * r3 * l1 * c1,
                r1 * r2 * r3 * c1 + (r1 + r2 + r3) * l1,
                (r2 + r3) * r1,
                (r1 + r2) * l1 * c1,
                (r1 * r2 + r2 * r3 + r1 * r3) * c1 + l1,
                r2 + r3,
            ]
        }
        _ => return None,
    };
    Some(Biquadratic::raw(z))
}

/// Closed form when available, generic expansion otherwise.
pub fn forward_impedance(r: &Realization) -> Result<Biquadratic, Error> {
    match closed_form(r) {
        Some(z) => Ok(z),
        None => generic_impedance(r),
    }
}

/// Impedance at complex frequency s by nodal analysis (t' grounded, unit
/// current injected at t).
pub fn network_eval(r: &Realization, s: Complex64) -> Complex64 {
    let cfg = r.configuration();
    let n = cfg.nodes - 1;
    let idx = |node: usize| -> Option<usize> {
        if node == TP {
            None
        } else {
            Some(node - 1)
        }
    };
    let mut y = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for e in &cfg.edges {
        let v = r.values[&e.label];
        let g = match e.kind {
            Kind::R => Complex64::new(1.0 / v, 0.0),
            Kind::C => s * v,
            Kind::L => (s * v).inv(),
        };
        let (a, b) = (idx(e.a), idx(e.b));
        if let Some(a) = a {
            y[a][a] += g;
        }
        if let Some(b) = b {
            y[b][b] += g;
        }
        if let (Some(a), Some(b)) = (a, b) {
            y[a][b] -= g;
            y[b][a] -= g;
        }
    }
    // Symmetric diagonal scaling keeps the elimination well conditioned when
    // element values span many decades.
    let d: Vec<f64> = (0..n).map(|i| 1.0 / y[i][i].norm().sqrt()).collect();
    for i in 0..n {
        for j in 0..n {
            y[i][j] *= d[i] * d[j];
        }
    }
    let t = idx(T).unwrap();
    let mut rhs = vec![Complex64::new(0.0, 0.0); n];
    rhs[t] = Complex64::new(d[t], 0.0);
    let v = solve(y, rhs);
    v[t] * d[t]
}

/// Gaussian elimination with partial pivoting on a small dense system.
fn solve(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Vec<Complex64> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].norm().partial_cmp(&a[j][col].norm()).unwrap())
            .unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        let p = a[col][col];
        for row in (col + 1)..n {
            let f = a[row][col] / p;
            if f.norm() == 0.0 {
                continue;
            }
            for k in col..n {
                let t = a[col][k];
                a[row][k] -= f * t;
            }
            let t = b[col];
            b[row] -= f * t;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in (row + 1)..n {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    x
}

/// Characteristic frequency (a0 b0 / (a2 b2))^(1/4), or 1 when undefined.
pub fn characteristic_frequency(z: &Biquadratic) -> f64 {
    let b = ((z.a0 * z.b0) / (z.a2 * z.b2)).sqrt().sqrt();
    if b.is_finite() && b > 0.0 {
        b
    } else {
        1.0
    }
}

pub const AC_GRID_POINTS: usize = 512;

/// Log-spaced angular frequencies over [beta 1e-4, beta 1e4].
pub fn ac_grid(z: &Biquadratic) -> Vec<f64> {
    ac_grid_span(z, 4.0, AC_GRID_POINTS)
}

/// `points` log-spaced frequencies over beta 10^(+-decades).
pub fn ac_grid_span(z: &Biquadratic, decades: f64, points: usize) -> Vec<f64> {
    let beta = characteristic_frequency(z);
    (0..points)
        .map(|i| {
            let e = -decades + 2.0 * decades * i as f64 / (points - 1) as f64;
            beta * 10f64.powf(e)
        })
        .collect()
}

/// Largest relative error between the network (nodal analysis) and Z over
/// the grid.
pub fn ac_residual(r: &Realization, z: &Biquadratic, grid: &[f64]) -> f64 {
    grid.iter()
        .map(|&w| {
            let s = Complex64::new(0.0, w);
            let target = z.eval(s);
            (network_eval(r, s) - target).norm() / target.norm()
        })
        .fold(0.0, f64::max)
}

pub fn impedances_equivalent(z1: &Biquadratic, z2: &Biquadratic, tol: f64) -> bool {
    z1.equivalent(z2, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{catalog, dual_realization, star_mesh_lift};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_realization(id: ConfigId, rng: &mut ChaCha8Rng) -> Realization {
        let cfg = id.configuration();
        let pairs: Vec<(&str, f64)> = cfg
            .labels()
            .into_iter()
            .map(|l| (l, 10f64.powf(rng.gen_range(-2.0..2.0))))
            .collect();
        Realization::from_pairs(id, &pairs).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        let ones = |id| {
            let cfg: &Configuration = ConfigId::configuration(id);
            let pairs: Vec<(&str, f64)> = cfg.labels().into_iter().map(|l| (l, 1.0)).collect();
            Realization::from_pairs(id, &pairs).unwrap()
        };
        let z = forward_impedance(&ones(ConfigId::Fig1a)).unwrap();
        assert_eq!(z.coeffs(), [1.0, 5.0, 2.0, 2.0, 5.0, 1.0]);
        let r = Realization::from_pairs(
            ConfigId::Fig5,
            &[("R1", 1.0), ("R2", 1.0), ("R3", 2.0), ("L1", 1.0), ("C1", 1.0)],
        )
        .unwrap();
        let z = forward_impedance(&r).unwrap();
        let want = Biquadratic::new(4.0, 6.0, 3.0, 2.0, 6.0, 3.0).unwrap();
        assert!(z.equivalent(&want, 1e-15));
        let z = forward_impedance(&ones(ConfigId::Fig5)).unwrap();
        assert!(z.equivalent(&Biquadratic::new(1.0, 2.0, 1.0, 1.0, 2.0, 1.0).unwrap(), 1e-15));
    }

    #[test]
    fn generic_matches_closed_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for id in [ConfigId::Fig1a, ConfigId::Fig2a, ConfigId::Fig5, ConfigId::Fig6No104] {
            for _ in 0..200 {
                let r = random_realization(id, &mut rng);
                let a = closed_form(&r).unwrap();
                let b = generic_impedance(&r).unwrap();
                assert!(a.equivalent(&b, 1e-12), "{id}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn oracle_triangle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for c in catalog().iter().filter(|c| !matches!(c.id, ConfigId::Fig7a(_) | ConfigId::Fig7b(_))) {
            for _ in 0..200 {
                let r = random_realization(c.id, &mut rng);
                let z = generic_impedance(&r).unwrap();
                // Nodal analysis loses digits once one admittance dwarfs the
                // rest, so the tight check stays within two decades of beta.
                let near = ac_residual(&r, &z, &ac_grid_span(&z, 2.0, 64));
                assert!(near < 1e-9, "{} residual {near}", c.id);
                let wide = ac_residual(&r, &z, &ac_grid(&z));
                assert!(wide < 1e-6, "{} residual {wide}", c.id);
            }
        }
    }

    #[test]
    fn duality_swaps_coefficients() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for c in catalog().iter().filter(|c| c.id.dual().is_some()) {
            for _ in 0..50 {
                let r = random_realization(c.id, &mut rng);
                let d = dual_realization(&r).unwrap();
                let (n, dd) = strip_raw(&r);
                let (n2, d2) = strip_raw(&d);
                // Compare the raw expansions up to a common scale.
                let z1 = (n, dd);
                let z2 = (d2, n2);
                assert!(poly_pair_equivalent(&z1, &z2, 1e-12), "{}", c.id);
            }
        }
    }

    fn strip_raw(r: &Realization) -> (Vec<f64>, Vec<f64>) {
        let (n, d) = expand(r.configuration(), &r.edge_values());
        strip(n, d)
    }

    fn poly_pair_equivalent(p: &(Vec<f64>, Vec<f64>), q: &(Vec<f64>, Vec<f64>), tol: f64) -> bool {
        let flat = |x: &(Vec<f64>, Vec<f64>)| {
            let mut v = x.0.clone();
            v.resize(4, 0.0);
            let mut w = x.1.clone();
            w.resize(4, 0.0);
            v.extend(w);
            let m = v.iter().fold(0.0f64, |m, y| m.max(y.abs()));
            v.into_iter().map(|y| y / m).collect::<Vec<_>>()
        };
        let (a, b) = (flat(p), flat(q));
        (0..a.len()).all(|i| (0..a.len()).all(|j| (a[i] * b[j] - a[j] * b[i]).abs() <= tol))
    }

    #[test]
    fn star_mesh_preserves_impedance() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let r = random_realization(ConfigId::Fig6No104, &mut rng);
            let m = star_mesh_lift(&r).unwrap();
            let a = forward_impedance(&r).unwrap();
            let b = forward_impedance(&m).unwrap();
            assert!(a.equivalent(&b, 1e-9));
        }
    }

    #[test]
    fn swapping_internal_nodes_is_harmless() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let r = random_realization(ConfigId::Fig2a, &mut rng);
        let z = forward_impedance(&r).unwrap();
        // Swap n1 and n2 by permuting the arm values: t-n1 <-> t-n2, n1-t' <-> n2-t'.
        let mut cfg = r.configuration().clone();
        for e in cfg.edges.iter_mut() {
            let sw = |x: usize| match x {
                2 => 3,
                3 => 2,
                y => y,
            };
            e.a = sw(e.a);
            e.b = sw(e.b);
        }
        let (n, d) = expand(&cfg, &r.edge_values());
        let (n, d) = strip(n, d);
        let z2 = to_biquadratic(&n, &d).unwrap();
        assert!(z.equivalent(&z2, 1e-14));
    }

    #[test]
    fn ac_residual_detects_perturbation() {
        let r = Realization::from_pairs(
            ConfigId::Fig1a,
            &[("R1", 1.0), ("R2", 1.0), ("R3", 1.0), ("C1", 1.0), ("C2", 1.0)],
        )
        .unwrap();
        let z = forward_impedance(&r).unwrap();
        assert!(ac_residual(&r, &z, &ac_grid(&z)) <= 1e-10);
        let mut p = r.clone();
        *p.values.get_mut("R1").unwrap() *= 1.01;
        assert!(ac_residual(&p, &z, &ac_grid(&z)) > 1e-3);
    }

    #[test]
    fn three_reactive_generic_is_not_biquadratic() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = random_realization(ConfigId::Fig7a(1), &mut rng);
        assert!(matches!(generic_impedance(&r), Err(Error::NotBiquadratic)));
    }
}
