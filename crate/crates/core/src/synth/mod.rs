//! Element values for a given impedance.
//!
//! Closed forms cover the first, second, fourth and fifth bridge figures and
//! the No. 104 series-parallel network; the (b) sides go through the dual.
//! Configurations without printed formulas use [`numeric`].

pub mod numeric;

use serde::{Deserialize, Serialize};

use crate::biquad::{Biquadratic, InvariantSet};
use crate::classify::{self, Side};
use crate::error::Error;
use crate::forward::forward_impedance;
use crate::poly::{quadratic_roots_tracked, quadratic_roots_with_discriminant, QuadRoots};
use crate::tolerance::{Tracked, Truth};
use crate::topology::{dual_realization, star_mesh_lift, ConfigId, Realization};

/// Largest cross-product residual accepted from a closed form.
pub const CLOSED_FORM_TOL: f64 = 1e-8;
/// Closed-form results above this residual get a refinement pass.
const POLISH_ABOVE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    NumericMatch,
}

/// Intermediate quantities kept for inspection.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SynthScratch {
    /// The unknown the defining quadratic is solved for.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unknown: Option<String>,
    /// Quadratic coefficients, highest power first.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quadratic: Option<[f64; 3]>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub roots: Vec<f64>,
    /// Roots that passed the admissibility constraints.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub admissible: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chosen: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch: Option<String>,
    /// Synthesized on 1/Z and mapped back through the dual graph.
    #[serde(default)]
    pub via_dual: bool,
    /// Closed-form values refined against the matching equations.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub polished: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub starts: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthesisOutcome {
    pub realization: Realization,
    pub scratch: SynthScratch,
    pub residual: f64,
    pub method: Method,
}

fn finish(
    z: &Biquadratic,
    realization: Realization,
    scratch: SynthScratch,
    method: Method,
) -> Result<SynthesisOutcome, Error> {
    let residual = z.equivalence_residual(&forward_impedance(&realization)?);
    Ok(SynthesisOutcome {
        realization,
        scratch,
        residual,
        method,
    })
}

/// Closed-form outcome, refined when cancellation in the formulas cost
/// digits, and rejected if it still does not match.
fn closed(z: &Biquadratic, r: Realization, scratch: SynthScratch) -> Option<SynthesisOutcome> {
    let out = finish(z, r, scratch, Method::ClosedForm).ok()?;
    let out = if out.residual > POLISH_ABOVE {
        match numeric::polish(z, &out.realization).and_then(|p| finish(z, p, out.scratch.clone(), Method::ClosedForm).ok()) {
            Some(mut p) if p.residual < out.residual => {
                p.scratch.polished = true;
                p
            }
            _ => out,
        }
    } else {
        out
    };
    (out.residual <= CLOSED_FORM_TOL).then_some(out)
}

/// Map an outcome on 1/Z to the dual configuration realizing Z.
fn through_dual(z: &Biquadratic, out: SynthesisOutcome) -> Result<SynthesisOutcome, Error> {
    let r = dual_realization(&out.realization)?;
    let mut scratch = out.scratch;
    scratch.via_dual = true;
    finish(z, r, scratch, out.method)
}

fn positive(vals: &[f64]) -> bool {
    vals.iter().all(|v| v.is_finite() && *v > 0.0)
}

fn roots_of(a: Tracked, b: Tracked, c: Tracked) -> (QuadRoots, [f64; 3]) {
    (quadratic_roots_tracked(a, b, c), [a.value, b.value, c.value])
}

/// Roots when b^2 - 4ac is known to equal k times a product of invariants:
/// the product keeps its digits near a double root where b^2 - 4ac does
/// not, and it is clamped only when one of the factors is on its boundary.
fn roots_factored(a: Tracked, b: Tracked, c: Tracked, k: f64, factors: &[Tracked]) -> (QuadRoots, [f64; 3]) {
    let disc = factors.iter().fold(k, |acc, f| acc * f.value);
    let on_boundary = factors.iter().any(|f| f.sign().is_boundary());
    (
        quadratic_roots_with_discriminant(a, b, c, disc, on_boundary),
        [a.value, b.value, c.value],
    )
}

fn gate(t: Truth, what: &str) -> Result<(), Error> {
    if t.holds() {
        Ok(())
    } else {
        Err(Error::ConditionNotMet(what.to_string()))
    }
}

// ---------------------------------------------------------------------------
// First figure pair.

/// One closed-form outcome per admissible root of the R1 quadratic.
fn fig1a_all(z: &Biquadratic) -> Result<Vec<SynthesisOutcome>, Error> {
    let inv = z.invariants();
    let [a2, a1, a0, b2, b1, b0] = z.coeffs();
    let m2 = inv.m.value * inv.m.value;
    let (q, quad) = roots_factored(
        inv.b0() * inv.b2() * inv.gamma_a,
        -inv.mr_term(),
        inv.a0() * inv.a2() * inv.gamma_b,
        m2,
        &[inv.r, inv.r - inv.p4() * 4.0],
    );
    let (c, a, m) = (inv.c.value, inv.a.value, inv.m.value);
    let mut scratch = SynthScratch {
        unknown: Some("R1".into()),
        quadratic: Some(quad),
        roots: q.roots.clone(),
        k: Some(1.0 / b0),
        ..Default::default()
    };
    let mut found = vec![];
    for &r1 in q.roots.iter().filter(|r| **r > 0.0) {
        let d = a0 - b0 * r1;
        let r2 = d / b0;
        let r3 = a2 * r1 / (b2 * r1 - a2);
        let c1 = ((a1 * a2 * b0 + a0 * c) * r1 - a0 * a1 * a2) / (d * r1 * r1 * m);
        let c2 = ((a2 * b0 * b1 + b2 * a) - b0 * b1 * b2 * r1) / (d * m);
        if !positive(&[r1, r2, r3, c1, c2]) {
            continue;
        }
        scratch.admissible.push(r1);
        let r = Realization::from_pairs(
            ConfigId::Fig1a,
            &[("R1", r1), ("R2", r2), ("R3", r3), ("C1", c1), ("C2", c2)],
        )?;
        found.push((r1, r));
    }
    if found.is_empty() {
        return Err(Error::NoAdmissibleRoot("fig1a: no root gives positive values".into()));
    }
    let outs: Vec<_> = found
        .into_iter()
        .filter_map(|(r1, r)| {
            let mut sc = scratch.clone();
            sc.chosen = Some(r1);
            closed(z, r, sc)
        })
        .collect();
    if outs.is_empty() {
        return Err(Error::NoAdmissibleRoot("fig1a: residual check failed".into()));
    }
    Ok(outs)
}

fn fig1a_core(z: &Biquadratic) -> Result<SynthesisOutcome, Error> {
    Ok(fig1a_all(z)?.swap_remove(0))
}

/// Every admissible root of the first figure, in ascending R1 order (side
/// chosen by the sign of B as in [`synth_fig1`]).
pub fn synth_fig1_alternatives(z: &Biquadratic) -> Result<Vec<SynthesisOutcome>, Error> {
    let c = classify::cond_t1(&z.invariants());
    gate(c.holds, "fig1: R - 4a0a2b0b2 >= 0 fails")?;
    match c.side {
        Some(Side::A) => fig1a_all(z),
        Some(Side::B) => fig1a_all(&z.reciprocal())?
            .into_iter()
            .map(|o| through_dual(z, o))
            .collect(),
        None => Err(Error::ConditionNotMet("fig1: B is on its boundary".into())),
    }
}

/// First figure: side (a) when B > 0, side (b) through the dual otherwise.
pub fn synth_fig1(z: &Biquadratic) -> Result<SynthesisOutcome, Error> {
    let c = classify::cond_t1(&z.invariants());
    gate(c.holds, "fig1: R - 4a0a2b0b2 >= 0 fails")?;
    match c.side {
        Some(Side::A) => fig1a_core(z),
        Some(Side::B) => through_dual(z, fig1a_core(&z.reciprocal())?),
        None => Err(Error::ConditionNotMet("fig1: B is on its boundary".into())),
    }
}

// ---------------------------------------------------------------------------
// Second figure pair.

fn fig2a_unequal(z: &Biquadratic, inv: &InvariantSet, scratch: &mut SynthScratch) -> Option<Realization> {
    let [a2, a1, a0, b2, b1, b0] = z.coeffs();
    let (q, quad) = roots_factored(
        inv.b0() * inv.eb,
        -(inv.r + inv.a2() * inv.b0() * inv.b * 2.0),
        inv.a2() * inv.da,
        1.0,
        &[inv.r, classify::t2a_quantity(inv)],
    );
    scratch.unknown = Some("R3".into());
    scratch.quadratic = Some(quad);
    scratch.roots = q.roots.clone();
    let c = inv.c.value;
    let mut found = None;
    for &r3 in q.roots.iter().filter(|r| **r > 0.0) {
        let p1 = b2 * r3 - a2;
        let p2 = a0 - b0 * r3;
        let p3 = b0 * (c - 2.0 * a2 * b1) * c * r3 + a2 * (a0 * a2 * b1 * b1 - a1 * a1 * b0 * b2);
        if !(p1 > 0.0 && p2 > 0.0 && p3 > 0.0) {
            continue;
        }
        let lambda = 1.0 - 4.0 * a2 * b0 * r3 / (p1 * p2);
        if lambda <= 1e-12 {
            continue;
        }
        let sq = lambda.sqrt();
        let r1 = p2 * (1.0 + sq) / (2.0 * b0);
        let r2 = p2 * (1.0 - sq) / (2.0 * b0);
        let c1 = (a1 - b1 * r2) / (b0 * (r2 + r3) * (r1 - r2));
        let c2 = (b1 * r1 - a1) / (b0 * (r1 + r3) * (r1 - r2));
        if !positive(&[r1, r2, r3, c1, c2]) {
            continue;
        }
        scratch.admissible.push(r3);
        if found.is_none() {
            scratch.chosen = Some(r3);
            scratch.lambda = Some(lambda);
            found = Realization::from_pairs(
                ConfigId::Fig2a,
                &[("R1", r1), ("R2", r2), ("R3", r3), ("C1", c1), ("C2", c2)],
            )
            .ok();
        }
    }
    found
}

/// The equal-resistor branch of the second figure.
fn fig2a_equal(inv: &InvariantSet, scratch: &mut SynthScratch) -> Option<Realization> {
    let (a1, b1, b0, b2) = (inv.a1(), inv.b1(), inv.b0(), inv.b2());
    let a = inv.a;
    let t = a * 2.0 - a1 * b0;
    let c18a = (a1 * b1 * b1 * t - b2 * a * a * 4.0).sign();
    let lhs = a1 * b2 * (a - a1 * b0);
    let rhs = inv.a2() * b1 * t;
    let c18b = (lhs - rhs).sign();
    if !(c18a.ge0().holds() && c18b.is_boundary() && rhs.value > 0.0) {
        return None;
    }
    let r1 = a1.value / b1.value;
    let r3 = (a.value - a1.value * b0.value) / (b0.value * b1.value);
    let (q, quad) = roots_of(a1 * a * t, -(a1 * b1 * b1 * t), b1 * b1 * b2 * a);
    scratch.branch = Some("equal_resistors".into());
    scratch.unknown = Some("C2".into());
    scratch.quadratic = Some(quad);
    scratch.roots = q.roots.clone();
    scratch.admissible.clear();
    for &c2 in q.roots.iter().filter(|r| **r > 0.0) {
        let c1 = b1.value * b1.value * b2.value / (a1.value * t.value * c2);
        if positive(&[r1, r3, c1, c2]) {
            scratch.admissible.push(c2);
        }
    }
    let c2 = *scratch.admissible.first()?;
    scratch.chosen = Some(c2);
    let c1 = b1.value * b1.value * b2.value / (a1.value * t.value * c2);
    Realization::from_pairs(
        ConfigId::Fig2a,
        &[("R1", r1), ("R2", r1), ("R3", r3), ("C1", c1), ("C2", c2)],
    )
    .ok()
}

fn fig2a_core(z: &Biquadratic) -> Result<SynthesisOutcome, Error> {
    let inv = z.invariants();
    let mut scratch = SynthScratch {
        k: Some(1.0 / z.b0),
        ..Default::default()
    };
    if let Some(r) = fig2a_unequal(z, &inv, &mut scratch) {
        if let Some(out) = closed(z, r, scratch.clone()) {
            return Ok(out);
        }
    }
    let mut eq = scratch.clone();
    if let Some(r) = fig2a_equal(&inv, &mut eq) {
        if let Some(out) = closed(z, r, eq) {
            return Ok(out);
        }
    }
    Err(Error::NoAdmissibleRoot("fig2a: no admissible root".into()))
}

pub fn synth_fig2_side(z: &Biquadratic, side: Side) -> Result<SynthesisOutcome, Error> {
    let (a, b) = classify::cond_t2(&z.invariants());
    match side {
        Side::A => {
            gate(a.holds, "fig2a: R > 0 and R - 4a2b0(a1b1 - 2B) >= 0 fails")?;
            fig2a_core(z)
        }
        Side::B => {
            gate(b.holds, "fig2b: R > 0 and R - 4a0b2(a1b1 + 2B) >= 0 fails")?;
            through_dual(z, fig2a_core(&z.reciprocal())?)
        }
    }
}

/// Second figure, side (a) preferred.
pub fn synth_fig2(z: &Biquadratic) -> Result<SynthesisOutcome, Error> {
    synth_fig2_side(z, Side::A).or_else(|e| match e {
        Error::ConditionNotMet(_) => synth_fig2_side(z, Side::B),
        e => Err(e),
    })
}

// ---------------------------------------------------------------------------
// No. 104 and the fourth figure pair.

pub fn synth_no104(z: &Biquadratic) -> Result<SynthesisOutcome, Error> {
    let inv = z.invariants();
    gate(classify::cond_no104(&inv).holds, "no104 condition fails")?;
    let [a2, _, a0, b2, b1, b0] = z.coeffs();
    let p = inv.b0() * inv.b2();
    let (q, quad) = roots_factored(
        p * inv.delta_b,
        -(p * inv.delta_ab * 2.0),
        inv.gamma_a,
        -4.0 * b0 * b2 * b1 * b1,
        &[inv.r],
    );
    let bound = (a2 / b2).min(a0 / b0);
    let m = inv.m.value;
    let mut scratch = SynthScratch {
        unknown: Some("R3".into()),
        quadratic: Some(quad),
        roots: q.roots.clone(),
        k: Some(1.0 / b0),
        ..Default::default()
    };
    let mut found = None;
    for &r3 in q.roots.iter().filter(|r| **r > 0.0 && **r < bound) {
        let r1 = (a2 - b2 * r3) / b2;
        let r2 = (a0 - b0 * r3) / b0;
        let e = m - 2.0 * b0 * b2 * r3;
        let l1 = e / (b0 * b1);
        let c1 = b1 * b2 / e;
        if !positive(&[r1, r2, r3, l1, c1]) {
            continue;
        }
        scratch.admissible.push(r3);
        if found.is_none() {
            scratch.chosen = Some(r3);
            found = Some(Realization::from_pairs(
                ConfigId::Fig6No104,
                &[("R1", r1), ("R2", r2), ("R3", r3), ("L1", l1), ("C1", c1)],
            )?);
        }
    }
    let r = found.ok_or_else(|| Error::NoAdmissibleRoot("no104: no root below the bound".into()))?;
    closed(z, r, scratch).ok_or_else(|| Error::NoAdmissibleRoot("no104: residual check failed".into()))
}

fn fig4a_core(z: &Biquadratic) -> Result<SynthesisOutcome, Error> {
    let out = synth_no104(z)?;
    let lifted = star_mesh_lift(&out.realization)?;
    let mut scratch = out.scratch;
    scratch.branch = Some("star_mesh".into());
    closed(z, lifted, scratch).ok_or_else(|| Error::NoAdmissibleRoot("fig4a: residual check after lift failed".into()))
}

pub fn synth_fig4_side(z: &Biquadratic, side: Side) -> Result<SynthesisOutcome, Error> {
    match side {
        Side::A => fig4a_core(z),
        Side::B => through_dual(z, fig4a_core(&z.reciprocal())?),
    }
}

pub fn synth_fig4(z: &Biquadratic) -> Result<SynthesisOutcome, Error> {
    gate(classify::cond_t4(&z.invariants()).holds, "fig4 condition fails")?;
    synth_fig4_side(z, Side::A).or_else(|_| synth_fig4_side(z, Side::B))
}

// ---------------------------------------------------------------------------
// Fifth figure.

pub fn synth_fig5(z: &Biquadratic) -> Result<SynthesisOutcome, Error> {
    let inv = z.invariants();
    gate(classify::cond_t6(&inv).holds, "fig5 condition fails")?;
    let [a2, a1, a0, b2, b1, b0] = z.coeffs();
    let (q, quad) = roots_factored(
        inv.b0() * inv.b2() * inv.gamma_a,
        inv.mr_term(),
        inv.a0() * inv.a2() * inv.gamma_b,
        inv.m.value * inv.m.value,
        &[inv.r, inv.r - inv.p4() * 4.0],
    );
    let (c, m) = (inv.c.value, inv.m.value);
    let r1 = a0 / b0;
    let r3 = a2 / b2;
    let mut scratch = SynthScratch {
        unknown: Some("R2".into()),
        quadratic: Some(quad),
        roots: q.roots.clone(),
        ..Default::default()
    };
    let mut found = None;
    for &r2 in q.roots.iter().filter(|r| **r > 0.0) {
        let nl = (a1 * a2 * b0 + a0 * c) * r2 + a0 * a1 * a2;
        let nc = b0 * b1 * b2 * r2 + (a0 * b1 * b2 - b0 * c);
        if !(nl > 0.0 && nc > 0.0) {
            continue;
        }
        let d = (b0 * r2 + a0) * m;
        let (l1, c1) = (nl / d, nc / d);
        if !positive(&[r1, r2, r3, l1, c1]) {
            continue;
        }
        scratch.admissible.push(r2);
        if found.is_none() {
            scratch.chosen = Some(r2);
            scratch.k = Some((b2 * r2 + a2) / (b0 * b2));
            found = Some(Realization::from_pairs(
                ConfigId::Fig5,
                &[("R1", r1), ("R2", r2), ("R3", r3), ("L1", l1), ("C1", c1)],
            )?);
        }
    }
    let r = found.ok_or_else(|| Error::NoAdmissibleRoot("fig5: no root meets the constraints".into()))?;
    closed(z, r, scratch).ok_or_else(|| Error::NoAdmissibleRoot("fig5: residual check failed".into()))
}

// ---------------------------------------------------------------------------
// Dispatch.

/// Synthesize on one named configuration. Fig7 ids with variant 0 try every
/// placement of the family.
pub fn synth_config(z: &Biquadratic, id: ConfigId) -> Result<SynthesisOutcome, Error> {
    let want = |out: SynthesisOutcome| {
        if out.realization.config == id {
            Ok(out)
        } else {
            Err(Error::ConditionNotMet(format!("{id}: condition selects {}", out.realization.config)))
        }
    };
    match id {
        ConfigId::Fig1a | ConfigId::Fig1b => want(synth_fig1(z)?),
        ConfigId::Fig2a => synth_fig2_side(z, Side::A),
        ConfigId::Fig2b => synth_fig2_side(z, Side::B),
        ConfigId::Fig4a => synth_fig4_side(z, Side::A),
        ConfigId::Fig4b => synth_fig4_side(z, Side::B),
        ConfigId::Fig5 => synth_fig5(z),
        ConfigId::Fig6No104 => synth_no104(z),
        ConfigId::Fig3a | ConfigId::Fig3b => numeric::synth_numeric(z, id),
        ConfigId::Fig7a(0) => numeric::synth_numeric_family(z, &numeric::fig7_family(false)),
        ConfigId::Fig7b(0) => numeric::synth_numeric_family(z, &numeric::fig7_family(true)),
        ConfigId::Fig7a(_) | ConfigId::Fig7b(_) => numeric::synth_numeric(z, id),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RouteFailure {
    pub config: ConfigId,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthesisReport {
    pub outcomes: Vec<SynthesisOutcome>,
    pub failures: Vec<RouteFailure>,
}

/// Every admissible route, successes sorted by (method, residual).
pub fn synthesize(z: &Biquadratic) -> SynthesisReport {
    let mut report = SynthesisReport {
        outcomes: vec![],
        failures: vec![],
    };
    if !z.membership().in_zb() {
        return report;
    }
    let c = classify::conditions(z);
    let mut routes: Vec<ConfigId> = c.recommended();
    if !c.t7.holds() {
        routes.push(ConfigId::Fig7a(0));
        routes.push(ConfigId::Fig7b(0));
    }
    for id in routes {
        match synth_config(z, id) {
            Ok(o) => report.outcomes.push(o),
            Err(e) => report.failures.push(RouteFailure {
                config: id,
                error: e.to_string(),
            }),
        }
    }
    report.outcomes.sort_by(|x, y| {
        x.method
            .cmp(&y.method)
            .then(x.residual.partial_cmp(&y.residual).unwrap_or(std::cmp::Ordering::Equal))
    });
    report
}

/// Numeric three-reactive feasibility probe over both Fig7 families.
pub fn fig7_probe(z: &Biquadratic) -> Option<SynthesisOutcome> {
    let mut all = numeric::fig7_family(false);
    all.extend(numeric::fig7_family(true));
    numeric::synth_numeric_family(z, &all).ok()
}
