//! Realizability map over the canonical (U, V) plane at fixed W.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::canonical::{canonical_invariants, from_canonical, CanonicalTriple};
use crate::classify::{classify_conditions, ClassificationReport};
use crate::error::Error;
use crate::biquad::MembershipVerdict;
use crate::par::Exec;
use crate::tolerance::{Sign, Tracked};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegionVerdict {
    NotPositiveReal,
    FewerThanFive,
    BridgeSameType,
    BridgeMixedRegular,
    BridgeMixedL7,
    NotBridgeRealizable,
}

impl RegionVerdict {
    pub fn name(self) -> &'static str {
        match self {
            RegionVerdict::NotPositiveReal => "NotPositiveReal",
            RegionVerdict::FewerThanFive => "FewerThanFive",
            RegionVerdict::BridgeSameType => "BridgeSameType",
            RegionVerdict::BridgeMixedRegular => "BridgeMixedRegular",
            RegionVerdict::BridgeMixedL7 => "BridgeMixedL7",
            RegionVerdict::NotBridgeRealizable => "NotBridgeRealizable",
        }
    }

    fn color(self) -> &'static str {
        match self {
            RegionVerdict::NotPositiveReal => "url(#hatch)",
            RegionVerdict::FewerThanFive => "#000000",
            RegionVerdict::BridgeSameType => "#4c72b0",
            RegionVerdict::BridgeMixedRegular => "#55a868",
            RegionVerdict::BridgeMixedL7 => "#c4ad3a",
            RegionVerdict::NotBridgeRealizable => "#ffffff",
        }
    }
}

/// Region verdict implied by a classification report.
pub fn verdict_of(report: &ClassificationReport) -> RegionVerdict {
    match report.membership {
        MembershipVerdict::NotPositiveReal => return RegionVerdict::NotPositiveReal,
        MembershipVerdict::InZb => {}
        _ => return RegionVerdict::FewerThanFive,
    }
    let c = report.conditions.as_ref().expect("conditions for a member");
    if c.t3.holds() {
        RegionVerdict::BridgeSameType
    } else if c.t5.holds() && c.regular.holds() {
        RegionVerdict::BridgeMixedRegular
    } else if c.t5.holds() {
        RegionVerdict::BridgeMixedL7
    } else {
        RegionVerdict::NotBridgeRealizable
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Curve {
    Sigma,
    GammaProduct,
    LambdaStarProduct,
    Rc,
}

impl Curve {
    pub const ALL: [Curve; 4] = [Curve::Sigma, Curve::GammaProduct, Curve::LambdaStarProduct, Curve::Rc];

    pub fn name(self) -> &'static str {
        match self {
            Curve::Sigma => "sigma_c",
            Curve::GammaProduct => "gamma_ac*gamma_bc",
            Curve::LambdaStarProduct => "lambda_c_star*lambda_c_star_dag",
            Curve::Rc => "R_c",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionCell {
    #[serde(rename = "U")]
    pub u: f64,
    #[serde(rename = "V")]
    pub v: f64,
    pub verdict: RegionVerdict,
    pub boundary_flags: Vec<Curve>,
}

fn curve_signs(u: f64, v: f64, w: f64) -> [Sign; 4] {
    let ci = canonical_invariants(CanonicalTriple { u, v, w });
    let s = |t: Tracked| t.sign().verdict;
    [
        s(ci.sigma_c),
        s(ci.gamma_ac * ci.gamma_bc),
        s(ci.lambda_c_star * ci.lambda_c_star_dag),
        s(ci.r_c),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionSpec {
    pub w: f64,
    pub u_range: (f64, f64),
    pub v_range: (f64, f64),
    pub grid: usize,
}

impl RegionSpec {
    fn validate(&self) -> Result<(), Error> {
        let ok_range = |(lo, hi): (f64, f64)| lo.is_finite() && hi.is_finite() && lo >= 0.0 && hi > lo;
        if !(self.w.is_finite() && self.w > 0.0) {
            return Err(Error::BadRange(format!("W must be positive, got {}", self.w)));
        }
        if !ok_range(self.u_range) || !ok_range(self.v_range) {
            return Err(Error::BadRange("ranges must satisfy 0 <= lo < hi".into()));
        }
        if self.grid < 2 {
            return Err(Error::BadRange(format!("grid must be at least 2, got {}", self.grid)));
        }
        Ok(())
    }

    /// Sample points: the right end of each of `grid` equal steps, so the
    /// range is (lo, hi].
    pub fn points(range: (f64, f64), grid: usize) -> Vec<f64> {
        let d = (range.1 - range.0) / grid as f64;
        (0..grid).map(|i| range.0 + d * (i + 1) as f64).collect()
    }

    /// Cell edges half a step either side of each point.
    fn edges(range: (f64, f64), grid: usize) -> Vec<f64> {
        let d = (range.1 - range.0) / grid as f64;
        (0..=grid).map(|k| range.0 + d * (k as f64 + 0.5)).collect()
    }
}

pub fn region_sweep(w: f64, u_range: (f64, f64), v_range: (f64, f64), grid: usize) -> Result<Vec<RegionCell>, Error> {
    region_sweep_with(
        Exec::default(),
        RegionSpec {
            w,
            u_range,
            v_range,
            grid,
        },
    )
}

/// Row-major over V (outer) then U.
pub fn region_sweep_with(exec: Exec, spec: RegionSpec) -> Result<Vec<RegionCell>, Error> {
    spec.validate()?;
    let us = RegionSpec::points(spec.u_range, spec.grid);
    let vs = RegionSpec::points(spec.v_range, spec.grid);
    let ue = RegionSpec::edges(spec.u_range, spec.grid);
    let ve = RegionSpec::edges(spec.v_range, spec.grid);
    let w = spec.w;
    let corner_rows: Vec<Vec<[Sign; 4]>> = exec.map(&ve, |&v| ue.iter().map(|&u| curve_signs(u, v, w)).collect());
    let rows: Vec<usize> = (0..spec.grid).collect();
    let cells = exec.map(&rows, |&j| {
        let v = vs[j];
        us.iter()
            .enumerate()
            .map(|(i, &u)| {
                let z = from_canonical(CanonicalTriple { u, v, w });
                let verdict = verdict_of(&classify_conditions(&z));
                let centre = curve_signs(u, v, w);
                let corners = [
                    corner_rows[j][i],
                    corner_rows[j][i + 1],
                    corner_rows[j + 1][i],
                    corner_rows[j + 1][i + 1],
                ];
                let boundary_flags = Curve::ALL
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| {
                        let mut signs = corners.iter().map(|c| c[*k]).chain([centre[*k]]);
                        let first = signs.next().unwrap();
                        first == Sign::Boundary || signs.any(|s| s != first)
                    })
                    .map(|(_, c)| *c)
                    .collect();
                RegionCell {
                    u,
                    v,
                    verdict,
                    boundary_flags,
                }
            })
            .collect::<Vec<_>>()
    });
    Ok(cells.into_iter().flatten().collect())
}

pub fn to_csv(cells: &[RegionCell]) -> String {
    let mut s = String::from("U,V,verdict,flags\n");
    for c in cells {
        let flags: Vec<&str> = c.boundary_flags.iter().map(|f| f.name()).collect();
        let _ = writeln!(s, "{},{},{},{}", c.u, c.v, c.verdict.name(), flags.join("|"));
    }
    s
}

/// One rectangle per cell, V increasing upwards; hatched where not
/// positive-real, outlined where a boundary curve passes.
pub fn to_svg(cells: &[RegionCell], spec: &RegionSpec) -> String {
    let px = 2usize;
    let side = spec.grid * px;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{side}" height="{side}" viewBox="0 0 {side} {side}">"#
    );
    s.push_str(
        r##"<defs><pattern id="hatch" width="4" height="4" patternUnits="userSpaceOnUse"><rect width="4" height="4" fill="#dddddd"/><path d="M0,4 L4,0" stroke="#888888" stroke-width="0.6"/></pattern></defs>"##,
    );
    s.push('\n');
    for (k, c) in cells.iter().enumerate() {
        let (j, i) = (k / spec.grid, k % spec.grid);
        let y = side - (j + 1) * px;
        let fill = if c.boundary_flags.iter().any(|f| *f != Curve::Sigma) {
            "#d62728"
        } else {
            c.verdict.color()
        };
        let _ = writeln!(s, r#"<rect x="{}" y="{y}" width="{px}" height="{px}" fill="{fill}"/>"#, i * px);
    }
    s.push_str("</svg>\n");
    s
}
