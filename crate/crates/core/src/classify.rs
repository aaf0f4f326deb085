//! Realizability conditions for the two-reactive bridge configurations and
//! the overall verdict.

use serde::{Deserialize, Serialize};

use crate::biquad::{Biquadratic, InvariantSet, MembershipVerdict};
use crate::canonical;
use crate::tolerance::{signs_not_all_same, SignWithTolerance, Tracked, Truth};
use crate::topology::ConfigId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    A,
    B,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub name: String,
    #[serde(flatten)]
    pub sign: SignWithTolerance,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionResult {
    pub id: String,
    pub holds: Truth,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub side: Option<Side>,
    pub witnesses: Vec<Witness>,
}

impl ConditionResult {
    fn new(id: &str, holds: Truth, witnesses: Vec<(&str, SignWithTolerance)>) -> Self {
        ConditionResult {
            id: id.to_string(),
            holds,
            side: None,
            witnesses: witnesses
                .into_iter()
                .map(|(n, s)| Witness {
                    name: n.to_string(),
                    sign: s,
                })
                .collect(),
        }
    }

    fn with_side(mut self, side: Option<Side>) -> Self {
        self.side = side;
        self
    }

    pub fn holds(&self) -> bool {
        self.holds.holds()
    }
}

fn sgn(t: Tracked) -> SignWithTolerance {
    t.sign()
}

/// Pick the B > 0 or B < 0 variant of a side-dependent test; a boundary B
/// leaves the test undecided.
fn by_b_sign(b: &SignWithTolerance, pos: Truth, neg: Truth) -> Truth {
    if b.is_positive() {
        pos
    } else if b.is_negative() {
        neg
    } else {
        Truth::BoundaryNo
    }
}

fn side_of(b: &SignWithTolerance) -> Option<Side> {
    if b.is_positive() {
        Some(Side::A)
    } else if b.is_negative() {
        Some(Side::B)
    } else {
        None
    }
}

/// R - 4 a0 a2 b0 b2 >= 0; the B sign picks the figure side.
pub fn cond_t1(inv: &InvariantSet) -> ConditionResult {
    let q = sgn(inv.r - inv.p4() * 4.0);
    let b = sgn(inv.b);
    ConditionResult::new("T1", q.ge0(), vec![("R-4a0a2b0b2", q), ("B", b)]).with_side(side_of(&b))
}

/// R - 4 a2 b0 (a1 b1 - 2B)
pub fn t2a_quantity(inv: &InvariantSet) -> Tracked {
    inv.r - inv.a2() * inv.b0() * (inv.a1() * inv.b1() - inv.b * 2.0) * 4.0
}

/// R - 4 a0 b2 (a1 b1 + 2B)
pub fn t2b_quantity(inv: &InvariantSet) -> Tracked {
    inv.r - inv.a0() * inv.b2() * (inv.a1() * inv.b1() + inv.b * 2.0) * 4.0
}

pub fn cond_t2(inv: &InvariantSet) -> (ConditionResult, ConditionResult) {
    let r = sgn(inv.r);
    let qa = sgn(t2a_quantity(inv));
    let qb = sgn(t2b_quantity(inv));
    (
        ConditionResult::new("T2a", r.gt0().and(qa.ge0()), vec![("R", r), ("R-4a2b0(a1b1-2B)", qa)])
            .with_side(Some(Side::A)),
        ConditionResult::new("T2b", r.gt0().and(qb.ge0()), vec![("R", r), ("R-4a0b2(a1b1+2B)", qb)])
            .with_side(Some(Side::B)),
    )
}

pub fn cond_t3(inv: &InvariantSet) -> ConditionResult {
    let r = sgn(inv.r);
    let q1 = sgn(t2b_quantity(inv));
    let q2 = sgn(t2a_quantity(inv));
    let q3 = sgn(inv.r - inv.p4() * 4.0);
    let holds = r.gt0().and(Truth::any([q1.ge0(), q2.ge0(), q3.ge0()]));
    ConditionResult::new(
        "T3",
        holds,
        vec![
            ("R", r),
            ("R-4a0b2(a1b1+2B)", q1),
            ("R-4a2b0(a1b1-2B)", q2),
            ("R-4a0a2b0b2", q3),
        ],
    )
}

/// The mixed-type bridge of the third figure pair. Side (a) needs B < 0,
/// side (b) needs B > 0; both carry the R < 0 gate.
pub fn cond_l7(inv: &InvariantSet) -> (ConditionResult, ConditionResult) {
    let r = sgn(inv.r);
    let b = sgn(inv.b);
    let qa = sgn(t2b_quantity(inv));
    let za = sgn(inv.r - inv.a0() * inv.b2() * inv.b * 2.0);
    let (db, ea) = (sgn(inv.db), sgn(inv.ea));
    let a = Truth::all([r.lt0(), b.lt0(), qa.le0(), signs_not_all_same([&db, &ea, &za])]);
    let qb = sgn(t2a_quantity(inv));
    let zb = sgn(inv.r + inv.a2() * inv.b0() * inv.b * 2.0);
    let (da, eb) = (sgn(inv.da), sgn(inv.eb));
    let bb = Truth::all([r.lt0(), b.gt0(), qb.le0(), signs_not_all_same([&da, &eb, &zb])]);
    (
        ConditionResult::new(
            "L7a",
            a,
            vec![("R", r), ("B", b), ("R-4a0b2(a1b1+2B)", qa), ("Db", db), ("Ea", ea), ("R-2a0b2B", za)],
        )
        .with_side(Some(Side::A)),
        ConditionResult::new(
            "L7b",
            bb,
            vec![("R", r), ("B", b), ("R-4a2b0(a1b1-2B)", qb), ("Da", da), ("Eb", eb), ("R+2a2b0B", zb)],
        )
        .with_side(Some(Side::B)),
    )
}

fn t4_clause1(inv: &InvariantSet) -> (Truth, Vec<(&'static str, SignWithTolerance)>) {
    let b = sgn(inv.b);
    let ga = sgn(inv.gamma_a);
    let (db, eb) = (sgn(inv.db), sgn(inv.eb));
    let dlb = sgn(inv.delta_b);
    let ndab = sgn(-inv.delta_ab);
    let t = Truth::all([
        ga.lt0(),
        by_b_sign(&b, eb.gt0(), db.gt0()),
        signs_not_all_same([&dlb, &ndab, &ga]),
    ]);
    (t, vec![("Gamma_a", ga), ("Db", db), ("Eb", eb), ("Delta_b", dlb), ("-Delta_ab", ndab)])
}

fn t4_clause2(inv: &InvariantSet) -> (Truth, Vec<(&'static str, SignWithTolerance)>) {
    let b = sgn(inv.b);
    let gb = sgn(inv.gamma_b);
    let (da, ea) = (sgn(inv.da), sgn(inv.ea));
    let dla = sgn(inv.delta_a);
    let ndab = sgn(-inv.delta_ab);
    let t = Truth::all([
        gb.lt0(),
        by_b_sign(&b, da.gt0(), ea.gt0()),
        signs_not_all_same([&dla, &ndab, &gb]),
    ]);
    (t, vec![("Gamma_b", gb), ("Da", da), ("Ea", ea), ("Delta_a", dla), ("-Delta_ab", ndab)])
}

fn t4_clause3(inv: &InvariantSet) -> (Truth, Vec<(&'static str, SignWithTolerance)>) {
    let ga = sgn(inv.gamma_a);
    let gb = sgn(inv.gamma_b);
    let dab = sgn(inv.delta_ab);
    let t = Truth::all([ga.gt0(), gb.gt0(), dab.gt0()]);
    (t, vec![("Gamma_a", ga), ("Gamma_b", gb), ("Delta_ab", dab)])
}

/// Per-clause results of the fourth-figure condition, plus the combined one.
pub fn cond_t4_clauses(inv: &InvariantSet) -> (ConditionResult, [ConditionResult; 3]) {
    let r = sgn(inv.r);
    let mk = |id: &str, (t, w): (Truth, Vec<(&str, SignWithTolerance)>)| {
        let mut w = w;
        w.insert(0, ("R", r));
        ConditionResult::new(id, r.lt0().and(t), w)
    };
    let c = [
        mk("T4.1", t4_clause1(inv)),
        mk("T4.2", t4_clause2(inv)),
        mk("T4.3", t4_clause3(inv)),
    ];
    let all = Truth::any(c.iter().map(|x| x.holds));
    (ConditionResult::new("T4", all, vec![("R", r)]), c)
}

pub fn cond_t4(inv: &InvariantSet) -> ConditionResult {
    cond_t4_clauses(inv).0
}

/// Condition for the series-parallel No. 104 network (and so, through the
/// star-mesh map, for the fourth figure's side (a)).
pub fn cond_no104(inv: &InvariantSet) -> ConditionResult {
    let r = sgn(inv.r);
    let b = sgn(inv.b);
    let (c1, mut w) = t4_clause1(inv);
    let ga = sgn(inv.gamma_a);
    let dlb = sgn(inv.delta_b);
    let dab = sgn(inv.delta_ab);
    let x_neg = sgn(inv.db + inv.b0() * inv.b);
    let x_pos = sgn(inv.eb - inv.b2() * inv.b);
    let c2 = Truth::all([
        ga.gt0(),
        dlb.gt0(),
        dab.gt0(),
        by_b_sign(&b, x_pos.lt0(), x_neg.lt0()),
    ]);
    w.insert(0, ("R", r));
    w.push(("Delta_ab", dab));
    w.push(("Db+b0B", x_neg));
    w.push(("Eb-b2B", x_pos));
    ConditionResult::new("L8", r.lt0().and(c1.or(c2)), w)
}

/// M R + 2 a0 a2 b0 b2 delta_ab with Gamma_a, Gamma_b: signs not all the same.
pub fn cond_t6(inv: &InvariantSet) -> ConditionResult {
    let r = sgn(inv.r);
    let ga = sgn(inv.gamma_a);
    let gb = sgn(inv.gamma_b);
    let x = sgn(inv.mr_term());
    ConditionResult::new(
        "T6",
        r.lt0().and(signs_not_all_same([&ga, &gb, &x])),
        vec![("R", r), ("Gamma_a", ga), ("Gamma_b", gb), ("MR+2a0a2b0b2Delta_ab", x)],
    )
}

/// R < 0 and (regular or either side of the third-figure condition).
pub fn cond_t5(z: &Biquadratic) -> ConditionResult {
    let inv = z.invariants();
    let r = sgn(inv.r);
    let regular = canonical::regularity(z).unwrap_or(Truth::No);
    let (la, lb) = cond_l7(&inv);
    let holds = r.lt0().and(Truth::any([regular, la.holds, lb.holds]));
    ConditionResult::new("T5", holds, vec![("R", r)])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FiveElementVerdict {
    Yes,
    No,
    UnknownFig7,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Conditions {
    pub t1: ConditionResult,
    pub t2a: ConditionResult,
    pub t2b: ConditionResult,
    pub t3: ConditionResult,
    pub l7a: ConditionResult,
    pub l7b: ConditionResult,
    pub t4: ConditionResult,
    pub t4_clauses: [ConditionResult; 3],
    pub l8a: ConditionResult,
    /// The No. 104 condition evaluated on 1/Z, which governs side (b).
    pub l8b: ConditionResult,
    pub t6: ConditionResult,
    pub regular: Truth,
    pub t5: ConditionResult,
    pub t7: ConditionResult,
}

pub fn conditions(z: &Biquadratic) -> Conditions {
    let inv = z.invariants();
    let t1 = cond_t1(&inv);
    let (t2a, t2b) = cond_t2(&inv);
    let t3 = cond_t3(&inv);
    let (l7a, l7b) = cond_l7(&inv);
    let (t4, t4_clauses) = cond_t4_clauses(&inv);
    let l8a = cond_no104(&inv);
    let mut l8b = cond_no104(&z.reciprocal().invariants());
    l8b.id = "L8b".into();
    let t6 = cond_t6(&inv);
    let regular = canonical::regularity(z).unwrap_or(Truth::No);
    let t5 = cond_t5(z);
    let t7 = ConditionResult::new("T7", t3.holds.or(t5.holds), vec![]);
    Conditions {
        t1,
        t2a,
        t2b,
        t3,
        l7a,
        l7b,
        t4,
        t4_clauses,
        l8a,
        l8b,
        t6,
        regular,
        t5,
        t7,
    }
}

impl Conditions {
    /// Configurations whose condition holds: closed forms first, numeric last.
    pub fn recommended(&self) -> Vec<ConfigId> {
        let mut out = Vec::new();
        if self.t1.holds() {
            match self.t1.side {
                Some(Side::A) => out.push(ConfigId::Fig1a),
                Some(Side::B) => out.push(ConfigId::Fig1b),
                None => {}
            }
        }
        if self.t2a.holds() {
            out.push(ConfigId::Fig2a);
        }
        if self.t2b.holds() {
            out.push(ConfigId::Fig2b);
        }
        if self.l8a.holds() {
            out.push(ConfigId::Fig4a);
        }
        if self.l8b.holds() {
            out.push(ConfigId::Fig4b);
        }
        if self.t6.holds() {
            out.push(ConfigId::Fig5);
        }
        if self.l7a.holds() {
            out.push(ConfigId::Fig3a);
        }
        if self.l7b.holds() {
            out.push(ConfigId::Fig3b);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub impedance: Biquadratic,
    pub membership: MembershipVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conditions: Option<Conditions>,
    pub realizable_two_reactive_bridge: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub realizable_five_element_bridge: Option<FiveElementVerdict>,
    pub recommended: Vec<ConfigId>,
}

impl ClassificationReport {
    pub fn first_recommendation(&self) -> Option<ConfigId> {
        self.recommended.first().copied()
    }

    /// One-line summary.
    pub fn brief(&self) -> String {
        match (self.realizable_five_element_bridge, self.first_recommendation()) {
            (Some(FiveElementVerdict::Yes), Some(c)) => format!("bridge-realizable: {c}"),
            (Some(FiveElementVerdict::Yes), None) => "bridge-realizable".into(),
            (Some(FiveElementVerdict::No), _) => "not bridge-realizable".into(),
            (Some(FiveElementVerdict::UnknownFig7), _) => {
                "inconclusive: no two-reactive bridge; three-reactive search failed".into()
            }
            (None, _) => match self.membership {
                MembershipVerdict::NotPositiveReal => "not positive-real".into(),
                MembershipVerdict::ZeroCoefficient => {
                    "fewer than five elements: zero coefficient".into()
                }
                MembershipVerdict::FewerThanFive { clause } => {
                    format!("fewer than five elements: clause {clause}")
                }
                MembershipVerdict::InZb => unreachable!(),
            },
        }
    }
}

/// Conditions only; the three-reactive search is not attempted.
pub fn classify_conditions(z: &Biquadratic) -> ClassificationReport {
    let membership = z.membership();
    if !membership.in_zb() {
        return ClassificationReport {
            impedance: *z,
            membership,
            conditions: None,
            realizable_two_reactive_bridge: false,
            realizable_five_element_bridge: None,
            recommended: vec![],
        };
    }
    let c = conditions(z);
    let two = c.t7.holds();
    ClassificationReport {
        impedance: *z,
        membership,
        realizable_two_reactive_bridge: two,
        realizable_five_element_bridge: Some(if two {
            FiveElementVerdict::Yes
        } else {
            FiveElementVerdict::UnknownFig7
        }),
        recommended: c.recommended(),
        conditions: Some(c),
    }
}

/// Full classification: when no two-reactive bridge exists the numeric
/// three-reactive search decides between Yes and UnknownFig7.
pub fn classify(z: &Biquadratic) -> ClassificationReport {
    let mut report = classify_conditions(z);
    if report.realizable_five_element_bridge == Some(FiveElementVerdict::UnknownFig7) {
        if let Some(found) = crate::synth::fig7_probe(z) {
            report.realizable_five_element_bridge = Some(FiveElementVerdict::Yes);
            report.recommended.push(found.realization.config);
        }
    }
    report
}
