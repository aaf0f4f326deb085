//! Catalog of the five-element configurations, realizations on them, the
//! duality and star-mesh value maps, and the structural path/cut-set rule.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    R,
    L,
    C,
}

impl Kind {
    pub fn dual(self) -> Kind {
        match self {
            Kind::R => Kind::R,
            Kind::L => Kind::C,
            Kind::C => Kind::L,
        }
    }

    pub fn is_reactive(self) -> bool {
        self != Kind::R
    }

    pub fn of_label(label: &str) -> Option<Kind> {
        match label.as_bytes().first()? {
            b'R' => Some(Kind::R),
            b'L' => Some(Kind::L),
            b'C' => Some(Kind::C),
            _ => None,
        }
    }
}

/// Number of three-reactive bridge placements kept per orientation.
pub const FIG7_VARIANTS: u8 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConfigId {
    Fig1a,
    Fig1b,
    Fig2a,
    Fig2b,
    Fig3a,
    Fig3b,
    Fig4a,
    Fig4b,
    Fig5,
    Fig6No104,
    /// 2R + 2L + 1C bridge placements, numbered from 1.
    Fig7a(u8),
    /// Their duals, 2R + 1L + 2C.
    Fig7b(u8),
}

impl ConfigId {
    pub fn all() -> Vec<ConfigId> {
        let mut v = vec![
            ConfigId::Fig1a,
            ConfigId::Fig1b,
            ConfigId::Fig2a,
            ConfigId::Fig2b,
            ConfigId::Fig3a,
            ConfigId::Fig3b,
            ConfigId::Fig4a,
            ConfigId::Fig4b,
            ConfigId::Fig5,
            ConfigId::Fig6No104,
        ];
        v.extend((1..=FIG7_VARIANTS).map(ConfigId::Fig7a));
        v.extend((1..=FIG7_VARIANTS).map(ConfigId::Fig7b));
        v
    }

    /// Catalog name without the placement number.
    pub fn family(self) -> &'static str {
        match self {
            ConfigId::Fig1a => "fig1a",
            ConfigId::Fig1b => "fig1b",
            ConfigId::Fig2a => "fig2a",
            ConfigId::Fig2b => "fig2b",
            ConfigId::Fig3a => "fig3a",
            ConfigId::Fig3b => "fig3b",
            ConfigId::Fig4a => "fig4a",
            ConfigId::Fig4b => "fig4b",
            ConfigId::Fig5 => "fig5",
            ConfigId::Fig6No104 => "fig6_no104",
            ConfigId::Fig7a(_) => "fig7a",
            ConfigId::Fig7b(_) => "fig7b",
        }
    }

    pub fn dual(self) -> Option<ConfigId> {
        Some(match self {
            ConfigId::Fig1a => ConfigId::Fig1b,
            ConfigId::Fig1b => ConfigId::Fig1a,
            ConfigId::Fig2a => ConfigId::Fig2b,
            ConfigId::Fig2b => ConfigId::Fig2a,
            ConfigId::Fig3a => ConfigId::Fig3b,
            ConfigId::Fig3b => ConfigId::Fig3a,
            ConfigId::Fig4a => ConfigId::Fig4b,
            ConfigId::Fig4b => ConfigId::Fig4a,
            ConfigId::Fig5 => ConfigId::Fig5,
            ConfigId::Fig6No104 => return None,
            ConfigId::Fig7a(k) => ConfigId::Fig7b(k),
            ConfigId::Fig7b(k) => ConfigId::Fig7a(k),
        })
    }

    pub fn is_bridge(self) -> bool {
        self != ConfigId::Fig6No104
    }

    pub fn configuration(self) -> &'static Configuration {
        catalog()
            .iter()
            .find(|c| c.id == self)
            .expect("every id is catalogued")
    }
}

impl fmt::Display for ConfigId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigId::Fig7a(k) | ConfigId::Fig7b(k) => write!(f, "{}.{}", self.family(), k),
            _ => f.write_str(self.family()),
        }
    }
}

impl FromStr for ConfigId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let lower = s.trim().to_ascii_lowercase();
        let (fam, num) = match lower.split_once('.') {
            Some((f, n)) => (f.to_string(), Some(n.to_string())),
            None => (lower.clone(), None),
        };
        let variant = |n: Option<String>| -> Result<u8, Error> {
            let k: u8 = match n {
                None => 1,
                Some(n) => n.parse().map_err(|_| Error::UnknownConfiguration(s.into()))?,
            };
            if (1..=FIG7_VARIANTS).contains(&k) {
                Ok(k)
            } else {
                Err(Error::UnknownConfiguration(s.into()))
            }
        };
        let id = match fam.as_str() {
            "fig7a" => ConfigId::Fig7a(variant(num)?),
            "fig7b" => ConfigId::Fig7b(variant(num)?),
            _ if num.is_some() => return Err(Error::UnknownConfiguration(s.into())),
            "fig1a" => ConfigId::Fig1a,
            "fig1b" => ConfigId::Fig1b,
            "fig2a" => ConfigId::Fig2a,
            "fig2b" => ConfigId::Fig2b,
            "fig3a" => ConfigId::Fig3a,
            "fig3b" => ConfigId::Fig3b,
            "fig4a" => ConfigId::Fig4a,
            "fig4b" => ConfigId::Fig4b,
            "fig5" => ConfigId::Fig5,
            "fig6_no104" | "no104" | "fig6" => ConfigId::Fig6No104,
            _ => return Err(Error::UnknownConfiguration(s.into())),
        };
        Ok(id)
    }
}

impl Serialize for ConfigId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ConfigId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub kind: Kind,
    pub label: String,
}

/// Terminal t is node 1, terminal t' is node 0. Bridge internals are 2 and 3.
pub const T: usize = 1;
pub const TP: usize = 0;

/// Bridge arm node pairs in arm order: t-n1, t-n2, n1-n2, n1-t', n2-t'.
pub const BRIDGE_ARMS: [(usize, usize); 5] = [(1, 2), (1, 3), (2, 3), (2, 0), (3, 0)];

/// Arm permutation taking a bridge to its one-port dual: t-n2 and n1-t'
/// trade places, the others stay put.
pub const DUAL_ARM: [usize; 5] = [0, 3, 2, 1, 4];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Configuration {
    pub id: ConfigId,
    pub nodes: usize,
    pub edges: Vec<Edge>,
    /// Edge masks of the spanning trees.
    #[serde(skip)]
    pub trees: Vec<u32>,
    /// Edge masks of the 2-forests with t and t' in different components.
    #[serde(skip)]
    pub two_forests: Vec<u32>,
}

impl Configuration {
    fn bridge(id: ConfigId, arms: [&str; 5]) -> Self {
        let edges = arms
            .iter()
            .zip(BRIDGE_ARMS)
            .map(|(label, (a, b))| Edge {
                a,
                b,
                kind: Kind::of_label(label).expect("catalog label"),
                label: label.to_string(),
            })
            .collect();
        Configuration::with_forests(id, 4, edges)
    }

    fn with_forests(id: ConfigId, nodes: usize, edges: Vec<Edge>) -> Self {
        let mut trees = Vec::new();
        let mut two_forests = Vec::new();
        for mask in 0u32..(1 << edges.len()) {
            let size = mask.count_ones() as usize;
            if size + 2 < nodes || size + 1 > nodes {
                continue;
            }
            let mut parent: Vec<usize> = (0..nodes).collect();
            fn find(p: &mut [usize], mut x: usize) -> usize {
                while p[x] != x {
                    p[x] = p[p[x]];
                    x = p[x];
                }
                x
            }
            let mut acyclic = true;
            for (i, e) in edges.iter().enumerate() {
                if mask & (1 << i) == 0 {
                    continue;
                }
                let (ra, rb) = (find(&mut parent, e.a), find(&mut parent, e.b));
                if ra == rb {
                    acyclic = false;
                    break;
                }
                parent[ra] = rb;
            }
            if !acyclic {
                continue;
            }
            if size + 1 == nodes {
                trees.push(mask);
            } else if find(&mut parent, T) != find(&mut parent, TP) {
                two_forests.push(mask);
            }
        }
        Configuration {
            id,
            nodes,
            edges,
            trees,
            two_forests,
        }
    }

    pub fn labels(&self) -> Vec<&str> {
        self.edges.iter().map(|e| e.label.as_str()).collect()
    }

    pub fn kinds(&self) -> Vec<Kind> {
        self.edges.iter().map(|e| e.kind).collect()
    }

    pub fn has_closed_form(&self) -> bool {
        matches!(
            self.id,
            ConfigId::Fig1a | ConfigId::Fig2a | ConfigId::Fig5 | ConfigId::Fig6No104
        )
    }
}

fn dual_label(label: &str) -> String {
    let mut s = label.to_string();
    match Kind::of_label(label) {
        Some(Kind::L) => s.replace_range(0..1, "C"),
        Some(Kind::C) => s.replace_range(0..1, "L"),
        _ => {}
    }
    s
}

fn dual_arms(arms: [&str; 5]) -> [String; 5] {
    std::array::from_fn(|i| dual_label(arms[DUAL_ARM[i]]))
}

/// Valid 2R + 2L + 1C bridge placements, one per symmetry class.
const FIG7A_ARMS: [[&str; 5]; FIG7_VARIANTS as usize] = [
    ["L1", "R1", "C1", "R2", "L2"],
    ["C1", "L1", "L2", "R1", "R2"],
    ["C1", "R1", "L1", "L2", "R2"],
    ["C1", "R1", "L1", "R2", "L2"],
    ["C1", "L1", "R1", "L2", "R2"],
];

pub fn catalog() -> &'static [Configuration] {
    static CATALOG: OnceLock<Vec<Configuration>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let fig1a = ["R1", "R3", "C1", "R2", "C2"];
        let fig2a = ["R1", "C2", "R3", "C1", "R2"];
        let fig3a = ["L1", "R1", "C1", "R2", "R3"];
        let fig4a = ["R1", "R3", "R2", "C1", "L1"];
        let fig5 = ["R1", "C1", "R2", "L1", "R3"];
        let mk = |id, arms: [String; 5]| {
            let refs: [&str; 5] = std::array::from_fn(|i| arms[i].as_str());
            Configuration::bridge(id, refs)
        };
        let mut v = vec![
            Configuration::bridge(ConfigId::Fig1a, fig1a),
            mk(ConfigId::Fig1b, dual_arms(fig1a)),
            Configuration::bridge(ConfigId::Fig2a, fig2a),
            mk(ConfigId::Fig2b, dual_arms(fig2a)),
            Configuration::bridge(ConfigId::Fig3a, fig3a),
            mk(ConfigId::Fig3b, dual_arms(fig3a)),
            Configuration::bridge(ConfigId::Fig4a, fig4a),
            mk(ConfigId::Fig4b, dual_arms(fig4a)),
            Configuration::bridge(ConfigId::Fig5, fig5),
            no104(),
        ];
        for (k, arms) in FIG7A_ARMS.iter().enumerate() {
            let k = k as u8 + 1;
            v.push(Configuration::bridge(ConfigId::Fig7a(k), *arms));
            v.push(mk(ConfigId::Fig7b(k), dual_arms(*arms)));
        }
        v.sort_by_key(|c| c.id);
        v
    })
}

/// Series-parallel No. 104: R3 in series with (R2 + L1) parallel (R1 + C1).
/// Nodes: t = 1, t' = 0, x = 2, y = 3, z = 4.
fn no104() -> Configuration {
    let e = |a, b, label: &str| Edge {
        a,
        b,
        kind: Kind::of_label(label).unwrap(),
        label: label.to_string(),
    };
    Configuration::with_forests(
        ConfigId::Fig6No104,
        5,
        vec![
            e(1, 2, "R3"),
            e(2, 3, "R2"),
            e(3, 0, "L1"),
            e(2, 4, "R1"),
            e(4, 0, "C1"),
        ],
    )
}

// ---------------------------------------------------------------------------
// Structural rule: no terminal path and no terminal cut-set made of a single
// reactive kind.

fn connected(nodes: usize, edges: &[(usize, usize)], from: usize, to: usize) -> bool {
    let mut seen = vec![false; nodes];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(n) = stack.pop() {
        if n == to {
            return true;
        }
        for &(a, b) in edges {
            let m = if a == n {
                b
            } else if b == n {
                a
            } else {
                continue;
            };
            if !seen[m] {
                seen[m] = true;
                stack.push(m);
            }
        }
    }
    false
}

/// Edge-index sets of every simple t-t' path.
pub fn terminal_paths(c: &Configuration) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    let mut visited = vec![false; c.nodes];
    visited[T] = true;
    fn dfs(
        c: &Configuration,
        at: usize,
        visited: &mut Vec<bool>,
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if at == TP {
            out.push(path.clone());
            return;
        }
        for (i, e) in c.edges.iter().enumerate() {
            let next = if e.a == at {
                e.b
            } else if e.b == at {
                e.a
            } else {
                continue;
            };
            if visited[next] {
                continue;
            }
            visited[next] = true;
            path.push(i);
            dfs(c, next, visited, path, out);
            path.pop();
            visited[next] = false;
        }
    }
    dfs(c, T, &mut visited, &mut path, &mut out);
    out
}

/// Edge-index sets of every minimal cut-set separating t from t'.
pub fn terminal_cuts(c: &Configuration) -> Vec<Vec<usize>> {
    let n = c.edges.len();
    let pairs: Vec<(usize, usize)> = c.edges.iter().map(|e| (e.a, e.b)).collect();
    let without = |mask: u32| -> Vec<(usize, usize)> {
        (0..n)
            .filter(|i| mask & (1 << i) == 0)
            .map(|i| pairs[i])
            .collect()
    };
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        if connected(c.nodes, &without(mask), T, TP) {
            continue;
        }
        let minimal = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .all(|i| connected(c.nodes, &without(mask & !(1 << i)), T, TP));
        if minimal {
            out.push((0..n).filter(|i| mask & (1 << i) != 0).collect());
        }
    }
    out
}

pub fn lemma3_validate(c: &Configuration) -> bool {
    let single_reactive = |set: &Vec<usize>| {
        let k = c.edges[set[0]].kind;
        k.is_reactive() && set.iter().all(|&i| c.edges[i].kind == k)
    };
    !terminal_paths(c).iter().any(single_reactive) && !terminal_cuts(c).iter().any(single_reactive)
}

// ---------------------------------------------------------------------------
// Realizations.

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Realization {
    pub config: ConfigId,
    pub values: BTreeMap<String, f64>,
}

impl Realization {
    /// Checks labels against the configuration and positivity of every value.
    pub fn new(config: ConfigId, values: BTreeMap<String, f64>) -> Result<Self, Error> {
        let cfg = config.configuration();
        for label in cfg.labels() {
            match values.get(label) {
                Some(&v) if v.is_finite() && v > 0.0 => {}
                _ => return Err(Error::BadValue(label.to_string())),
            }
        }
        if let Some(extra) = values.keys().find(|k| !cfg.labels().contains(&k.as_str())) {
            return Err(Error::BadValue(extra.clone()));
        }
        Ok(Realization { config, values })
    }

    pub fn from_pairs(config: ConfigId, pairs: &[(&str, f64)]) -> Result<Self, Error> {
        let values = pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        Self::new(config, values)
    }

    pub fn get(&self, label: &str) -> f64 {
        self.values[label]
    }

    pub fn configuration(&self) -> &'static Configuration {
        self.config.configuration()
    }

    /// Values in the configuration's edge order.
    pub fn edge_values(&self) -> Vec<f64> {
        self.configuration()
            .labels()
            .iter()
            .map(|l| self.values[*l])
            .collect()
    }

    pub fn all_positive(&self) -> bool {
        self.values.values().all(|v| v.is_finite() && *v > 0.0)
    }

    /// SPICE-style netlist; nodes follow the catalog numbering.
    pub fn netlist(&self) -> String {
        let cfg = self.configuration();
        let mut s = format!("* {} bridgesynth\n", self.config);
        for e in &cfg.edges {
            s.push_str(&format!(
                "{} {} {} {}\n",
                e.label,
                e.a,
                e.b,
                sig9(self.values[&e.label])
            ));
        }
        s.push_str(".end\n");
        s
    }
}

/// Nine significant digits, exponent form when the magnitude calls for it.
pub fn sig9(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let e = x.abs().log10().floor() as i32;
    if (-3..9).contains(&e) {
        let decimals = (8 - e).max(0) as usize;
        let s = format!("{:.*}", decimals, x);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{:.8e}", x)
    }
}

/// Graph dual with reciprocal resistors and L <-> C carrying the same value.
pub fn dual_realization(r: &Realization) -> Result<Realization, Error> {
    let id = r
        .config
        .dual()
        .ok_or_else(|| Error::UnknownConfiguration(format!("dual of {}", r.config)))?;
    let values = r
        .values
        .iter()
        .map(|(label, &v)| {
            let v = if Kind::of_label(label) == Some(Kind::R) {
                1.0 / v
            } else {
                v
            };
            (dual_label(label), v)
        })
        .collect();
    Realization::new(id, values)
}

/// Star (R1, R2, R3 of No. 104) to mesh (the three bridge resistors of Fig4a).
pub fn star_mesh_lift(r: &Realization) -> Result<Realization, Error> {
    if r.config != ConfigId::Fig6No104 {
        return Err(Error::UnknownConfiguration(format!(
            "star-mesh lift needs fig6_no104, got {}",
            r.config
        )));
    }
    let (r1, r2, r3) = (r.get("R1"), r.get("R2"), r.get("R3"));
    let rp = r1 * r2 + r2 * r3 + r3 * r1;
    Realization::from_pairs(
        ConfigId::Fig4a,
        &[
            ("R1", rp / r2),
            ("R2", rp / r3),
            ("R3", rp / r1),
            ("C1", r.get("C1")),
            ("L1", r.get("L1")),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn catalog_is_complete_and_valid() {
        let cat = catalog();
        assert_eq!(cat.len(), 10 + 2 * FIG7_VARIANTS as usize);
        for c in cat {
            assert_eq!(c.edges.len(), 5);
            assert!(lemma3_validate(c), "{}", c.id);
        }
        let mut fig1a = ConfigId::Fig1a.configuration().labels();
        fig1a.sort();
        assert_eq!(fig1a, ["C1", "C2", "R1", "R2", "R3"]);
        let mut fig5 = ConfigId::Fig5.configuration().labels();
        fig5.sort();
        assert_eq!(fig5, ["C1", "L1", "R1", "R2", "R3"]);
    }

    #[test]
    fn fig5_is_self_dual() {
        let c = ConfigId::Fig5.configuration();
        let arms: [&str; 5] = std::array::from_fn(|i| c.edges[i].label.as_str());
        let d = dual_arms(arms);
        assert_eq!(d.to_vec(), arms.to_vec());
        assert_eq!(ConfigId::Fig5.dual(), Some(ConfigId::Fig5));
    }

    #[test]
    fn duality_is_an_involution_on_ids() {
        for id in ConfigId::all() {
            if let Some(d) = id.dual() {
                assert_eq!(d.dual(), Some(id));
            }
        }
    }

    #[test]
    fn validate_rejects_single_kind_cut_and_path() {
        let cut = Configuration::bridge(ConfigId::Fig7a(1), ["C1", "C2", "R1", "R2", "L1"]);
        assert!(!lemma3_validate(&cut));
        let path = Configuration::bridge(ConfigId::Fig7a(1), ["L1", "R1", "R2", "L2", "C1"]);
        assert!(!lemma3_validate(&path));
    }

    #[test]
    fn bridge_paths_and_cuts() {
        let c = ConfigId::Fig1a.configuration();
        let mut p = terminal_paths(c);
        p.iter_mut().for_each(|x| x.sort());
        p.sort();
        assert_eq!(p, vec![vec![0, 2, 4], vec![0, 3], vec![1, 2, 3], vec![1, 4]]);
        assert_eq!(terminal_cuts(c).len(), 4);
        assert_eq!(c.trees.len(), 8);
        assert_eq!(c.two_forests.len(), 8);
        let n = ConfigId::Fig6No104.configuration();
        assert_eq!(n.trees.len(), 4);
    }

    #[test]
    fn fig7_placements_cover_every_valid_class() {
        // Count valid {R,R,L,L,C} arm assignments up to the bridge's
        // terminal-preserving symmetries.
        let syms: [[usize; 5]; 4] = [[0, 1, 2, 3, 4], [1, 0, 2, 4, 3], [3, 4, 2, 0, 1], [4, 3, 2, 1, 0]];
        let mut classes = std::collections::BTreeSet::new();
        let kinds = [Kind::R, Kind::L, Kind::C];
        for code in 0..243u32 {
            let mut k = [Kind::R; 5];
            let mut x = code;
            for slot in k.iter_mut() {
                *slot = kinds[(x % 3) as usize];
                x /= 3;
            }
            let count = |kk: Kind| k.iter().filter(|&&y| y == kk).count();
            if count(Kind::R) != 2 || count(Kind::L) != 2 {
                continue;
            }
            let labels: [&str; 5] = std::array::from_fn(|i| match k[i] {
                Kind::R => "R",
                Kind::L => "L",
                Kind::C => "C",
            });
            let cfg = Configuration::bridge(ConfigId::Fig7a(1), labels);
            if !lemma3_validate(&cfg) {
                continue;
            }
            let canon = syms
                .iter()
                .map(|s| std::array::from_fn::<Kind, 5, _>(|i| k[s[i]]))
                .min()
                .unwrap();
            classes.insert(canon);
        }
        let mut ours = std::collections::BTreeSet::new();
        for arms in FIG7A_ARMS {
            let k: [Kind; 5] = std::array::from_fn(|i| Kind::of_label(arms[i]).unwrap());
            let canon = syms
                .iter()
                .map(|s| std::array::from_fn::<Kind, 5, _>(|i| k[s[i]]))
                .min()
                .unwrap();
            ours.insert(canon);
        }
        assert_eq!(classes, ours);
    }

    #[test]
    fn dual_realization_examples() {
        let r = Realization::from_pairs(
            ConfigId::Fig1a,
            &[("R1", 2.0), ("R2", 1.0), ("R3", 1.0), ("C1", 1.0), ("C2", 1.0)],
        )
        .unwrap();
        let d = dual_realization(&r).unwrap();
        assert_eq!(d.config, ConfigId::Fig1b);
        assert_eq!(d.get("R1"), 0.5);
        assert_eq!(d.get("L1"), 1.0);
        assert_eq!(d.get("L2"), 1.0);
        let back = dual_realization(&d).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn star_mesh_examples() {
        let r = Realization::from_pairs(
            ConfigId::Fig6No104,
            &[("R1", 1.0), ("R2", 2.0), ("R3", 1.0), ("L1", 1.0), ("C1", 1.0)],
        )
        .unwrap();
        let m = star_mesh_lift(&r).unwrap();
        assert_eq!(m.config, ConfigId::Fig4a);
        assert_relative_eq!(m.get("R1"), 2.5);
        assert_relative_eq!(m.get("R2"), 5.0);
        assert_relative_eq!(m.get("R3"), 5.0);
        let r = Realization::from_pairs(
            ConfigId::Fig6No104,
            &[("R1", 1.0), ("R2", 1.0), ("R3", 1.0), ("L1", 1.0), ("C1", 1.0)],
        )
        .unwrap();
        let m = star_mesh_lift(&r).unwrap();
        for l in ["R1", "R2", "R3"] {
            assert_eq!(m.get(l), 3.0);
        }
    }

    #[test]
    fn ids_round_trip_through_strings() {
        for id in ConfigId::all() {
            assert_eq!(id.to_string().parse::<ConfigId>().unwrap(), id);
        }
        assert_eq!("fig7b".parse::<ConfigId>().unwrap(), ConfigId::Fig7b(1));
        assert!("fig9".parse::<ConfigId>().is_err());
        assert!("fig7a.9".parse::<ConfigId>().is_err());
    }

    #[test]
    fn netlist_format() {
        let r = Realization::from_pairs(
            ConfigId::Fig1a,
            &[("R1", 16.232), ("R2", 0.637), ("R3", 0.766), ("C1", 0.0329), ("C2", 1.411e-8)],
        )
        .unwrap();
        let n = r.netlist();
        let lines: Vec<&str> = n.lines().collect();
        assert_eq!(lines[0], "* fig1a bridgesynth");
        assert_eq!(lines[1], "R1 1 2 16.232");
        assert_eq!(lines[5], "C2 3 0 1.41100000e-8");
        assert_eq!(*lines.last().unwrap(), ".end");
        assert_eq!(sig9(1.0 / 3.0), "0.333333333");
    }

    #[test]
    fn realization_rejects_bad_values() {
        assert!(Realization::from_pairs(ConfigId::Fig5, &[("R1", 1.0)]).is_err());
        assert!(Realization::from_pairs(
            ConfigId::Fig6No104,
            &[("R1", 1.0), ("R2", -1.0), ("R3", 1.0), ("L1", 1.0), ("C1", 1.0)]
        )
        .is_err());
    }
}
