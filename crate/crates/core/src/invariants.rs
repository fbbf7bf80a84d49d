//! Invariants of plumbed 3-manifolds: the surgery evaluation of colored
//! forests against category data, the framed invariant tau(M) and its spin^d
//! / cohomological refinements, and the two-sided state sum Z = tau * tau-bar
//! with its refined table.

use crate::category::{CategoryData, Mode};
use crate::exact::ExactValue;
use crate::manifolds::{
    signature, structure_is_valid, structures, PlumbingForest, Structure, StructureKind,
};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("structure is not valid for this presentation: {0}")]
    InvalidStructure(String),
}

/// A formal coloring: per vertex, a linear combination of simple objects.
#[derive(Debug, Clone)]
pub struct ColorAssignment {
    map: BTreeMap<String, Vec<(usize, ExactValue)>>,
}

impl ColorAssignment {
    pub fn new() -> Self {
        ColorAssignment { map: BTreeMap::new() }
    }

    pub fn set(&mut self, vertex: &str, formal: Vec<(usize, ExactValue)>) {
        self.map.insert(vertex.to_string(), formal);
    }

    pub fn formal(&self, vertex: &str) -> Option<&[(usize, ExactValue)]> {
        self.map.get(vertex).map(|v| v.as_slice())
    }

    pub fn coefficient(&self, vertex: &str, color: usize) -> Option<ExactValue> {
        self.map.get(vertex).and_then(|v| {
            v.iter()
                .find(|(c, _)| *c == color)
                .map(|(_, coeff)| coeff.clone())
        })
    }

    /// Every vertex colored with the Kirby color omega.
    pub fn omega_everywhere(data: &CategoryData, forest: &PlumbingForest) -> Self {
        let mut a = ColorAssignment::new();
        for v in forest.vertices() {
            a.set(&v.id, data.omega());
        }
        a
    }

    /// Vertex v colored with the graded component omega_{c_v}.
    pub fn omega_graded(data: &CategoryData, forest: &PlumbingForest, residues: &[u64]) -> Self {
        let mut a = ColorAssignment::new();
        for (v, &c) in forest.vertices().iter().zip(residues.iter()) {
            a.set(&v.id, data.omega_component(c));
        }
        a
    }
}

impl Default for ColorAssignment {
    fn default() -> Self {
        Self::new()
    }
}

/// Evaluates the colored forest:
///   sum over colorings of prod_v coeff(x_v) f(x_v)^{framing} <x_v>^{1-deg}
///   times prod_edges H(x_u, x_v),
/// computed by exact contraction along each tree (the sum factorizes over
/// the forest). The empty forest gives 1.
pub fn evaluate_forest(
    data: &CategoryData,
    forest: &PlumbingForest,
    assignment: &ColorAssignment,
) -> ExactValue {
    let ctx = data.context();
    let n = forest.len();
    if n == 0 {
        return ctx.one();
    }
    let nc = data.colors().len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (a, b) in forest.edges() {
        let i = forest.vertex_index(a).unwrap();
        let j = forest.vertex_index(b).unwrap();
        adj[i].push(j);
        adj[j].push(i);
    }
    // local weight per vertex and color
    let weight = |vi: usize, x: usize| -> ExactValue {
        let v = &forest.vertices()[vi];
        let coeff = match assignment.coefficient(&v.id, x) {
            Some(c) => c,
            None => return ctx.zero(),
        };
        if coeff.is_zero() {
            return ctx.zero();
        }
        let deg = adj[vi].len() as i64;
        let qpow = match 1 - deg {
            0 => ctx.one(),
            e if e > 0 => data.qdim(x).pow(e).unwrap(),
            e => data.qdim_inverse(x).pow(-e).unwrap(),
        };
        coeff.mul(&data.twist_power(x, v.framing)).mul(&qpow)
    };

    let mut total = ctx.one();
    let mut visited = vec![false; n];
    for root in 0..n {
        if visited[root] {
            continue;
        }
        // iterative post-order over the tree component
        let mut order = Vec::new();
        let mut parent = vec![usize::MAX; n];
        let mut stack = vec![root];
        visited[root] = true;
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in &adj[v] {
                if !visited[w] {
                    visited[w] = true;
                    parent[w] = v;
                    stack.push(w);
                }
            }
        }
        // message from child to parent: m_c(x_parent) = sum_x w_c(x) H(x, x_parent)
        let mut table: Vec<Option<Vec<ExactValue>>> = vec![None; n];
        for &v in order.iter().rev() {
            let mut w_v: Vec<ExactValue> = (0..nc).map(|x| weight(v, x)).collect();
            for &c in &adj[v] {
                if c == parent[v] {
                    continue;
                }
                let msg = table[c].take().expect("children processed before parents");
                for x in 0..nc {
                    if !w_v[x].is_zero() {
                        w_v[x] = w_v[x].mul(&msg[x]);
                    }
                }
            }
            if parent[v] == usize::MAX {
                let mut acc = ctx.zero();
                for x in 0..nc {
                    acc = acc.try_add(&w_v[x]).unwrap();
                }
                total = total.mul(&acc);
            } else {
                let mut msg = vec![ctx.zero(); nc];
                for (x, wx) in w_v.iter().enumerate() {
                    if wx.is_zero() {
                        continue;
                    }
                    for y in 0..nc {
                        msg[y] = msg[y].try_add(&wx.mul(data.hopf(x, y))).unwrap();
                    }
                }
                table[v] = Some(msg);
            }
        }
    }
    total
}

/// tau(M) = Delta^{-sigma(L)} <L(omega, ..., omega)>.
pub fn tau(data: &CategoryData, forest: &PlumbingForest) -> ExactValue {
    let sig = signature(&forest.linking_matrix());
    let assignment = ColorAssignment::omega_everywhere(data, forest);
    let raw = evaluate_forest(data, forest, &assignment);
    anomaly(data, -sig).mul(&raw)
}

fn anomaly(data: &CategoryData, power: i64) -> ExactValue {
    data.delta().pow(power).expect("Delta is invertible")
}

fn expected_kind(data: &CategoryData) -> StructureKind {
    match data.params().mode {
        Mode::Spin => StructureKind::SpinD,
        Mode::Coh => StructureKind::Cohomology,
    }
}

fn check_structure(
    data: &CategoryData,
    forest: &PlumbingForest,
    s: &Structure,
    kind: StructureKind,
) -> Result<(), InvariantError> {
    if s.kind != kind {
        return Err(InvariantError::InvalidStructure(format!(
            "expected a {kind:?} structure, got {:?}",
            s.kind
        )));
    }
    if !structure_is_valid(forest, s, data.params().d) {
        return Err(InvariantError::InvalidStructure(format!(
            "residues {:?} do not solve the mod-{} equations",
            s.values,
            data.params().d
        )));
    }
    Ok(())
}

/// tau(M, s) = Delta^{-sigma(L)} <L(omega_{c_1}, ..., omega_{c_m})> for a
/// spin^d structure (spin mode) or kernel class (coh mode) s.
pub fn tau_refined(
    data: &CategoryData,
    forest: &PlumbingForest,
    s: &Structure,
) -> Result<ExactValue, InvariantError> {
    check_structure(data, forest, s, expected_kind(data))?;
    let sig = signature(&forest.linking_matrix());
    let assignment = ColorAssignment::omega_graded(data, forest, &s.residues(forest));
    let raw = evaluate_forest(data, forest, &assignment);
    Ok(anomaly(data, -sig).mul(&raw))
}

/// tau(-M, s): evaluation of the mirrored presentation. Reversing the
/// orientation of one bipartition class turns the mirror's -1 clasps back
/// into plumbing edges and negates the structure residues on that class.
pub fn tau_refined_reversed(
    data: &CategoryData,
    forest: &PlumbingForest,
    s: &Structure,
) -> Result<ExactValue, InvariantError> {
    check_structure(data, forest, s, expected_kind(data))?;
    let d = data.params().d;
    let mirror = forest.mirror();
    let signs = forest.bipartition_signs();
    let residues: Vec<u64> = s
        .residues(forest)
        .iter()
        .zip(signs.iter())
        .map(|(&c, &sg)| if sg == 1 { c } else { (d - c) % d })
        .collect();
    let sig = signature(&mirror.linking_matrix());
    let assignment = ColorAssignment::omega_graded(data, &mirror, &residues);
    let raw = evaluate_forest(data, &mirror, &assignment);
    Ok(anomaly(data, -sig).mul(&raw))
}

/// The unrefined two-sided invariant Z(M) = tau(M) tau(-M).
pub fn tv(data: &CategoryData, forest: &PlumbingForest) -> ExactValue {
    tau(data, forest).mul(&tau(data, &forest.mirror()))
}

/// Z(M, s, h) = tau(M, s) tau(-M, s + h), with h a mod-d kernel class.
pub fn tv_refined(
    data: &CategoryData,
    forest: &PlumbingForest,
    s: &Structure,
    h: &Structure,
) -> Result<ExactValue, InvariantError> {
    check_structure(data, forest, h, StructureKind::Cohomology)?;
    let sh = s.shifted_by(h, data.params().d);
    let left = tau_refined(data, forest, s)?;
    let right = tau_refined_reversed(data, forest, &sh)?;
    Ok(left.mul(&right))
}

#[derive(Debug, Clone)]
pub struct RefinedEntry {
    pub s: Structure,
    pub h: Structure,
    pub value: ExactValue,
}

/// The full refined table of Z(M, s, h) with its consistency checks.
#[derive(Debug, Clone)]
pub struct RefinedTable {
    pub tau: ExactValue,
    pub refined_tau: Vec<(Structure, ExactValue)>,
    pub tv: ExactValue,
    pub entries: Vec<RefinedEntry>,
    /// sum_s tau(M,s) = tau(M)
    pub transfer_ok: bool,
    /// sum_{s,h} Z(M,s,h) = Z(M)
    pub decomposition_ok: bool,
}

pub fn refined_table(
    data: &CategoryData,
    forest: &PlumbingForest,
) -> Result<RefinedTable, InvariantError> {
    let d = data.params().d;
    let kind = expected_kind(data);
    let (ss, _) = structures(forest, d, kind)
        .map_err(|e| InvariantError::InvalidStructure(e.to_string()))?;
    let (hs, _) = structures(forest, d, StructureKind::Cohomology)
        .map_err(|e| InvariantError::InvalidStructure(e.to_string()))?;
    let tau_val = tau(data, forest);
    let tv_val = tv(data, forest);
    let ctx = data.context();

    let mut refined_tau = Vec::new();
    let mut tau_sum = ctx.zero();
    for s in &ss {
        let v = tau_refined(data, forest, s)?;
        tau_sum = tau_sum.try_add(&v).unwrap();
        refined_tau.push((s.clone(), v));
    }
    let transfer_ok = tau_sum == tau_val;

    let mut entries = Vec::new();
    let mut total = ctx.zero();
    for s in &ss {
        for h in &hs {
            let value = tv_refined(data, forest, s, h)?;
            total = total.try_add(&value).unwrap();
            entries.push(RefinedEntry { s: s.clone(), h: h.clone(), value });
        }
    }
    let decomposition_ok = total == tv_val;
    Ok(RefinedTable {
        tau: tau_val,
        refined_tau,
        tv: tv_val,
        entries,
        transfer_ok,
        decomposition_ok,
    })
}
