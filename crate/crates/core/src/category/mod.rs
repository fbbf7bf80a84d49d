//! The reduced SU(N,K) modular category: parameters, simple objects,
//! quantum dimensions, twists, fusion, Hopf pairing, the Kirby color and its
//! graded components, and the identity suite that pins all conventions.

mod build;
pub mod cache;
mod suite;

pub use build::{build_category, build_params, select_convention, TwistCandidate};
pub use suite::{SuiteCheck, SuiteReport};

use crate::exact::{ExactValue, FieldContext};
use crate::partitions::YoungDiagram;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CategoryError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("several (alpha, beta) factorizations are valid: {0:?}; pass an explicit alpha")]
    AmbiguousFactorization(Vec<(u64, u64)>),
    #[error("no framing parameter satisfies the exponent equations (this is a bug)")]
    NoFramingParameter,
    #[error("twist calibration failed: {0}")]
    CalibrationFailure(String),
    #[error("eta closed form disagrees with the sum of squared quantum dimensions")]
    EtaMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Spin,
    Coh,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Spin => write!(f, "spin"),
            Mode::Coh => write!(f, "coh"),
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "spin" => Ok(Mode::Spin),
            "coh" => Ok(Mode::Coh),
            other => Err(format!("unknown mode {other:?} (expected spin or coh)")),
        }
    }
}

/// Numerical parameters of one reduced SU(N,K) theory.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub n: usize,
    pub k: usize,
    pub mode: Mode,
    pub d: u64,
    pub n_prime: u64,
    pub k_prime: u64,
    pub alpha: u64,
    pub beta: u64,
    /// Ambient root order: scalars live in Q(zeta_m).
    pub m: u64,
    /// s = zeta_m^{s_exp}, of exact order 2(N+K) (or N+K in odd coh cases).
    pub s_exp: i64,
    /// Framing parameter a = zeta_m^{a_exp}; the calibrated choice.
    pub a_exp: i64,
}

impl Params {
    pub fn s_order(&self) -> u64 {
        self.m / num_integer::gcd(self.s_exp.unsigned_abs(), self.m)
    }
}

/// A simple object of Gamma_{N,K}: `full_cols` copies of the full height-N
/// column (the index i < alpha) together with a stripped diagram of fewer
/// than N rows and at most K columns, canonical under the K^{tensor beta}
/// identification.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Color {
    pub full_cols: usize,
    pub rows: YoungDiagram,
}

impl Color {
    pub fn vacuum() -> Self {
        Color { full_cols: 0, rows: YoungDiagram::empty() }
    }

    /// The underlying Young diagram with the full columns restored.
    pub fn full_diagram(&self, n: usize) -> YoungDiagram {
        if self.full_cols == 0 {
            return self.rows.clone();
        }
        let mut rows: Vec<usize> = (0..n)
            .map(|i| self.rows.row_len(i) + self.full_cols)
            .collect();
        rows.retain(|&r| r > 0);
        YoungDiagram::new(rows)
    }

    pub fn size(&self, n: usize) -> usize {
        self.full_cols * n + self.rows.size()
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.full_cols > 0 {
            write!(f, "(1^N)^{}x", self.full_cols)?;
        }
        write!(f, "{:?}", self.rows)
    }
}

/// Immutable tables for one (N, K, mode) theory.
pub struct CategoryData {
    params: Params,
    ctx: Arc<FieldContext>,
    colors: Vec<Color>,
    index: BTreeMap<Color, usize>,
    grading: Vec<u64>,
    qdim: Vec<ExactValue>,
    qdim_inv: Vec<ExactValue>,
    dual: Vec<usize>,
    /// fusion[x][y] = sorted list of (z, multiplicity)
    fusion: Vec<Vec<Vec<(usize, u64)>>>,
    /// twist f(x) as a power of zeta_m
    twist_exp: Vec<i64>,
    hopf: Vec<Vec<ExactValue>>,
    eta_sq_inv: ExactValue,
    delta: ExactValue,
    /// canonical indices of the flow colors (1^N)^k (x) K^l, k < alpha, l < beta
    flow: Vec<usize>,
    mu_exp: i64,
    /// all (a_exp, mu_exp) conventions that passed calibration
    survivors: Vec<(i64, i64)>,
}

impl CategoryData {
    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn vacuum(&self) -> usize {
        self.index[&Color::vacuum()]
    }

    pub fn color_index(&self, c: &Color) -> Option<usize> {
        self.index.get(c).copied()
    }

    /// Looks up a color by its full diagram (full columns included).
    pub fn color_index_of_diagram(&self, diagram: &YoungDiagram) -> Option<usize> {
        self.colors
            .iter()
            .position(|c| &c.full_diagram(self.params.n) == diagram)
    }

    pub fn grading(&self, x: usize) -> u64 {
        self.grading[x]
    }

    pub fn qdim(&self, x: usize) -> &ExactValue {
        &self.qdim[x]
    }

    pub fn qdim_inverse(&self, x: usize) -> &ExactValue {
        &self.qdim_inv[x]
    }

    pub fn dual(&self, x: usize) -> usize {
        self.dual[x]
    }

    pub fn fusion(&self, x: usize, y: usize) -> &[(usize, u64)] {
        &self.fusion[x][y]
    }

    pub fn fusion_multiplicity(&self, x: usize, y: usize, z: usize) -> u64 {
        self.fusion[x][y]
            .iter()
            .find(|(w, _)| *w == z)
            .map(|(_, m)| *m)
            .unwrap_or(0)
    }

    /// The twist (framing coefficient) f(x), a root of unity.
    pub fn twist(&self, x: usize) -> ExactValue {
        self.ctx.zeta(self.twist_exp[x])
    }

    pub fn twist_exponent(&self, x: usize) -> i64 {
        self.twist_exp[x]
    }

    /// f(x)^e for a framing e.
    pub fn twist_power(&self, x: usize, e: i64) -> ExactValue {
        self.ctx.zeta(self.twist_exp[x].wrapping_mul(e))
    }

    /// 0-framed Hopf link value H(x, y).
    pub fn hopf(&self, x: usize, y: usize) -> &ExactValue {
        &self.hopf[x][y]
    }

    /// S-matrix entry eta * H(x, y).
    pub fn s_matrix(&self, x: usize, y: usize) -> ExactValue {
        self.hopf[x][y].mul(&self.ctx.eta())
    }

    pub fn eta(&self) -> ExactValue {
        self.ctx.eta()
    }

    pub fn eta_inverse(&self) -> ExactValue {
        self.ctx.eta().inverse().expect("eta is a unit")
    }

    /// The exact value of eta^{-2} (the global dimension).
    pub fn eta_squared_inverse(&self) -> &ExactValue {
        &self.eta_sq_inv
    }

    /// Delta = <U_1(omega_{d/2})> in spin mode, <U_1(omega_0)> in coh mode.
    pub fn delta(&self) -> &ExactValue {
        &self.delta
    }

    pub fn mu_exponent(&self) -> i64 {
        self.mu_exp
    }

    pub fn calibration_survivors(&self) -> &[(i64, i64)] {
        &self.survivors
    }

    pub fn flow_colors(&self) -> &[usize] {
        &self.flow
    }

    pub fn is_flow_color(&self, x: usize) -> bool {
        self.flow.contains(&x)
    }

    /// Coefficients of the graded Kirby color omega_i: eta*<x> on colors of
    /// grading i.
    pub fn omega_component(&self, i: u64) -> Vec<(usize, ExactValue)> {
        let eta = self.ctx.eta();
        (0..self.colors.len())
            .filter(|&x| self.grading[x] == i % self.params.d)
            .map(|x| (x, self.qdim[x].mul(&eta)))
            .collect()
    }

    /// Coefficients of the full Kirby color omega.
    pub fn omega(&self) -> Vec<(usize, ExactValue)> {
        let eta = self.ctx.eta();
        (0..self.colors.len())
            .map(|x| (x, self.qdim[x].mul(&eta)))
            .collect()
    }

    /// <U_eps(omega_i)> or <U_eps(omega)>: the eps-framed unknot colored by a
    /// (graded) Kirby color.
    pub fn unknot_value(&self, eps: i64, grading: Option<u64>) -> ExactValue {
        let eta = self.ctx.eta();
        let mut acc = self.ctx.zero();
        for x in 0..self.colors.len() {
            if let Some(i) = grading {
                if self.grading[x] != i % self.params.d {
                    continue;
                }
            }
            let term = self.qdim[x]
                .mul(&self.qdim[x])
                .mul(&eta)
                .mul(&self.twist_power(x, eps));
            acc = acc.try_add(&term).unwrap();
        }
        acc
    }

    /// The grading carrying Delta: d/2 in spin mode, 0 in coh mode.
    pub fn delta_grading(&self) -> u64 {
        match self.params.mode {
            Mode::Spin => self.params.d / 2,
            Mode::Coh => 0,
        }
    }

    /// Verlinde consistency: the multiplicities recovered from
    /// S(x,y) = eta H(x,y) by the Verlinde formula
    ///   N^z_{xy} = sum_w S(x,w) S(y,w) S(z*,w) / S(0,w)
    /// must reproduce the fusion table. Exact arithmetic throughout.
    pub fn verlinde_fusion_check(&self) -> bool {
        let n = self.colors.len();
        let vac = self.vacuum();
        let eta = self.ctx.eta();
        let s: Vec<Vec<ExactValue>> = (0..n)
            .map(|x| (0..n).map(|w| self.hopf[x][w].mul(&eta)).collect())
            .collect();
        let s0_inv: Vec<ExactValue> = (0..n)
            .map(|w| s[vac][w].inverse().expect("S(0,w) = eta<w> is nonzero"))
            .collect();
        for x in 0..n {
            for y in x..n {
                let mut g: Vec<ExactValue> = Vec::with_capacity(n);
                for w in 0..n {
                    g.push(s[x][w].mul(&s[y][w]).mul(&s0_inv[w]));
                }
                for z in 0..n {
                    let zd = self.dual[z];
                    let mut acc = self.ctx.zero();
                    for w in 0..n {
                        acc = acc.try_add(&g[w].mul(&s[zd][w])).unwrap();
                    }
                    let expected = self.ctx.integer(self.fusion_multiplicity(x, y, z) as i64);
                    if acc != expected {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn identity_suite(&self) -> SuiteReport {
        suite::run(self)
    }
}
