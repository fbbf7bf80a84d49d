//! Exact scalars for the category engine: elements of Q(zeta_M) graded by an
//! integer power of the normalization eta.
//!
//! A value is `coeffs * eta^k` where `coeffs` lives in the power basis of
//! Q(zeta_M) modulo the M-th cyclotomic polynomial. eta itself is kept formal;
//! the rewriting rule eta^2 = (eta^{-2})^{-1} becomes available once the
//! category engine has computed eta^{-2} and stored it in the context. After
//! that every value is normalized to eta-power 0 or 1, which makes equality,
//! ordering and zero-testing plain coefficient comparisons.

mod cyclotomic;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, OnceLock};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot combine values of different eta parity")]
    MixedEtaParity,
    #[error("eta^2 has not been fixed in this field context")]
    EtaUnset,
}

#[derive(Debug)]
struct EtaData {
    eta_sq_inv: Vec<BigRational>,
    eta_sq: Vec<BigRational>,
    /// Advisory complex value of eta under zeta_M = exp(2*pi*i/M); the branch
    /// has positive real part, or positive imaginary part when purely
    /// imaginary.
    eta_approx: Complex64,
}

/// Arithmetic context: the ambient root order M, reduction data for Phi_M and
/// (once the category engine fixes it) the exact value of eta^{-2}.
#[derive(Debug)]
pub struct FieldContext {
    reducer: cyclotomic::Reducer,
    eta: OnceLock<EtaData>,
}

/// Builds the field Q(zeta_M). Exposed as a free function as well as
/// `FieldContext::new`.
pub fn make_field(m: u64) -> Arc<FieldContext> {
    FieldContext::new(m)
}

impl FieldContext {
    pub fn new(m: u64) -> Arc<FieldContext> {
        assert!(m >= 1, "root order must be positive");
        Arc::new(FieldContext { reducer: cyclotomic::Reducer::new(m), eta: OnceLock::new() })
    }

    pub fn order(&self) -> u64 {
        self.reducer.m
    }

    /// phi(M), the length of the coefficient vector.
    pub fn degree(&self) -> usize {
        self.reducer.degree
    }

    pub fn eta_is_set(&self) -> bool {
        self.eta.get().is_some()
    }

    /// Fixes eta^{-2}. Must be called exactly once, with a nonzero value of
    /// eta-power zero. Subsequent reads are lock-free.
    pub fn set_eta_squared_inverse(self: &Arc<Self>, v: &ExactValue) {
        assert_eq!(v.eta_pow, 0, "eta^-2 must be eta-free");
        let eta_sq = self
            .reducer
            .inverse(&v.coeffs)
            .expect("eta^-2 must be nonzero");
        let inv_approx = self.reducer.approx(&eta_sq);
        let mut eta_approx = inv_approx.sqrt();
        if eta_approx.re < -1e-12 || (eta_approx.re.abs() <= 1e-12 && eta_approx.im < 0.0) {
            eta_approx = -eta_approx;
        }
        let data = EtaData { eta_sq_inv: v.coeffs.clone(), eta_sq, eta_approx };
        if self.eta.set(data).is_err() {
            panic!("eta^-2 already set for this context");
        }
    }

    pub fn eta_squared_inverse(self: &Arc<Self>) -> Option<ExactValue> {
        self.eta.get().map(|d| ExactValue {
            ctx: self.clone(),
            coeffs: d.eta_sq_inv.clone(),
            eta_pow: 0,
        })
    }

    pub fn eta_approx(&self) -> Option<Complex64> {
        self.eta.get().map(|d| d.eta_approx)
    }

    pub fn zero(self: &Arc<Self>) -> ExactValue {
        ExactValue { ctx: self.clone(), coeffs: self.reducer.zero(), eta_pow: 0 }
    }

    pub fn one(self: &Arc<Self>) -> ExactValue {
        ExactValue { ctx: self.clone(), coeffs: self.reducer.one(), eta_pow: 0 }
    }

    pub fn integer(self: &Arc<Self>, n: i64) -> ExactValue {
        self.rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn rational(self: &Arc<Self>, r: BigRational) -> ExactValue {
        let mut coeffs = self.reducer.zero();
        coeffs[0] = r;
        ExactValue { ctx: self.clone(), coeffs, eta_pow: 0 }
    }

    /// zeta_M^e.
    pub fn zeta(self: &Arc<Self>, e: i64) -> ExactValue {
        ExactValue { ctx: self.clone(), coeffs: self.reducer.zeta_pow(e), eta_pow: 0 }
    }

    /// The formal normalization eta.
    pub fn eta(self: &Arc<Self>) -> ExactValue {
        let mut v = self.one();
        v.eta_pow = 1;
        v.normalize();
        v
    }

    /// Quantum integer [n] = (s^n - s^{-n})/(s - s^{-1}) with s = zeta_M^{s_exp},
    /// in the division-free polynomial form sum_{t=0}^{n-1} s^{n-1-2t};
    /// [-n] = -[n].
    pub fn quantum_integer(self: &Arc<Self>, n: i64, s_exp: i64) -> ExactValue {
        let (mag, neg) = if n < 0 { (-n, true) } else { (n, false) };
        let mut acc = self.reducer.zero();
        for t in 0..mag {
            let e = s_exp * (mag - 1 - 2 * t);
            let pow = self.reducer.zeta_pow(e);
            for (i, c) in pow.iter().enumerate() {
                if !c.is_zero() {
                    acc[i] += c;
                }
            }
        }
        if neg {
            for c in acc.iter_mut() {
                *c = -c.clone();
            }
        }
        ExactValue { ctx: self.clone(), coeffs: acc, eta_pow: 0 }
    }
}

/// An exact scalar: an element of Q(zeta_M) times an integer power of eta.
///
/// Once the context knows eta^{-2} the power is normalized into {0, 1}, so
/// equality is decidable by direct comparison. Addition of values with
/// different eta parity is an error.
#[derive(Clone)]
pub struct ExactValue {
    ctx: Arc<FieldContext>,
    coeffs: Vec<BigRational>,
    eta_pow: i64,
}

impl ExactValue {
    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn eta_power(&self) -> i64 {
        self.eta_pow
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn normalize(&mut self) {
        if self.eta_pow == 0 || self.eta_pow == 1 {
            return;
        }
        if self.is_zero() {
            self.eta_pow = 0;
            return;
        }
        let eta = self
            .ctx
            .eta
            .get()
            .unwrap_or_else(|| panic!("eta power {} needs eta^2 fixed", self.eta_pow));
        while self.eta_pow >= 2 {
            self.coeffs = self.ctx.reducer.mul(&self.coeffs, &eta.eta_sq);
            self.eta_pow -= 2;
        }
        while self.eta_pow < 0 {
            self.coeffs = self.ctx.reducer.mul(&self.coeffs, &eta.eta_sq_inv);
            self.eta_pow += 2;
        }
    }

    fn assert_same_ctx(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx.order() == other.ctx.order(),
            "values from different field contexts"
        );
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.assert_same_ctx(other);
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if (self.eta_pow - other.eta_pow) % 2 != 0 {
            return Err(ExactError::MixedEtaParity);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        a.normalize();
        b.normalize();
        if a.eta_pow != b.eta_pow {
            // only possible when eta is unset and powers differ by a multiple of 2
            return Err(ExactError::EtaUnset);
        }
        let coeffs = a
            .coeffs
            .iter()
            .zip(b.coeffs.iter())
            .map(|(x, y)| x + y)
            .collect();
        Ok(ExactValue { ctx: a.ctx, coeffs, eta_pow: a.eta_pow })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| -c.clone()).collect();
        ExactValue { ctx: self.ctx.clone(), coeffs, eta_pow: self.eta_pow }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_ctx(other);
        let coeffs = self.ctx.reducer.mul(&self.coeffs, &other.coeffs);
        let mut v = ExactValue { ctx: self.ctx.clone(), coeffs, eta_pow: self.eta_pow + other.eta_pow };
        v.normalize();
        v
    }

    /// Multiply by zeta_M^e.
    pub fn mul_zeta(&self, e: i64) -> Self {
        let coeffs = self.ctx.reducer.mul_zeta_pow(&self.coeffs, e);
        ExactValue { ctx: self.ctx.clone(), coeffs, eta_pow: self.eta_pow }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c * r).collect();
        ExactValue { ctx: self.ctx.clone(), coeffs, eta_pow: self.eta_pow }
    }

    pub fn inverse(&self) -> Result<Self, ExactError> {
        let inv = self
            .ctx
            .reducer
            .inverse(&self.coeffs)
            .ok_or(ExactError::DivisionByZero)?;
        let mut v = ExactValue { ctx: self.ctx.clone(), coeffs: inv, eta_pow: -self.eta_pow };
        v.normalize();
        Ok(v)
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ExactError> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self, ExactError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = self.ctx.one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// The ring map zeta -> zeta^{-1} on the field part; eta is fixed.
    pub fn conj(&self) -> Self {
        let coeffs = self.ctx.reducer.conj(&self.coeffs);
        ExactValue { ctx: self.ctx.clone(), coeffs, eta_pow: self.eta_pow }
    }

    pub fn is_one(&self) -> bool {
        *self == self.ctx.one()
    }

    /// Extracts a rational integer, if the value is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.eta_pow != 0 {
            return None;
        }
        if self.coeffs[1..].iter().any(|c| !c.is_zero()) {
            return None;
        }
        let c = &self.coeffs[0];
        if c.denom().is_one() {
            Some(c.numer().clone())
        } else {
            None
        }
    }

    /// Advisory floating approximation; never used in decision paths.
    pub fn approx(&self) -> Complex64 {
        let base = self.ctx.reducer.approx(&self.coeffs);
        if self.eta_pow == 0 {
            return base;
        }
        let eta = self
            .ctx
            .eta_approx()
            .expect("approx of an eta-graded value needs the eta branch");
        base * eta.powi(self.eta_pow as i32)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|c| {
                serde_json::Value::Array(vec![
                    bigint_json(c.numer()),
                    bigint_json(c.denom()),
                ])
            })
            .collect();
        let approx = if self.eta_pow == 0 || self.ctx.eta_approx().is_some() {
            let z = self.approx();
            serde_json::json!({ "re": z.re, "im": z.im })
        } else {
            serde_json::Value::Null
        };
        serde_json::json!({
            "eta_power": self.eta_pow,
            "coeffs": coeffs,
            "approx": approx,
        })
    }

    pub fn from_json(ctx: &Arc<FieldContext>, v: &serde_json::Value) -> Option<Self> {
        let eta_pow = v.get("eta_power")?.as_i64()?;
        let arr = v.get("coeffs")?.as_array()?;
        if arr.len() != ctx.degree() {
            return None;
        }
        let mut coeffs = Vec::with_capacity(arr.len());
        for pair in arr {
            let pair = pair.as_array()?;
            let num: BigInt = json_bigint(&pair[0])?;
            let den: BigInt = json_bigint(&pair[1])?;
            coeffs.push(BigRational::new(num, den));
        }
        let mut out = ExactValue { ctx: ctx.clone(), coeffs, eta_pow };
        out.normalize();
        Some(out)
    }
}

fn bigint_json(i: &BigInt) -> serde_json::Value {
    serde_json::Value::Number(
        serde_json::Number::from_string_unchecked(i.to_string()),
    )
}

fn json_bigint(v: &serde_json::Value) -> Option<BigInt> {
    match v {
        serde_json::Value::Number(n) => n.to_string().parse().ok(),
        serde_json::Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

impl PartialEq for ExactValue {
    fn eq(&self, other: &Self) -> bool {
        self.assert_same_ctx(other);
        if (self.eta_pow - other.eta_pow) % 2 != 0 {
            return self.is_zero() && other.is_zero();
        }
        let mut a = self.clone();
        let mut b = other.clone();
        a.normalize();
        b.normalize();
        if a.eta_pow != b.eta_pow {
            return a.is_zero() && b.is_zero();
        }
        a.coeffs == b.coeffs
    }
}

impl Eq for ExactValue {}

impl PartialOrd for ExactValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Arbitrary total order (eta power, then coefficients); used for canonical
/// sorting and multiset comparison, not for magnitude.
impl Ord for ExactValue {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.clone();
        let mut b = other.clone();
        a.normalize();
        b.normalize();
        a.eta_pow
            .cmp(&b.eta_pow)
            .then_with(|| a.coeffs.cmp(&b.coeffs))
    }
}

impl fmt::Debug for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            if mono.is_empty() {
                terms.push(format!("{c}"));
            } else if c.is_one() {
                terms.push(mono);
            } else {
                terms.push(format!("{c}*{mono}"));
            }
        }
        let body = terms.join(" + ");
        match self.eta_pow {
            0 => write!(f, "{body}"),
            1 => write!(f, "eta*({body})"),
            p => write!(f, "eta^{p}*({body})"),
        }
    }
}

impl std::ops::Add for &ExactValue {
    type Output = ExactValue;
    fn add(self, rhs: &ExactValue) -> ExactValue {
        self.try_add(rhs).expect("eta parity mismatch in addition")
    }
}

impl std::ops::Sub for &ExactValue {
    type Output = ExactValue;
    fn sub(self, rhs: &ExactValue) -> ExactValue {
        self.try_sub(rhs).expect("eta parity mismatch in subtraction")
    }
}

impl std::ops::Mul for &ExactValue {
    type Output = ExactValue;
    fn mul(self, rhs: &ExactValue) -> ExactValue {
        ExactValue::mul(self, rhs)
    }
}

impl std::ops::Neg for &ExactValue {
    type Output = ExactValue;
    fn neg(self) -> ExactValue {
        ExactValue::neg(self)
    }
}
