//! Polynomial machinery for Q(zeta_M): the M-th cyclotomic polynomial and
//! reduction of rational polynomials modulo it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficients of the M-th cyclotomic polynomial Phi_M, lowest degree first.
///
/// Computed by dividing x^M - 1 by Phi_d for every proper divisor d of M.
/// The division is exact over the integers.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    assert!(m >= 1);
    let mut table: Vec<(u64, Vec<BigInt>)> = Vec::new();
    for d in 1..=m {
        if m % d != 0 {
            continue;
        }
        // x^d - 1
        let mut p = vec![BigInt::zero(); d as usize + 1];
        p[0] = -BigInt::one();
        p[d as usize] = BigInt::one();
        for (e, phi_e) in &table {
            if d % e == 0 {
                p = int_poly_div_exact(&p, phi_e);
            }
        }
        table.push((d, p));
    }
    table.pop().unwrap().1
}

/// Exact division of integer polynomials, panics if not divisible.
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - dd] = c.clone();
        for j in 0..=dd {
            let t = &den[j] * &c;
            rem[i - dd + j] -= t;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
    quot
}

/// Euler's totient.
pub fn euler_phi(m: u64) -> u64 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result = result / p * (p - 1);
        }
        p += 1;
    }
    if n > 1 {
        result = result / n * (n - 1);
    }
    result
}

/// Reduction context for Q[x] mod Phi_M.
#[derive(Debug)]
pub struct Reducer {
    pub m: u64,
    pub degree: usize,
    /// Phi_M as rationals, monic, length degree+1.
    modulus: Vec<BigRational>,
    /// x^(degree+k) mod Phi_M for k in 0..degree-1.
    high_rows: Vec<Vec<BigRational>>,
    /// x^e mod Phi_M for e in 0..M.
    zeta_pows: Vec<Vec<BigRational>>,
}

fn rat(i: &BigInt) -> BigRational {
    BigRational::from_integer(i.clone())
}

impl Reducer {
    pub fn new(m: u64) -> Self {
        let phi_int = cyclotomic_polynomial(m);
        let degree = phi_int.len() - 1;
        let modulus: Vec<BigRational> = phi_int.iter().map(rat).collect();
        // x^degree ≡ -(low part)
        let mut row = vec![BigRational::zero(); degree];
        for i in 0..degree {
            row[i] = -modulus[i].clone();
        }
        let mut high_rows = vec![row];
        for _ in 1..degree.max(1) {
            let prev = high_rows.last().unwrap().clone();
            high_rows.push(shift_reduce(&prev, &high_rows[0], degree));
        }
        let mut zeta_pows = Vec::with_capacity(m as usize);
        let mut cur = vec![BigRational::zero(); degree];
        cur[0] = BigRational::one();
        zeta_pows.push(cur.clone());
        for _ in 1..m {
            cur = shift_reduce(&cur, &high_rows[0], degree);
            zeta_pows.push(cur.clone());
        }
        Reducer { m, degree, modulus, high_rows, zeta_pows }
    }

    pub fn zero(&self) -> Vec<BigRational> {
        vec![BigRational::zero(); self.degree]
    }

    pub fn one(&self) -> Vec<BigRational> {
        let mut v = self.zero();
        v[0] = BigRational::one();
        v
    }

    pub fn zeta_pow(&self, e: i64) -> Vec<BigRational> {
        let e = e.rem_euclid(self.m as i64) as usize;
        self.zeta_pows[e].clone()
    }

    pub fn mul(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let d = self.degree;
        let mut conv = vec![BigRational::zero(); 2 * d - 1];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                conv[i + j] += ai * bj;
            }
        }
        let mut out: Vec<BigRational> = conv[..d].to_vec();
        for k in 0..(d - 1) {
            let c = &conv[d + k];
            if c.is_zero() {
                continue;
            }
            for (i, r) in self.high_rows[k].iter().enumerate() {
                if !r.is_zero() {
                    out[i] += r * c;
                }
            }
        }
        out
    }

    /// Multiply by the monomial x^e (a field unit), cheaper than full mul.
    pub fn mul_zeta_pow(&self, a: &[BigRational], e: i64) -> Vec<BigRational> {
        self.mul(a, &self.zeta_pow(e))
    }

    /// Inverse via the extended Euclidean algorithm against Phi_M.
    /// Returns None exactly when `a` is zero.
    pub fn inverse(&self, a: &[BigRational]) -> Option<Vec<BigRational>> {
        if a.iter().all(|c| c.is_zero()) {
            return None;
        }
        // egcd(a, Phi): maintain (r0, s0), (r1, s1) with ri = si*a mod Phi.
        let mut r0: Vec<BigRational> = trim(a);
        let mut s0 = vec![BigRational::one()];
        let mut r1 = trim(&self.modulus);
        let mut s1: Vec<BigRational> = vec![];
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            s0 = s1;
            r1 = r;
            s1 = s;
        }
        // r0 is a nonzero constant gcd (Phi_M is irreducible over Q).
        assert_eq!(r0.len(), 1, "cyclotomic modulus is irreducible");
        let g = r0[0].clone();
        let mut out = self.zero();
        for (i, c) in s0.iter().enumerate() {
            let red = c / &g;
            if i < self.degree {
                out[i] += red;
            } else {
                // s0 has degree < deg(Phi); this branch is unreachable.
                unreachable!("Bezout coefficient exceeds field degree");
            }
        }
        Some(out)
    }

    /// The ring map zeta -> zeta^{-1}.
    pub fn conj(&self, a: &[BigRational]) -> Vec<BigRational> {
        let mut out = self.zero();
        for (k, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let pow = &self.zeta_pows[(self.m as usize - k) % self.m as usize];
            for (i, p) in pow.iter().enumerate() {
                if !p.is_zero() {
                    out[i] += p * c;
                }
            }
        }
        out
    }

    pub fn approx(&self, a: &[BigRational]) -> num_complex::Complex64 {
        let mut z = num_complex::Complex64::new(0.0, 0.0);
        for (k, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let ang = 2.0 * std::f64::consts::PI * (k as f64) / (self.m as f64);
            let cf = rational_to_f64(c);
            z += num_complex::Complex64::new(ang.cos() * cf, ang.sin() * cf);
        }
        z
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    let num = r.numer();
    let den = r.denom();
    // Good enough for advisory output; exact paths never call this.
    let nf: f64 = num.to_string().parse().unwrap_or(if num.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    });
    let df: f64 = den.to_string().parse().unwrap_or(f64::INFINITY);
    nf / df
}

fn shift_reduce(a: &[BigRational], top_row: &[BigRational], degree: usize) -> Vec<BigRational> {
    // multiply by x, reduce the single overflow term
    let mut out = vec![BigRational::zero(); degree];
    for i in 0..degree - 1 {
        out[i + 1] = a[i].clone();
    }
    let c = &a[degree - 1];
    if !c.is_zero() {
        for (i, r) in top_row.iter().enumerate() {
            if !r.is_zero() {
                out[i] += r * c;
            }
        }
    }
    out
}

fn trim(a: &[BigRational]) -> Vec<BigRational> {
    let mut v = a.to_vec();
    while let Some(last) = v.last() {
        if last.is_zero() {
            v.pop();
        } else {
            break;
        }
    }
    v
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    trim(&out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, ai) in a.iter().enumerate() {
        out[i] += ai;
    }
    for (i, bi) in b.iter().enumerate() {
        out[i] -= bi;
    }
    trim(&out)
}

/// Division with remainder in Q[x]; divisor nonzero.
fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = trim(b);
    assert!(!b.is_empty());
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        return (vec![], trim(&rem));
    }
    let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
    let lead = b.last().unwrap().clone();
    for i in (b.len() - 1..rem.len()).rev() {
        let c = &rem[i] / &lead;
        if c.is_zero() {
            continue;
        }
        quot[i - (b.len() - 1)] = c.clone();
        for (j, bj) in b.iter().enumerate() {
            let t = bj * &c;
            rem[i - (b.len() - 1) + j] -= t;
        }
    }
    (trim(&quot), trim(&rem))
}
