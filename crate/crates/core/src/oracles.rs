//! Independent test oracles: closed-form N=2 Temperley-Lieb data, brute-force
//! congruence solving, rational-elimination signatures and a direct
//! state-sum evaluator for small forests. Production paths never call these.

use crate::exact::{ExactValue, FieldContext};
use crate::snf::IntMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance too large for exhaustive search")]
    TooLarge,
}

/// Closed-form Kauffman-bracket data for the n-strand Jones-Wenzl projector
/// with variable A = zeta_M^{a_exp}:
///   qdim_n   = (-1)^n [n+1]_A
///   twist_n  = (-1)^n A^{n^2+2n}
///   hopf_n_m = (-1)^{n+m} [(n+1)(m+1)]_A
/// where [k]_A is the quantum integer in A^2.
pub fn tl_data(
    ctx: &Arc<FieldContext>,
    n: i64,
    m: i64,
    a_exp: i64,
) -> (ExactValue, ExactValue, ExactValue) {
    let sign = |k: i64| if k % 2 == 0 { 1 } else { -1 };
    let qint = |k: i64| ctx.quantum_integer(k, 2 * a_exp);
    let qdim = qint(n + 1).scale(&BigRational::from_integer(BigInt::from(sign(n))));
    let twist = ctx
        .zeta(a_exp * (n * n + 2 * n))
        .scale(&BigRational::from_integer(BigInt::from(sign(n))));
    let hopf = qint((n + 1) * (m + 1))
        .scale(&BigRational::from_integer(BigInt::from(sign(n + m))));
    (qdim, twist, hopf)
}

/// Exhaustive enumeration of (Z_d)^m filtered by A x ≡ b (mod d).
pub fn brute_solve(a: &IntMatrix, b: &[BigInt], d: u64) -> Result<Vec<Vec<u64>>, OracleError> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    if n > 8 || d > 4 {
        return Err(OracleError::TooLarge);
    }
    let dd = BigInt::from(d);
    let mut out = Vec::new();
    let total = (d as u128).pow(n as u32);
    for code in 0..total {
        let mut x = Vec::with_capacity(n);
        let mut c = code;
        for _ in 0..n {
            x.push((c % d as u128) as u64);
            c /= d as u128;
        }
        let ok = (0..m).all(|i| {
            let mut acc = BigInt::zero();
            for j in 0..n {
                acc += &a[i][j] * BigInt::from(x[j]);
            }
            ((acc - &b[i]) % &dd).is_zero()
        });
        if ok {
            out.push(x);
        }
    }
    out.sort();
    Ok(out)
}

/// Signature by symmetric Gaussian elimination over the rationals; an
/// independent route from the characteristic-polynomial sign count.
/// Diagonal pivots contribute their sign; a zero diagonal with a nonzero
/// off-diagonal entry is a hyperbolic block contributing 0.
pub fn signature_by_elimination(a: &IntMatrix) -> i64 {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut sig = 0i64;
    let mut rows: Vec<usize> = (0..n).collect();
    while !rows.is_empty() {
        if let Some(pi) = rows.iter().position(|&i| !m[i][i].is_zero()) {
            let p = rows.remove(pi);
            let pivval = m[p][p].clone();
            sig += if pivval.is_positive() { 1 } else { -1 };
            let prow: Vec<BigRational> = m[p].clone();
            for &r in &rows {
                if prow[r].is_zero() {
                    continue;
                }
                let factor = &prow[r] / &pivval;
                for &s in &rows {
                    let t = &prow[s] * &factor;
                    m[r][s] = &m[r][s] - &t;
                }
            }
            continue;
        }
        let mut found = None;
        'outer: for (ai, &i) in rows.iter().enumerate() {
            for (aj, &j) in rows.iter().enumerate() {
                if ai < aj && !m[i][j].is_zero() {
                    found = Some((ai, aj));
                    break 'outer;
                }
            }
        }
        let Some((ai, aj)) = found else { break };
        let j = rows.remove(aj);
        let i = rows.remove(ai);
        let b = m[i][j].clone();
        let irow: Vec<BigRational> = m[i].clone();
        let jrow: Vec<BigRational> = m[j].clone();
        for &r in &rows {
            for &s in &rows {
                let corr = (&irow[r] * &jrow[s] + &jrow[r] * &irow[s]) / &b;
                m[r][s] = &m[r][s] - &corr;
            }
        }
    }
    sig
}

/// Direct evaluation of the colored-forest state sum by iterating over the
/// full |Gamma|^{#vertices} product. Only feasible for tiny forests; used to
/// cross-check the tree-contraction evaluator.
pub fn brute_force_forest_value(
    data: &crate::category::CategoryData,
    forest: &crate::manifolds::PlumbingForest,
    assignment: &crate::invariants::ColorAssignment,
) -> Result<ExactValue, OracleError> {
    let n = forest.len();
    let gamma = data.colors().len();
    if (gamma as u128).pow(n as u32) > 2_000_000 {
        return Err(OracleError::TooLarge);
    }
    let ctx = data.context();
    let mut total = ctx.zero();
    let mut coloring = vec![0usize; n];
    loop {
        let mut term = ctx.one();
        let mut zero = false;
        for (vi, v) in forest.vertices().iter().enumerate() {
            let x = coloring[vi];
            let coeff = assignment
                .coefficient(&v.id, x)
                .unwrap_or_else(|| ctx.zero());
            if coeff.is_zero() {
                zero = true;
                break;
            }
            term = term.mul(&coeff);
            term = term.mul(&data.twist_power(x, v.framing));
            let deg = forest.degree(&v.id) as i64;
            term = term.mul(&data.qdim(x).pow(1 - deg).unwrap());
        }
        if !zero {
            for (a, b) in forest.edges() {
                let xi = coloring[forest.vertex_index(a).unwrap()];
                let xj = coloring[forest.vertex_index(b).unwrap()];
                term = term.mul(data.hopf(xi, xj));
            }
            total = total.try_add(&term).expect("state sum terms share parity");
        }
        // advance
        let mut k = 0;
        loop {
            if k == n {
                return Ok(total);
            }
            coloring[k] += 1;
            if coloring[k] < gamma {
                break;
            }
            coloring[k] = 0;
            k += 1;
        }
    }
}

/// Searches the finite candidate set for the TL/Homfly convention map at
/// N = 2: an exponent u with A = zeta_M^u and a per-box sign character such
/// that quantum dimensions and twists match, and the Hopf vanishing pattern
/// agrees. Returns matching (u, qdim_sign_flip) pairs.
pub fn tl_convention_search(data: &crate::category::CategoryData) -> Vec<(i64, bool)> {
    let p = data.params();
    assert_eq!(p.n, 2, "the TL oracle is an N=2 statement");
    let ctx = data.context();
    let m = ctx.order() as i64;
    let level = p.k as i64;
    let mut found = Vec::new();
    for u in 1..m {
        if num_integer::gcd(u, m) != 1 {
            continue; // A must be a primitive M-th root
        }
        for flip in [false, true] {
            let mut ok = true;
            // twist ratio must be a fixed character c^n; anchor c from n=1
            let mut character: Option<ExactValue> = None;
            for n_strands in 0..=level {
                let color = crate::partitions::YoungDiagram::row(n_strands as usize);
                let Some(idx) = data.color_index_of_diagram(&color) else {
                    ok = false;
                    break;
                };
                let (qd, tw, _) = tl_data(ctx, n_strands, 0, u);
                let qd = if flip && n_strands % 2 == 1 { qd.neg() } else { qd };
                if data.qdim(idx) != &qd {
                    ok = false;
                    break;
                }
                let ratio = data
                    .twist(idx)
                    .try_div(&tw)
                    .expect("twists are units");
                match &character {
                    None => {
                        if n_strands == 1 {
                            character = Some(ratio);
                        } else if n_strands == 0 && !ratio.is_one() {
                            ok = false;
                            break;
                        }
                    }
                    Some(c) => {
                        let expected = c.pow(n_strands).unwrap();
                        if ratio != expected {
                            ok = false;
                            break;
                        }
                    }
                }
            }
            if !ok {
                continue;
            }
            // Hopf vanishing pattern
            for a in 0..=level {
                for b in 0..=level {
                    let ia = data
                        .color_index_of_diagram(&crate::partitions::YoungDiagram::row(a as usize))
                        .unwrap();
                    let ib = data
                        .color_index_of_diagram(&crate::partitions::YoungDiagram::row(b as usize))
                        .unwrap();
                    let (_, _, hopf) = tl_data(ctx, a, b, u);
                    if data.hopf(ia, ib).is_zero() != hopf.is_zero() {
                        ok = false;
                    }
                }
            }
            if ok {
                found.push((u, flip));
            }
        }
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::snf::int_matrix;

    #[test]
    fn brute_examples() {
        let sols = brute_solve(&int_matrix(&[vec![0]]), &[BigInt::from(0)], 2).unwrap();
        assert_eq!(sols, vec![vec![0], vec![1]]);
        let sols = brute_solve(&int_matrix(&[vec![1]]), &[BigInt::from(1)], 2).unwrap();
        assert_eq!(sols, vec![vec![1]]);
        let e8 = crate::manifolds::e8_sphere();
        let a = e8.linking_matrix();
        let b: Vec<BigInt> = e8
            .vertices()
            .iter()
            .map(|v| BigInt::from(-v.framing)) // d/2 * framing = framing at d=2... sign-free mod 2
            .collect();
        let sols = brute_solve(&a, &b, 2).unwrap();
        assert_eq!(sols.len(), 1);
        let too_big = brute_solve(&int_matrix(&[vec![0; 9]]), &[BigInt::zero()], 2);
        assert_eq!(too_big.unwrap_err(), OracleError::TooLarge);
    }

    #[test]
    fn tl_small_values() {
        let ctx = crate::make_field(16);
        // n=0 is the trivial color
        let (q0, t0, h0m) = tl_data(&ctx, 0, 3, 1);
        assert_eq!(q0, ctx.one());
        assert_eq!(t0, ctx.one());
        let (q3, _, _) = tl_data(&ctx, 3, 0, 1);
        assert_eq!(h0m, q3);
        // at A = zeta_16, [4]_A = 0, so the (1,1) Hopf value vanishes
        let (_, _, h11) = tl_data(&ctx, 1, 1, 1);
        assert!(h11.is_zero());
        // qdim_1 = -[2]_A
        let (q1, _, _) = tl_data(&ctx, 1, 0, 1);
        assert_eq!(q1, ctx.quantum_integer(2, 2).neg());
    }
}

#[cfg(test)]
mod convention_tests {
    use super::*;
    use crate::category::{build_category, build_params, Mode};

    #[test]
    fn tl_convention_exists_at_2_2() {
        let data = build_category(&build_params(2, 2, Mode::Spin, None).unwrap()).unwrap();
        let found = tl_convention_search(&data);
        assert!(!found.is_empty(), "no TL convention map matches");
        // frozen map: A = zeta_16 (and its Galois partner zeta_16^9), with
        // the (-1)^n sign character absorbed into the quantum dimensions
        assert_eq!(found, vec![(1, true), (9, true)]);
    }

    #[test]
    fn tl_convention_exists_at_2_6() {
        let data = build_category(&build_params(2, 6, Mode::Spin, None).unwrap()).unwrap();
        let found = tl_convention_search(&data);
        assert!(!found.is_empty(), "no TL convention map matches");
    }
}
