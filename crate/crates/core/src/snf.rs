//! Smith normal form over the integers and the mod-d linear congruence solver
//! built on it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn int_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

/// Diagonalization d = u * a * v with u, v unimodular. The diagonal is
/// nonnegative; divisibility chaining is not needed by the solver.
pub struct Smith {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut d = a.clone();
    let mut u = identity(m);
    let mut v = identity(n);

    fn swap_rows(mat: &mut IntMatrix, i: usize, j: usize) {
        mat.swap(i, j);
    }
    fn swap_cols(mat: &mut IntMatrix, i: usize, j: usize) {
        for row in mat.iter_mut() {
            row.swap(i, j);
        }
    }
    fn add_row(mat: &mut IntMatrix, dst: usize, src: usize, c: &BigInt) {
        for j in 0..mat[dst].len() {
            let t = &mat[src][j] * c;
            mat[dst][j] += t;
        }
    }
    fn add_col(mat: &mut IntMatrix, dst: usize, src: usize, c: &BigInt) {
        for row in mat.iter_mut() {
            let t = &row[src] * c;
            row[dst] += t;
        }
    }

    let mut t = 0;
    while t < m.min(n) {
        // find a pivot of least absolute value in the trailing block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !d[i][j].is_zero()
                    && pivot
                        .map(|(pi, pj)| d[i][j].abs() < d[pi][pj].abs())
                        .unwrap_or(true)
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        if pi != t {
            swap_rows(&mut d, pi, t);
            swap_rows(&mut u, pi, t);
        }
        if pj != t {
            swap_cols(&mut d, pj, t);
            swap_cols(&mut v, pj, t);
        }
        let mut dirty = false;
        for i in t + 1..m {
            if !d[i][t].is_zero() {
                let q = -(&d[i][t]).div_floor(&d[t][t]);
                add_row(&mut d, i, t, &q);
                add_row(&mut u, i, t, &q);
                if !d[i][t].is_zero() {
                    dirty = true;
                }
            }
        }
        for j in t + 1..n {
            if !d[t][j].is_zero() {
                let q = -(&d[t][j]).div_floor(&d[t][t]);
                add_col(&mut d, j, t, &q);
                add_col(&mut v, j, t, &q);
                if !d[t][j].is_zero() {
                    dirty = true;
                }
            }
        }
        if dirty {
            continue; // remainders left, pick a smaller pivot
        }
        if d[t][t].is_negative() {
            for j in 0..n {
                d[t][j] = -d[t][j].clone();
            }
            for j in 0..m {
                u[t][j] = -u[t][j].clone();
            }
        }
        t += 1;
    }
    Smith { d, u, v }
}

/// Complete solution set of A x ≡ b (mod modulus) over (Z_modulus)^n,
/// with the affine structure exposed: one base solution plus kernel
/// generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceSolutions {
    pub base: Option<Vec<u64>>,
    pub kernel: Vec<Vec<u64>>,
    pub all: Vec<Vec<u64>>,
}

pub fn solve_mod(a: &IntMatrix, b: &[BigInt], modulus: u64) -> CongruenceSolutions {
    assert!(modulus >= 1);
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    assert_eq!(b.len(), m);
    let md = BigInt::from(modulus);
    let smith = smith_normal_form(a);

    // rhs in the transformed basis: (U b)_i
    let ub: Vec<BigInt> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| &smith.u[i][j] * &b[j])
                .fold(BigInt::zero(), |acc, x| acc + x)
        })
        .collect();

    // per-coordinate solution sets for D y ≡ U b (mod modulus)
    let mut coord_sets: Vec<Vec<u64>> = Vec::with_capacity(n);
    let mut kernel_steps: Vec<u64> = Vec::with_capacity(n);
    for j in 0..n {
        let dj = if j < m { smith.d[j][j].clone() } else { BigInt::zero() };
        let rhs = if j < m { ub[j].mod_floor(&md) } else { BigInt::zero() };
        if dj.is_zero() {
            if !rhs.is_zero() {
                return CongruenceSolutions { base: None, kernel: vec![], all: vec![] };
            }
            coord_sets.push((0..modulus).collect());
            kernel_steps.push(1);
            continue;
        }
        let g = dj.gcd(&md);
        if !(&rhs % &g).is_zero() {
            return CongruenceSolutions { base: None, kernel: vec![], all: vec![] };
        }
        let md_g = big_to_u64(&(&md / &g)).max(1);
        let dj_g = &dj / &g;
        let rhs_g = &rhs / &g;
        let md_g_big = BigInt::from(md_g);
        let inv = mod_inverse(&dj_g.mod_floor(&md_g_big), &md_g_big);
        let y0 = (rhs_g * inv).mod_floor(&md_g_big);
        let y0 = big_to_u64(&y0);
        let g64 = big_to_u64(&g);
        let set: Vec<u64> = (0..g64.min(modulus)).map(|k| (y0 + k * md_g) % modulus).collect();
        coord_sets.push(set);
        kernel_steps.push(md_g % modulus);
    }
    // rows beyond n must be consistent
    for i in n..m {
        if !ub[i].mod_floor(&md).is_zero() {
            return CongruenceSolutions { base: None, kernel: vec![], all: vec![] };
        }
    }

    // x = V y mod modulus
    let to_x = |y: &[u64]| -> Vec<u64> {
        (0..n)
            .map(|i| {
                let mut acc = BigInt::zero();
                for j in 0..n {
                    acc += &smith.v[i][j] * BigInt::from(y[j]);
                }
                big_to_u64(&acc.mod_floor(&md))
            })
            .collect()
    };

    let base_y: Vec<u64> = coord_sets.iter().map(|s| s[0]).collect();
    let base = to_x(&base_y);

    // kernel generators: per coordinate, the step d/g (or 1 for free coords)
    let mut kernel = Vec::new();
    for (j, &step) in kernel_steps.iter().enumerate() {
        if step % modulus == 0 && modulus > 1 {
            continue; // only the trivial shift
        }
        let mut y = vec![0u64; n];
        y[j] = step % modulus;
        if y[j] == 0 && modulus > 1 {
            continue;
        }
        let gen: Vec<u64> = {
            let xk = to_x(&y);
            xk
        };
        if gen.iter().any(|&g| g != 0) {
            kernel.push(gen);
        }
    }

    // enumerate the full product
    let mut all = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let y: Vec<u64> = idx.iter().enumerate().map(|(j, &i)| coord_sets[j][i]).collect();
        all.push(to_x(&y));
        let mut j = 0;
        loop {
            if j == n {
                all.sort();
                all.dedup();
                return CongruenceSolutions { base: Some(base), kernel, all };
            }
            idx[j] += 1;
            if idx[j] < coord_sets[j].len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

fn big_to_u64(b: &BigInt) -> u64 {
    let (_, digits) = b.to_u64_digits();
    digits.first().copied().unwrap_or(0)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    if m.is_one() {
        return BigInt::zero();
    }
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "not invertible: gcd({a},{m}) = {}", e.gcd);
    e.x.mod_floor(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snf_reconstructs() {
        let a = int_matrix(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let s = smith_normal_form(&a);
        // u * a * v == d
        let m = a.len();
        let n = a[0].len();
        let mut ua = vec![vec![BigInt::zero(); n]; m];
        for i in 0..m {
            for j in 0..n {
                for k in 0..m {
                    ua[i][j] += &s.u[i][k] * &a[k][j];
                }
            }
        }
        let mut uav = vec![vec![BigInt::zero(); n]; m];
        for i in 0..m {
            for j in 0..n {
                for k in 0..n {
                    uav[i][j] += &ua[i][k] * &s.v[k][j];
                }
            }
        }
        assert_eq!(uav, s.d);
        for i in 0..m {
            for j in 0..n {
                if i != j {
                    assert!(s.d[i][j].is_zero());
                }
            }
        }
    }

    #[test]
    fn solve_simple() {
        // [[0]] x ≡ 0 (mod 2): both residues
        let sols = solve_mod(&int_matrix(&[vec![0]]), &[BigInt::from(0)], 2);
        assert_eq!(sols.all, vec![vec![0], vec![1]]);
        // [[1]] x ≡ 1 (mod 2): x = 1
        let sols = solve_mod(&int_matrix(&[vec![1]]), &[BigInt::from(1)], 2);
        assert_eq!(sols.all, vec![vec![1]]);
        // inconsistent: 2x ≡ 1 (mod 4)
        let sols = solve_mod(&int_matrix(&[vec![2]]), &[BigInt::from(1)], 4);
        assert!(sols.all.is_empty() && sols.base.is_none());
    }

    #[test]
    fn affine_structure() {
        // x + y ≡ 2 (mod 4): 4 solutions, kernel of size 4
        let sols = solve_mod(&int_matrix(&[vec![1, 1]]), &[BigInt::from(2)], 4);
        assert_eq!(sols.all.len(), 4);
        let base = sols.base.clone().unwrap();
        assert!(sols.all.contains(&base));
        // every solution is base + combination of kernel generators
        for s in &sols.all {
            let diff: Vec<u64> = s
                .iter()
                .zip(base.iter())
                .map(|(a, b)| (a + 4 - b) % 4)
                .collect();
            // diff must be in the span of the kernel generators mod 4
            let mut reachable = std::collections::BTreeSet::new();
            reachable.insert(vec![0u64, 0]);
            for _ in 0..4 {
                let snapshot: Vec<Vec<u64>> = reachable.iter().cloned().collect();
                for v in snapshot {
                    for g in &sols.kernel {
                        let w: Vec<u64> =
                            v.iter().zip(g.iter()).map(|(a, b)| (a + b) % 4).collect();
                        reachable.insert(w);
                    }
                }
            }
            assert!(reachable.contains(&diff), "{diff:?} not spanned");
        }
    }
}
