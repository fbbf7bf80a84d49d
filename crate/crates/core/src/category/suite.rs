//! The identity suite: exact pass/fail checks of the structural identities
//! that pin the category data (graded dimensions, Gauss sums, the Hopf-link
//! table, killing properties, duality compatibilities).

use super::{CategoryData, Mode};
use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Debug, Clone)]
pub struct SuiteCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub checks: Vec<SuiteCheck>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&SuiteCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

pub(super) fn run(data: &CategoryData) -> SuiteReport {
    let mut checks = Vec::new();
    let mut push = |name: &str, passed: bool, detail: String| {
        checks.push(SuiteCheck { name: name.to_string(), passed, detail });
    };
    let ctx = data.context();
    let d = data.params().d;
    let nc = data.colors().len();
    let eta = data.eta();

    // (a) graded dimension: sum_{gr x = i} <x>^2 = eta^{-2}/d for every i
    {
        let expected = data
            .eta_squared_inverse()
            .scale(&BigRational::new(BigInt::from(1), BigInt::from(d)));
        let mut ok = true;
        for i in 0..d {
            let mut acc = ctx.zero();
            for x in 0..nc {
                if data.grading(x) == i {
                    acc = acc.try_add(&data.qdim(x).mul(data.qdim(x))).unwrap();
                }
            }
            if acc != expected {
                ok = false;
            }
        }
        push("graded-dimension", ok, format!("eta^-2/d per grading, d = {d}"));
    }

    // (b) killing: sum_x eta <x> H(x, y) = 0 for every y != vacuum
    {
        let vac = data.vacuum();
        let mut ok = true;
        for y in 0..nc {
            if y == vac {
                continue;
            }
            let mut acc = ctx.zero();
            for x in 0..nc {
                acc = acc
                    .try_add(&eta.mul(data.qdim(x)).mul(data.hopf(x, y)))
                    .unwrap();
            }
            if !acc.is_zero() {
                ok = false;
            }
        }
        push("killing", ok, "omega encircling any nontrivial color".to_string());
    }

    // (c) graded killing: per-grading sums vanish unless y is a flow color
    {
        let mut ok = true;
        for y in 0..nc {
            if data.is_flow_color(y) {
                continue;
            }
            for i in 0..d {
                let mut acc = ctx.zero();
                for x in 0..nc {
                    if data.grading(x) == i {
                        acc = acc
                            .try_add(&eta.mul(data.qdim(x)).mul(data.hopf(x, y)))
                            .unwrap();
                    }
                }
                if !acc.is_zero() {
                    ok = false;
                }
            }
        }
        push(
            "graded-killing",
            ok,
            "omega_i encircling any non-flow color".to_string(),
        );
    }

    // (d) Hopf table: <H_{eps,0}(omega_i, omega_j)> = 1 exactly on
    // (0,0,0) and (eps = ±1, 0, j0), else 0
    {
        let j0 = data.delta_grading();
        let mut ok = true;
        for eps in [-1i64, 0, 1] {
            for i in 0..d {
                for j in 0..d {
                    let mut acc = ctx.zero();
                    for x in 0..nc {
                        if data.grading(x) != i {
                            continue;
                        }
                        let fx = data.twist_power(x, eps);
                        for y in 0..nc {
                            if data.grading(y) != j {
                                continue;
                            }
                            let term = eta
                                .mul(&eta)
                                .mul(data.qdim(x))
                                .mul(data.qdim(y))
                                .mul(&fx)
                                .mul(data.hopf(x, y));
                            acc = acc.try_add(&term).unwrap();
                        }
                    }
                    let expect_one = i == 0 && j == if eps == 0 { 0 } else { j0 };
                    let expected = if expect_one { ctx.one() } else { ctx.zero() };
                    if acc != expected {
                        ok = false;
                    }
                }
            }
        }
        push("hopf-table", ok, format!("all (eps,i,j) in {{0,±1}} x Z_{d}^2"));
    }

    // (e) Gauss sums
    {
        let u1 = data.unknot_value(1, None);
        let um1 = data.unknot_value(-1, None);
        let ok_product = u1.mul(&um1) == ctx.one();
        push("gauss-product", ok_product, "<U_1(omega)><U_-1(omega)> = 1".to_string());
        let j0 = data.delta_grading();
        let graded = data.unknot_value(1, Some(j0));
        let ok_graded = u1 == graded && &graded == data.delta();
        let name = match data.params().mode {
            Mode::Spin => "<U_1(omega)> = <U_1(omega_{d/2})> = Delta",
            Mode::Coh => "<U_1(omega)> = <U_1(omega_0)> = Delta",
        };
        push("gauss-graded", ok_graded, name.to_string());
    }

    // structural compatibilities
    {
        let vac = data.vacuum();
        let mut ok = true;
        for x in 0..nc {
            if data.dual(data.dual(x)) != x {
                ok = false;
            }
            if data.qdim(data.dual(x)) != data.qdim(x) {
                ok = false;
            }
            if (data.grading(data.dual(x)) + data.grading(x)) % d != 0 {
                ok = false;
            }
            if data.twist_exponent(data.dual(x)) != data.twist_exponent(x) {
                ok = false;
            }
            if data.hopf(x, vac) != data.qdim(x) {
                ok = false;
            }
            for y in 0..nc {
                if data.hopf(x, y) != data.hopf(y, x) {
                    ok = false;
                }
                let vac_mult = data.fusion_multiplicity(x, y, vac);
                let expected = u64::from(y == data.dual(x));
                if vac_mult != expected {
                    ok = false;
                }
            }
        }
        push("duality", ok, "involution, gradings, twists, Hopf symmetry".to_string());
    }

    // quantum dimension is a fusion homomorphism: <x><y> = sum_z N^z <z>
    {
        let mut ok = true;
        for x in 0..nc {
            for y in 0..nc {
                let mut rhs = ctx.zero();
                for &(z, mult) in data.fusion(x, y) {
                    rhs = rhs
                        .try_add(
                            &data
                                .qdim(z)
                                .scale(&BigRational::from_integer(BigInt::from(mult))),
                        )
                        .unwrap();
                }
                if data.qdim(x).mul(data.qdim(y)) != rhs {
                    ok = false;
                }
            }
        }
        push("qdim-homomorphism", ok, "<x><y> = sum N^z_xy <z>".to_string());
    }

    // flow colors: quantum dimension 1 and the pinned twists
    {
        let m = ctx.order() as i64;
        let mut ok = true;
        for &x in data.flow_colors() {
            if !data.qdim(x).is_one() {
                ok = false;
            }
            let k_rows = data.colors()[x].rows.num_rows();
            let want = match data.params().mode {
                Mode::Spin if k_rows % 2 == 1 => m / 2,
                _ => 0,
            };
            if data.twist_exponent(x) != want {
                ok = false;
            }
        }
        push("flow-colors", ok, "qdim 1 and pinned flow twists".to_string());
    }

    SuiteReport { checks }
}
