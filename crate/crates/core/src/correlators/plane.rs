//! Plane-partition generating series from the limit correlators.
//!
//! Substituting `x_i = y_i = z^{i-1/2}` into the rectangle sums turns the
//! Schur squares into MacMahon-type series in `z`. The half powers ride on
//! an auxiliary variable `u` with `u^2 = z`, so the ring stays polynomial;
//! the squared substitution is even in `u` and rewrites exactly.

use super::CorrelatorError;
use crate::fock::truncate_degree_where;
use crate::partition::{enumerate_rectangle, Partition};
use fock_exact::{poly_det, series_inverse, Monomial, MultiPoly, Rational, TruncatedSeries, Var};

/// Which generating function to return.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlaneMode {
    Bc,
    Boson,
}

const DEPTH_BOUND: u32 = 10;

/// The plane-partition series (bc) or its reciprocal (boson), up to `z^depth`.
pub fn plane_partition_series(
    mode: PlaneMode,
    depth: u32,
) -> Result<TruncatedSeries, CorrelatorError> {
    if depth > DEPTH_BOUND {
        return Err(CorrelatorError::DepthExceeded { depth, bound: DEPTH_BOUND });
    }
    let base = substituted_square_sum(depth, depth, depth);
    let again = substituted_square_sum(depth + 1, depth + 1, depth);
    if base != again {
        return Err(CorrelatorError::StabilityFailure(format!(
            "z-coefficients up to {depth} changed when the box grew"
        )));
    }
    let series = TruncatedSeries::new(base, depth);
    match mode {
        PlaneMode::Bc => Ok(series),
        PlaneMode::Boson => Ok(series_inverse(&series).expect("constant term 1")),
    }
}

/// Coefficients of `z^0 .. z^depth`.
pub fn z_coefficients(series: &TruncatedSeries, depth: u32) -> Vec<Rational> {
    (0..=depth)
        .map(|k| series.poly().coeff(&Monomial::var_pow(Var::Z, k)))
        .collect()
}

/// Sum over diagrams in the box of the squared substituted Schur polynomial.
///
/// `nvars` counts the substituted variables; variable `x_i = u^{2i-1}` only
/// touches z-degrees from `i` on, so `nvars = depth` already carries the
/// limit coefficients. Diagrams deeper than `sqrt(depth)` rows start past
/// the depth and are skipped.
fn substituted_square_sum(nvars: u32, cols: u32, depth: u32) -> MultiPoly {
    let rows = integer_sqrt(depth);
    let table = substituted_h_table(nvars, cols + rows, 2 * depth);
    let mut acc = MultiPoly::zero();
    for mu in enumerate_rectangle(rows as usize, cols, false) {
        // the lowest z-power of the squared substitution is 2 n(mu) + |mu|
        if 2 * mu.n_stat() + mu.weight() > depth {
            continue;
        }
        let sub = substituted_schur(&mu, &table);
        let square = truncate_degree_where(&(&sub * &sub), |v| v == Var::U, 2 * depth);
        acc = &acc + &square;
    }
    acc.rewrite_u_squared(Var::Z).expect("squares are even in u")
}

/// `h_k(u, u^3, ..., u^{2 nvars - 1})` for `k = 0..=kmax`, capped in u-degree.
fn substituted_h_table(nvars: u32, kmax: u32, ucap: u32) -> Vec<MultiPoly> {
    let mut table = vec![MultiPoly::zero(); kmax as usize + 1];
    table[0] = MultiPoly::one();
    for i in 1..=nvars {
        let step = Monomial::var_pow(Var::U, 2 * i - 1);
        // ascending k reuses the updated entry, so repeats of x_i are counted
        for k in 1..=kmax as usize {
            let bump = table[k - 1].mul_monomial(&step);
            table[k] = truncate_degree_where(&(&table[k] + &bump), |v| v == Var::U, ucap);
        }
    }
    table
}

/// Jacobi-Trudi determinant over the substituted h-table.
fn substituted_schur(mu: &Partition, table: &[MultiPoly]) -> MultiPoly {
    let l = mu.length();
    if l == 0 {
        return MultiPoly::one();
    }
    let matrix: Vec<Vec<MultiPoly>> = (1..=l)
        .map(|i| {
            (1..=l)
                .map(|j| {
                    let k = mu.part(i) as i64 - i as i64 + j as i64;
                    if k < 0 {
                        MultiPoly::zero()
                    } else {
                        table[k as usize].clone()
                    }
                })
                .collect()
        })
        .collect();
    poly_det(&matrix).expect("square matrix")
}

fn integer_sqrt(n: u32) -> u32 {
    let mut r = 0;
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::plane_partition_count;
    use fock_exact::rat;

    #[test]
    fn bc_series_counts_plane_partitions() {
        let series = plane_partition_series(PlaneMode::Bc, 6).unwrap();
        let coeffs = z_coefficients(&series, 6);
        assert_eq!(coeffs, [1, 1, 3, 6, 13, 24, 48].map(rat));
        for (k, c) in coeffs.iter().enumerate() {
            let oracle = plane_partition_count(k as u32).unwrap();
            assert_eq!(c, &rat(oracle as i64), "z^{k}");
        }
    }

    #[test]
    fn depth_zero_is_one() {
        let series = plane_partition_series(PlaneMode::Bc, 0).unwrap();
        assert!(series.poly().is_one());
    }

    #[test]
    fn boson_series_matches_the_direct_product() {
        let depth = 4;
        let series = plane_partition_series(PlaneMode::Boson, depth).unwrap();
        let mut oracle = TruncatedSeries::one(depth);
        for i in 1..=depth {
            let factor = &MultiPoly::one() - &MultiPoly::var_pow(Var::Z, i);
            for _ in 0..i {
                oracle = &oracle * &TruncatedSeries::new(factor.clone(), depth);
            }
        }
        assert_eq!(series.poly(), oracle.poly());
    }

    #[test]
    fn depth_bound_is_enforced() {
        assert_eq!(
            plane_partition_series(PlaneMode::Bc, 11).unwrap_err(),
            CorrelatorError::DepthExceeded { depth: 11, bound: 10 }
        );
    }

    #[test]
    fn square_root_floor() {
        assert_eq!([0, 1, 2, 3, 4, 8, 9, 10].map(integer_sqrt), [0, 1, 1, 1, 2, 2, 3, 3]);
    }
}
