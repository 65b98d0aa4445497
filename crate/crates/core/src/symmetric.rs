//! Symmetric polynomials in a finite variable set: complete homogeneous,
//! Schur (Jacobi-Trudi and branching routes), hook Schur, and Schur-Q.
//!
//! Schur-Q is computed over the field of rational functions by coset
//! symmetrization with a final exact division; polynomiality of the result
//! is asserted, not assumed.

use crate::partition::Partition;
use fock_exact::rational::pow2;
use fock_exact::{poly_det, Monomial, MultiPoly, Var};
use std::collections::BTreeMap;
use thiserror::Error;

/// Which indexed variable family a polynomial lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    X,
    Y,
}

impl Family {
    pub fn var(self, i: u32) -> Var {
        match self {
            Family::X => Var::X(i),
            Family::Y => Var::Y(i),
        }
    }
}

/// A finite variable set `x1..xN` or `y1..yN`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VariableSet {
    pub family: Family,
    pub count: u32,
}

impl VariableSet {
    pub fn x(count: u32) -> Self {
        VariableSet { family: Family::X, count }
    }

    pub fn y(count: u32) -> Self {
        VariableSet { family: Family::Y, count }
    }

    pub fn var(&self, i: u32) -> Var {
        debug_assert!(i >= 1 && i <= self.count);
        self.family.var(i)
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        (1..=self.count).map(|i| self.var(i))
    }
}

/// Errors from the symmetric-function module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetricError {
    /// Schur-Q needs at least as many variables as the partition has parts.
    #[error("partition length {length} exceeds variable count {count}")]
    LengthExceedsVariables { length: usize, count: u32 },
    /// The symmetrized sum failed to divide out, which would mean the input
    /// violated strictness assumptions.
    #[error("coset symmetrization did not produce a polynomial")]
    NonPolynomialResult,
}

/// Complete homogeneous polynomial `h_k` in the variable set; `h_0 = 1` and
/// `h_k = 0` for `k < 0`.
pub fn complete_homogeneous(k: i64, vars: &VariableSet) -> MultiPoly {
    if k < 0 {
        return MultiPoly::zero();
    }
    let k = k as usize;
    // dp[d] = h_d in the first i variables
    let mut dp: Vec<MultiPoly> = vec![MultiPoly::zero(); k + 1];
    dp[0] = MultiPoly::one();
    for i in 1..=vars.count {
        let xi = MultiPoly::var(vars.var(i));
        for d in 1..=k {
            let carry = &dp[d - 1] * &xi;
            dp[d] = &dp[d] + &carry;
        }
    }
    dp[k].clone()
}

/// Schur polynomial via the Jacobi-Trudi determinant
/// `det(h_{lambda_i - i + j})`; identically zero when the partition is
/// longer than the variable count.
pub fn schur(lambda: &Partition, vars: &VariableSet) -> MultiPoly {
    let l = lambda.length();
    if l == 0 {
        return MultiPoly::one();
    }
    let matrix: Vec<Vec<MultiPoly>> = (1..=l)
        .map(|i| {
            (1..=l)
                .map(|j| {
                    let k = lambda.part(i) as i64 - i as i64 + j as i64;
                    complete_homogeneous(k, vars)
                })
                .collect()
        })
        .collect();
    poly_det(&matrix).expect("Jacobi-Trudi matrix is square by construction")
}

/// Schur polynomial by the branching rule: sum over partitions the shape
/// interlaces, with the last variable carrying the strip size. Independent
/// of the determinant route; used as its oracle.
pub fn schur_by_branching(lambda: &Partition, vars: &VariableSet) -> MultiPoly {
    fn go(lambda: &Partition, family: Family, n: u32) -> MultiPoly {
        if n == 0 {
            return if lambda.length() == 0 { MultiPoly::one() } else { MultiPoly::zero() };
        }
        let mut acc = MultiPoly::zero();
        let inner = VariableSet { family, count: n - 1 };
        let _ = &inner;
        // nu runs over partitions that lambda interlaces
        for nu in sub_interlacings(lambda) {
            let strip = lambda.weight() - nu.weight();
            let xn = Monomial::var_pow(family.var(n), strip);
            let term = go(&nu, family, n - 1).mul_monomial(&xn);
            acc = &acc + &term;
        }
        acc
    }
    go(lambda, vars.family, vars.count)
}

/// Partitions `nu` such that `mu` interlaces `nu` (`nu_i` between `mu_{i+1}`
/// and `mu_i`).
fn sub_interlacings(mu: &Partition) -> Vec<Partition> {
    let l = mu.length();
    let mut out = Vec::new();
    let mut cur: Vec<u32> = Vec::new();
    fn go(mu: &Partition, i: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        let l = mu.length();
        if i > l {
            out.push(Partition::new(cur.clone()));
            return;
        }
        let lo = mu.part(i + 1);
        let hi = mu.part(i);
        if lo == 0 {
            // nu may stop here
            let mut stopped = cur.clone();
            out.push(Partition::new(std::mem::take(&mut stopped)));
        }
        for p in lo.max(1)..=hi {
            cur.push(p);
            go(mu, i + 1, cur, out);
            cur.pop();
        }
    }
    if l == 0 {
        return vec![Partition::empty()];
    }
    go(mu, 1, &mut cur, &mut out);
    out.sort();
    out.dedup();
    out
}

/// Hook Schur polynomial `s_{(m, 1^{n-1})}`; zero when the hook does not fit
/// (`n > N`), one when `m = n = 0` does not arise (callers pass `m, n >= 1`).
pub fn hook_schur(m: u32, n: u32, vars: &VariableSet) -> MultiPoly {
    let mut parts = vec![m];
    parts.extend(std::iter::repeat(1).take((n - 1) as usize));
    schur(&Partition::new(parts), vars)
}

/// Memoized hook Schur values, used by the determinant correlator route.
#[derive(Default)]
pub struct HookSchurCache {
    map: BTreeMap<(u32, u32, VariableSet), MultiPoly>,
}

impl HookSchurCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, m: u32, n: u32, vars: &VariableSet) -> MultiPoly {
        self.map
            .entry((m, n, *vars))
            .or_insert_with(|| hook_schur(m, n, vars))
            .clone()
    }
}

/// Schur-Q polynomial of a strict partition by coset symmetrization:
/// `Q = 2^l sum_w w( x^lambda prod_{i<=l, i<j<=n} (x_i+x_j)/(x_i-x_j) )`,
/// summed over injections of `{1..l}` into `{1..n}` with the complement in
/// increasing order, assembled over the common denominator `prod (x_i-x_j)`
/// and divided out exactly.
pub fn schur_q(lambda: &Partition, vars: &VariableSet) -> Result<MultiPoly, SymmetricError> {
    assert!(lambda.is_strict(), "Schur-Q takes strict partitions: {}", lambda.label());
    let l = lambda.length();
    let n = vars.count as usize;
    if l > n {
        return Err(SymmetricError::LengthExceedsVariables {
            length: l,
            count: vars.count,
        });
    }
    if l == 0 {
        return Ok(MultiPoly::one());
    }
    let x = |i: usize| MultiPoly::var(vars.var(i as u32));
    // common denominator: full Vandermonde in the fixed order i < j
    let mut vandermonde = MultiPoly::one();
    for i in 1..=n {
        for j in i + 1..=n {
            vandermonde = &vandermonde * &(&x(i) - &x(j));
        }
    }
    let mut total = MultiPoly::zero();
    for w in injections(l, n) {
        // w[0..l] are the chosen slots; complement ascending fills the rest
        let mut perm = w.clone();
        let mut rest: Vec<usize> = (1..=n).filter(|i| !w.contains(i)).collect();
        perm.append(&mut rest);
        // numerator: x_{w(1)}^{l1} ... x_{w(l)}^{ll} * prod (x_wi + x_wj)
        let mut num = MultiPoly::one();
        for (i, &slot) in w.iter().enumerate() {
            num = &num
                * &MultiPoly::var_pow(vars.var(slot as u32), lambda.part(i + 1));
        }
        let mut denom = MultiPoly::one();
        for i in 1..=l {
            for j in i + 1..=n {
                num = &num * &(&x(perm[i - 1]) + &x(perm[j - 1]));
                denom = &denom * &(&x(perm[i - 1]) - &x(perm[j - 1]));
            }
        }
        // vandermonde / denom is (up to sign) the product over untouched
        // pairs, so it is an exact polynomial cofactor
        let cofactor = vandermonde
            .try_div_exact(&denom)
            .ok_or(SymmetricError::NonPolynomialResult)?;
        total = &total + &(&num * &cofactor);
    }
    let symmetrized = total
        .try_div_exact(&vandermonde)
        .ok_or(SymmetricError::NonPolynomialResult)?;
    Ok(symmetrized.scale(&pow2(l as i64)))
}

/// All order-preserving choices `w(1..l)` of distinct slots in `{1..n}`.
fn injections(l: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    fn go(l: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == l {
            out.push(cur.clone());
            return;
        }
        for i in 1..=n {
            if !cur.contains(&i) {
                cur.push(i);
                go(l, n, cur, out);
                cur.pop();
            }
        }
    }
    go(l, n, &mut cur, &mut out);
    out
}

/// `2^{-l} Q_lambda`, the normalization entering the neutral rectangle sum;
/// by the divisibility invariant this is still a polynomial with integer
/// coefficients divided by 1.
pub fn schur_q_halved(lambda: &Partition, vars: &VariableSet) -> Result<MultiPoly, SymmetricError> {
    let q = schur_q(lambda, vars)?;
    Ok(q.scale(&pow2(-(lambda.length() as i64))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use fock_exact::{rat, Rational};
    use num_traits::One;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    /// Semistandard-tableau enumeration, the independent Schur oracle.
    fn schur_by_tableaux(lambda: &Partition, vars: &VariableSet) -> MultiPoly {
        fn fill(
            lambda: &Partition,
            n: u32,
            rows: &mut Vec<Vec<u32>>,
            r: usize,
            c: usize,
            acc: &mut MultiPoly,
            family: Family,
        ) {
            if r == lambda.length() {
                let mut mono = Vec::new();
                for row in rows.iter() {
                    for &entry in row {
                        mono.push((family.var(entry), 1));
                    }
                }
                let m = Monomial::from_pairs(mono);
                acc.add_term(m, Rational::one());
                return;
            }
            if c == lambda.part(r + 1) as usize {
                fill(lambda, n, rows, r + 1, 0, acc, family);
                return;
            }
            // rows weakly increase, columns strictly increase
            let above = if r > 0 { rows[r - 1][c] } else { 0 };
            let left = if c > 0 { rows[r][c - 1] } else { 1 };
            for v in left.max(above + 1)..=n {
                rows[r].push(v);
                fill(lambda, n, rows, r, c + 1, acc, family);
                rows[r].pop();
            }
        }
        let mut rows: Vec<Vec<u32>> = vec![Vec::new(); lambda.length()];
        let mut acc = MultiPoly::zero();
        if lambda.length() == 0 {
            return MultiPoly::one();
        }
        fill(lambda, vars.count, &mut rows, 0, 0, &mut acc, vars.family);
        acc
    }

    #[test]
    fn h2_in_two_variables() {
        let h2 = complete_homogeneous(2, &VariableSet::x(2));
        let expect = "x1^2 + x1*x2 + x2^2";
        assert_eq!(h2.canonical_text(), expect);
        assert!(complete_homogeneous(-1, &VariableSet::x(2)).is_zero());
        assert!(complete_homogeneous(0, &VariableSet::x(2)).is_one());
    }

    #[test]
    fn schur_21_in_two_variables() {
        // s_{(2,1)}(x1,x2) = x1^2 x2 + x1 x2^2
        let s = schur(&p(&[2, 1]), &VariableSet::x(2));
        let mut expect = MultiPoly::zero();
        expect.add_term(Monomial::from_pairs([(Var::X(1), 2), (Var::X(2), 1)]), rat(1));
        expect.add_term(Monomial::from_pairs([(Var::X(1), 1), (Var::X(2), 2)]), rat(1));
        assert_eq!(s, expect);
    }

    #[test]
    fn schur_vanishes_when_too_long() {
        assert!(schur(&p(&[1, 1, 1]), &VariableSet::x(2)).is_zero());
    }

    #[test]
    fn jacobi_trudi_matches_tableaux() {
        let shapes = [p(&[1]), p(&[2]), p(&[2, 1]), p(&[3, 1]), p(&[2, 2]), p(&[3, 2, 1])];
        for n in 1..=3 {
            let vars = VariableSet::x(n);
            for shape in &shapes {
                assert_eq!(
                    schur(shape, &vars),
                    schur_by_tableaux(shape, &vars),
                    "shape {} with {n} variables",
                    shape.label()
                );
            }
        }
    }

    #[test]
    fn branching_matches_determinant() {
        for n in 1..=3 {
            let vars = VariableSet::x(n);
            for shape in crate::partition::enumerate_rectangle(3, 3, false) {
                assert_eq!(
                    schur(&shape, &vars),
                    schur_by_branching(&shape, &vars),
                    "shape {} with {n} variables",
                    shape.label()
                );
            }
        }
    }

    #[test]
    fn hook_schur_is_schur_of_hook() {
        let vars = VariableSet::x(3);
        assert_eq!(hook_schur(3, 1, &vars), schur(&p(&[3]), &vars));
        assert_eq!(hook_schur(2, 2, &vars), schur(&p(&[2, 1]), &vars));
    }

    #[test]
    fn schur_q_one_part() {
        // Q_{(1)}(x1, x2) = 2(x1 + x2)
        let q = schur_q(&p(&[1]), &VariableSet::x(2)).unwrap();
        let expect = (&MultiPoly::var(Var::X(1)) + &MultiPoly::var(Var::X(2))).scale(&rat(2));
        assert_eq!(q, expect);
        // Q_{(2)}(x1, x2) = 2(x1 + x2)^2
        let q2 = schur_q(&p(&[2]), &VariableSet::x(2)).unwrap();
        let s = &MultiPoly::var(Var::X(1)) + &MultiPoly::var(Var::X(2));
        assert_eq!(q2, (&s * &s).scale(&rat(2)));
    }

    #[test]
    fn schur_q_21_two_variables() {
        // Q_{(2,1)}(x1,x2) = 4 x1 x2 (x1 + x2)
        let q = schur_q(&p(&[2, 1]), &VariableSet::x(2)).unwrap();
        let x1 = MultiPoly::var(Var::X(1));
        let x2 = MultiPoly::var(Var::X(2));
        let expect = (&(&x1 * &x2) * &(&x1 + &x2)).scale(&rat(4));
        assert_eq!(q, expect);
    }

    #[test]
    fn schur_q_too_long_errors() {
        assert!(matches!(
            schur_q(&p(&[2, 1]), &VariableSet::x(1)),
            Err(SymmetricError::LengthExceedsVariables { length: 2, count: 1 })
        ));
    }

    #[test]
    fn schur_q_coefficients_divisible_by_power_of_two() {
        use num_traits::Signed;
        for shape in crate::partition::enumerate_rectangle(3, 4, true) {
            if shape.length() == 0 || shape.length() > 3 {
                continue;
            }
            let q = schur_q(&shape, &VariableSet::x(3)).unwrap();
            let divisor = pow2(shape.length() as i64);
            for (_, c) in q.terms() {
                let ratio = c / &divisor;
                assert!(
                    ratio.is_integer() && ratio.abs() >= Rational::one(),
                    "coefficient {c} of Q_{} not divisible by {divisor}",
                    shape.label()
                );
            }
        }
    }
}
