//! Coefficient engine behind the rearrangement of row operators into single
//! exponentials, together with the constant-term machinery that supports it.
//!
//! - [`build_coeff_table`] produces Bernoulli numbers, the alternating
//!   Baker-Campbell-Hausdorff coefficients C_n = (-1)^n B_n / n!, and the
//!   log-power coefficients F^s_t = [x^t] (-ln(1-x))^s.
//! - [`verify_lemma_identities`] checks the two closure identities
//!   sum_j C_j F^j_n = 1/(n+1) and sum_s F^s_t / s! = 1.
//! - [`verify_product_exp_identity`] compares the windowed product of
//!   factors 1 + x b(-j)c(j-1) with the exponential form of B(x) on a
//!   rectangle of basis states.
//! - [`verify_macmahon`] checks the master theorem in constant-term form:
//!   the z-constant term of prod_k 1/Z_k equals 1/det, order by order in t.
//! - [`verify_constant_term_lemma`] evaluates a one-variable constant-term
//!   identity with a rational closed form.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use fock_exact::{
    factorial, poly_det, ratio, Laurent, Monomial, MultiPoly, Rational, TruncatedSeries, Var,
};
use num_traits::{One, Zero};

use crate::fock::bc::{from_word_state, ket_word_state};
use crate::fock::bc_words::WordState;
use crate::fock::truncate_degree_where;
use crate::partition::enumerate_rectangle;
use crate::rowops::bc::apply_b_exp;

/// Errors from the constant-term expansions.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum BchError {
    /// The geometric expansion of 1/Z_k needs every diagonal entry invertible.
    #[error("matrix has a zero diagonal entry at position {0}")]
    SingularDiagonal(usize),
}

/// Bernoulli numbers, BCH coefficients, and log-power coefficients sharing a
/// common order bound.
#[derive(Debug, Clone)]
pub struct CoeffTable {
    nmax: u32,
    bernoulli: Vec<Rational>,
    bch_c: Vec<Rational>,
    f_power: Vec<Vec<Rational>>,
}

impl CoeffTable {
    pub fn nmax(&self) -> u32 {
        self.nmax
    }

    /// Bernoulli number B_n.
    pub fn bernoulli(&self, n: u32) -> &Rational {
        &self.bernoulli[n as usize]
    }

    /// C_n = (-1)^n B_n / n! for n >= 1.
    pub fn c(&self, n: u32) -> &Rational {
        assert!(n >= 1, "C_n starts at n = 1");
        &self.bch_c[n as usize]
    }

    /// F^s_t = [x^t] (-ln(1-x))^s, zero below the diagonal t = s.
    pub fn f(&self, s: u32, t: u32) -> Rational {
        assert!((1..=self.nmax).contains(&s) && t <= self.nmax);
        self.f_power[s as usize - 1][t as usize].clone()
    }
}

fn t_coeff(p: &MultiPoly, k: u32) -> Rational {
    if k == 0 {
        p.constant_term()
    } else {
        p.coeff(&Monomial::var_pow(Var::T, k))
    }
}

/// Tabulate B_n, C_n, and F^s_t for all orders up to `nmax`.
pub fn build_coeff_table(nmax: u32) -> CoeffTable {
    assert!(nmax >= 1);
    // (e^z - 1)/z = sum_k z^k / (k+1)!; the coefficients of its reciprocal
    // are B_n / n!.
    let mut egf = MultiPoly::zero();
    for k in 0..=nmax {
        egf.add_term(Monomial::var_pow(Var::T, k), factorial(k as u64 + 1).recip());
    }
    let inv = TruncatedSeries::new(egf, nmax)
        .inverse()
        .expect("constant term is 1");
    let bernoulli: Vec<Rational> = (0..=nmax)
        .map(|n| &t_coeff(inv.poly(), n) * &factorial(n as u64))
        .collect();
    let mut bch_c = vec![Rational::zero()];
    for n in 1..=nmax as usize {
        let signed = if n % 2 == 0 {
            bernoulli[n].clone()
        } else {
            -bernoulli[n].clone()
        };
        bch_c.push(&signed / &factorial(n as u64));
    }
    // -ln(1-x) = sum_{k>=1} x^k / k, raised to successive powers
    let mut log = MultiPoly::zero();
    for k in 1..=nmax {
        log.add_term(Monomial::var_pow(Var::T, k), ratio(1, k as i64));
    }
    let log = TruncatedSeries::new(log, nmax);
    let mut f_power = Vec::new();
    let mut power = log.clone();
    for _ in 1..=nmax {
        f_power.push((0..=nmax).map(|t| t_coeff(power.poly(), t)).collect());
        power = &power * &log;
    }
    CoeffTable {
        nmax,
        bernoulli,
        bch_c,
        f_power,
    }
}

/// Outcome of the coefficient identities up to `nmax`.
#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub nmax: u32,
    pub pass: bool,
    pub failures: Vec<String>,
}

/// Check sum_j C_j F^j_n = 1/(n+1) and sum_s F^s_t / s! = 1 for all orders
/// up to `nmax`.
pub fn verify_lemma_identities(nmax: u32) -> LemmaReport {
    let table = build_coeff_table(nmax);
    let mut failures = Vec::new();
    for n in 1..=nmax {
        let mut sum = Rational::zero();
        for j in 1..=n {
            sum = &sum + &(table.c(j) * &table.f(j, n));
        }
        if sum != ratio(1, n as i64 + 1) {
            failures.push(format!("C-weighted sum differs from 1/(n+1) at n = {n}"));
        }
    }
    for t in 1..=nmax {
        let mut sum = Rational::zero();
        for s in 1..=t {
            sum = &sum + &(&table.f(s, t) / &factorial(s as u64));
        }
        if !sum.is_one() {
            failures.push(format!("factorial-weighted sum differs from 1 at t = {t}"));
        }
    }
    LemmaReport {
        nmax,
        pass: failures.is_empty(),
        failures,
    }
}

/// B(x) on ket words as a product of factors 1 + x b(-j)c(j-1) over the
/// explicit window [window_low, m-1], applied in ascending j.
pub fn windowed_b_product(state: &WordState, x: Var, window_low: i64, m: u32) -> WordState {
    let xp = MultiPoly::var(x);
    let mut out = state.clone();
    for j in window_low..=(m as i64 - 1) {
        out = out.add(&out.apply_quadratic(&[(xp.clone(), -j, j - 1)]));
    }
    out
}

/// Outcome of the product-versus-exponential comparison.
#[derive(Debug, Clone, Serialize)]
pub struct ProductExpReport {
    pub m: u32,
    pub window_low: i64,
    pub x_degree_cap: u32,
    pub pass: bool,
    pub failures: Vec<String>,
}

/// Compare the windowed product form of B(x) with its exponential form on
/// every basis state of the [3, m] rectangle, coefficients truncated at the
/// given x-degree.
pub fn verify_product_exp_identity(m: u32, window_low: i64, x_degree_cap: u32) -> ProductExpReport {
    let x = Var::X(1);
    let cut =
        |s: &WordState| s.map_coeffs(|c| truncate_degree_where(c, |v| v == x, x_degree_cap));
    let mut failures = Vec::new();
    for mu in enumerate_rectangle(3, m, false) {
        let words = ket_word_state(&mu);
        let product = from_word_state(&cut(&windowed_b_product(&words, x, window_low, m)));
        let exp = from_word_state(&cut(&apply_b_exp(&words, x, m)));
        if product != exp {
            failures.push(mu.label());
        }
    }
    ProductExpReport {
        m,
        window_low,
        x_degree_cap,
        pass: failures.is_empty(),
        failures,
    }
}

/// z-constant term of prod_k 1/Z_k order by order in t, where
/// Z_k = T_kk + t sum_{i != k} T_ik z_k / z_i.
pub fn macmahon_ct_series(
    t_matrix: &[Vec<Rational>],
    t_degree: u32,
) -> Result<Vec<Rational>, BchError> {
    let n = t_matrix.len();
    for row in t_matrix {
        assert_eq!(row.len(), n, "matrix must be square");
    }
    for (k, row) in t_matrix.iter().enumerate() {
        if row[k].is_zero() {
            return Err(BchError::SingularDiagonal(k));
        }
    }
    let orders = t_degree as usize + 1;
    let mut product = vec![Laurent::zero(n); orders];
    product[0] = Laurent::one(n);
    for k in 0..n {
        let dinv = t_matrix[k][k].recip();
        let mut w = Laurent::zero(n);
        for i in 0..n {
            if i == k || t_matrix[i][k].is_zero() {
                continue;
            }
            let mut exps = vec![0i64; n];
            exps[k] = 1;
            exps[i] = -1;
            w.add_term(exps, t_matrix[i][k].clone());
        }
        // 1/Z_k = d^{-1} sum_r (-d^{-1} W_k)^r with d = T_kk
        let neg = -dinv.clone();
        let mut factor = vec![Laurent::zero(n); orders];
        let mut powr = Laurent::one(n).scale(&dinv);
        factor[0] = powr.clone();
        for slot in factor.iter_mut().skip(1) {
            powr = (&powr * &w).scale(&neg);
            *slot = powr.clone();
        }
        product = convolve(&product, &factor);
    }
    Ok(product.iter().map(Laurent::constant_coeff).collect())
}

fn convolve(a: &[Laurent], b: &[Laurent]) -> Vec<Laurent> {
    let n = a[0].nvars();
    let mut out = vec![Laurent::zero(n); a.len()];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if i + j >= out.len() {
                break;
            }
            out[i + j] = &out[i + j] + &(ai * bj);
        }
    }
    out
}

fn det_with_t(t_matrix: &[Vec<Rational>]) -> MultiPoly {
    if t_matrix.is_empty() {
        return MultiPoly::one();
    }
    let rows: Vec<Vec<MultiPoly>> = t_matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, entry)| {
                    if i == j {
                        MultiPoly::constant(entry.clone())
                    } else {
                        MultiPoly::term(entry.clone(), Monomial::var_pow(Var::T, 1))
                    }
                })
                .collect()
        })
        .collect();
    poly_det(&rows).expect("matrix is square")
}

/// Outcome of the master-theorem comparison.
#[derive(Debug, Clone, Serialize)]
pub struct MacmahonReport {
    pub size: usize,
    pub t_degree: u32,
    pub pass: bool,
    pub first_failing_order: Option<u32>,
}

/// Master theorem in constant-term form: compare the z-constant term of
/// prod_k 1/Z_k with the t-expansion of 1/det, where off-diagonal entries
/// carry the marker t.
pub fn verify_macmahon(
    t_matrix: &[Vec<Rational>],
    t_degree: u32,
) -> Result<MacmahonReport, BchError> {
    let ct = macmahon_ct_series(t_matrix, t_degree)?;
    let det = det_with_t(t_matrix);
    let inv = TruncatedSeries::new(det, t_degree)
        .inverse()
        .expect("constant term is the diagonal product");
    let first = (0..=t_degree).find(|&r| ct[r as usize] != t_coeff(inv.poly(), r));
    Ok(MacmahonReport {
        size: t_matrix.len(),
        t_degree,
        pass: first.is_none(),
        first_failing_order: first,
    })
}

/// Constant term in z of prod_i (c_i - a_i/z)^{-1} * (1 - b t z)^{-1} as a
/// polynomial in t, truncated at the given degree.
pub fn constant_term_series(
    a: &[Rational],
    c: &[Rational],
    b: &Rational,
    degree: u32,
) -> MultiPoly {
    assert_eq!(a.len(), c.len());
    assert!(
        c.iter().all(|ci| !ci.is_zero()),
        "leading scalars must be nonzero"
    );
    let floor = -(degree as i64);
    // Laurent data in one z variable; only exponents in [floor, 0] can reach
    // the constant term once the b factor contributes at most `degree` powers
    // of z.
    let mut acc: BTreeMap<i64, Rational> = BTreeMap::new();
    acc.insert(0, Rational::one());
    for (ai, ci) in a.iter().zip(c) {
        let cinv = ci.recip();
        let step = ai * &cinv;
        let mut next: BTreeMap<i64, Rational> = BTreeMap::new();
        for (&e, coeff) in &acc {
            // (c - a/z)^{-1} = c^{-1} sum_r (a/c)^r z^{-r}
            let mut mult = cinv.clone();
            let mut target = e;
            while target >= floor {
                let entry = next.entry(target).or_insert_with(Rational::zero);
                *entry = &*entry + &(coeff * &mult);
                mult = &mult * &step;
                target -= 1;
            }
        }
        acc = next;
    }
    // (1 - b t z)^{-1} = sum_s (b t)^s z^s pairs exponent -s with t^s
    let mut ct = MultiPoly::zero();
    let mut bt = Rational::one();
    for s in 0..=degree {
        if let Some(coeff) = acc.get(&-(s as i64)) {
            ct.add_term(Monomial::var_pow(Var::T, s), coeff * &bt);
        }
        bt = &bt * b;
    }
    ct
}

/// Outcome of the constant-term lemma comparison.
#[derive(Debug, Clone, Serialize)]
pub struct CtLemmaReport {
    pub degree: u32,
    pub pass: bool,
    pub first_failing_order: Option<u32>,
}

/// Constant-term lemma: the z-constant term of
/// prod_i (1 - a_i/z)^{-1} * (1 - b t z)^{-1} equals prod_i (1 - a_i b t)^{-1}
/// coefficient by coefficient in t.
pub fn verify_constant_term_lemma(a: &[Rational], b: &Rational, degree: u32) -> CtLemmaReport {
    let ones = vec![Rational::one(); a.len()];
    verify_constant_term_lemma_scaled(a, &ones, b, degree)
}

/// Scaled variant with factors (c_i - a_i/z)^{-1} and closed form
/// prod_i (c_i - a_i b t)^{-1}.
pub fn verify_constant_term_lemma_scaled(
    a: &[Rational],
    c: &[Rational],
    b: &Rational,
    degree: u32,
) -> CtLemmaReport {
    let lhs = constant_term_series(a, c, b, degree);
    let mut rhs = TruncatedSeries::one(degree);
    for (ai, ci) in a.iter().zip(c) {
        let mut lin = MultiPoly::constant(ci.clone());
        lin.add_term(Monomial::var_pow(Var::T, 1), -(ai * b));
        rhs = &rhs
            * &TruncatedSeries::new(lin, degree)
                .inverse()
                .expect("leading scalar is nonzero");
    }
    let first = (0..=degree).find(|&r| t_coeff(&lhs, r) != t_coeff(rhs.poly(), r));
    CtLemmaReport {
        degree,
        pass: first.is_none(),
        first_failing_order: first,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::Partition;
    use fock_exact::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bernoulli_and_c_values_are_pinned() {
        let t = build_coeff_table(20);
        assert_eq!(t.bernoulli(0), &rat(1));
        assert_eq!(t.bernoulli(1), &ratio(-1, 2));
        assert_eq!(t.bernoulli(2), &ratio(1, 6));
        assert_eq!(t.bernoulli(4), &ratio(-1, 30));
        assert_eq!(t.bernoulli(12), &ratio(-691, 2730));
        assert_eq!(t.bernoulli(20), &ratio(-174611, 330));
        assert_eq!(t.c(1), &ratio(1, 2));
        assert_eq!(t.c(2), &ratio(1, 12));
        for n in (3..=19).step_by(2) {
            assert!(t.c(n).is_zero(), "C_{n} should vanish");
        }
    }

    #[test]
    fn f_table_matches_hand_expansion() {
        let t = build_coeff_table(6);
        for s in 1..=6 {
            assert_eq!(t.f(s, s), rat(1));
        }
        assert_eq!(t.f(1, 2), ratio(1, 2));
        assert_eq!(t.f(1, 3), ratio(1, 3));
        assert_eq!(t.f(2, 3), rat(1));
        assert_eq!(t.f(2, 4), ratio(11, 12));
        assert_eq!(t.f(3, 2), rat(0));
    }

    #[test]
    fn lemma_identities_hold_to_twenty() {
        let report = verify_lemma_identities(20);
        assert!(report.pass, "{:?}", report.failures);
    }

    #[test]
    fn windowed_product_matches_exp_on_rectangle_bases() {
        for m in 1..=3 {
            let report = verify_product_exp_identity(m, -3, 6);
            assert!(report.pass, "m = {m}: {:?}", report.failures);
        }
    }

    #[test]
    fn windowed_product_from_vacuum_lists_row_strips() {
        let out = windowed_b_product(&ket_word_state(&Partition::empty()), Var::X(1), 0, 2);
        let state = from_word_state(&out);
        assert_eq!(state.coeff(&Partition::empty()), MultiPoly::one());
        assert_eq!(
            state.coeff(&Partition::new(vec![1])),
            MultiPoly::var(Var::X(1))
        );
        assert_eq!(
            state.coeff(&Partition::new(vec![2])),
            MultiPoly::var_pow(Var::X(1), 2)
        );
    }

    #[test]
    fn narrow_window_misses_boxes_below_the_first_row() {
        let report = verify_product_exp_identity(2, 0, 6);
        assert!(!report.pass);
    }

    #[test]
    fn identity_and_scalar_matrices_pin_the_master_theorem() {
        let id3: Vec<Vec<Rational>> = (0..3)
            .map(|i| (0..3).map(|j| rat(i64::from(i == j))).collect())
            .collect();
        let ct = macmahon_ct_series(&id3, 4).unwrap();
        assert_eq!(ct, vec![rat(1), rat(0), rat(0), rat(0), rat(0)]);
        assert!(verify_macmahon(&id3, 4).unwrap().pass);

        let scalar = vec![vec![rat(5)]];
        let ct = macmahon_ct_series(&scalar, 3).unwrap();
        assert_eq!(ct[0], ratio(1, 5));
        assert!(verify_macmahon(&scalar, 3).unwrap().pass);
    }

    #[test]
    fn all_ones_matrix_matches_the_geometric_series() {
        let ones = vec![vec![rat(1), rat(1)], vec![rat(1), rat(1)]];
        let ct = macmahon_ct_series(&ones, 4).unwrap();
        // 1/det = 1/(1 - t^2)
        assert_eq!(ct, vec![rat(1), rat(0), rat(1), rat(0), rat(1)]);
        assert!(verify_macmahon(&ones, 4).unwrap().pass);
    }

    #[test]
    fn zero_diagonal_is_rejected() {
        let bad = vec![vec![rat(0), rat(1)], vec![rat(1), rat(1)]];
        assert_eq!(
            verify_macmahon(&bad, 2).unwrap_err(),
            BchError::SingularDiagonal(0)
        );
    }

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<Rational>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut num = rng.gen_range(-4i64..=4);
                        while i == j && num == 0 {
                            num = rng.gen_range(-4i64..=4);
                        }
                        ratio(num, rng.gen_range(1i64..=3))
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn random_rational_matrices_satisfy_the_master_theorem() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..6 {
            let n = rng.gen_range(1..=3);
            let report = verify_macmahon(&random_matrix(&mut rng, n), 6).unwrap();
            assert!(report.pass, "failing order {:?}", report.first_failing_order);
        }
    }

    #[test]
    fn constant_term_lemma_pins_the_rational_example() {
        // closed form 1/(1 - (1/6) t): coefficient of t^k is 6^{-k}
        let series = constant_term_series(&[ratio(1, 2)], &[rat(1)], &ratio(1, 3), 4);
        for k in 0..=4u32 {
            assert_eq!(t_coeff(&series, k), ratio(1, 6i64.pow(k)));
        }
        assert!(verify_constant_term_lemma(&[ratio(1, 2)], &ratio(1, 3), 8).pass);
    }

    #[test]
    fn constant_term_lemma_handles_scalars_and_zero_b() {
        let a = [ratio(1, 2), ratio(2, 3)];
        let c = [rat(2), rat(3)];
        assert!(verify_constant_term_lemma_scaled(&a, &c, &ratio(1, 5), 7).pass);
        let zero = verify_constant_term_lemma(&a, &rat(0), 5);
        assert!(zero.pass);
        assert_eq!(
            constant_term_series(&a, &c, &rat(0), 5),
            MultiPoly::constant(ratio(1, 6))
        );
    }
}
