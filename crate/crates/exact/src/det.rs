//! Determinants of polynomial matrices.
//!
//! `det_bareiss` is fraction-free Gaussian elimination: every intermediate
//! entry stays a polynomial because the Bareiss update divides exactly by the
//! previous pivot. `det_cofactor` is the textbook expansion, kept as the
//! independent cross-check and as the dispatch target for small sizes.

use crate::poly::MultiPoly;
use crate::ExactError;

fn check_square(m: &[Vec<MultiPoly>]) -> Result<usize, ExactError> {
    let n = m.len();
    for (row, r) in m.iter().enumerate() {
        if r.len() != n {
            return Err(ExactError::NonSquare { rows: n, cols: r.len(), row });
        }
    }
    Ok(n)
}

/// Fraction-free (Bareiss) determinant with row pivoting.
pub fn det_bareiss(m: &[Vec<MultiPoly>]) -> Result<MultiPoly, ExactError> {
    let n = check_square(m)?;
    if n == 0 {
        return Ok(MultiPoly::one());
    }
    let mut a: Vec<Vec<MultiPoly>> = m.to_vec();
    let mut sign = false;
    let mut prev = MultiPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let swap = (k + 1..n).find(|&r| !a[r][k].is_zero());
            match swap {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return Ok(MultiPoly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .try_div_exact(&prev)
                    .expect("Bareiss update divides exactly by the previous pivot");
            }
            a[i][k] = MultiPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if sign { -&det } else { det })
}

/// Cofactor expansion along the first row.
pub fn det_cofactor(m: &[Vec<MultiPoly>]) -> Result<MultiPoly, ExactError> {
    let n = check_square(m)?;
    fn go(m: &[Vec<MultiPoly>], cols: &[usize]) -> MultiPoly {
        let row = m.len() - cols.len();
        if cols.is_empty() {
            return MultiPoly::one();
        }
        let mut acc = MultiPoly::zero();
        for (pos, &j) in cols.iter().enumerate() {
            let entry = &m[row][j];
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols
                .iter()
                .copied()
                .filter(|&c| c != j)
                .collect();
            let minor = go(m, &rest);
            let signed = if pos % 2 == 0 { &minor * entry } else { -&(&minor * entry) };
            acc = &acc + &signed;
        }
        acc
    }
    let cols: Vec<usize> = (0..n).collect();
    Ok(go(m, &cols))
}

/// Determinant entry point: cofactor expansion up to side 3, Bareiss above.
pub fn poly_det(m: &[Vec<MultiPoly>]) -> Result<MultiPoly, ExactError> {
    let n = check_square(m)?;
    if n <= 3 {
        det_cofactor(m)
    } else {
        det_bareiss(m)
    }
}
