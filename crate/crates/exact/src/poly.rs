//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! The variable alphabet is fixed by the domain: two indexed families
//! `x1..xN` and `y1..yN`, plus the scalars `z` (plane-partition counting
//! variable), `u` (half-integer power bookkeeping, `u^2 = z` or `u^2 = x`),
//! and `t` (auxiliary expansion order).
//!
//! # Key invariants
//! - exponent maps never store a zero exponent, so equality is structural;
//! - coefficient maps never store a zero coefficient;
//! - term order is graded lexicographic: total degree first, then the
//!   expanded variable word compared letter by letter.

use crate::rational::{self, Rational};
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A variable of the fixed alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// `x1, x2, ...` (1-based index).
    X(u32),
    /// `y1, y2, ...` (1-based index).
    Y(u32),
    /// Plane-partition counting variable.
    Z,
    /// Half-integer power variable, `u^2` rewrites to `z` or `x`.
    U,
    /// Auxiliary expansion-order variable.
    T,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X(i) => write!(f, "x{i}"),
            Var::Y(i) => write!(f, "y{i}"),
            Var::Z => write!(f, "z"),
            Var::U => write!(f, "u"),
            Var::T => write!(f, "t"),
        }
    }
}

impl Var {
    /// Parses the textual form produced by `Display` (`x3`, `y1`, `z`, `u`, `t`).
    pub fn parse(s: &str) -> Option<Var> {
        match s {
            "z" => return Some(Var::Z),
            "u" => return Some(Var::U),
            "t" => return Some(Var::T),
            _ => {}
        }
        let (head, idx) = s.split_at(1);
        let i: u32 = idx.parse().ok()?;
        match head {
            "x" => Some(Var::X(i)),
            "y" => Some(Var::Y(i)),
            _ => None,
        }
    }
}

/// An exponent vector, stored sparsely as (variable, positive exponent)
/// pairs sorted by variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<(Var, u32)>,
}

impl Monomial {
    /// The empty (constant) monomial.
    pub fn unit() -> Self {
        Monomial { exps: Vec::new() }
    }

    /// A single variable to a power; exponent 0 gives the unit monomial.
    pub fn var_pow(v: Var, e: u32) -> Self {
        if e == 0 {
            Monomial::unit()
        } else {
            Monomial { exps: vec![(v, e)] }
        }
    }

    /// Builds from arbitrary pairs, merging duplicates and dropping zeros.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        Monomial { exps: map.into_iter().collect() }
    }

    /// Sorted (variable, exponent) pairs.
    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.exps
    }

    /// Exponent of a variable (0 when absent).
    pub fn exp(&self, v: Var) -> u32 {
        self.exps
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    /// Sum of all exponents.
    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    /// Sum of exponents of variables selected by the predicate.
    pub fn degree_where(&self, pred: impl Fn(Var) -> bool) -> u32 {
        self.exps.iter().filter(|&&(v, _)| pred(v)).map(|&(_, e)| e).sum()
    }

    /// Product of two monomials.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            match self.exps[i].0.cmp(&other.exps[j].0) {
                Ordering::Less => {
                    out.push(self.exps[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.exps[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.exps[i].0, self.exps[i].1 + other.exps[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.exps[i..]);
        out.extend_from_slice(&other.exps[j..]);
        Monomial { exps: out }
    }

    /// Exact quotient `self / other`, or `None` when some exponent would go
    /// negative.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.exps.len());
        let mut j = 0;
        for &(v, e) in &self.exps {
            let mut rem = e;
            while j < other.exps.len() && other.exps[j].0 < v {
                return None; // divisor has a variable self lacks
            }
            if j < other.exps.len() && other.exps[j].0 == v {
                if other.exps[j].1 > e {
                    return None;
                }
                rem = e - other.exps[j].1;
                j += 1;
            }
            if rem > 0 {
                out.push((v, rem));
            }
        }
        if j < other.exps.len() {
            return None;
        }
        Some(Monomial { exps: out })
    }
}

/// Graded lexicographic order: total degree first, then the expanded
/// variable words compared letter by letter (run-length walk).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0usize, 0usize);
        let (mut ri, mut rj) = (0u32, 0u32); // consumed within current run
        loop {
            if i == self.exps.len() && j == other.exps.len() {
                return Ordering::Equal;
            }
            // equal total degree means both words end together
            let (va, ea) = self.exps[i];
            let (vb, eb) = other.exps[j];
            match va.cmp(&vb) {
                Ordering::Equal => {
                    let a = ea - ri;
                    let b = eb - rj;
                    let step = a.min(b);
                    ri += step;
                    rj += step;
                    if ri == ea {
                        i += 1;
                        ri = 0;
                    }
                    if rj == eb {
                        j += 1;
                        rj = 0;
                    }
                }
                ord => return ord,
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .exps
            .iter()
            .map(|&(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// A sparse multivariate polynomial with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        MultiPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(), c);
        }
        MultiPoly { terms }
    }

    /// The polynomial `v`.
    pub fn var(v: Var) -> Self {
        MultiPoly::term(Rational::one(), Monomial::var_pow(v, 1))
    }

    /// The polynomial `v^e`.
    pub fn var_pow(v: Var, e: u32) -> Self {
        MultiPoly::term(Rational::one(), Monomial::var_pow(v, e))
    }

    /// A single term `c * m`.
    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::unit())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    /// Number of stored terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (graded lexicographic, ascending) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Coefficient of a monomial (zero when absent).
    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Constant term.
    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::unit())
    }

    /// Greatest term in the graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Maximum total degree over all terms (0 for the zero polynomial).
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    /// Maximum degree in the selected variables over all terms.
    pub fn degree_where(&self, pred: impl Fn(Var) -> bool + Copy) -> u32 {
        self.terms.keys().map(|m| m.degree_where(pred)).max().unwrap_or(0)
    }

    /// Adds `c * m` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, q)| (m.clone(), q * c)).collect(),
        }
    }

    /// Multiplies by a single monomial.
    pub fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, q)| (k.mul(m), q.clone()))
                .collect(),
        }
    }

    /// `self^e` by repeated multiplication.
    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Keeps only terms whose monomial satisfies the predicate.
    pub fn retain_terms(&self, pred: impl Fn(&Monomial) -> bool) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| pred(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drops terms of total degree above `cap`.
    pub fn truncate_total_degree(&self, cap: u32) -> MultiPoly {
        self.retain_terms(|m| m.total_degree() <= cap)
    }

    /// Renames variables term by term (the map must be injective on the
    /// variables actually present).
    pub fn rename_vars(&self, f: impl Fn(Var) -> Var + Copy) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let renamed = Monomial::from_pairs(m.pairs().iter().map(|&(v, e)| (f(v), e)));
            out.add_term(renamed, c.clone());
        }
        out
    }

    /// Rewrites even powers of `u` as powers of `target`; fails if any term
    /// carries an odd `u` exponent.
    pub fn rewrite_u_squared(&self, target: Var) -> Option<MultiPoly> {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let eu = m.exp(Var::U);
            if eu % 2 != 0 {
                return None;
            }
            let mut pairs: Vec<(Var, u32)> = m
                .pairs()
                .iter()
                .filter(|&&(v, _)| v != Var::U)
                .cloned()
                .collect();
            if eu > 0 {
                pairs.push((target, eu / 2));
            }
            out.add_term(Monomial::from_pairs(pairs), c.clone());
        }
        Some(out)
    }

    /// Exact polynomial quotient `self / divisor`, or `None` when the
    /// division leaves a remainder. Standard leading-term elimination; since
    /// the coefficient field is exact this is a decision procedure.
    pub fn try_div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        let (dm, dc) = divisor.leading_term()?; // None for zero divisor
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.div(&dm)?;
            let qc = rc / &dc;
            let piece = MultiPoly::term(qc, qm);
            rem = &rem - &(&piece * divisor);
            quot = &quot + &piece;
        }
        Some(quot)
    }

    /// Canonical text form: terms in graded lexicographic order joined with
    /// signed separators, unit coefficients omitted next to variables.
    pub fn canonical_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c < &Rational::zero();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let (num, den) = rational::abs_parts(c);
            let unit_coeff = num == "1" && den == "1";
            let coeff_txt = if den == "1" { num } else { format!("{num}/{den}") };
            if m.pairs().is_empty() {
                out.push_str(&coeff_txt);
            } else if unit_coeff {
                out.push_str(&m.to_string());
            } else {
                out.push_str(&format!("{coeff_txt}*{m}"));
            }
        }
        out
    }

    /// JSON form: a list of `{"exps": {var: exp}, "num": "...", "den": "..."}`
    /// objects in canonical term order, numerator carrying the sign.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let exps: serde_json::Map<String, serde_json::Value> = m
                    .pairs()
                    .iter()
                    .map(|&(v, e)| (v.to_string(), serde_json::Value::from(e)))
                    .collect();
                serde_json::json!({
                    "exps": exps,
                    "num": c.numer().to_string(),
                    "den": c.denom().to_string(),
                })
            })
            .collect();
        serde_json::Value::Array(terms)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_text())
    }
}

impl From<Rational> for MultiPoly {
    fn from(c: Rational) -> Self {
        MultiPoly::constant(c)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
