//! Exact one-variable Laurent polynomials with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Sparse Laurent polynomial. Zero coefficients are never stored, so
/// structural equality is polynomial equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(1, 0)
    }

    pub fn monomial(coeff: i64, exp: i32) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(coeff, exp);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, i64)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(c, e);
        }
        p
    }

    pub fn add_term(&mut self, coeff: i64, exp: i32) {
        if coeff == 0 {
            return;
        }
        let slot = self.terms.entry(exp).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Difference between the highest and lowest exponent.
    pub fn span(&self) -> i32 {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect() }
    }

    /// Substitutes `x -> x^k` for a nonzero integer `k`.
    pub fn substitute_power(&self, k: i32) -> Self {
        assert!(k != 0, "substitution by x^0 collapses the polynomial");
        LaurentPoly { terms: self.terms.iter().map(|(&e, &c)| (e * k, c)).collect() }
    }

    /// Divides every exponent by `k`, or `None` if some exponent is not a
    /// multiple of `k`.
    pub fn compress_exponents(&self, k: i32) -> Option<Self> {
        if self.terms.keys().any(|e| e % k != 0) {
            return None;
        }
        Some(LaurentPoly { terms: self.terms.iter().map(|(&e, &c)| (e / k, c)).collect() })
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = LaurentPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division. Returns `None` when `divisor` does not divide `self`
    /// over the integers.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        let (d_lo, d_hi) = (divisor.min_exp()?, divisor.max_exp()?);
        let lead = divisor.coeff(d_hi);
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some(r_hi) = rem.max_exp() {
            let r_lo = rem.min_exp().unwrap_or(r_hi);
            if r_hi - r_lo < d_hi - d_lo {
                return None;
            }
            let c = rem.coeff(r_hi);
            if c % lead != 0 {
                return None;
            }
            let q = LaurentPoly::monomial(c / lead, r_hi - d_hi);
            rem = &rem - &(&q * divisor);
            quot = &quot + &q;
        }
        Some(quot)
    }

    /// Evaluates at an integer point; only meaningful when all exponents are
    /// non-negative or `x` is a unit.
    pub fn eval_i64(&self, x: i64) -> Option<i64> {
        let mut total = 0i64;
        for (e, c) in self.terms() {
            let v = if e >= 0 {
                x.checked_pow(e as u32)?
            } else if x == 1 || x == -1 {
                x.pow(e.unsigned_abs())
            } else {
                return None;
            };
            total = total.checked_add(c.checked_mul(v)?)?;
        }
        Some(total)
    }

    /// Sparse `exponent:coefficient` serialization, ascending exponents.
    pub fn to_sparse_string(&self) -> String {
        if self.is_zero() {
            return String::new();
        }
        self.terms().map(|(e, c)| format!("{e}:{c}")).collect::<Vec<_>>().join(" ")
    }

    pub fn from_sparse_str(text: &str) -> Option<Self> {
        let mut p = LaurentPoly::zero();
        for tok in text.split_whitespace() {
            let (e, c) = tok.split_once(':')?;
            p.add_term(c.parse().ok()?, e.parse().ok()?);
        }
        Some(p)
    }

    /// Human-readable rendering in the named variable.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            let a = c.abs();
            let body = match e {
                0 => a.to_string(),
                _ => {
                    let pw = if e == 1 { var.to_string() } else { format!("{var}^{e}") };
                    if a == 1 { pw } else { format!("{a}*{pw}") }
                }
            };
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(c, e);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(-c, e);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(c1 * c2, e1 + e2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect() }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}
