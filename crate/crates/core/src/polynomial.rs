//! Integer Laurent polynomials in one variable.
//!
//! The same type carries bracket values (exponents of `A`) and Jones values
//! (exponents counting half-units of `t`, so `t^(3/2)` is stored as exponent 3).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i64, i128>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolynomialError {
    #[error("malformed polynomial term `{0}`")]
    MalformedTerm(String),
    #[error("polynomial is not divisible by the requested factor")]
    NotDivisible,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coefficient: i128, exponent: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(coefficient, exponent);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i128)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(c, e);
        }
        p
    }

    pub fn add_term(&mut self, coefficient: i128, exponent: i64) {
        if coefficient == 0 {
            return;
        }
        let entry = self.terms.entry(exponent).or_insert(0);
        *entry += coefficient;
        if *entry == 0 {
            self.terms.remove(&exponent);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponent: i64) -> i128 {
        self.terms.get(&exponent).copied().unwrap_or(0)
    }

    /// `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, i128)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn shift(&self, by: i64) -> Self {
        Self { terms: self.terms.iter().map(|(&e, &c)| (e + by, c)).collect() }
    }

    pub fn scale(&self, by: i128) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, c * by)))
    }

    /// Substitutes `x -> x^-1`.
    pub fn invert_variable(&self) -> Self {
        Self { terms: self.terms.iter().map(|(&e, &c)| (-e, c)).collect() }
    }

    /// Substitutes `x -> x^k` (exponents multiplied by `k`).
    pub fn stretch(&self, k: i64) -> Self {
        Self { terms: self.terms.iter().map(|(&e, &c)| (e * k, c)).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division by `x^step + 1`.
    pub fn div_binomial(&self, step: i64) -> Result<Self, PolynomialError> {
        assert!(step > 0);
        let mut rem = self.clone();
        let mut quotient = Self::zero();
        while let Some(top) = rem.max_exponent() {
            let low = rem.min_exponent().unwrap();
            if top - step < low {
                return Err(PolynomialError::NotDivisible);
            }
            let c = rem.coefficient(top);
            let e = top - step;
            quotient.add_term(c, e);
            rem.add_term(-c, top);
            rem.add_term(-c, e);
        }
        Ok(quotient)
    }

    /// Evaluates with the variable set to the imaginary unit, returning `(re, im)`.
    pub fn eval_at_i(&self) -> (i128, i128) {
        let (mut re, mut im) = (0i128, 0i128);
        for (e, c) in self.terms() {
            match e.rem_euclid(4) {
                0 => re += c,
                1 => im += c,
                2 => re -= c,
                _ => im -= c,
            }
        }
        (re, im)
    }

    /// Renders with variable `var`, exponents divided by `denominator` (1 or 2), descending.
    pub fn render(&self, var: &str, denominator: i64) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().rev().enumerate() {
            let magnitude = c.unsigned_abs();
            if i == 0 {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            let power = if e == 0 {
                String::new()
            } else if e % denominator == 0 {
                let k = e / denominator;
                if k == 1 {
                    var.to_string()
                } else {
                    format!("{var}^{k}")
                }
            } else {
                format!("{var}^({e}/{denominator})")
            };
            match (magnitude, power.is_empty()) {
                (_, true) => out.push_str(&magnitude.to_string()),
                (1, false) => out.push_str(&power),
                (_, false) => out.push_str(&format!("{magnitude}*{power}")),
            }
        }
        out
    }

    /// Inverse of [`render`](Self::render); accepts either sign spelling and any term order.
    pub fn parse(text: &str, var: &str, denominator: i64) -> Result<Self, PolynomialError> {
        let normalized = text.replace('\u{2212}', "-");
        let mut p = Self::zero();
        let mut sign = 1i128;
        let mut pending = String::new();
        let mut terms = Vec::new();
        let mut prev_caret = false;
        for ch in normalized.chars() {
            if ch.is_whitespace() {
                continue;
            }
            if (ch == '+' || ch == '-') && !prev_caret && !pending.ends_with('(') {
                if !pending.is_empty() {
                    terms.push((sign, std::mem::take(&mut pending)));
                }
                sign = if ch == '-' { -1 } else { 1 };
                prev_caret = false;
                continue;
            }
            prev_caret = ch == '^';
            pending.push(ch);
        }
        if !pending.is_empty() {
            terms.push((sign, pending));
        }
        if terms.is_empty() {
            return Err(PolynomialError::MalformedTerm(text.to_string()));
        }
        for (sign, term) in terms {
            let bad = || PolynomialError::MalformedTerm(term.clone());
            let (coef_text, power_text) = match term.find(var) {
                Some(pos) => (term[..pos].trim_end_matches('*'), Some(&term[pos + var.len()..])),
                None => (term.as_str(), None),
            };
            let coef: i128 = if coef_text.is_empty() { 1 } else { coef_text.parse().map_err(|_| bad())? };
            let exponent = match power_text {
                None => 0,
                Some("") => denominator,
                Some(rest) => {
                    let body = rest.strip_prefix('^').ok_or_else(bad)?;
                    let body = body.trim_start_matches('(').trim_end_matches(')');
                    match body.split_once('/') {
                        Some((n, d)) => {
                            let n: i64 = n.parse().map_err(|_| bad())?;
                            let d: i64 = d.parse().map_err(|_| bad())?;
                            if d == 0 || (n * denominator) % d != 0 {
                                return Err(bad());
                            }
                            n * denominator / d
                        }
                        None => body.parse::<i64>().map_err(|_| bad())? * denominator,
                    }
                }
            };
            p.add_term(sign * coef, exponent);
        }
        Ok(p)
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, o: &LaurentPolynomial) -> LaurentPolynomial {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl AddAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn add_assign(&mut self, o: &LaurentPolynomial) {
        for (e, c) in o.terms() {
            self.add_term(c, e);
        }
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, o: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-o)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        self.scale(-1)
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, o: &LaurentPolynomial) -> LaurentPolynomial {
        let mut r = LaurentPolynomial::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in o.terms() {
                r.add_term(c1 * c2, e1 + e2);
            }
        }
        r
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("A", 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_half_integer_jones() {
        // positive Hopf link
        let p = LaurentPolynomial::from_terms([(1, -1), (5, -1)]);
        assert_eq!(p.render("t", 2), "-t^(5/2) - t^(1/2)");
        let trefoil = LaurentPolynomial::from_terms([(-8, -1), (-6, 1), (-2, 1)]);
        assert_eq!(trefoil.render("t", 2), "t^-1 + t^-3 - t^-4");
    }

    #[test]
    fn parse_accepts_rendered_and_unicode_minus() {
        let p = LaurentPolynomial::parse("\u{2212}t^\u{2212}4 + t^\u{2212}3 + t^\u{2212}1", "t", 2).unwrap();
        assert_eq!(p, LaurentPolynomial::from_terms([(-8, -1), (-6, 1), (-2, 1)]));
        let q = LaurentPolynomial::parse("3*t^(5/2) - 2 + t", "t", 2).unwrap();
        assert_eq!(q, LaurentPolynomial::from_terms([(5, 3), (0, -2), (2, 1)]));
        assert_eq!(LaurentPolynomial::parse(&q.render("t", 2), "t", 2).unwrap(), q);
    }

    #[test]
    fn binomial_division_is_exact() {
        let d = LaurentPolynomial::from_terms([(4, 1), (0, 1)]);
        let p = LaurentPolynomial::from_terms([(3, 2), (-5, -1), (0, 7)]);
        let prod = &p * &d;
        assert_eq!(prod.div_binomial(4).unwrap(), p);
        assert!(LaurentPolynomial::from_terms([(0, 1)]).div_binomial(4).is_err());
    }
}
