//! Laurent monomials and polynomials over the rationals in named variables.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A Laurent monomial `∏ x^e`; zero exponents are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(BTreeMap<String, i64>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn var(name: &str) -> Self {
        Self::power(name, 1)
    }

    pub fn power(name: &str, e: i64) -> Self {
        let mut m = BTreeMap::new();
        if e != 0 {
            m.insert(name.to_string(), e);
        }
        Monomial(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &BTreeMap<String, i64> {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0.clone();
        for (v, e) in &other.0 {
            let x = m.entry(v.clone()).or_insert(0);
            *x += e;
            if *x == 0 {
                m.remove(v);
            }
        }
        Monomial(m)
    }

    pub fn pow(&self, k: i64) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|(v, e)| (v.clone(), e * k)).collect())
    }

    pub fn inv(&self) -> Monomial {
        self.pow(-1)
    }

    /// gcd of the exponents (0 for the unit monomial).
    pub fn content(&self) -> i64 {
        self.0.values().fold(0, |g, &e| num_integer::gcd(g, e))
    }

    /// Exact root: `self = root^k`.
    pub fn root(&self, k: i64) -> Monomial {
        Monomial(self.0.iter().map(|(v, e)| (v.clone(), e / k)).collect())
    }

    pub fn leading_sign(&self) -> i64 {
        self.0.values().next().map(|e| e.signum()).unwrap_or(0)
    }

    /// Split into `(positive part, inverse of negative part)`.
    pub fn split(&self) -> (Monomial, Monomial) {
        let pos = self.0.iter().filter(|(_, &e)| e > 0).map(|(v, &e)| (v.clone(), e)).collect();
        let neg = self.0.iter().filter(|(_, &e)| e < 0).map(|(v, &e)| (v.clone(), -e)).collect();
        (Monomial(pos), Monomial(neg))
    }

    pub fn evaluate(&self, point: &BTreeMap<String, BigRational>) -> Result<BigRational> {
        let mut acc = BigRational::one();
        for (v, &e) in &self.0 {
            let x = point
                .get(v)
                .ok_or_else(|| Error::Argument(format!("no value for variable {v}")))?;
            if x.is_zero() && e < 0 {
                return Err(Error::Argument(format!("variable {v} vanishes with negative exponent")));
            }
            acc *= pow_rat(x, e);
        }
        Ok(acc)
    }
}

pub fn pow_rat(x: &BigRational, e: i64) -> BigRational {
    let p = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(v, &e)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// A finite sum of rational multiples of Laurent monomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn term(c: BigRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(BigRational::one(), m)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let x = terms.entry(m.clone()).or_insert_with(BigRational::zero);
            *x += c;
            if x.is_zero() {
                terms.remove(m);
            }
        }
        LaurentPoly { terms }
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out = out.add(&LaurentPoly::term(c1 * c2, m1.mul(m2)));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        (0..k).fold(LaurentPoly::one(), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, c: &BigRational) -> LaurentPoly {
        self.mul(&LaurentPoly::constant(c.clone()))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    /// Per variable, the least exponent over all terms (absent counts as 0).
    pub fn min_exponents(&self) -> BTreeMap<String, i64> {
        let vars: std::collections::BTreeSet<&String> =
            self.terms.keys().flat_map(|m| m.exponents().keys()).collect();
        vars.into_iter()
            .map(|v| {
                let lo = self
                    .terms
                    .keys()
                    .map(|m| m.exponents().get(v).copied().unwrap_or(0))
                    .min()
                    .unwrap_or(0);
                (v.clone(), lo)
            })
            .collect()
    }

    /// `p(m)` for a univariate integer polynomial given by its coefficients.
    pub fn substitute_univariate(coeffs: &[BigInt], m: &Monomial) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            out = out.add(&LaurentPoly::term(BigRational::from_integer(c.clone()), m.pow(k as i64)));
        }
        out
    }

    pub fn evaluate(&self, point: &BTreeMap<String, BigRational>) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            acc += c * m.evaluate(point)?;
        }
        Ok(acc)
    }
}

fn fmt_coeff(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Highest total degree first reads most naturally.
        let mut terms: Vec<(&Monomial, &BigRational)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: i64 = a.exponents().values().sum();
            let db: i64 = b.exponents().values().sum();
            db.cmp(&da).then_with(|| a.cmp(b))
        });
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if m.is_one() {
                write!(f, "{}", fmt_coeff(&mag))?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_coeff(&mag))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn monomial_arithmetic() {
        let a = Monomial::var("a");
        let y = Monomial::power("Y", 2);
        let m = a.mul(&y);
        assert_eq!(m.to_string(), "Y^2*a");
        assert!(m.mul(&m.inv()).is_one());
        assert_eq!(m.pow(2).content(), 2);
        assert_eq!(Monomial::power("Y", 4).root(2), y);
    }

    #[test]
    fn poly_arithmetic_and_display() {
        let x = LaurentPoly::monomial(Monomial::var("x"));
        let one = LaurentPoly::one();
        let p = x.sub(&one).mul(&x.add(&one));
        assert_eq!(p.to_string(), "x^2 - 1");
        let mut pt = BTreeMap::new();
        pt.insert("x".to_string(), q(3));
        assert_eq!(p.evaluate(&pt).unwrap(), q(8));
        let inv = LaurentPoly::monomial(Monomial::power("x", -1));
        assert_eq!(inv.min_exponents().get("x"), Some(&-1));
        assert!(inv.evaluate(&BTreeMap::new()).is_err());
    }
}
