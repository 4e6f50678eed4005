//! Exact rational functions in a canonical factored form.
//!
//! Every value is `c * M * ∏ Phi_d(N)^e` where `c` is a non-zero rational, `M`
//! a Laurent monomial, and each `Phi_d(N)` a cyclotomic polynomial evaluated at
//! a primitive monomial `N` whose first exponent is positive. Distinct pairs
//! `(N, d)` give non-associate irreducibles of the Laurent ring, so this form
//! is unique: two functions are equal exactly when their representations are.
//! The L-factors in scope are all products of binomials `1 ± M`, which is why
//! no general polynomial factorisation is needed. Sums are not supported.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::laurent::{LaurentPoly, Monomial};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    constant: BigRational,
    unit: Monomial,
    factors: BTreeMap<(Monomial, u32), i64>,
}

/// Coefficients (low degree first) of the `d`-th cyclotomic polynomial.
pub fn cyclotomic(d: u32) -> Vec<BigInt> {
    assert!(d >= 1);
    // x^d - 1 divided by Phi_e for every proper divisor e
    let mut num: Vec<BigInt> = vec![BigInt::zero(); d as usize + 1];
    num[0] = BigInt::from(-1);
    num[d as usize] = BigInt::one();
    for e in 1..d {
        if d.is_multiple_of(e) {
            num = divide_monic(&num, &cyclotomic(e));
        }
    }
    num
}

fn divide_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![BigInt::zero(); qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd].clone();
        quot[k] = c.clone();
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
    }
    debug_assert!(rem.iter().all(|x| x.is_zero()), "inexact cyclotomic division");
    quot
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

impl RationalFunction {
    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        assert!(!c.is_zero(), "zero is not a unit");
        RationalFunction {
            constant: c,
            unit: Monomial::one(),
            factors: BTreeMap::new(),
        }
    }

    pub fn monomial(m: Monomial) -> Self {
        RationalFunction {
            constant: BigRational::one(),
            unit: m,
            factors: BTreeMap::new(),
        }
    }

    /// `1 - sign * m` with `sign = ±1`; fails when `m = 1`, where the binomial
    /// is either identically zero or a constant.
    pub fn one_minus(sign: i8, m: &Monomial) -> Result<Self> {
        assert!(sign == 1 || sign == -1);
        if m.is_one() {
            return Err(Error::Argument(
                "binomial 1 - c*M with constant M has no canonical factorisation here".into(),
            ));
        }
        let g = m.content();
        let mut root = m.root(g);
        let inverted = root.leading_sign() < 0;
        if inverted {
            root = root.inv();
        }
        let mut out = RationalFunction::one();
        // 1 - N^g = -∏_{d|g} Phi_d(N),  1 + N^g = ∏_{d|2g, d∤g} Phi_d(N)
        let ds: Vec<u32> = if sign == 1 {
            divisors(g as u32)
        } else {
            divisors(2 * g as u32).into_iter().filter(|d| !(g as u32).is_multiple_of(*d)).collect()
        };
        for d in ds {
            out.factors.insert((root.clone(), d), 1);
        }
        if inverted {
            // 1 ∓ N^{-g} = N^{-g} (N^g ∓ 1)
            out.unit = root.pow(-g);
        } else if sign == 1 {
            out.constant = -BigRational::one();
        }
        Ok(out)
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        let mut factors = self.factors.clone();
        for (k, e) in &other.factors {
            let x = factors.entry(k.clone()).or_insert(0);
            *x += e;
            if *x == 0 {
                factors.remove(k);
            }
        }
        RationalFunction {
            constant: &self.constant * &other.constant,
            unit: self.unit.mul(&other.unit),
            factors,
        }
    }

    pub fn inv(&self) -> RationalFunction {
        RationalFunction {
            constant: self.constant.recip(),
            unit: self.unit.inv(),
            factors: self.factors.iter().map(|(k, e)| (k.clone(), -e)).collect(),
        }
    }

    pub fn div(&self, other: &RationalFunction) -> RationalFunction {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: i64) -> RationalFunction {
        let base = if k < 0 { self.inv() } else { self.clone() };
        (0..k.unsigned_abs()).fold(RationalFunction::one(), |acc, _| acc.mul(&base))
    }

    pub fn is_one(&self) -> bool {
        *self == RationalFunction::one()
    }

    /// Number of irreducible factors counted with multiplicity, numerator and
    /// denominator separately.
    pub fn degree_profile(&self) -> (i64, i64) {
        let n = self.factors.values().filter(|e| **e > 0).sum();
        let d = -self.factors.values().filter(|e| **e < 0).sum::<i64>();
        (n, d)
    }

    pub fn evaluate(&self, point: &BTreeMap<String, BigRational>) -> Result<BigRational> {
        let mut acc = &self.constant * self.unit.evaluate(point)?;
        for ((root, d), &e) in &self.factors {
            let x = root.evaluate(point)?;
            let mut v = BigRational::zero();
            for (k, c) in cyclotomic(*d).iter().enumerate() {
                v += BigRational::from_integer(c.clone()) * super::laurent::pow_rat(&x, k as i64);
            }
            if v.is_zero() && e < 0 {
                return Err(Error::Argument("pole at the evaluation point".into()));
            }
            acc *= super::laurent::pow_rat(&v, e);
        }
        Ok(acc)
    }

    /// Numerator and denominator as coprime polynomials without negative
    /// exponents.
    pub fn num_den(&self) -> (LaurentPoly, LaurentPoly) {
        let (up, down) = self.unit.split();
        let mut num = LaurentPoly::constant(self.constant.clone()).mul_monomial(&up);
        let mut den = LaurentPoly::monomial(down);
        for ((root, d), &e) in &self.factors {
            let phi = LaurentPoly::substitute_univariate(&cyclotomic(*d), root);
            if e > 0 {
                num = num.mul(&phi.pow(e as u32));
            } else {
                den = den.mul(&phi.pow((-e) as u32));
            }
        }
        let lo_n = num.min_exponents();
        let lo_d = den.min_exponents();
        let mut clear = Monomial::one();
        for v in lo_n.keys().chain(lo_d.keys()) {
            let lo = lo_n.get(v).copied().unwrap_or(0).min(lo_d.get(v).copied().unwrap_or(0));
            if clear.exponents().get(v).is_none() {
                clear = clear.mul(&Monomial::power(v, -lo));
            }
        }
        let (num, den) = (num.mul_monomial(&clear), den.mul_monomial(&clear));
        // sign: the denominator's constant term, or failing that its first term, is positive
        let lead = den
            .terms()
            .find(|(m, _)| m.is_one())
            .or_else(|| den.terms().next())
            .map(|(_, c)| c.clone());
        match lead {
            Some(c) if c < BigRational::zero() => (num.neg(), den.neg()),
            _ => (num, den),
        }
    }

    /// The factored form, one cyclotomic factor per bracket.
    pub fn factored_string(&self) -> String {
        let mut parts = vec![];
        let c = &self.constant;
        if !c.is_one() || (self.unit.is_one() && self.factors.is_empty()) {
            parts.push(if c.is_integer() {
                c.numer().to_string()
            } else {
                format!("({}/{})", c.numer(), c.denom())
            });
        }
        if !self.unit.is_one() {
            parts.push(self.unit.to_string());
        }
        for ((root, d), &e) in &self.factors {
            let phi = LaurentPoly::substitute_univariate(&cyclotomic(*d), root);
            if e == 1 {
                parts.push(format!("({phi})"));
            } else {
                parts.push(format!("({phi})^{e}"));
            }
        }
        parts.join(" * ")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = self.num_den();
        let wrap = |p: &LaurentPoly| {
            if p.terms().count() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        if den.is_one() {
            write!(f, "{num}")
        } else {
            write!(f, "{} / {}", wrap(&num), wrap(&den))
        }
    }
}

impl std::ops::Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: RationalFunction) -> RationalFunction {
        RationalFunction::mul(&self, &rhs)
    }
}

impl std::ops::Div for RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: RationalFunction) -> RationalFunction {
        RationalFunction::div(&self, &rhs)
    }
}
