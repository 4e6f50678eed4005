//! L-factors of unramified principal series as exact rational functions.
//!
//! A linear form `x` in variables `s, s1, ...` becomes `q_F^{-x}`, written as
//! a monomial in `Y, Y1, ...` and the symbol `sqrtq = q_F^{1/2}`; over `E` the
//! monomial is raised to the inertia degree. Character values at the
//! uniformizer are formal symbols.

use super::formal::{AtomKind, LinearForm};
use super::laurent::Monomial;
use super::rational_function::RationalFunction;
use crate::error::{Error, Result};
use crate::rat::Rat;

/// The symbol standing for `q_F^{1/2}`.
pub const SQRT_Q: &str = "sqrtq";

/// How `E/F` sits over the residue field: inertia degree and `eta(varpi_F)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Normalization {
    pub inertia_degree: u32,
    pub eta_at_uniformizer: i8,
}

impl Normalization {
    pub fn inert() -> Self {
        Normalization {
            inertia_degree: 2,
            eta_at_uniformizer: -1,
        }
    }

    pub fn split() -> Self {
        Normalization {
            inertia_degree: 1,
            eta_at_uniformizer: 1,
        }
    }
}

impl Default for Normalization {
    fn default() -> Self {
        Self::inert()
    }
}

/// The value `alpha` or `alpha^{-1}` of an unramified character at the uniformizer.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharValue {
    pub symbol: String,
    pub inverse: bool,
}

impl CharValue {
    pub fn new(symbol: &str) -> Result<Self> {
        let ok = !symbol.is_empty()
            && symbol.starts_with(|c: char| c.is_ascii_lowercase())
            && symbol.chars().all(|c| c.is_ascii_lowercase() || c.is_ascii_digit())
            && symbol != SQRT_Q;
        if !ok {
            return Err(Error::Argument(format!(
                "character symbol {symbol:?} must be lowercase alphanumeric and not {SQRT_Q}"
            )));
        }
        Ok(CharValue {
            symbol: symbol.to_string(),
            inverse: false,
        })
    }

    pub fn inverted(&self) -> Self {
        CharValue {
            symbol: self.symbol.clone(),
            inverse: !self.inverse,
        }
    }

    pub fn monomial(&self) -> Monomial {
        Monomial::power(&self.symbol, if self.inverse { -1 } else { 1 })
    }
}

impl std::fmt::Display for CharValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.symbol)
        } else {
            write!(f, "{}", self.symbol)
        }
    }
}

/// Name of the variable `q_F^{-s}` attached to `s`: `s -> Y`, `s2 -> Y2`.
pub fn y_variable(s: &str) -> String {
    match s.strip_prefix('s') {
        Some(rest) if rest.chars().all(|c| c.is_ascii_digit()) => format!("Y{rest}"),
        _ => format!("Y_{s}"),
    }
}

/// `q_F^{-(form + shift)}` as a monomial; the form needs integer coefficients
/// and `2 * shift` must be an integer.
pub fn q_power(form: &LinearForm, shift: Rat) -> Result<Monomial> {
    let mut m = Monomial::one();
    for (v, c) in form.coeffs() {
        if !c.is_integer() {
            return Err(Error::Argument(format!(
                "coefficient {c} of {v} is not an integer; q^(-{v}) has no monomial image"
            )));
        }
        m = m.mul(&Monomial::power(&y_variable(v), c.to_integer()));
    }
    let twice = shift * 2;
    if !twice.is_integer() {
        return Err(Error::Argument(format!("shift {shift} is not a half-integer")));
    }
    Ok(m.mul(&Monomial::power(SQRT_Q, -twice.to_integer())))
}

fn product_monomial(chars: &[&CharValue]) -> Monomial {
    chars.iter().fold(Monomial::one(), |acc, c| acc.mul(&c.monomial()))
}

/// `1 / (1 - sign * m)`.
fn tate(sign: i8, m: &Monomial) -> Result<RationalFunction> {
    Ok(RationalFunction::one_minus(sign, m)?.inv())
}

/// `L^+(x, pi)` or `L^-(x, pi)` for `pi = chi_1 x ... x chi_n`.
pub fn unramified_asai(
    chars: &[CharValue],
    kind: AtomKind,
    form: &LinearForm,
    shift: Rat,
    norm: Normalization,
) -> Result<RationalFunction> {
    let eta = match kind {
        AtomKind::AsaiPlus => 1,
        AtomKind::AsaiMinus => norm.eta_at_uniformizer,
        AtomKind::RS => return Err(Error::Argument("unramified_asai needs an Asai kind".into())),
    };
    let y = q_power(form, shift)?;
    let y_e = y.pow(norm.inertia_degree as i64);
    let mut out = RationalFunction::one();
    for i in 0..chars.len() {
        for j in i + 1..chars.len() {
            out = out.mul(&tate(1, &product_monomial(&[&chars[i], &chars[j]]).mul(&y_e))?);
        }
        out = out.mul(&tate(eta, &chars[i].monomial().mul(&y))?);
    }
    Ok(out)
}

/// `L(x, pi, pi') = prod_{i,j} 1 / (1 - alpha_i beta_j q_E^{-x})`.
pub fn unramified_rs(
    chars: &[CharValue],
    chars2: &[CharValue],
    form: &LinearForm,
    shift: Rat,
    norm: Normalization,
) -> Result<RationalFunction> {
    let y_e = q_power(form, shift)?.pow(norm.inertia_degree as i64);
    let mut out = RationalFunction::one();
    for a in chars {
        for b in chars2 {
            out = out.mul(&tate(1, &product_monomial(&[a, b]).mul(&y_e))?);
        }
    }
    Ok(out)
}

/// Parses `a,b^-1,c` into character values; the empty string is the empty list.
pub fn parse_chars(text: &str) -> Result<Vec<CharValue>> {
    if text.trim().is_empty() {
        return Ok(vec![]);
    }
    text.split(',')
        .map(|t| {
            let t = t.trim();
            match t.strip_suffix("^-1") {
                Some(base) => Ok(CharValue::new(base)?.inverted()),
                None => CharValue::new(t),
            }
        })
        .collect()
}
