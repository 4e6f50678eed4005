//! Formal products of Asai and Rankin-Selberg L-factor atoms.
//!
//! An atom is a symbol `L^+(form + shift, pi)`, `L^-(...)` or
//! `L(form + shift, pi, pi')` for a cuspidal `pi`. Products are multisets with
//! integer exponents; equal atoms merge on multiplication, so cancellation is
//! automatic. Gamma factors appear only through their functional-equation
//! quotients, i.e. up to units.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cuspidal_lines::{chi_distinguished, conjugate_dual, Registry, TwistedCuspidal};
use crate::error::{Error, Result};
use crate::rat::{self, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum AtomKind {
    AsaiPlus,
    AsaiMinus,
    RS,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AtomArg {
    Asai(TwistedCuspidal),
    Pair(TwistedCuspidal, TwistedCuspidal),
}

/// `sum_v c_v * v` with rational coefficients; zero coefficients are dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LinearForm {
    coeffs: BTreeMap<String, Rat>,
}

impl LinearForm {
    pub fn zero() -> Self {
        LinearForm::default()
    }

    pub fn var(name: &str) -> Self {
        Self::term(name, Rat::one())
    }

    pub fn term(name: &str, c: Rat) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(name.to_string(), c);
        }
        LinearForm { coeffs }
    }

    pub fn coeffs(&self) -> &BTreeMap<String, Rat> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &LinearForm) -> LinearForm {
        let mut coeffs = self.coeffs.clone();
        for (v, c) in &other.coeffs {
            let x = coeffs.entry(v.clone()).or_insert_with(Rat::zero);
            *x += c;
            if x.is_zero() {
                coeffs.remove(v);
            }
        }
        LinearForm { coeffs }
    }

    pub fn scale(&self, c: Rat) -> LinearForm {
        if c.is_zero() {
            return LinearForm::zero();
        }
        LinearForm {
            coeffs: self.coeffs.iter().map(|(v, x)| (v.clone(), x * c)).collect(),
        }
    }

    pub fn neg(&self) -> LinearForm {
        self.scale(-Rat::one())
    }

    pub fn sub(&self, other: &LinearForm) -> LinearForm {
        self.add(&other.neg())
    }

    /// Replaces `var` by `by`.
    pub fn substitute(&self, var: &str, by: &LinearForm) -> LinearForm {
        match self.coeffs.get(var) {
            None => self.clone(),
            Some(&c) => {
                let mut rest = self.clone();
                rest.coeffs.remove(var);
                rest.add(&by.scale(c))
            }
        }
    }

    pub fn evaluate(&self, point: &BTreeMap<String, Rat>) -> Result<Rat> {
        let mut acc = Rat::zero();
        for (v, c) in &self.coeffs {
            let x = point
                .get(v)
                .ok_or_else(|| Error::Argument(format!("no value for variable {v}")))?;
            acc += c * x;
        }
        Ok(acc)
    }

    /// Renders `form + shift`, e.g. `-2s+1`.
    pub fn with_shift(&self, shift: &Rat) -> String {
        let mut out = String::new();
        for (v, c) in &self.coeffs {
            let mag = c.abs();
            if c.is_negative() {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if mag.is_integer() {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                }
            } else {
                out.push_str(&format!("({})", rat::format(&mag)));
            }
            out.push_str(v);
        }
        if !shift.is_zero() || out.is_empty() {
            if shift.is_negative() {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            out.push_str(&rat::format(&shift.abs()));
        }
        out
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.with_shift(&Rat::zero()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactorAtom {
    pub kind: AtomKind,
    pub arg: AtomArg,
    pub form: LinearForm,
    pub shift: Rat,
}

impl FactorAtom {
    pub fn asai(plus: bool, c: TwistedCuspidal, form: LinearForm, shift: Rat) -> Self {
        FactorAtom {
            kind: if plus { AtomKind::AsaiPlus } else { AtomKind::AsaiMinus },
            arg: AtomArg::Asai(c),
            form,
            shift,
        }
    }

    pub fn rs(c: TwistedCuspidal, c2: TwistedCuspidal, form: LinearForm, shift: Rat) -> Self {
        FactorAtom {
            kind: AtomKind::RS,
            arg: AtomArg::Pair(c, c2),
            form,
            shift,
        }
    }

    /// Value of `form + shift` at `point`.
    pub fn argument_at(&self, point: &BTreeMap<String, Rat>) -> Result<Rat> {
        Ok(self.form.evaluate(point)? + self.shift)
    }

    /// Whether the atom has a (simple) pole where its argument vanishes.
    pub fn polar_at_zero(&self, reg: &Registry) -> Result<bool> {
        match (&self.kind, &self.arg) {
            (AtomKind::AsaiPlus, AtomArg::Asai(c)) => chi_distinguished(reg, c, 0),
            (AtomKind::AsaiMinus, AtomArg::Asai(c)) => chi_distinguished(reg, c, 1),
            (AtomKind::RS, AtomArg::Pair(c, c2)) => {
                reg.get(&c2.base)?;
                Ok(*c2 == conjugate_dual(reg, c)?)
            }
            _ => Err(Error::Internal(format!("atom kind {:?} with mismatched argument", self.kind))),
        }
    }

    fn substitute(&self, var: &str, by: &LinearForm) -> FactorAtom {
        FactorAtom {
            form: self.form.substitute(var, by),
            ..self.clone()
        }
    }
}

impl fmt::Display for FactorAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = self.form.with_shift(&self.shift);
        match &self.arg {
            AtomArg::Asai(c) => {
                let sign = if self.kind == AtomKind::AsaiMinus { '-' } else { '+' };
                write!(f, "L^{sign}({x},{c})")
            }
            AtomArg::Pair(c, c2) => write!(f, "L({x},{c},{c2})"),
        }
    }
}

/// A product of atoms with non-zero integer exponents.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FactorProduct {
    atoms: BTreeMap<FactorAtom, i64>,
}

impl FactorProduct {
    pub fn one() -> Self {
        FactorProduct::default()
    }

    pub fn atom(a: FactorAtom) -> Self {
        Self::atom_pow(a, 1)
    }

    pub fn atom_pow(a: FactorAtom, e: i64) -> Self {
        let mut atoms = BTreeMap::new();
        if e != 0 {
            atoms.insert(a, e);
        }
        FactorProduct { atoms }
    }

    pub fn atoms(&self) -> impl Iterator<Item = (&FactorAtom, i64)> {
        self.atoms.iter().map(|(a, &e)| (a, e))
    }

    pub fn exponent(&self, a: &FactorAtom) -> i64 {
        self.atoms.get(a).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn mul(&self, other: &FactorProduct) -> FactorProduct {
        let mut atoms = self.atoms.clone();
        for (a, e) in &other.atoms {
            let x = atoms.entry(a.clone()).or_insert(0);
            *x += e;
            if *x == 0 {
                atoms.remove(a);
            }
        }
        FactorProduct { atoms }
    }

    pub fn inv(&self) -> FactorProduct {
        FactorProduct {
            atoms: self.atoms.iter().map(|(a, e)| (a.clone(), -e)).collect(),
        }
    }

    pub fn div(&self, other: &FactorProduct) -> FactorProduct {
        self.mul(&other.inv())
    }

    /// Rewrites `L^-(x, eta^e pi)` as `L^+(x, eta^{e+1} pi)`.
    pub fn to_plus_basis(&self) -> FactorProduct {
        self.atoms.iter().fold(FactorProduct::one(), |acc, (a, &e)| {
            let b = match (&a.kind, &a.arg) {
                (AtomKind::AsaiMinus, AtomArg::Asai(c)) => {
                    FactorAtom::asai(true, c.eta_twist(), a.form.clone(), a.shift)
                }
                _ => a.clone(),
            };
            acc.mul(&FactorProduct::atom_pow(b, e))
        })
    }

    pub fn substitute(&self, var: &str, by: &LinearForm) -> FactorProduct {
        self.atoms.iter().fold(FactorProduct::one(), |acc, (a, &e)| {
            acc.mul(&FactorProduct::atom_pow(a.substitute(var, by), e))
        })
    }

    /// Pole order at `point`; negative values are zero orders.
    pub fn pole_order(&self, reg: &Registry, point: &BTreeMap<String, Rat>) -> Result<i64> {
        let mut total = 0;
        for (a, &e) in &self.atoms {
            let polar = a.polar_at_zero(reg)?;
            if polar && a.argument_at(point)?.is_zero() {
                total += e;
            }
        }
        Ok(total)
    }
}

impl fmt::Display for FactorProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .atoms
            .iter()
            .map(|(a, &e)| if e == 1 { a.to_string() } else { format!("{a}^{e}") })
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}

#[derive(Serialize)]
struct AtomRecord {
    kind: AtomKind,
    arg: Vec<String>,
    form: String,
    shift: String,
    exponent: i64,
}

impl Serialize for FactorProduct {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let records: Vec<AtomRecord> = self
            .atoms
            .iter()
            .map(|(a, &e)| AtomRecord {
                kind: a.kind,
                arg: match &a.arg {
                    AtomArg::Asai(c) => vec![c.to_string()],
                    AtomArg::Pair(c, c2) => vec![c.to_string(), c2.to_string()],
                },
                form: a.form.to_string(),
                shift: rat::format(&a.shift),
                exponent: e,
            })
            .collect();
        records.serialize(s)
    }
}

/// `prod_{i=0}^{k-1} L^kind(form + shift + i, eta^{k-1-i} rho)`: the Asai factor
/// of `St_k(rho)`.
pub fn asai_steinberg_product(
    rho: &TwistedCuspidal,
    k: u32,
    plus: bool,
    form: &LinearForm,
    shift: Rat,
) -> Result<FactorProduct> {
    if k == 0 {
        return Err(Error::Argument("Steinberg length must be positive".into()));
    }
    let mut out = FactorProduct::one();
    for i in 0..k {
        let eta = ((k - 1 - i) % 2) as u8;
        let c = TwistedCuspidal::new(&rho.base, rho.exponent, rho.eta_pow + eta);
        out = out.mul(&FactorProduct::atom(FactorAtom::asai(
            plus,
            c,
            form.clone(),
            shift + Rat::from_integer(i as i64),
        )));
    }
    Ok(out)
}

/// `gamma^+(-s, St_k(rho))^{-1} gamma^-(s, St_k(rho))^{-1}` for a
/// conjugate-self-dual `rho`, with `gamma(s, pi) ~ L(1-s, pi^vee) / L(s, pi)`,
/// reduced to the `L^+` basis.
pub fn telescope_gamma_identity(rho: &TwistedCuspidal, k: u32, var: &str) -> Result<FactorProduct> {
    let s = LinearForm::var(var);
    let zero = Rat::zero();
    let one = Rat::one();
    let plus_num = asai_steinberg_product(rho, k, true, &s.neg(), zero)?;
    let plus_den = asai_steinberg_product(rho, k, true, &s, one)?;
    let minus_num = asai_steinberg_product(rho, k, false, &s, zero)?;
    let minus_den = asai_steinberg_product(rho, k, false, &s.neg(), one)?;
    Ok(plus_num
        .div(&plus_den)
        .mul(&minus_num)
        .div(&minus_den)
        .to_plus_basis())
}
