//! Abstract cuspidal representations, their twists and distinction data.
//!
//! A cuspidal representation is never constructed; it is a symbol carrying
//! its degree, its Steinberg depth `l` and its duality class. Twists by powers
//! of `nu` and by the quadratic character `eta` are tracked on
//! [`TwistedCuspidal`].

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rat::{self, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Duality {
    Distinguished,
    EtaDistinguished,
    NotConjSelfDual,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CuspidalDatum {
    pub id: String,
    pub degree: u32,
    pub l: u32,
    pub duality: Duality,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual_partner: Option<String>,
}

impl CuspidalDatum {
    pub fn new(id: &str, degree: u32, l: u32, duality: Duality) -> Self {
        CuspidalDatum {
            id: id.to_string(),
            degree,
            l,
            duality,
            dual_partner: None,
        }
    }

    pub fn is_conj_self_dual(&self) -> bool {
        self.duality != Duality::NotConjSelfDual
    }
}

/// `eta^eta_pow * nu^exponent * base`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwistedCuspidal {
    pub base: String,
    pub exponent: Rat,
    pub eta_pow: u8,
}

impl TwistedCuspidal {
    pub fn new(base: &str, exponent: Rat, eta_pow: u8) -> Self {
        TwistedCuspidal {
            base: base.to_string(),
            exponent,
            eta_pow: eta_pow % 2,
        }
    }

    pub fn untwisted(base: &str) -> Self {
        Self::new(base, Rat::zero(), 0)
    }

    pub fn eta_twist(&self) -> Self {
        TwistedCuspidal {
            base: self.base.clone(),
            exponent: self.exponent,
            eta_pow: (self.eta_pow + 1) % 2,
        }
    }
}

impl std::fmt::Display for TwistedCuspidal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.eta_pow == 1 {
            write!(f, "eta*")?;
        }
        if !self.exponent.is_zero() {
            write!(f, "nu^{}*", rat::format(&self.exponent))?;
        }
        write!(f, "{}", self.base)
    }
}

/// An immutable table of cuspidal data keyed by id.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Registry {
    data: BTreeMap<String, CuspidalDatum>,
}

impl Registry {
    /// Validates odd `l`, positive degree and an involutive partner pairing.
    pub fn new(entries: Vec<CuspidalDatum>) -> Result<Self> {
        let mut data = BTreeMap::new();
        for d in entries {
            if d.degree == 0 {
                return Err(Error::Registry(format!("{}: degree must be positive", d.id)));
            }
            if d.l % 2 == 0 {
                return Err(Error::Registry(format!("{}: l = {} is not odd", d.id, d.l)));
            }
            if data.contains_key(&d.id) {
                return Err(Error::Registry(format!("duplicate id {}", d.id)));
            }
            data.insert(d.id.clone(), d);
        }
        for d in data.values() {
            match (&d.duality, &d.dual_partner) {
                (Duality::NotConjSelfDual, None) => {
                    return Err(Error::Registry(format!(
                        "{}: NotConjSelfDual requires dualPartner",
                        d.id
                    )))
                }
                (Duality::NotConjSelfDual, Some(p)) => {
                    let partner = data.get(p).ok_or_else(|| {
                        Error::Registry(format!("{}: unknown dualPartner {}", d.id, p))
                    })?;
                    if partner.dual_partner.as_deref() != Some(d.id.as_str()) {
                        return Err(Error::Registry(format!(
                            "{}: partner {} does not point back",
                            d.id, p
                        )));
                    }
                    if partner.duality != Duality::NotConjSelfDual
                        || partner.degree != d.degree
                        || partner.l != d.l
                    {
                        return Err(Error::Registry(format!(
                            "{}: partner {} has inconsistent data",
                            d.id, p
                        )));
                    }
                }
                (_, Some(p)) => {
                    return Err(Error::Registry(format!(
                        "{}: conjugate-self-dual datum must not name a dualPartner ({})",
                        d.id, p
                    )))
                }
                (_, None) => {}
            }
        }
        Ok(Registry { data })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let entries: Vec<CuspidalDatum> =
            serde_json::from_str(text).map_err(|e| Error::Registry(e.to_string()))?;
        Self::new(entries)
    }

    pub fn get(&self, id: &str) -> Result<&CuspidalDatum> {
        self.data
            .get(id)
            .ok_or_else(|| Error::Registry(format!("unknown cuspidal id {id}")))
    }

    pub fn iter(&self) -> impl Iterator<Item = &CuspidalDatum> {
        self.data.values()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }
}

pub fn chi_distinguished(reg: &Registry, c: &TwistedCuspidal, m: u8) -> Result<bool> {
    let datum = reg.get(&c.base)?;
    if !c.exponent.is_zero() {
        return Ok(false);
    }
    let odd = (m as u32 + c.eta_pow as u32) % 2 == 1;
    Ok(match datum.duality {
        Duality::NotConjSelfDual => false,
        Duality::Distinguished => !odd,
        Duality::EtaDistinguished => odd,
    })
}

pub fn conjugate_dual(reg: &Registry, c: &TwistedCuspidal) -> Result<TwistedCuspidal> {
    let datum = reg.get(&c.base)?;
    let base = match datum.duality {
        Duality::NotConjSelfDual => datum.dual_partner.clone().ok_or_else(|| {
            Error::Registry(format!("{}: missing dualPartner", datum.id))
        })?,
        _ => datum.id.clone(),
    };
    Ok(TwistedCuspidal {
        base,
        exponent: -c.exponent,
        eta_pow: c.eta_pow,
    })
}
