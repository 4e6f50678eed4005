//! Spherical values of intertwining periods, the factor relating the open
//! period to its functional-equation partner, and pole predicates.
//!
//! `spherical_period_closed` evaluates the product formula directly, while
//! `spherical_period_recursive` rebuilds the same value one reflection at a
//! time; the two share nothing beyond the unramified L-factor primitives.

mod recursion;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cuspidal_lines::{Registry, TwistedCuspidal};
use crate::distinction::{discrete_series_distinction, Status};
use crate::error::{Error, Result};
use crate::ladders::{is_proper_ladder, Multisegment};
use crate::lfactor_algebra::formal::{telescope_gamma_identity, AtomKind, FactorProduct, LinearForm};
use crate::lfactor_algebra::rational_function::RationalFunction;
use crate::lfactor_algebra::unramified::{parse_chars, unramified_asai, unramified_rs, CharValue, Normalization};
use crate::rat::{self, Rat};
use crate::segments::{merge, relate, Segment};

/// Default largest `r` the recursion accepts.
pub const DEFAULT_RECURSION_BOUND: usize = 3;

/// Blocks `sigma_1, ..., sigma_r` of unramified characters; the remaining
/// blocks `sigma_{r+1}, ..., sigma_{2r}` are their conjugate duals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodSpec {
    pub sigma: Vec<Vec<CharValue>>,
    pub norm: Normalization,
}

impl PeriodSpec {
    pub fn new(sigma: Vec<Vec<CharValue>>, norm: Normalization) -> Result<Self> {
        if sigma.is_empty() {
            return Err(Error::Argument("a period spec needs r >= 1 blocks".into()));
        }
        if let Some(i) = sigma.iter().position(|b| b.is_empty()) {
            return Err(Error::Argument(format!("block {} is empty", i + 1)));
        }
        Ok(PeriodSpec { sigma, norm })
    }

    /// Parses `a,b|c`: blocks separated by `|`, characters by `,`.
    pub fn parse(text: &str, norm: Normalization) -> Result<Self> {
        let blocks = text.split('|').map(parse_chars).collect::<Result<Vec<_>>>()?;
        PeriodSpec::new(blocks, norm)
    }

    pub fn r(&self) -> usize {
        self.sigma.len()
    }

    pub fn s_var(&self, k: usize) -> String {
        format!("s{k}")
    }
}

fn inverted(block: &[CharValue]) -> Vec<CharValue> {
    block.iter().map(CharValue::inverted).collect()
}

fn one() -> Rat {
    rat::int(1)
}

/// The product formula: for `i < j` the Rankin-Selberg quotients at
/// `s_i - s_j` and `s_i + s_j`, and for each `k` the Asai quotient
/// `L^+(2 s_k, sigma_k) / L^-(2 s_k + 1, sigma_k)`.
pub fn spherical_period_closed(spec: &PeriodSpec) -> Result<RationalFunction> {
    let r = spec.r();
    let norm = spec.norm;
    let var = |k: usize| LinearForm::var(&spec.s_var(k));
    let zero = rat::int(0);
    let mut acc = RationalFunction::one();
    for i in 1..=r {
        for j in i + 1..=r {
            let (si, sj) = (&spec.sigma[i - 1], &spec.sigma[j - 1]);
            let diff = var(i).sub(&var(j));
            let sum = var(i).add(&var(j));
            let dual_j = inverted(sj);
            acc = acc
                .mul(&unramified_rs(&dual_j, si, &diff, zero, norm)?)
                .div(&unramified_rs(&dual_j, si, &diff, one(), norm)?)
                .mul(&unramified_rs(si, sj, &sum, zero, norm)?)
                .div(&unramified_rs(si, sj, &sum, one(), norm)?);
        }
    }
    for k in 1..=r {
        let twice = var(k).scale(rat::int(2));
        let block = &spec.sigma[k - 1];
        acc = acc
            .mul(&unramified_asai(block, AtomKind::AsaiPlus, &twice, zero, norm)?)
            .div(&unramified_asai(block, AtomKind::AsaiMinus, &twice, one(), norm)?);
    }
    Ok(acc)
}

/// The step-by-step oracle with the default bound on `r`.
pub fn spherical_period_recursive(spec: &PeriodSpec) -> Result<RationalFunction> {
    spherical_period_recursive_bounded(spec, DEFAULT_RECURSION_BOUND)
}

pub fn spherical_period_recursive_bounded(spec: &PeriodSpec, max_r: usize) -> Result<RationalFunction> {
    if spec.r() > max_r {
        return Err(Error::Range(format!(
            "recursion is limited to r <= {max_r}, got r = {}",
            spec.r()
        )));
    }
    recursion::replay(spec)
}

/// `alpha` up to units for `St_{kl}(rho')` in the variable `var`: the telescoped
/// gamma quotient with `var` replaced by `2 var`.
pub fn alpha_factor(rho: &TwistedCuspidal, k: u32, l: u32, var: &str) -> Result<FactorProduct> {
    if k == 0 || l == 0 {
        return Err(Error::Argument("alpha_factor needs k, l >= 1".into()));
    }
    let t = telescope_gamma_identity(rho, k * l, var)?;
    Ok(t.substitute(var, &LinearForm::term(var, rat::int(2))))
}

/// Pole order of `alpha_factor` at `var = at`.
pub fn alpha_pole_order(reg: &Registry, alpha: &FactorProduct, var: &str, at: Rat) -> Result<i64> {
    let point: BTreeMap<String, Rat> = [(var.to_string(), at)].into_iter().collect();
    alpha.pole_order(reg, &point)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IntertwiningPole {
    pub convergent_holomorphic: bool,
    pub pole: bool,
    pub simple: bool,
}

/// Behaviour of the intertwining operator exchanging `L(dr)` and `L(dr1)`
/// at the parameters given by their centers.
pub fn intertwining_pole(reg: &Registry, dr: &Segment, dr1: &Segment) -> Result<IntertwiningPole> {
    if !dr.same_line(dr1) {
        return Err(Error::Argument(format!("{dr} and {dr1} lie on different cuspidal lines")));
    }
    let l = rat::int(reg.get(&dr.base)?.l as i64);
    let diff = l * (dr.center() - dr1.center());
    if diff > rat::int(0) {
        return Ok(IntertwiningPole {
            convergent_holomorphic: true,
            pole: false,
            simple: false,
        });
    }
    let bound = -l * rat::abs(&rat::int(dr.len() - dr1.len())) / 2;
    if diff < bound {
        let rel = relate(dr, dr1);
        let pole = rel.precedes && !rel.juxtaposed;
        return Ok(IntertwiningPole {
            convergent_holomorphic: false,
            pole,
            simple: pole,
        });
    }
    Err(Error::Range(format!(
        "s_r - s_(r+1) = {} lies in [{}, 0], where no pole statement is available",
        rat::format(&diff),
        rat::format(&bound)
    )))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodPole {
    pub pole: bool,
    pub reason: String,
}

pub const NOT_COVERED: &str = "not covered by sufficiency - holomorphic per even-ladder proof remark";

/// Whether the open period of an even conjugate-self-dual proper ladder has a
/// pole at `s = -s_r`, decided from its two middle segments.
pub fn period_pole_at_minus_sr(reg: &Registry, ms: &Multisegment) -> Result<PeriodPole> {
    let t = ms.len();
    if !is_proper_ladder(ms) || !t.is_multiple_of(2) {
        return Err(Error::Precondition(format!("{ms} is not a proper ladder of even length")));
    }
    if ms.conjugate_dual(reg)? != *ms {
        return Err(Error::Precondition(format!("{ms} is not conjugate-self-dual")));
    }
    let segs = ms.segments();
    let (dr, dr1) = (&segs[t / 2 - 1], &segs[t / 2]);
    if relate(dr, dr1).juxtaposed {
        return Ok(PeriodPole {
            pole: false,
            reason: format!("{dr} and {dr1} are juxtaposed"),
        });
    }
    let inter = merge(dr, dr1)
        .intersection
        .ok_or_else(|| Error::Internal(format!("{dr} and {dr1} have empty intersection")))?;
    if discrete_series_distinction(reg, &inter)?.status == Status::Distinguished {
        return Ok(PeriodPole {
            pole: true,
            reason: format!("L({inter}) is distinguished"),
        });
    }
    Ok(PeriodPole {
        pole: false,
        reason: NOT_COVERED.to_string(),
    })
}
