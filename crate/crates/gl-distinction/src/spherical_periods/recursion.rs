//! Step-by-step evaluation of the open period on the spherical vector.
//!
//! The characters of `sigma_1, ..., sigma_r` and their inverses are laid out
//! as `[A_1, ..., A_r, B_r, ..., B_1]`, and the involution `xi` exchanges `A_k`
//! with `B_k`. The block `B_1` is walked leftwards past `B_2, ..., B_r` and then
//! past `A_r, ..., A_2` one simple reflection at a time, following the reduced
//! words of the BB and AB lemmas. Every reflection must be admissible for the
//! current `xi`; it contributes a Gindikin-Karpelevich quotient and conjugates
//! `xi`. Once `A_1 B_1` sit together at the front they are split off and the
//! rest is treated the same way.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lfactor_algebra::formal::LinearForm;
use crate::lfactor_algebra::laurent::Monomial;
use crate::lfactor_algebra::rational_function::RationalFunction;
use crate::lfactor_algebra::unramified::{y_variable, CharValue, Normalization, SQRT_Q};
use crate::rat::Rat;
use crate::symmetric_words::{admissible_root, LemmaKind, Permutation, ReductionLemma};

use super::PeriodSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    A,
    B,
}

#[derive(Debug, Clone)]
struct Slot {
    id: usize,
    ch: CharValue,
    form: LinearForm,
    block: (Side, usize),
}

struct State {
    xi: Permutation,
    slots: Vec<Slot>,
    norm: Normalization,
    steps: usize,
}

fn internal(msg: String) -> Error {
    Error::Internal(msg)
}

/// `q^{-(form + shift)}` over the field with `inertia` as residue degree over F.
fn q_monomial(form: &LinearForm, shift: Rat, inertia: u32) -> Result<Monomial> {
    let f = inertia as i64;
    let mut m = Monomial::one();
    for (v, c) in form.coeffs() {
        if !c.is_integer() {
            return Err(internal(format!("non-integral coefficient in {form}")));
        }
        m = m.mul(&Monomial::power(&y_variable(v), c.to_integer() * f));
    }
    let twice = shift * 2 * f;
    if !twice.is_integer() {
        return Err(internal(format!("shift {shift} is not a half-integer")));
    }
    Ok(m.mul(&Monomial::power(SQRT_Q, -twice.to_integer())))
}

impl State {
    fn start(&self, block: (Side, usize)) -> Result<usize> {
        self.slots
            .iter()
            .position(|s| s.block == block)
            .ok_or_else(|| internal(format!("block {block:?} missing")))
    }

    fn block_positions(&self, block: (Side, usize)) -> Vec<usize> {
        (0..self.slots.len()).filter(|&p| self.slots[p].block == block).collect()
    }

    /// Applies `s_k = (k-1 k)` (1-based) after checking it is licensed.
    fn reflect(&mut self, k: usize) -> Result<RationalFunction> {
        if !admissible_root(&self.xi, k)? {
            return Err(internal(format!("reflection s_{k} is not admissible for xi = {}", self.xi)));
        }
        let (p, q) = (k - 2, k - 1);
        let x = self.slots[p].form.sub(&self.slots[q].form);
        let c = self.slots[p].ch.monomial().mul(&self.slots[q].ch.inverted().monomial());
        let f = self.norm.inertia_degree;
        let l0 = RationalFunction::one_minus(1, &c.mul(&q_monomial(&x, Rat::zero(), f)?))?;
        let l1 = RationalFunction::one_minus(1, &c.mul(&q_monomial(&x, Rat::from_integer(1), f)?))?;
        // L(x) / L(x + 1) = (1 - c q^{-x-1}) / (1 - c q^{-x})
        let factor = l1.div(&l0);
        let s = Permutation::simple(self.slots.len(), k);
        self.xi = s.compose(&self.xi).compose(&s);
        self.slots.swap(p, q);
        self.steps += 1;
        Ok(factor)
    }

    /// The restriction of `xi` to `positions` (ascending), as a permutation of
    /// `1..=positions.len()`.
    fn restrict(&self, positions: &[usize]) -> Result<Permutation> {
        let images = positions
            .iter()
            .map(|&p| {
                let img = self.xi.apply(p + 1) - 1;
                positions
                    .iter()
                    .position(|&x| x == img)
                    .map(|i| i + 1)
                    .ok_or_else(|| internal("xi does not preserve the lemma's positions".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(images)
    }

    /// Exchanges two adjacent blocks by the reduced word of `lemma`. `blocks` are
    /// the lemma's four blocks in increasing position order, `mu_start` the
    /// block where the exchange begins and `first` its lemma position.
    fn run_lemma(
        &mut self,
        lemma: &ReductionLemma,
        blocks: [(Side, usize); 4],
        mu_start: (Side, usize),
        first: usize,
    ) -> Result<RationalFunction> {
        let positions: Vec<usize> = blocks.iter().flat_map(|&b| self.block_positions(b)).collect();
        if positions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(internal(format!("lemma blocks {blocks:?} are out of order")));
        }
        if self.restrict(&positions)? != lemma.w() {
            return Err(internal(format!("restricted xi does not match lemma w for {blocks:?}")));
        }
        let base = self.start(mu_start)?;
        let mut acc = RationalFunction::one();
        for k in lemma.application_order() {
            acc = acc.mul(&self.reflect(k - first + base + 1)?);
        }
        Ok(acc)
    }

    fn split_front(&self, len: usize) -> Result<(State, State)> {
        let n = self.slots.len();
        let mut head = vec![];
        let mut tail = vec![];
        for p in 0..n {
            let img = self.xi.apply(p + 1) - 1;
            if (p < len) != (img < len) {
                return Err(internal("xi does not preserve the split".into()));
            }
            if p < len {
                head.push(img + 1);
            } else {
                tail.push(img + 1 - len);
            }
        }
        let mk = |images: Vec<usize>, slots: Vec<Slot>| -> Result<State> {
            Ok(State {
                xi: Permutation::new(images)?,
                slots,
                norm: self.norm,
                steps: 0,
            })
        };
        Ok((
            mk(head, self.slots[..len].to_vec())?,
            mk(tail, self.slots[len..].to_vec())?,
        ))
    }
}

fn initial_state(spec: &PeriodSpec) -> Result<State> {
    let r = spec.r();
    let mut slots = vec![];
    let mut id = 0;
    let mut push = |ch: CharValue, form: LinearForm, block: (Side, usize), slots: &mut Vec<Slot>| {
        slots.push(Slot { id, ch, form, block });
        id += 1;
    };
    for k in 1..=r {
        for ch in &spec.sigma[k - 1] {
            push(ch.clone(), LinearForm::var(&spec.s_var(k)), (Side::A, k), &mut slots);
        }
    }
    for k in (1..=r).rev() {
        for ch in &spec.sigma[k - 1] {
            push(ch.inverted(), LinearForm::var(&spec.s_var(k)).neg(), (Side::B, k), &mut slots);
        }
    }
    let n = slots.len();
    let mut images = vec![0; n];
    for k in 1..=r {
        let a: Vec<usize> = (0..n).filter(|&p| slots[p].block == (Side::A, k)).collect();
        let b: Vec<usize> = (0..n).filter(|&p| slots[p].block == (Side::B, k)).collect();
        for (&x, &y) in a.iter().zip(&b) {
            images[x] = y + 1;
            images[y] = x + 1;
        }
    }
    Ok(State {
        xi: Permutation::new(images)?,
        slots,
        norm: spec.norm,
        steps: 0,
    })
}

/// A single pair `sigma` at `s`, `sigma^vee` at `-s`: reflect until no
/// admissible root is left, then each adjacent pair `(chi at e, chi^{-1} at -e)`
/// contributes `L(2e, chi|F) / L^-(2e + 1, chi|F)`.
fn base_case(mut st: State) -> Result<RationalFunction> {
    let n = st.slots.len();
    let mut acc = RationalFunction::one();
    loop {
        let mut next = None;
        for k in 2..=n {
            if admissible_root(&st.xi, k)? {
                next = Some(k);
                break;
            }
        }
        match next {
            Some(k) => acc = acc.mul(&st.reflect(k)?),
            None => break,
        }
    }
    let mut p = 0;
    while p < n {
        if st.xi.apply(p + 1) != p + 2 || p + 1 >= n {
            return Err(internal(format!("terminal xi = {} is not a product of adjacent pairs", st.xi)));
        }
        let (x, y) = (&st.slots[p], &st.slots[p + 1]);
        if y.ch != x.ch.inverted() || y.form != x.form.neg() {
            return Err(internal(format!("adjacent pair {} / {} is not dual", x.ch, y.ch)));
        }
        let twice = x.form.scale(Rat::from_integer(2));
        let alpha = x.ch.monomial();
        let plus = RationalFunction::one_minus(1, &alpha.mul(&q_monomial(&twice, Rat::zero(), 1)?))?;
        let minus = RationalFunction::one_minus(
            st.norm.eta_at_uniformizer,
            &alpha.mul(&q_monomial(&twice, Rat::from_integer(1), 1)?),
        )?;
        acc = acc.mul(&minus.div(&plus));
        p += 2;
    }
    Ok(acc)
}

fn recurse(mut st: State, ks: &[usize]) -> Result<RationalFunction> {
    let r = ks.len();
    if r == 1 {
        return base_case(st);
    }
    let size = |st: &State, k: usize| st.block_positions((Side::A, k)).len();
    let a = size(&st, ks[0]);
    let (a1, b1) = ((Side::A, ks[0]), (Side::B, ks[0]));
    let before: Vec<usize> = st.slots.iter().map(|s| s.id).collect();
    let mut acc = RationalFunction::one();

    for &k in &ks[1..] {
        let b = size(&st, k);
        let lemma = ReductionLemma::new(LemmaKind::BB, a, b);
        let blocks = [a1, (Side::A, k), (Side::B, k), b1];
        acc = acc.mul(&st.run_lemma(&lemma, blocks, (Side::B, k), a + b + 1)?);
        if st.start(b1)? >= st.start((Side::B, k))? {
            return Err(internal(format!("B_{} did not pass B_{k}", ks[0])));
        }
    }
    for &k in ks[1..].iter().rev() {
        let b = size(&st, k);
        let lemma = ReductionLemma::new(LemmaKind::AB, a, b);
        let blocks = [a1, (Side::A, k), b1, (Side::B, k)];
        acc = acc.mul(&st.run_lemma(&lemma, blocks, (Side::A, k), a + 1)?);
        if st.start(b1)? >= st.start((Side::A, k))? {
            return Err(internal(format!("B_{} did not pass A_{k}", ks[0])));
        }
    }

    // layout must now be [A_1, B_1, A_2, ..., A_r, B_r, ..., B_2]
    let mut expected = vec![a1, b1];
    expected.extend(ks[1..].iter().map(|&k| (Side::A, k)));
    expected.extend(ks[1..].iter().rev().map(|&k| (Side::B, k)));
    let mut layout: Vec<(Side, usize)> = st.slots.iter().map(|s| s.block).collect();
    layout.dedup();
    if layout != expected {
        return Err(internal(format!("unexpected layout {layout:?}")));
    }
    // number of reflections = length of the block move
    let moved: Vec<usize> = {
        let pos: std::collections::HashMap<usize, usize> =
            st.slots.iter().enumerate().map(|(p, s)| (s.id, p + 1)).collect();
        before.iter().map(|id| pos[id]).collect()
    };
    let beta_len = Permutation::new(moved)?.length();
    if beta_len != st.steps {
        return Err(internal(format!("{} reflections for a move of length {beta_len}", st.steps)));
    }

    let (head, tail) = st.split_front(2 * a)?;
    Ok(acc.mul(&base_case(head)?).mul(&recurse(tail, &ks[1..])?))
}

pub(super) fn replay(spec: &PeriodSpec) -> Result<RationalFunction> {
    let st = initial_state(spec)?;
    let ks: Vec<usize> = (1..=spec.r()).collect();
    recurse(st, &ks)
}
