//! Distinction verdicts for discrete series, standard modules, ladders and
//! unitary representations.

use serde::Serialize;

use crate::cuspidal_lines::{chi_distinguished, Registry};
use crate::error::{Error, Result};
use crate::ladders::{
    classify_multisegment, decompose_unlinked, is_proper_ladder, proper_components, speh, Multisegment,
    UnitaryFactor, UnitaryKind,
};
use crate::rat;
use crate::segments::{merge, segment_dual, Segment};
use crate::symmetric_words::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Status {
    Distinguished,
    EtaDistinguished,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistinctionVerdict {
    pub status: Status,
    pub witness: Option<Permutation>,
    pub trace: Vec<String>,
}

impl DistinctionVerdict {
    fn new(status: Status, trace: Vec<String>) -> Self {
        DistinctionVerdict {
            status,
            witness: None,
            trace,
        }
    }

    pub fn is_distinguished(&self) -> bool {
        self.status == Status::Distinguished
    }
}

/// `St_k(rho)` at the given center: distinguished iff `rho` is
/// `eta^{l(k+1)}`-distinguished, eta-distinguished otherwise when the segment
/// is conjugate-self-dual.
pub fn discrete_series_distinction(reg: &Registry, d: &Segment) -> Result<DistinctionVerdict> {
    let datum = reg.get(&d.base)?;
    if d.center() != rat::int(0) {
        return Ok(DistinctionVerdict::new(
            Status::Neither,
            vec![format!("central exponent {} is not zero", rat::format(&d.center()))],
        ));
    }
    if !datum.is_conj_self_dual() {
        return Ok(DistinctionVerdict::new(
            Status::Neither,
            vec![format!("{} is not conjugate-self-dual", d.base)],
        ));
    }
    let k = d.len();
    let m = rat::parity(datum.l as i64 * (k + 1));
    let rule = if k % 2 == 1 { "Steinberg odd" } else { "Steinberg even" };
    let status = if chi_distinguished(reg, &d.line(), m)? {
        Status::Distinguished
    } else {
        Status::EtaDistinguished
    };
    Ok(DistinctionVerdict::new(status, vec![rule.to_string()]))
}

/// Searches involutions `eps` of `0..n` in lexicographic order of their one-line
/// notation for one with `paired(i, eps(i))` for `i != eps(i)` and `fixed(i)`
/// at fixed points.
fn search_involution(
    n: usize,
    paired: &dyn Fn(usize, usize) -> Result<bool>,
    fixed: &dyn Fn(usize) -> Result<bool>,
) -> Result<Option<Permutation>> {
    fn rec(
        eps: &mut Vec<Option<usize>>,
        paired: &dyn Fn(usize, usize) -> Result<bool>,
        fixed: &dyn Fn(usize) -> Result<bool>,
    ) -> Result<bool> {
        let Some(i) = eps.iter().position(|x| x.is_none()) else {
            return Ok(true);
        };
        if fixed(i)? {
            eps[i] = Some(i);
            if rec(eps, paired, fixed)? {
                return Ok(true);
            }
            eps[i] = None;
        }
        for j in i + 1..eps.len() {
            if eps[j].is_none() && paired(i, j)? {
                eps[i] = Some(j);
                eps[j] = Some(i);
                if rec(eps, paired, fixed)? {
                    return Ok(true);
                }
                eps[i] = None;
                eps[j] = None;
            }
        }
        Ok(false)
    }
    let mut eps = vec![None; n];
    if rec(&mut eps, paired, fixed)? {
        let images = eps.into_iter().map(|x| x.expect("complete") + 1).collect();
        Ok(Some(Permutation::new(images)?))
    } else {
        Ok(None)
    }
}

/// A standard module `L(d_1) x ... x L(d_t)` is distinguished iff some involution
/// pairs each `d_i` with its conjugate dual and fixes only distinguished ones.
pub fn standard_module_distinguished(reg: &Registry, deltas: &[Segment]) -> Result<DistinctionVerdict> {
    let duals = deltas.iter().map(|d| segment_dual(reg, d)).collect::<Result<Vec<_>>>()?;
    let paired = |i: usize, j: usize| Ok(deltas[j] == duals[i]);
    let fixed = |i: usize| Ok(discrete_series_distinction(reg, &deltas[i])?.is_distinguished());
    let witness = search_involution(deltas.len(), &paired, &fixed)?;
    let status = if witness.is_some() {
        Status::Distinguished
    } else {
        Status::Neither
    };
    Ok(DistinctionVerdict {
        status,
        witness,
        trace: vec!["standard module pairing".to_string()],
    })
}

fn is_conj_self_dual_ladder(reg: &Registry, ms: &Multisegment) -> Result<bool> {
    Ok(ms.conjugate_dual(reg)? == *ms)
}

/// Proper ladders: the middle discrete series decides for odd length, the
/// eta-distinction of `L(d_r ∪ d_{r+1})` for even length.
pub fn proper_ladder_distinguished(reg: &Registry, ms: &Multisegment) -> Result<DistinctionVerdict> {
    if !is_proper_ladder(ms) {
        return Err(Error::Precondition(format!("{ms} is not a proper ladder")));
    }
    if !is_conj_self_dual_ladder(reg, ms)? {
        return Ok(DistinctionVerdict::new(
            Status::Neither,
            vec!["ladder is not conjugate-self-dual".to_string()],
        ));
    }
    let segs = ms.segments();
    let t = segs.len();
    if t % 2 == 1 {
        let mid = &segs[t / 2];
        let v = discrete_series_distinction(reg, mid)?;
        let mut trace = vec![format!("odd ladder: middle segment {mid}")];
        let status = if v.is_distinguished() {
            Status::Distinguished
        } else {
            Status::Neither
        };
        trace.extend(v.trace);
        return Ok(DistinctionVerdict::new(status, trace));
    }
    let r = t / 2;
    let union = merge(&segs[r - 1], &segs[r])
        .union
        .ok_or_else(|| Error::Internal("middle segments of a proper ladder are unlinked".into()))?;
    let v = discrete_series_distinction(reg, &union)?;
    let mut trace = vec![format!("even ladder: union {union}")];
    trace.extend(v.trace);
    let status = if v.status == Status::EtaDistinguished {
        Status::Distinguished
    } else {
        Status::Neither
    };
    Ok(DistinctionVerdict::new(status, trace))
}

/// A ladder is cut into proper ladders, which are mutually unlinked, and is
/// distinguished iff that product is theta-induced from them.
pub fn ladder_distinguished(reg: &Registry, ms: &Multisegment) -> Result<DistinctionVerdict> {
    if is_proper_ladder(ms) {
        return proper_ladder_distinguished(reg, ms);
    }
    if !classify_multisegment(ms).is_ladder {
        return Err(Error::Precondition(format!("{ms} is not a ladder")));
    }
    let comps = proper_components(ms)?;
    if decompose_unlinked(&comps).iter().any(|g| g.len() > 1) {
        return Err(Error::Internal("proper components of a ladder are linked".into()));
    }
    let mut v = theta_induced(reg, &comps.into_iter().map(UnitaryInput::Ladder).collect::<Vec<_>>())?;
    v.trace.insert(0, "ladder split into proper components".to_string());
    Ok(v)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnitaryInput {
    Factor(UnitaryFactor),
    Ladder(Multisegment),
}

impl UnitaryInput {
    fn ladders(&self) -> Result<Vec<Multisegment>> {
        match self {
            UnitaryInput::Factor(f) => f.ladders(),
            UnitaryInput::Ladder(m) => Ok(vec![m.clone()]),
        }
    }

    /// Sorted ladders of the factor and of its conjugate dual.
    fn keys(&self, reg: &Registry) -> Result<(Vec<Multisegment>, Vec<Multisegment>)> {
        let mut own = self.ladders()?;
        let mut dual = own.iter().map(|m| m.conjugate_dual(reg)).collect::<Result<Vec<_>>>()?;
        own.sort();
        dual.sort();
        Ok((own, dual))
    }

    fn fixed_ok(&self, reg: &Registry) -> Result<bool> {
        match self {
            UnitaryInput::Factor(f) => match f.kind {
                UnitaryKind::Speh => Ok(proper_ladder_distinguished(reg, &speh(&f.delta, f.k)?)?.is_distinguished()),
                UnitaryKind::ComplementaryPair => {
                    let (own, dual) = self.keys(reg)?;
                    Ok(own == dual)
                }
            },
            UnitaryInput::Ladder(m) => Ok(ladder_distinguished(reg, m)?.is_distinguished()),
        }
    }
}

fn theta_induced(reg: &Registry, inputs: &[UnitaryInput]) -> Result<DistinctionVerdict> {
    let keys = inputs.iter().map(|x| x.keys(reg)).collect::<Result<Vec<_>>>()?;
    let fixed_ok = inputs.iter().map(|x| x.fixed_ok(reg)).collect::<Result<Vec<_>>>()?;
    let paired = |i: usize, j: usize| Ok(keys[j].0 == keys[i].1);
    let fixed = |i: usize| Ok(fixed_ok[i]);
    let witness = search_involution(inputs.len(), &paired, &fixed)?;
    let status = if witness.is_some() {
        Status::Distinguished
    } else {
        Status::Neither
    };
    Ok(DistinctionVerdict {
        status,
        witness,
        trace: vec!["theta-induced pairing".to_string()],
    })
}

/// A product of unitary factors and ladders is distinguished iff it is
/// theta-induced from its factors. Raw ladders must be mutually unlinked.
pub fn unitary_distinguished(reg: &Registry, inputs: &[UnitaryInput]) -> Result<DistinctionVerdict> {
    if inputs.is_empty() {
        return Err(Error::Argument("empty product".into()));
    }
    if inputs.iter().any(|x| matches!(x, UnitaryInput::Ladder(_))) {
        let all: Vec<Multisegment> = inputs
            .iter()
            .map(|x| x.ladders())
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        if decompose_unlinked(&all).iter().any(|g| g.len() > 1) {
            return Err(Error::Precondition("ladder factors must be mutually unlinked".into()));
        }
    }
    theta_induced(reg, inputs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuspidal_lines::tests::sample_registry;
    use crate::cuspidal_lines::{CuspidalDatum, Duality};
    use crate::double_cosets::{contributing_cosets, enumerate_cosets, standard_mbar};
    use crate::rat::{half, int, Rat};

    fn seg(base: &str, a: Rat, b: Rat) -> Segment {
        Segment::new(base, 0, a, b).unwrap()
    }

    fn st(base: &str, k: u32) -> Segment {
        Segment::steinberg(base, 0, k, int(0)).unwrap()
    }

    #[test]
    fn discrete_series_examples() {
        let reg = sample_registry();
        let v = discrete_series_distinction(&reg, &st("rho", 3)).unwrap();
        assert_eq!(v.status, Status::Distinguished);
        assert_eq!(v.trace, vec!["Steinberg odd"]);
        assert_eq!(discrete_series_distinction(&reg, &st("rho", 2)).unwrap().status, Status::EtaDistinguished);
        let off = Segment::steinberg("rho", 0, 2, half()).unwrap();
        assert_eq!(discrete_series_distinction(&reg, &off).unwrap().status, Status::Neither);
        assert_eq!(discrete_series_distinction(&reg, &st("rho1", 1)).unwrap().status, Status::Neither);
        // l = 3: St_2 needs eta^{3*3} = eta
        assert_eq!(discrete_series_distinction(&reg, &st("rho3", 2)).unwrap().status, Status::EtaDistinguished);
        assert_eq!(discrete_series_distinction(&reg, &st("rho3", 3)).unwrap().status, Status::Distinguished);
        assert!(discrete_series_distinction(&reg, &st("nope", 1)).is_err());
    }

    // Exclusivity by construction, and agreement with an eta-twist.
    #[test]
    fn discrete_series_eta_twist_swaps() {
        let reg = sample_registry();
        for base in ["rho", "rhoe", "rho3"] {
            for k in 1..=5 {
                let d = st(base, k);
                let a = discrete_series_distinction(&reg, &d).unwrap().status;
                let b = discrete_series_distinction(&reg, &d.eta_twist()).unwrap().status;
                assert_ne!(a, Status::Neither);
                assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn standard_module_examples() {
        let reg = sample_registry();
        let p = |c: Rat| seg("rho", c, c);
        let v = standard_module_distinguished(&reg, &[p(half()), p(-half())]).unwrap();
        assert_eq!(v.status, Status::Distinguished);
        assert_eq!(v.witness.unwrap().images(), &[2, 1]);
        let v = standard_module_distinguished(&reg, &[p(int(0))]).unwrap();
        assert_eq!(v.witness.unwrap().images(), &[1]);
        let v = standard_module_distinguished(&reg, &[p(half()), p(half())]).unwrap();
        assert_eq!(v.status, Status::Neither);
        assert!(v.witness.is_none());
    }

    #[test]
    fn witness_is_lexicographically_smallest() {
        let reg = sample_registry();
        let z = seg("rho", int(0), int(0));
        // identity beats every swap
        let v = standard_module_distinguished(&reg, &[z.clone(), z.clone(), z.clone()]).unwrap();
        assert_eq!(v.witness.unwrap().images(), &[1, 2, 3]);
        let e = seg("rhoe", int(0), int(0));
        let v = standard_module_distinguished(&reg, &[e.clone(), e.clone(), z]).unwrap();
        assert_eq!(v.witness.unwrap().images(), &[2, 1, 3]);
        let a = seg("rho1", int(0), int(0));
        let b = seg("rho2", int(0), int(0));
        let v = standard_module_distinguished(&reg, &[a.clone(), b.clone(), a, b]).unwrap();
        assert_eq!(v.witness.unwrap().images(), &[2, 1, 4, 3]);
    }

    #[test]
    fn proper_ladder_examples() {
        let reg = sample_registry();
        let h = |b: &str| Multisegment::new(vec![seg(b, half(), half()), seg(b, -half(), -half())]).unwrap();
        assert_eq!(proper_ladder_distinguished(&reg, &h("rho")).unwrap().status, Status::Distinguished);
        assert_eq!(proper_ladder_distinguished(&reg, &h("rhoe")).unwrap().status, Status::Neither);
        let three = Multisegment::new(vec![
            seg("rho", int(1), int(1)),
            seg("rho", int(0), int(0)),
            seg("rho", int(-1), int(-1)),
        ])
        .unwrap();
        let v = proper_ladder_distinguished(&reg, &three).unwrap();
        assert_eq!(v.status, Status::Distinguished);
        assert!(v.trace[0].starts_with("odd ladder"));
        let not_dual = Multisegment::new(vec![seg("rho", int(1), int(1)), seg("rho", int(0), int(0))]).unwrap();
        assert_eq!(proper_ladder_distinguished(&reg, &not_dual).unwrap().status, Status::Neither);
        let gap = Multisegment::new(vec![seg("rho", int(2), int(2)), seg("rho", int(0), int(0))]).unwrap();
        assert!(matches!(proper_ladder_distinguished(&reg, &gap), Err(Error::Precondition(_))));
    }

    #[test]
    fn toy_ladder_matches_eta_l_minus_one() {
        let mut entries = vec![];
        for (i, d) in [Duality::Distinguished, Duality::EtaDistinguished].into_iter().enumerate() {
            for l in [1, 3, 5] {
                entries.push(CuspidalDatum::new(&format!("c{i}l{l}"), 1, l, d));
            }
        }
        let reg = Registry::new(entries).unwrap();
        for d in reg.iter() {
            let z = Multisegment::new(vec![seg(&d.id, half(), half()), seg(&d.id, -half(), -half())]).unwrap();
            let got = proper_ladder_distinguished(&reg, &z).unwrap().is_distinguished();
            let line = crate::cuspidal_lines::TwistedCuspidal::untwisted(&d.id);
            let want = chi_distinguished(&reg, &line, ((d.l - 1) % 2) as u8).unwrap();
            assert_eq!(got, want, "{}", d.id);
        }
    }

    #[test]
    fn general_ladders_split() {
        let reg = sample_registry();
        // [2,2] and [-2,-2] are unlinked conjugate duals: theta-induced by swapping
        let ms = Multisegment::new(vec![seg("rho", int(2), int(2)), seg("rho", int(-2), int(-2))]).unwrap();
        let v = ladder_distinguished(&reg, &ms).unwrap();
        assert_eq!(v.status, Status::Distinguished);
        assert_eq!(v.witness.unwrap().images(), &[2, 1]);
        let ms = Multisegment::new(vec![seg("rho", int(2), int(2)), seg("rho", int(0), int(0))]).unwrap();
        assert_eq!(ladder_distinguished(&reg, &ms).unwrap().status, Status::Neither);
        let ms = Multisegment::new(vec![seg("rho", int(3), int(3)), seg("rho", int(0), int(0)), seg("rho", int(-3), int(-3))])
            .unwrap();
        assert_eq!(ladder_distinguished(&reg, &ms).unwrap().witness.unwrap().images(), &[3, 2, 1]);
    }

    #[test]
    fn unitary_examples() {
        let reg = sample_registry();
        let rho = seg("rho", int(0), int(0));
        let v = unitary_distinguished(&reg, &[UnitaryInput::Factor(UnitaryFactor::speh(rho.clone(), 2))]).unwrap();
        assert_eq!(v.status, Status::Distinguished);

        let d1 = seg("rho1", int(0), int(0));
        let d2 = segment_dual(&reg, &d1).unwrap();
        let v = unitary_distinguished(
            &reg,
            &[
                UnitaryInput::Factor(UnitaryFactor::speh(d1.clone(), 2)),
                UnitaryInput::Factor(UnitaryFactor::speh(d2, 2)),
            ],
        )
        .unwrap();
        assert_eq!(v.witness.unwrap().images(), &[2, 1]);
        let v = unitary_distinguished(&reg, &[UnitaryInput::Factor(UnitaryFactor::speh(d1, 2))]).unwrap();
        assert_eq!(v.status, Status::Neither);

        let pair = UnitaryFactor::pair(rho.clone(), 1, Rat::new(1, 4)).unwrap();
        let v = unitary_distinguished(&reg, &[UnitaryInput::Factor(pair)]).unwrap();
        assert_eq!(v.status, Status::Distinguished);
        assert_eq!(v.witness.unwrap().images(), &[1]);

        let e = seg("rhoe", int(0), int(0));
        let v = unitary_distinguished(&reg, &[UnitaryInput::Factor(UnitaryFactor::speh(e, 2))]).unwrap();
        assert_eq!(v.status, Status::Neither);
    }

    #[test]
    fn linked_ladder_inputs_are_rejected() {
        let reg = sample_registry();
        let a = Multisegment::new(vec![seg("rho", int(0), int(1))]).unwrap();
        let b = Multisegment::new(vec![seg("rho", int(-1), int(0))]).unwrap();
        let r = unitary_distinguished(&reg, &[UnitaryInput::Ladder(a), UnitaryInput::Ladder(b)]);
        assert!(matches!(r, Err(Error::Precondition(_))));
    }

    // Geometric-lemma evaluation for products of points nu^c rho and one block
    // Z([c, c+1]), whose Jacquet module along (d, d) is nu^c rho ⊗ nu^{c+1} rho.
    enum Block {
        Point(Segment),
        Z(Segment),
    }

    fn some_coset_contributes(reg: &Registry, blocks: &[Block]) -> bool {
        let d = reg.get(match &blocks[0] {
            Block::Point(s) | Block::Z(s) => &s.base,
        })
        .unwrap()
        .degree;
        let mbar: Vec<u32> = blocks
            .iter()
            .map(|b| match b {
                Block::Point(_) => d,
                Block::Z(_) => 2 * d,
            })
            .collect();
        'cosets: for a in enumerate_cosets(&mbar) {
            let t = blocks.len();
            let mut pieces: Vec<Vec<Option<Block>>> = (0..t).map(|_| (0..t).map(|_| None).collect()).collect();
            for (i, b) in blocks.iter().enumerate() {
                let cols: Vec<usize> = (0..t).filter(|&j| a.entries()[i][j] > 0).collect();
                match b {
                    Block::Point(s) => {
                        if cols.len() != 1 {
                            continue 'cosets;
                        }
                        pieces[i][cols[0]] = Some(Block::Point(s.clone()));
                    }
                    Block::Z(s) => match cols.len() {
                        1 => pieces[i][cols[0]] = Some(Block::Z(s.clone())),
                        2 => {
                            if a.entries()[i][cols[0]] != d {
                                continue 'cosets;
                            }
                            pieces[i][cols[0]] = Some(Block::Point(seg(&s.base, s.a, s.a)));
                            pieces[i][cols[1]] = Some(Block::Point(seg(&s.base, s.b, s.b)));
                        }
                        _ => continue 'cosets,
                    },
                }
            }
            for i in 0..t {
                for j in i..t {
                    match (&pieces[i][j], &pieces[j][i]) {
                        (None, None) => {}
                        (Some(Block::Point(p)), _) if i == j => {
                            if !discrete_series_distinction(reg, p).unwrap().is_distinguished() {
                                continue 'cosets;
                            }
                        }
                        (Some(Block::Z(s)), _) if i == j => {
                            let z = Multisegment::new(vec![seg(&s.base, s.b, s.b), seg(&s.base, s.a, s.a)]).unwrap();
                            if !proper_ladder_distinguished(reg, &z).unwrap().is_distinguished() {
                                continue 'cosets;
                            }
                        }
                        (Some(Block::Point(p)), Some(Block::Point(q))) => {
                            if *q != segment_dual(reg, p).unwrap() {
                                continue 'cosets;
                            }
                        }
                        _ => continue 'cosets,
                    }
                }
            }
            return true;
        }
        false
    }

    // pi_j(rho) for k points with the pair at (j-1)/2, (j+1)/2 merged into Z.
    fn antistandard(base: &str, k: i64, j: i64) -> Vec<Block> {
        let mut out = vec![];
        let mut c = Rat::new(1 - k, 2);
        while c <= Rat::new(k - 1, 2) {
            if c == Rat::new(j - 1, 2) {
                out.push(Block::Z(seg(base, c, c + 1)));
                c += 2;
            } else {
                out.push(Block::Point(seg(base, c, c)));
                c += 1;
            }
        }
        out
    }

    #[test]
    fn antistandard_fixtures_are_not_distinguished() {
        let reg = sample_registry();
        for base in ["rho", "rhoe", "rho3"] {
            let eta_l = {
                let datum = reg.get(base).unwrap();
                chi_distinguished(&reg, &crate::cuspidal_lines::TwistedCuspidal::untwisted(base), (datum.l % 2) as u8)
                    .unwrap()
            };
            for k in 2..=5i64 {
                for j in (2 - k..=k - 2).step_by(2) {
                    let blocks = antistandard(base, k, j);
                    let got = some_coset_contributes(&reg, &blocks);
                    if j != 0 || eta_l {
                        assert!(!got, "{base} k={k} j={j}");
                    }
                }
            }
        }
        // the all-points standard module itself is distinguished, so the lemma
        // cannot be read off standard_module_distinguished
        let pts: Vec<Segment> = (0..4).map(|i| seg("rho", Rat::new(2 * i - 3, 2), Rat::new(2 * i - 3, 2))).collect();
        assert!(standard_module_distinguished(&reg, &pts).unwrap().is_distinguished());
    }

    #[test]
    fn antistandard_j_zero_with_distinguished_rho_contributes() {
        let reg = sample_registry();
        assert!(some_coset_contributes(&reg, &antistandard("rho", 2, 0)));
    }

    // Suite of small conjugate-self-dual proper ladders on the line of `base`.
    pub(crate) fn csd_ladders(base: &str, max_t: usize, max_len: i64) -> Vec<Multisegment> {
        let reg = sample_registry();
        let mut out = vec![];
        // endpoints in half-integers from -3 to 3
        let pts: Vec<Rat> = (-6..=6).map(|n| Rat::new(n, 2)).collect();
        let mut segs = vec![];
        for &a in &pts {
            for len in 1..=max_len {
                let b = a + (len - 1);
                if b <= Rat::new(3, 1) {
                    segs.push(seg(base, a, b));
                }
            }
        }
        fn extend(
            cur: &mut Vec<Segment>,
            segs: &[Segment],
            max_t: usize,
            reg: &Registry,
            out: &mut Vec<Multisegment>,
        ) {
            if !cur.is_empty() {
                let ms = Multisegment::new(cur.clone()).unwrap();
                if is_proper_ladder(&ms) && ms.conjugate_dual(reg).unwrap() == ms {
                    out.push(ms);
                }
            }
            if cur.len() == max_t {
                return;
            }
            for s in segs {
                if let Some(last) = cur.last() {
                    if !crate::segments::relate(s, last).precedes || s.a >= last.a {
                        continue;
                    }
                }
                cur.push(s.clone());
                extend(cur, segs, max_t, reg, out);
                cur.pop();
            }
        }
        extend(&mut vec![], &segs, max_t, &reg, &mut out);
        out
    }

    #[test]
    fn distinguished_ladders_have_contributing_cosets() {
        let reg = sample_registry();
        let mut seen = 0;
        for base in ["rho", "rhoe", "rho3"] {
            for ms in csd_ladders(base, 4, 3) {
                let v = proper_ladder_distinguished(&reg, &ms).unwrap();
                if v.is_distinguished() {
                    let sigma = ms.segments().to_vec();
                    let mbar = standard_mbar(&reg, &sigma).unwrap();
                    assert!(!contributing_cosets(&reg, &sigma, &mbar).unwrap().is_empty(), "{ms}");
                    seen += 1;
                }
            }
        }
        assert!(seen > 5);
    }

    #[test]
    fn odd_ladders_invariant_under_dual_reversal() {
        let reg = sample_registry();
        for base in ["rho", "rhoe"] {
            for ms in csd_ladders(base, 3, 3) {
                if ms.len() % 2 == 1 {
                    let d = ms.conjugate_dual(&reg).unwrap();
                    assert_eq!(
                        proper_ladder_distinguished(&reg, &ms).unwrap().status,
                        proper_ladder_distinguished(&reg, &d).unwrap().status
                    );
                }
            }
        }
    }
}
