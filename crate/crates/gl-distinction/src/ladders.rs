//! Ladders, Speh blocks and the sub-standard kernels of a proper ladder.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::cuspidal_lines::Registry;
use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::segments::{merge, relate, segment_dual, Segment};

/// An ordered list of segments on a single cuspidal line.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multisegment {
    segments: Vec<Segment>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LadderClass {
    pub is_ladder: bool,
    pub is_anti_ladder: bool,
    pub is_proper: bool,
}

impl Multisegment {
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        let first = segments
            .first()
            .ok_or_else(|| Error::Argument("empty multisegment".into()))?;
        if segments.iter().any(|s| !s.same_line(first)) {
            return Err(Error::Argument(
                "all segments of a multisegment must lie on one cuspidal line".into(),
            ));
        }
        Ok(Multisegment { segments })
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn shift(&self, by: Rat) -> Multisegment {
        Multisegment {
            segments: self.segments.iter().map(|s| s.shift(by)).collect(),
        }
    }

    /// The multisegment of `(L^theta)^vee`: dual segments in reversed order.
    pub fn conjugate_dual(&self, reg: &Registry) -> Result<Multisegment> {
        let mut segs = self
            .segments
            .iter()
            .map(|s| segment_dual(reg, s))
            .collect::<Result<Vec<_>>>()?;
        segs.reverse();
        Ok(Multisegment { segments: segs })
    }

    pub fn linked_with(&self, other: &Multisegment) -> bool {
        self.segments
            .iter()
            .any(|s| other.segments.iter().any(|t| relate(s, t).linked))
    }
}

impl std::fmt::Display for Multisegment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Ladder[")?;
        for (i, s) in self.segments.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "]")
    }
}

fn strictly_decreasing(xs: impl Iterator<Item = Rat>) -> bool {
    let v: Vec<Rat> = xs.collect();
    v.windows(2).all(|w| w[0] > w[1])
}

pub fn classify_multisegment(ms: &Multisegment) -> LadderClass {
    let s = &ms.segments;
    let is_ladder =
        strictly_decreasing(s.iter().map(|x| x.a)) && strictly_decreasing(s.iter().map(|x| x.b));
    let is_anti_ladder = strictly_decreasing(s.iter().rev().map(|x| x.a))
        && strictly_decreasing(s.iter().rev().map(|x| x.b));
    let is_proper = is_ladder && s.windows(2).all(|w| relate(&w[1], &w[0]).precedes);
    LadderClass {
        is_ladder,
        is_anti_ladder,
        is_proper,
    }
}

pub fn is_proper_ladder(ms: &Multisegment) -> bool {
    classify_multisegment(ms).is_proper
}

/// `u(delta, k)`: the `i`-th segment is `delta` shifted by `(k+1)/2 - i`.
pub fn speh(delta: &Segment, k: u32) -> Result<Multisegment> {
    if k == 0 {
        return Err(Error::Argument("Speh block needs k >= 1".into()));
    }
    let segs = (1..=k as i64)
        .map(|i| delta.shift(Ratio::new(k as i64 + 1, 2) - i))
        .collect();
    Multisegment::new(segs)
}

/// `S_1, ..., S_{t-1}` for a proper ladder with at least two segments.
pub fn substandard_kernels(ms: &Multisegment) -> Result<Vec<Multisegment>> {
    if ms.len() < 2 || !is_proper_ladder(ms) {
        return Err(Error::Argument(
            "sub-standard kernels need a proper ladder with t >= 2".into(),
        ));
    }
    let s = &ms.segments;
    let mut out = Vec::with_capacity(s.len() - 1);
    for i in 0..s.len() - 1 {
        let m = merge(&s[i], &s[i + 1]);
        let mut segs = s[..i].to_vec();
        segs.push(m.union.expect("consecutive segments of a proper ladder are linked"));
        segs.extend(m.intersection);
        segs.extend_from_slice(&s[i + 2..]);
        out.push(Multisegment { segments: segs });
    }
    Ok(out)
}

/// Connected components of the linkage graph, as sorted index lists ordered by
/// their first member.
pub fn decompose_unlinked(parts: &[Multisegment]) -> Vec<Vec<usize>> {
    let n = parts.len();
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(c: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while c[r] != r {
            r = c[r];
        }
        c[x] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if parts[i].linked_with(&parts[j]) {
                let (a, b) = (find(&mut comp, i), find(&mut comp, j));
                comp[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_of: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let r = find(&mut comp, i);
        match root_of[r] {
            Some(g) => groups[g].push(i),
            None => {
                root_of[r] = Some(groups.len());
                groups.push(vec![i]);
            }
        }
    }
    groups
}

/// Cuts a ladder into proper ladders wherever consecutive segments are unlinked.
pub fn proper_components(ms: &Multisegment) -> Result<Vec<Multisegment>> {
    if !classify_multisegment(ms).is_ladder {
        return Err(Error::Argument(format!("{ms} is not a ladder")));
    }
    let mut out = vec![];
    let mut cur = vec![ms.segments[0].clone()];
    for w in ms.segments.windows(2) {
        if relate(&w[1], &w[0]).precedes {
            cur.push(w[1].clone());
        } else {
            out.push(Multisegment { segments: std::mem::take(&mut cur) });
            cur.push(w[1].clone());
        }
    }
    out.push(Multisegment { segments: cur });
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UnitaryKind {
    Speh,
    ComplementaryPair,
}

/// A Tadic factor: `u(delta,k)` or `nu^{-alpha} u(delta,k) x nu^{alpha} u(delta,k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnitaryFactor {
    pub kind: UnitaryKind,
    pub delta: Segment,
    pub k: u32,
    pub alpha: Rat,
}

impl UnitaryFactor {
    pub fn speh(delta: Segment, k: u32) -> Self {
        UnitaryFactor {
            kind: UnitaryKind::Speh,
            delta,
            k,
            alpha: Rat::from_integer(0),
        }
    }

    pub fn pair(delta: Segment, k: u32, alpha: Rat) -> Result<Self> {
        if alpha <= Rat::from_integer(0) || alpha >= Ratio::new(1, 2) {
            return Err(Error::Argument("complementary-series exponent must lie in (0, 1/2)".into()));
        }
        Ok(UnitaryFactor {
            kind: UnitaryKind::ComplementaryPair,
            delta,
            k,
            alpha,
        })
    }

    /// The ladders whose product realizes this factor.
    pub fn ladders(&self) -> Result<Vec<Multisegment>> {
        let u = speh(&self.delta, self.k)?;
        Ok(match self.kind {
            UnitaryKind::Speh => vec![u],
            UnitaryKind::ComplementaryPair => vec![u.shift(-self.alpha), u.shift(self.alpha)],
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuspidal_lines::tests::sample_registry;
    use crate::rat::{half, int};
    use proptest::prelude::*;

    fn seg(a: i64, b: i64) -> Segment {
        Segment::new("rho", 0, int(a), int(b)).unwrap()
    }
    fn ms(v: &[(i64, i64)]) -> Multisegment {
        Multisegment::new(v.iter().map(|&(a, b)| seg(a, b)).collect()).unwrap()
    }

    #[test]
    fn classify_examples() {
        let h = Segment::new("rho", 0, half(), half()).unwrap();
        let toy = Multisegment::new(vec![h.clone(), h.shift(int(-1))]).unwrap();
        let c = classify_multisegment(&toy);
        assert!(c.is_ladder && c.is_proper && !c.is_anti_ladder);
        let c = classify_multisegment(&ms(&[(0, 1), (-3, -2)]));
        assert!(c.is_ladder && !c.is_proper);
        let c = classify_multisegment(&ms(&[(0, 0)]));
        assert!(c.is_ladder && c.is_proper && c.is_anti_ladder);
        assert!(classify_multisegment(&ms(&[(-1, 0), (0, 1)])).is_anti_ladder);
    }

    #[test]
    fn mixed_lines_rejected() {
        let other = Segment::new("rhoe", 0, int(0), int(0)).unwrap();
        assert!(Multisegment::new(vec![seg(1, 1), other]).is_err());
        assert!(Multisegment::new(vec![]).is_err());
    }

    #[test]
    fn speh_examples() {
        let d = Segment::new("rho", 0, -half(), half()).unwrap();
        assert_eq!(speh(&d, 2).unwrap(), ms(&[(0, 1), (-1, 0)]));
        assert_eq!(speh(&seg(0, 0), 3).unwrap(), ms(&[(1, 1), (0, 0), (-1, -1)]));
        assert_eq!(speh(&seg(0, 0), 1).unwrap(), ms(&[(0, 0)]));
        assert!(speh(&seg(0, 0), 0).is_err());
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(substandard_kernels(&ms(&[(0, 1), (-1, 0)])).unwrap(), vec![ms(&[(-1, 1), (0, 0)])]);
        assert_eq!(substandard_kernels(&ms(&[(1, 1), (0, 0)])).unwrap(), vec![ms(&[(0, 1)])]);
        assert!(substandard_kernels(&ms(&[(0, 0)])).is_err());
        assert!(substandard_kernels(&ms(&[(0, 1), (-3, -2)])).is_err());
    }

    // Independent re-implementation straight from the definition of S_i.
    fn kernels_oracle(v: &[(i64, i64)]) -> Vec<Vec<(i64, i64)>> {
        let mut out = vec![];
        for i in 0..v.len() - 1 {
            let (a1, b1) = v[i];
            let (a2, b2) = v[i + 1];
            let mut s: Vec<(i64, i64)> = v[..i].to_vec();
            s.push((a1.min(a2), b1.max(b2)));
            if a1.max(a2) <= b1.min(b2) {
                s.push((a1.max(a2), b1.min(b2)));
            }
            s.extend_from_slice(&v[i + 2..]);
            out.push(s);
        }
        out
    }

    #[test]
    fn kernels_three_step() {
        let v = [(2, 3), (1, 2), (0, 1)];
        let got = substandard_kernels(&ms(&v)).unwrap();
        let want: Vec<Multisegment> = kernels_oracle(&v).iter().map(|s| ms(s)).collect();
        assert_eq!(got, want);
        assert_eq!(got[0], ms(&[(1, 3), (2, 2), (0, 1)]));
        assert_eq!(got[1], ms(&[(2, 3), (0, 2), (1, 1)]));
    }

    #[test]
    fn unlinked_examples() {
        assert_eq!(decompose_unlinked(&[ms(&[(0, 0)]), ms(&[(5, 5)])]), vec![vec![0], vec![1]]);
        assert_eq!(decompose_unlinked(&[ms(&[(0, 1)]), ms(&[(1, 2)])]), vec![vec![0, 1]]);
        assert_eq!(
            decompose_unlinked(&[ms(&[(0, 1)]), ms(&[(10, 11)]), ms(&[(1, 2)])]),
            vec![vec![0, 2], vec![1]]
        );
    }

    #[test]
    fn proper_components_cut_at_gaps() {
        let parts = proper_components(&ms(&[(4, 5), (3, 4), (0, 1), (-1, 0)])).unwrap();
        assert_eq!(parts, vec![ms(&[(4, 5), (3, 4)]), ms(&[(0, 1), (-1, 0)])]);
        assert!(proper_components(&ms(&[(0, 1), (1, 2)])).is_err());
    }

    #[test]
    fn pair_realization() {
        let f = UnitaryFactor::pair(seg(0, 0), 1, Ratio::new(1, 4)).unwrap();
        let l = f.ladders().unwrap();
        assert_eq!(l[0].segments()[0].a, Ratio::new(-1, 4));
        assert_eq!(l[1].segments()[0].a, Ratio::new(1, 4));
        assert!(UnitaryFactor::pair(seg(0, 0), 1, half()).is_err());
    }

    fn arb_parts() -> impl Strategy<Value = Vec<Multisegment>> {
        prop::collection::vec((-8i64..8, 0i64..3), 1..7)
            .prop_map(|v| v.into_iter().map(|(a, l)| ms(&[(a, a + l)])).collect())
    }

    proptest! {
        #[test]
        fn speh_is_proper_and_self_dual(a2 in -3i64..=0, k in 1u32..5) {
            let reg = sample_registry();
            let d = Segment::new("rho", 0, Ratio::new(a2, 1), Ratio::new(-a2, 1)).unwrap();
            let u = speh(&d, k).unwrap();
            prop_assert!(is_proper_ladder(&u));
            prop_assert_eq!(u.conjugate_dual(&reg).unwrap(), u);
        }

        #[test]
        fn kernel_count(a in -3i64..3, len in 0i64..3, t in 2usize..5, step in 1i64..3) {
            let v: Vec<(i64, i64)> = (0..t as i64).map(|i| (a - step * i, a + len - step * i)).collect();
            let m = ms(&v);
            if is_proper_ladder(&m) {
                let k = substandard_kernels(&m).unwrap();
                prop_assert_eq!(k.len(), t - 1);
                let want: Vec<Multisegment> = kernels_oracle(&v).iter().map(|s| ms(s)).collect();
                prop_assert_eq!(k, want);
            }
        }

        // Brute-force transitive closure as the oracle.
        #[test]
        fn unlinked_partition(parts in arb_parts()) {
            let groups = decompose_unlinked(&parts);
            let n = parts.len();
            let mut reach = vec![vec![false; n]; n];
            for i in 0..n {
                for j in 0..n {
                    reach[i][j] = i == j || parts[i].linked_with(&parts[j]);
                }
            }
            for k in 0..n { for i in 0..n { for j in 0..n {
                if reach[i][k] && reach[k][j] { reach[i][j] = true; }
            }}}
            let mut seen: Vec<usize> = groups.iter().flatten().copied().collect();
            seen.sort();
            prop_assert_eq!(seen, (0..n).collect::<Vec<_>>());
            for g in &groups {
                prop_assert!(g.windows(2).all(|w| w[0] < w[1]));
                for h in &groups {
                    for &i in g { for &j in h {
                        prop_assert_eq!(reach[i][j], std::ptr::eq(g, h));
                    }}
                }
            }
        }
    }
}
