//! Segments `[a,b]_rho` and the discrete series they define.
//!
//! Endpoints are stored un-scaled: the realized cuspidal support of `[a,b]_rho`
//! is `nu^{la} rho, ..., nu^{lb} rho` with `l = l_rho`, and that scaling is
//! applied only where a realized exponent is needed.

use num_traits::{Signed, Zero};

use crate::cuspidal_lines::{conjugate_dual, Registry, TwistedCuspidal};
use crate::error::{Error, Result};
use crate::rat::{self, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    pub base: String,
    pub eta_pow: u8,
    pub a: Rat,
    pub b: Rat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SegmentRelation {
    pub precedes: bool,
    pub preceded_by: bool,
    pub linked: bool,
    pub juxtaposed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Merge {
    pub union: Option<Segment>,
    pub intersection: Option<Segment>,
}

impl Segment {
    pub fn new(base: &str, eta_pow: u8, a: Rat, b: Rat) -> Result<Self> {
        let len = b - a;
        if !len.is_integer() || len.is_negative() {
            return Err(Error::Argument(format!(
                "segment [{}, {}]: b - a must be a non-negative integer",
                rat::format(&a),
                rat::format(&b)
            )));
        }
        Ok(Segment {
            base: base.to_string(),
            eta_pow: eta_pow % 2,
            a,
            b,
        })
    }

    /// `St_k(rho)` centred at `center`: `[center-(k-1)/2, center+(k-1)/2]`.
    pub fn steinberg(base: &str, eta_pow: u8, k: u32, center: Rat) -> Result<Self> {
        if k == 0 {
            return Err(Error::Argument("St(rho, k) needs k >= 1".into()));
        }
        let h = Rat::new(k as i64 - 1, 2);
        Segment::new(base, eta_pow, center - h, center + h)
    }

    /// Number of cuspidal points.
    pub fn len(&self) -> i64 {
        (self.b - self.a).to_integer() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn center(&self) -> Rat {
        (self.a + self.b) / 2
    }

    pub fn line(&self) -> TwistedCuspidal {
        TwistedCuspidal::new(&self.base, Rat::zero(), self.eta_pow)
    }

    pub fn same_line(&self, other: &Segment) -> bool {
        self.base == other.base && self.eta_pow == other.eta_pow
    }

    pub fn shift(&self, by: Rat) -> Segment {
        Segment {
            base: self.base.clone(),
            eta_pow: self.eta_pow,
            a: self.a + by,
            b: self.b + by,
        }
    }

    pub fn eta_twist(&self) -> Segment {
        Segment {
            eta_pow: (self.eta_pow + 1) % 2,
            ..self.clone()
        }
    }

    /// Degree of the group carrying `L(self)`: length times the degree of `rho`.
    pub fn realized_degree(&self, reg: &Registry) -> Result<u32> {
        Ok(self.len() as u32 * reg.get(&self.base)?.degree)
    }
}

impl std::fmt::Display for Segment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.eta_pow == 1 {
            write!(f, "eta*")?;
        }
        write!(
            f,
            "Seg({},{},{})",
            self.base,
            rat::format(&self.a),
            rat::format(&self.b)
        )
    }
}

fn precedes(d: &Segment, d2: &Segment) -> bool {
    d.same_line(d2)
        && (d2.b - d.b).is_integer()
        && d.a < d2.a
        && d2.a - 1 <= d.b
        && d.b < d2.b
}

pub fn relate(d: &Segment, d2: &Segment) -> SegmentRelation {
    let p = precedes(d, d2);
    let q = precedes(d2, d);
    let linked = p || q;
    let juxtaposed = linked && (d2.a == d.b + 1 || d.a == d2.b + 1);
    SegmentRelation {
        precedes: p,
        preceded_by: q,
        linked,
        juxtaposed,
    }
}

pub fn merge(d: &Segment, d2: &Segment) -> Merge {
    if !relate(d, d2).linked {
        return Merge::default();
    }
    let mk = |a: Rat, b: Rat| Segment {
        base: d.base.clone(),
        eta_pow: d.eta_pow,
        a,
        b,
    };
    let lo = d.a.max(d2.a);
    let hi = d.b.min(d2.b);
    Merge {
        union: Some(mk(d.a.min(d2.a), d.b.max(d2.b))),
        intersection: if lo <= hi { Some(mk(lo, hi)) } else { None },
    }
}

/// `(L(d)^theta)^vee`: `[-b,-a]` on the conjugate-dual line.
pub fn segment_dual(reg: &Registry, d: &Segment) -> Result<Segment> {
    let line = conjugate_dual(reg, &d.line())?;
    Ok(Segment {
        base: line.base,
        eta_pow: line.eta_pow,
        a: -d.b,
        b: -d.a,
    })
}

/// Jacquet module of `L(d)` along the partition `parts` of its realized degree.
///
/// Returns `None` when some part is not a multiple of `deg rho`. Otherwise the
/// `i`-th factor has degree `parts[i]` and the factors run from the top of the
/// segment downwards, so that reading the output backwards reassembles `d`.
pub fn jacquet_discrete(reg: &Registry, d: &Segment, parts: &[u32]) -> Result<Option<Vec<Segment>>> {
    let lambda = reg.get(&d.base)?.degree;
    let total: u32 = parts.iter().sum();
    if total != d.len() as u32 * lambda {
        return Err(Error::Argument(format!(
            "partition sums to {total}, expected {}",
            d.len() as u32 * lambda
        )));
    }
    if parts.iter().any(|&m| m == 0 || m % lambda != 0) {
        return Ok(None);
    }
    let mut top = d.b;
    let mut out = Vec::with_capacity(parts.len());
    for &m in parts {
        let k = (m / lambda) as i64;
        out.push(Segment {
            base: d.base.clone(),
            eta_pow: d.eta_pow,
            a: top - (k - 1),
            b: top,
        });
        top -= k;
    }
    Ok(Some(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuspidal_lines::tests::sample_registry;
    use crate::cuspidal_lines::{CuspidalDatum, Duality};
    use crate::rat::{half, int};
    use proptest::prelude::*;

    fn seg(a: i64, b: i64) -> Segment {
        Segment::new("rho", 0, int(a), int(b)).unwrap()
    }

    #[test]
    fn relate_examples() {
        let r = relate(&seg(0, 1), &seg(1, 2));
        assert!(r.precedes && r.linked && !r.juxtaposed && !r.preceded_by);
        let r = relate(&seg(0, 1), &seg(2, 3));
        assert!(r.precedes && r.juxtaposed);
        assert_eq!(relate(&seg(0, 1), &seg(0, 1)), SegmentRelation::default());
        let other = Segment::new("rhoe", 0, int(1), int(2)).unwrap();
        assert_eq!(relate(&seg(0, 1), &other), SegmentRelation::default());
        let off = Segment::new("rho", 0, half(), half() + 1).unwrap();
        assert_eq!(relate(&seg(0, 1), &off), SegmentRelation::default());
    }

    #[test]
    fn merge_examples() {
        let m = merge(&seg(0, 1), &seg(1, 2));
        assert_eq!(m.union, Some(seg(0, 2)));
        assert_eq!(m.intersection, Some(seg(1, 1)));
        let m = merge(&seg(0, 0), &seg(1, 1));
        assert_eq!(m.union, Some(seg(0, 1)));
        assert_eq!(m.intersection, None);
        assert_eq!(merge(&seg(0, 1), &seg(3, 4)), Merge::default());
    }

    #[test]
    fn dual_examples() {
        let reg = sample_registry();
        let s = Segment::new("rho", 0, half(), half()).unwrap();
        assert_eq!(segment_dual(&reg, &s).unwrap(), Segment::new("rho", 0, -half(), -half()).unwrap());
        let c = Segment::new("rho", 0, -half(), half()).unwrap();
        assert_eq!(segment_dual(&reg, &c).unwrap(), c);
        let p = Segment::new("rho1", 0, int(0), int(1)).unwrap();
        assert_eq!(segment_dual(&reg, &p).unwrap(), Segment::new("rho2", 0, int(-1), int(0)).unwrap());
    }

    #[test]
    fn jacquet_examples() {
        let reg = sample_registry();
        assert_eq!(
            jacquet_discrete(&reg, &seg(-1, 1), &[1, 1, 1]).unwrap(),
            Some(vec![seg(1, 1), seg(0, 0), seg(-1, -1)])
        );
        assert_eq!(jacquet_discrete(&reg, &seg(-1, 1), &[3]).unwrap(), Some(vec![seg(-1, 1)]));
        let two = Segment::new("rho3", 0, int(0), int(1)).unwrap();
        assert_eq!(jacquet_discrete(&reg, &two, &[1, 3]).unwrap(), None);
        assert!(jacquet_discrete(&reg, &seg(0, 1), &[1]).is_err());
    }

    #[test]
    fn jacquet_degrees_follow_parts() {
        let reg = sample_registry();
        let out = jacquet_discrete(&reg, &seg(0, 2), &[1, 2]).unwrap().unwrap();
        assert_eq!(out, vec![seg(2, 2), seg(0, 1)]);
    }

    #[test]
    fn steinberg_coordinates() {
        let s = Segment::steinberg("rho", 0, 2, half()).unwrap();
        assert_eq!(s, Segment::new("rho", 0, int(0), int(1)).unwrap());
        assert_eq!(s.len(), 2);
        assert!(Segment::steinberg("rho", 0, 0, int(0)).is_err());
        assert!(Segment::new("rho", 0, int(1), int(0)).is_err());
        assert!(Segment::new("rho", 0, int(0), half()).is_err());
    }

    fn arb_seg() -> impl Strategy<Value = Segment> {
        (-6i64..=6, 0i64..4, 0u8..2, prop::bool::ANY).prop_map(|(a2, len, eta, halfint)| {
            let a = if halfint { Rat::new(2 * a2 + 1, 2) } else { int(a2) };
            Segment::new("rho", eta, a, a + len).unwrap()
        })
    }

    fn compositions(n: u32) -> Vec<Vec<u32>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = vec![];
        for first in 1..=n {
            for mut rest in compositions(n - first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }

    proptest! {
        #[test]
        fn relation_invariants(d in arb_seg(), e in arb_seg()) {
            let r = relate(&d, &e);
            prop_assert!(!(r.precedes && r.preceded_by));
            prop_assert_eq!(r.linked, r.precedes || r.preceded_by);
            prop_assert!(!r.juxtaposed || r.linked);
        }

        #[test]
        fn merge_preserves_length(d in arb_seg(), e in arb_seg()) {
            let m = merge(&d, &e);
            if relate(&d, &e).linked {
                let u = m.union.unwrap().len();
                let i = m.intersection.map(|s| s.len()).unwrap_or(0);
                prop_assert_eq!(u + i, d.len() + e.len());
            }
        }

        #[test]
        fn dual_reverses_precedence(d in arb_seg(), e in arb_seg()) {
            let reg = sample_registry();
            let dd = segment_dual(&reg, &d).unwrap();
            let ed = segment_dual(&reg, &e).unwrap();
            prop_assert_eq!(relate(&d, &e).precedes, relate(&ed, &dd).precedes);
            prop_assert_eq!(segment_dual(&reg, &dd).unwrap(), d);
        }

        #[test]
        fn shift_by_one(d in arb_seg()) {
            let r = relate(&d, &d.shift(int(1)));
            prop_assert!(r.precedes);
            prop_assert_eq!(r.juxtaposed, d.len() == 1);
        }

        #[test]
        fn jacquet_reassembles(d in arb_seg(), pick in 0usize..64) {
            let reg = sample_registry();
            let comps = compositions(d.len() as u32);
            let parts = &comps[pick % comps.len()];
            let out = jacquet_discrete(&reg, &d, parts).unwrap().unwrap();
            let mut expect_a = d.a;
            for (piece, &m) in out.iter().rev().zip(parts.iter().rev()) {
                prop_assert_eq!(piece.a, expect_a);
                prop_assert_eq!(piece.len() as u32, m);
                expect_a = piece.b + 1;
            }
            prop_assert_eq!(expect_a, d.b + 1);
        }
    }

    #[test]
    fn realized_degree_uses_rho_degree() {
        let reg = Registry::new(vec![CuspidalDatum::new("s", 3, 1, Duality::Distinguished)]).unwrap();
        let d = Segment::new("s", 0, int(0), int(1)).unwrap();
        assert_eq!(d.realized_degree(&reg).unwrap(), 6);
    }
}
