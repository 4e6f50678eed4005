//! Permutations, lengths, block embeddings and the reduced-word lemmas used by
//! the spherical-period recursion.

use serde::Serialize;

use crate::error::{Error, Result};

/// A permutation of `{1, ..., n}` stored in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(Error::Argument(format!("{images:?} is not a permutation")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// `w_n : i -> n + 1 - i`.
    pub fn longest(n: usize) -> Self {
        Permutation {
            images: (1..=n).rev().collect(),
        }
    }

    /// The transposition `s_k = (k-1 k)`.
    pub fn simple(n: usize, k: usize) -> Self {
        assert!(k >= 2 && k <= n, "simple reflection s_{k} outside S_{n}");
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(k - 2, k - 1);
        Permutation { images }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n());
        Permutation {
            images: other.images.iter().map(|&x| self.images[x - 1]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self) == Permutation::identity(self.n())
    }

    /// Pairs `i < j` with `w(i) > w(j)`.
    pub fn inversions(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = vec![];
        for i in 1..=n {
            for j in i + 1..=n {
                if self.apply(i) > self.apply(j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn length(&self) -> usize {
        self.inversions().len()
    }

    /// A reduced word `[k_1, ..., k_m]` with `self = s_{k_1} ∘ ... ∘ s_{k_m}`,
    /// obtained by bubble sort.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut cur = self.images.clone();
        let mut word = vec![];
        loop {
            let Some(p) = (1..cur.len()).find(|&p| cur[p - 1] > cur[p]) else {
                break;
            };
            // cur ∘ s_{p+1} swaps the entries at positions p and p+1
            cur.swap(p - 1, p);
            word.push(p + 1);
        }
        word.reverse();
        word
    }

    pub fn from_word(n: usize, word: &[usize]) -> Permutation {
        word.iter()
            .fold(Permutation::identity(n), |acc, &k| acc.compose(&Permutation::simple(n, k)))
    }
}

impl std::fmt::Display for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.images.serialize(s)
    }
}

/// The permutation sending the `o`-th element of block `k` to the `o`-th slot
/// of block `k` in the rearranged layout `new_order` (a list of old block
/// indices, 0-based).
pub fn block_rearrangement(lengths: &[usize], new_order: &[usize]) -> Permutation {
    let n: usize = lengths.iter().sum();
    let mut old_start = vec![0; lengths.len()];
    for k in 1..lengths.len() {
        old_start[k] = old_start[k - 1] + lengths[k - 1];
    }
    let mut new_start = vec![0; lengths.len()];
    let mut acc = 0;
    for &k in new_order {
        new_start[k] = acc;
        acc += lengths[k];
    }
    assert_eq!(acc, n, "new_order must list every block once");
    let mut images = vec![0; n];
    for k in 0..lengths.len() {
        for o in 0..lengths[k] {
            images[old_start[k] + o] = new_start[k] + o + 1;
        }
    }
    Permutation { images }
}

/// `w^{m̄}`: the one-line notation is the concatenation of the intervals
/// `I_{w(1)}, ..., I_{w(t)}`.
pub fn embed_blockwise(w: &Permutation, mbar: &[usize]) -> Result<Permutation> {
    if w.n() != mbar.len() {
        return Err(Error::Argument(format!(
            "permutation of {} letters against {} blocks",
            w.n(),
            mbar.len()
        )));
    }
    let order: Vec<usize> = w.images().iter().map(|&x| x - 1).collect();
    Ok(block_rearrangement(mbar, &order).inverse())
}

/// True iff `xi(alpha) < 0` and `xi(alpha) != -alpha` for `alpha = e_{l-1} - e_l`.
pub fn admissible_root(xi: &Permutation, l: usize) -> Result<bool> {
    if l < 2 || l > xi.n() {
        return Err(Error::Argument(format!("root index {l} outside 2..={}", xi.n())));
    }
    let (x, y) = (xi.apply(l - 1), xi.apply(l));
    Ok(x > y && (x, y) != (l, l - 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LemmaKind {
    BB,
    AB,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaFailure {
    pub i: usize,
    pub r: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub kind: LemmaKind,
    pub a: usize,
    pub b: usize,
    pub ok: bool,
    pub checked: usize,
    pub failures: Vec<LemmaFailure>,
}

/// The data of Lemma BB / AB for `c = 2a + 2b`.
pub struct ReductionLemma {
    pub kind: LemmaKind,
    pub a: usize,
    pub b: usize,
}

impl ReductionLemma {
    pub fn new(kind: LemmaKind, a: usize, b: usize) -> Self {
        ReductionLemma { kind, a, b }
    }

    pub fn c(&self) -> usize {
        2 * self.a + 2 * self.b
    }

    /// Offset such that `mu_i = s_{off+i+1} ∘ ... ∘ s_{off+i+b}`.
    fn offset(&self) -> usize {
        match self.kind {
            LemmaKind::BB => self.a + self.b,
            LemmaKind::AB => self.a,
        }
    }

    fn s(&self, k: usize) -> Permutation {
        Permutation::simple(self.c(), k)
    }

    /// `w`, exchanging `A_i` and `B_i`.
    pub fn w(&self) -> Permutation {
        let (a, b) = (self.a, self.b);
        match self.kind {
            // [A1, A2, B2, B1]
            LemmaKind::BB => block_rearrangement(&[a, b, b, a], &[3, 2, 1, 0]),
            // [A1, A2, B1, B2]
            LemmaKind::AB => block_rearrangement(&[a, b, a, b], &[2, 3, 0, 1]),
        }
    }

    /// `mu` built directly from its block description.
    pub fn mu_from_blocks(&self) -> Permutation {
        let (a, b) = (self.a, self.b);
        match self.kind {
            LemmaKind::BB => block_rearrangement(&[a, b, b, a], &[0, 1, 3, 2]),
            LemmaKind::AB => block_rearrangement(&[a, b, a, b], &[0, 2, 1, 3]),
        }
    }

    /// Indices `k` of `s_{off+i+1} ∘ ... ∘ s_{off+i+b}` listed left to right.
    pub fn mu_i_word(&self, i: usize) -> Vec<usize> {
        let off = self.offset();
        (1..=self.b).map(|k| off + i + k).collect()
    }

    pub fn mu_i(&self, i: usize) -> Permutation {
        Permutation::from_word(self.c(), &self.mu_i_word(i))
    }

    /// `mu_a ∘ ... ∘ mu_1`.
    pub fn mu(&self) -> Permutation {
        (1..=self.a).fold(Permutation::identity(self.c()), |acc, i| self.mu_i(i).compose(&acc))
    }

    /// Simple reflections of `mu` in the order they act (rightmost first).
    pub fn application_order(&self) -> Vec<usize> {
        let mut out = vec![];
        for i in 1..=self.a {
            let mut w = self.mu_i_word(i);
            w.reverse();
            out.extend(w);
        }
        out
    }

    /// `w_{i,r}` assembled literally from the lemma's formula.
    pub fn w_ir(&self, i: usize, r: usize) -> Permutation {
        let off = self.offset();
        let c = self.c();
        let head = Permutation::from_word(c, &(r..=self.b).map(|k| off + i + k).collect::<Vec<_>>());
        let mus = (1..i).fold(Permutation::identity(c), |acc, j| self.mu_i(j).compose(&acc));
        let conj = head.compose(&mus);
        let mut left = conj.compose(&self.w());
        // (mu_1^{-1} ∘ ... ∘ mu_{i-1}^{-1}) ∘ (s_{off+i+b}^{-1} ∘ ... ∘ s_{off+i+r}^{-1})
        for j in 1..i {
            left = left.compose(&self.mu_i(j).inverse());
        }
        for k in (r..=self.b).rev() {
            left = left.compose(&self.s(off + i + k).inverse());
        }
        left
    }

    /// The root index `l` the lemma attaches to `(i, r)`, if any.
    pub fn root_index(&self, i: usize, r: usize) -> Option<usize> {
        let off = self.offset();
        if r >= 2 {
            Some(off + i + r - 1)
        } else if i < self.a {
            Some(off + i + 1 + self.b)
        } else {
            None
        }
    }

    pub fn verify(&self) -> LemmaReport {
        let (a, b) = (self.a, self.b);
        let mut failures = vec![];
        let mut checked = 0;
        let mu = self.mu();
        let sum: usize = (1..=a).map(|i| self.mu_i(i).length()).sum();
        checked += 1;
        if mu.length() != sum || sum != a * b {
            failures.push(LemmaFailure {
                i: 0,
                r: 0,
                reason: format!("length(mu) = {}, sum of length(mu_i) = {}, ab = {}", mu.length(), sum, a * b),
            });
        }
        checked += 1;
        if mu != self.mu_from_blocks() {
            failures.push(LemmaFailure {
                i: 0,
                r: 0,
                reason: format!("product of mu_i {mu} differs from the block exchange {}", self.mu_from_blocks()),
            });
        }
        for i in 1..=a {
            for r in 1..=b {
                let Some(l) = self.root_index(i, r) else { continue };
                checked += 1;
                let wir = self.w_ir(i, r);
                let ok = l >= 2 && l <= self.c() && admissible_root(&wir, l).unwrap_or(false);
                if !ok {
                    failures.push(LemmaFailure {
                        i,
                        r,
                        reason: format!("w_{{i,r}} = {wir} does not make alpha = e_{} - e_{} admissible", l - 1, l),
                    });
                }
            }
        }
        LemmaReport {
            kind: self.kind,
            a,
            b,
            ok: failures.is_empty(),
            checked,
            failures,
        }
    }
}

pub fn verify_reduction_lemma(kind: LemmaKind, a: usize, b: usize) -> Result<LemmaReport> {
    if a == 0 || b == 0 {
        return Err(Error::Argument("lemma parameters must be positive".into()));
    }
    Ok(ReductionLemma::new(kind, a, b).verify())
}
