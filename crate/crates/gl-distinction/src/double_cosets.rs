//! Double cosets `P \ G / H` through symmetric matrices with fixed row sums,
//! and the geometric-lemma contributions of a tensor product of discrete series.

use serde::Serialize;

use crate::cuspidal_lines::Registry;
use crate::distinction::{discrete_series_distinction, Status};
use crate::error::{Error, Result};
use crate::segments::{jacquet_discrete, segment_dual, Segment};
use crate::symmetric_words::{block_rearrangement, Permutation};

/// A symmetric matrix of non-negative integers; row `i` sums to `m_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct CosetMatrix {
    entries: Vec<Vec<u32>>,
}

impl CosetMatrix {
    pub fn new(entries: Vec<Vec<u32>>) -> Result<Self> {
        let t = entries.len();
        for (i, row) in entries.iter().enumerate() {
            if row.len() != t {
                return Err(Error::Argument("coset matrix must be square".into()));
            }
            for j in 0..t {
                if entries[j][i] != row[j] {
                    return Err(Error::Argument("coset matrix must be symmetric".into()));
                }
            }
        }
        Ok(CosetMatrix { entries })
    }

    pub fn entries(&self) -> &[Vec<u32>] {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn row_sums(&self) -> Vec<u32> {
        self.entries.iter().map(|r| r.iter().sum()).collect()
    }

    /// `m̄_a`: the non-zero entries read row by row.
    pub fn subpartition(&self) -> Vec<u32> {
        self.entries.iter().flatten().copied().filter(|&x| x > 0).collect()
    }

    /// `w_a`: fixes the diagonal intervals `I_{i,i}` and exchanges `I_{i,j}`
    /// with `I_{j,i}`, intervals being laid out row by row.
    pub fn block_involution(&self) -> Permutation {
        let t = self.size();
        let lengths: Vec<usize> = self.entries.iter().flatten().map(|&x| x as usize).collect();
        let order: Vec<usize> = (0..t * t).map(|k| (k % t) * t + k / t).collect();
        block_rearrangement(&lengths, &order)
    }
}

impl std::fmt::Display for CosetMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", cells.join(","))?;
        }
        write!(f, "]")
    }
}

/// Every symmetric `N`-matrix with row sums `mbar`, in lexicographic order.
pub fn enumerate_cosets(mbar: &[u32]) -> Vec<CosetMatrix> {
    let t = mbar.len();
    let cells: Vec<(usize, usize)> = (0..t).flat_map(|i| (i..t).map(move |j| (i, j))).collect();
    let mut out = vec![];
    let mut m = vec![vec![0u32; t]; t];
    let mut rem = mbar.to_vec();

    fn rec(
        k: usize,
        cells: &[(usize, usize)],
        m: &mut Vec<Vec<u32>>,
        rem: &mut Vec<u32>,
        out: &mut Vec<CosetMatrix>,
    ) {
        if k == cells.len() {
            if rem.iter().all(|&r| r == 0) {
                out.push(CosetMatrix { entries: m.clone() });
            }
            return;
        }
        let (i, j) = cells[k];
        let last_in_row = j + 1 == m.len();
        let cap = if i == j { rem[i] } else { rem[i].min(rem[j]) };
        for v in 0..=cap {
            if last_in_row && rem[i] != v {
                continue;
            }
            m[i][j] = v;
            m[j][i] = v;
            rem[i] -= v;
            if i != j {
                rem[j] -= v;
            }
            rec(k + 1, cells, m, rem, out);
            rem[i] += v;
            if i != j {
                rem[j] += v;
            }
        }
        m[i][j] = 0;
        m[j][i] = 0;
    }

    rec(0, &cells, &mut m, &mut rem, &mut out);
    out.sort();
    out
}

/// Realized degrees of the segments: the `m̄` of the standard module they induce.
pub fn standard_mbar(reg: &Registry, sigma: &[Segment]) -> Result<Vec<u32>> {
    sigma.iter().map(|s| s.realized_degree(reg)).collect()
}

/// Jacquet pieces `sigma_{i,j}` of a coset, or `None` if some row is not adapted.
pub fn coset_pieces(
    reg: &Registry,
    sigma: &[Segment],
    a: &CosetMatrix,
) -> Result<Option<Vec<Vec<Option<Segment>>>>> {
    let t = sigma.len();
    let mut pieces = vec![vec![None; t]; t];
    for i in 0..t {
        let cols: Vec<usize> = (0..t).filter(|&j| a.entries[i][j] > 0).collect();
        let parts: Vec<u32> = cols.iter().map(|&j| a.entries[i][j]).collect();
        match jacquet_discrete(reg, &sigma[i], &parts)? {
            None => return Ok(None),
            Some(split) => {
                for (j, piece) in cols.into_iter().zip(split) {
                    pieces[i][j] = Some(piece);
                }
            }
        }
    }
    Ok(Some(pieces))
}

fn contributes(reg: &Registry, sigma: &[Segment], a: &CosetMatrix) -> Result<bool> {
    let Some(pieces) = coset_pieces(reg, sigma, a)? else {
        return Ok(false);
    };
    let t = sigma.len();
    for i in 0..t {
        if let Some(d) = &pieces[i][i] {
            if discrete_series_distinction(reg, d)?.status != Status::Distinguished {
                return Ok(false);
            }
        }
        for j in i + 1..t {
            match (&pieces[i][j], &pieces[j][i]) {
                (Some(p), Some(q)) => {
                    if *q != segment_dual(reg, p)? {
                        return Ok(false);
                    }
                }
                (None, None) => {}
                _ => unreachable!("coset matrices are symmetric"),
            }
        }
    }
    Ok(true)
}

/// Cosets whose geometric-lemma subquotient can carry an `H`-invariant form.
pub fn contributing_cosets(reg: &Registry, sigma: &[Segment], mbar: &[u32]) -> Result<Vec<CosetMatrix>> {
    let degrees = standard_mbar(reg, sigma)?;
    if degrees != mbar {
        return Err(Error::Argument(format!(
            "segment degrees {degrees:?} do not match m̄ = {mbar:?}"
        )));
    }
    let mut out = vec![];
    for a in enumerate_cosets(mbar) {
        if contributes(reg, sigma, &a)? {
            out.push(a);
        }
    }
    Ok(out)
}
