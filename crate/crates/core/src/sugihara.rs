//! Finite Sugihara chains `S_n` and the collapse `S_n[S_m] ≅ S_{n+m−1}`.

use crate::algebra::{FiniteAlgebra, RawAlgebra};
use crate::error::{Error, Result};
use crate::iso::{check_isomorphism, AlgebraMap};
use crate::nested_sum::nested_sum;

/// `S_n` with elements `a_{−k} < … < a_k` stored at indices `0..n`; `a_0`
/// exists only for odd `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SugiharaChain {
    n: usize,
    algebra: FiniteAlgebra,
    implication: Vec<usize>,
}

impl SugiharaChain {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn into_algebra(self) -> FiniteAlgebra {
        self.algebra
    }

    /// Subscript `j` of the element `a_j` stored at `index`.
    pub fn label(&self, index: usize) -> i64 {
        label_of(self.n, index)
    }

    /// Index of `a_j`, if it exists in this chain.
    pub fn index(&self, j: i64) -> Option<usize> {
        index_of(self.n, j)
    }

    /// The derived implication `a → b`: `∼a ∨ b` if `a ≤ b`, else `∼a ∧ b`.
    pub fn implication(&self, a: usize, b: usize) -> usize {
        self.implication[a * self.n + b]
    }
}

fn half(n: usize) -> i64 {
    (n / 2) as i64
}

pub(crate) fn label_of(n: usize, index: usize) -> i64 {
    let k = half(n);
    let i = index as i64;
    // even chains skip the label 0
    if n % 2 == 0 && i >= k {
        i - k + 1
    } else {
        i - k
    }
}

pub(crate) fn index_of(n: usize, j: i64) -> Option<usize> {
    let k = half(n);
    if j.abs() > k || (n % 2 == 0 && j == 0) {
        return None;
    }
    let i = if n % 2 == 1 || j < 0 { j + k } else { j + k - 1 };
    Some(i as usize)
}

/// Build `S_n` with `∼ = − = ¬` given by `a_j ↦ a_{−j}`.
pub fn sugihara_chain(n: usize) -> Result<SugiharaChain> {
    if n < 2 {
        return Err(Error::SizeTooSmall { n, min: 2 });
    }
    let lab = |i: usize| label_of(n, i);
    let idx = |j: i64| index_of(n, j).expect("label in range");
    let mut leq = vec![false; n * n];
    let mut mult = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            leq[a * n + b] = a <= b;
            let (i, j) = (lab(a), lab(b));
            mult[a * n + b] = match i.abs().cmp(&j.abs()) {
                std::cmp::Ordering::Greater => a,
                std::cmp::Ordering::Less => b,
                std::cmp::Ordering::Equal => a.min(b),
            };
        }
    }
    let tilde: Vec<usize> = (0..n).map(|a| idx(-lab(a))).collect();
    let one = if n % 2 == 1 { idx(0) } else { idx(1) };
    let zero = tilde[one];
    let names = (0..n).map(|a| format!("a{}", lab(a))).collect();
    let algebra = FiniteAlgebra::new(RawAlgebra {
        size: n,
        leq,
        mult,
        one,
        zero: Some(zero),
        tilde: Some(tilde.clone()),
        minus: Some(tilde.clone()),
        neg: Some(tilde.clone()),
        names: Some(names),
    })?;
    let mut implication = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            implication[a * n + b] = if a <= b { tilde[a].max(b) } else { tilde[a].min(b) };
        }
    }
    Ok(SugiharaChain { n, algebra, implication })
}

/// The index shift `a^K_j ↦ a_{j∓ℓ}`, `a^L_i ↦ a_i` from the nested sum
/// `S_n[S_m]` onto `S_{n+m−1}`, where `m = 2ℓ` or `2ℓ+1`.
pub fn collapse_iso(n: usize, m: usize) -> Result<AlgebraMap> {
    if n % 2 == 0 {
        return Err(Error::EvenOuterChain(n));
    }
    if n < 3 {
        return Err(Error::SizeTooSmall { n, min: 3 });
    }
    if m < 2 {
        return Err(Error::SizeTooSmall { n: m, min: 2 });
    }
    let k_chain = sugihara_chain(n)?;
    let l_chain = sugihara_chain(m)?;
    let target = sugihara_chain(n + m - 1)?;
    let sum = nested_sum(k_chain.algebra(), l_chain.algebra())?;
    let ell = (m / 2) as i64;
    let mut map = vec![usize::MAX; sum.algebra.size()];
    for (k_idx, new) in sum.from_k.iter().enumerate() {
        let Some(new) = *new else { continue };
        let j = k_chain.label(k_idx);
        let shifted = if j < 0 { j - ell } else { j + ell };
        map[new] = target.index(shifted).expect("shifted label in range");
    }
    for (l_idx, &new) in sum.from_l.iter().enumerate() {
        map[new] = target.index(l_chain.label(l_idx)).expect("label in range");
    }
    let report = check_isomorphism(&sum.algebra, target.algebra(), &map);
    Ok(AlgebraMap { map, report })
}
