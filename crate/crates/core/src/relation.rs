//! Binary relations on a finite point set as row bit-vectors.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::axioms::Verdict;
use crate::error::{Error, Result};

/// A relation on `0..n`. Row `x` holds the successors of `x` as bits.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinRel {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl fmt::Debug for BinRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinRel({}, {:?})", self.n, self.pairs())
    }
}

impl BinRel {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BinRel { n, words, bits: vec![0; n * words] }
    }

    pub fn full(n: usize) -> Self {
        let mut r = BinRel::empty(n);
        for x in 0..n {
            for y in 0..n {
                r.insert(x, y);
            }
        }
        r
    }

    pub fn identity(n: usize) -> Self {
        let mut r = BinRel::empty(n);
        for x in 0..n {
            r.insert(x, x);
        }
        r
    }

    /// Graph `{(x, f(x))}` of a function on points.
    pub fn graph(f: &[usize]) -> Self {
        let mut r = BinRel::empty(f.len());
        for (x, &y) in f.iter().enumerate() {
            r.insert(x, y);
        }
        r
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut r = BinRel::empty(n);
        for (x, y) in pairs {
            if x >= n || y >= n {
                return Err(Error::Malformed(format!("pair ({x}, {y}) is out of range 0..{n}")));
            }
            r.insert(x, y);
        }
        Ok(r)
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut r = BinRel::empty(n);
        for x in 0..n {
            for y in 0..n {
                if f(x, y) {
                    r.insert(x, y);
                }
            }
        }
        r
    }

    pub fn size(&self) -> usize {
        self.n
    }

    fn row(&self, x: usize) -> &[u64] {
        &self.bits[x * self.words..(x + 1) * self.words]
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.bits[x * self.words + y / 64] >> (y % 64) & 1 == 1
    }

    pub fn insert(&mut self, x: usize, y: usize) {
        self.bits[x * self.words + y / 64] |= 1 << (y % 64);
    }

    pub fn remove(&mut self, x: usize, y: usize) {
        self.bits[x * self.words + y / 64] &= !(1 << (y % 64));
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Pairs in row-major order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.count());
        for x in 0..self.n {
            for y in 0..self.n {
                if self.contains(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    fn same_shape(&self, other: &BinRel) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { left: self.n, right: other.n })
        }
    }

    fn zip(&self, other: &BinRel, f: impl Fn(u64, u64) -> u64) -> Result<BinRel> {
        self.same_shape(other)?;
        Ok(BinRel {
            n: self.n,
            words: self.words,
            bits: self.bits.iter().zip(&other.bits).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn union(&self, other: &BinRel) -> Result<BinRel> {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &BinRel) -> Result<BinRel> {
        self.zip(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &BinRel) -> Result<BinRel> {
        self.zip(other, |a, b| a & !b)
    }

    pub fn is_subset(&self, other: &BinRel) -> Result<bool> {
        self.same_shape(other)?;
        Ok(self.bits.iter().zip(&other.bits).all(|(&a, &b)| a & !b == 0))
    }

    /// `R;S = {(x, y) | ∃z. (x, z) ∈ R, (z, y) ∈ S}`.
    pub fn compose(&self, other: &BinRel) -> Result<BinRel> {
        self.same_shape(other)?;
        let mut out = BinRel::empty(self.n);
        for x in 0..self.n {
            let dst = x * self.words;
            for z in 0..self.n {
                if self.contains(x, z) {
                    for (w, &v) in other.row(z).iter().enumerate() {
                        out.bits[dst + w] |= v;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn converse(&self) -> BinRel {
        let mut out = BinRel::empty(self.n);
        for (x, y) in self.pairs() {
            out.insert(y, x);
        }
        out
    }

    /// `R^c = E ∖ R`; requires `R ⊆ E`.
    pub fn complement_in(&self, e: &BinRel) -> Result<BinRel> {
        self.same_shape(e)?;
        if let Some((x, y)) = self.pairs().into_iter().find(|&(x, y)| !e.contains(x, y)) {
            return Err(Error::NotSubsetOfE(x, y));
        }
        e.difference(self)
    }

    /// `Some(f)` if the relation is the graph of a bijection `f`.
    pub fn as_bijection(&self) -> Option<Vec<usize>> {
        let mut f = vec![usize::MAX; self.n];
        let mut hit = vec![false; self.n];
        for (x, fx) in f.iter_mut().enumerate() {
            let succ: Vec<usize> = (0..self.n).filter(|&y| self.contains(x, y)).collect();
            let [y] = succ[..] else { return None };
            if std::mem::replace(&mut hit[y], true) {
                return None;
            }
            *fx = y;
        }
        Some(f)
    }

    pub fn to_record(&self) -> RelationRecord {
        RelationRecord { n: self.n, pairs: self.pairs().into_iter().map(|(x, y)| [x, y]).collect() }
    }
}

/// Deterministic order used for candidate pools: by number of pairs, then
/// by the row-major pair lists.
impl Ord for BinRel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then(self.count().cmp(&other.count())).then_with(|| self.pairs().cmp(&other.pairs()))
    }
}

impl PartialOrd for BinRel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// JSON interchange form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationRecord {
    pub n: usize,
    pub pairs: Vec<[usize; 2]>,
}

impl RelationRecord {
    pub fn to_relation(&self) -> Result<BinRel> {
        BinRel::from_pairs(self.n, self.pairs.iter().map(|&[x, y]| (x, y)))
    }
}

/// A finite poset `(X, ≤)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    leq: BinRel,
}

impl PointSet {
    pub fn new(leq: BinRel) -> Result<Self> {
        let n = leq.size();
        for x in 0..n {
            if !leq.contains(x, x) {
                return Err(Error::NotAPoset { law: "reflexivity", witness: vec![x] });
            }
        }
        for (x, y) in leq.pairs() {
            if x != y && leq.contains(y, x) {
                return Err(Error::NotAPoset { law: "antisymmetry", witness: vec![x, y] });
            }
        }
        for (x, y) in leq.pairs() {
            for z in 0..n {
                if leq.contains(y, z) && !leq.contains(x, z) {
                    return Err(Error::NotAPoset { law: "transitivity", witness: vec![x, y, z] });
                }
            }
        }
        Ok(PointSet { leq })
    }

    /// The antichain on `n` points.
    pub fn antichain(n: usize) -> Self {
        PointSet { leq: BinRel::identity(n) }
    }

    pub fn size(&self) -> usize {
        self.leq.size()
    }

    pub fn leq(&self) -> &BinRel {
        &self.leq
    }

    /// Pairs `(x, y)` with `y` covering `x`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.size();
        self.leq
            .pairs()
            .into_iter()
            .filter(|&(x, y)| {
                x != y && !(0..n).any(|z| z != x && z != y && self.leq.contains(x, z) && self.leq.contains(z, y))
            })
            .collect()
    }
}

/// Is `R ⊆ E` upward closed under `(u,v) ≼ (x,y) ⇔ x ≤ u, v ≤ y`?
///
/// The `≼`-upward closure of `R` within `E` is `(≤;R;≤) ∩ E`.
pub fn is_upset(points: &PointSet, e: &BinRel, r: &BinRel) -> Result<bool> {
    Ok(upset_violation(points, e, r)?.is_none())
}

/// A pair of `E` that lies above `R` but is missing from it.
pub fn upset_violation(points: &PointSet, e: &BinRel, r: &BinRel) -> Result<Option<(usize, usize)>> {
    if let Some((x, y)) = r.pairs().into_iter().find(|&(x, y)| !e.contains(x, y)) {
        return Err(Error::NotSubsetOfE(x, y));
    }
    let closure = upward_closure(points, e, r)?;
    Ok(closure.difference(r)?.pairs().first().copied())
}

/// Least up-set of `E` containing `R ∩ E`.
pub fn upward_closure(points: &PointSet, e: &BinRel, r: &BinRel) -> Result<BinRel> {
    let leq = points.leq();
    leq.compose(r)?.compose(leq)?.intersection(e)
}

/// Check `(γ;R)^c = γ;R^c` and `(R;γ)^c = R^c;γ` for a bijection `γ ⊆ E`
/// and `R ⊆ E`, complements taken in `E`.
pub fn graph_identities_check(gamma: &[usize], r: &BinRel, e: &BinRel) -> Result<Verdict> {
    let n = e.size();
    if gamma.len() != n {
        return Err(Error::DimensionMismatch { left: gamma.len(), right: n });
    }
    let g = BinRel::graph(gamma);
    if g.as_bijection().is_none() {
        return Err(Error::NotABijection(format!("{gamma:?}")));
    }
    if let Some((x, y)) = g.pairs().into_iter().find(|&(x, y)| !e.contains(x, y)) {
        return Err(Error::NotSubsetOfE(x, y));
    }
    let rc = r.complement_in(e)?;
    let left = g.compose(r)?.complement_in(e)?;
    if left != g.compose(&rc)? {
        let diff = left.union(&g.compose(&rc)?)?.difference(&left.intersection(&g.compose(&rc)?)?)?;
        let (x, y) = diff.pairs()[0];
        return Ok(Verdict::fails(vec![x, y]));
    }
    let right = r.compose(&g)?.complement_in(e)?;
    if right != rc.compose(&g)? {
        let diff = right.union(&rc.compose(&g)?)?.difference(&right.intersection(&rc.compose(&g)?)?)?;
        let (x, y) = diff.pairs()[0];
        return Ok(Verdict::fails(vec![x, y]));
    }
    Ok(Verdict::holds())
}
