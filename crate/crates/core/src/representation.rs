//! The algebra `Dq(E)` of up-sets of a representation context, its
//! subalgebras, and embeddings of finite algebras into it.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraRecord, FiniteAlgebra, RawAlgebra};
use crate::axioms::Verdict;
use crate::error::{ContextLaw, Error, Result};
use crate::relation::{upset_violation, BinRel, PointSet, RelationRecord};

/// Default bound on `|Up(E)|` for [`enumerate_upsets`].
pub const UPSET_CAP: usize = 1 << 20;

/// `(X, ≤, E, α, β)`, validated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepContext {
    points: PointSet,
    equiv: BinRel,
    alpha: Vec<usize>,
    beta: Vec<usize>,
    alpha_rel: BinRel,
    beta_rel: BinRel,
}

/// JSON interchange form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextRecord {
    pub points: usize,
    pub leq: Vec<Vec<u8>>,
    pub equiv: Vec<Vec<u8>>,
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
}

fn matrix_to_rel(n: usize, m: &[Vec<u8>], what: &str) -> Result<BinRel> {
    if m.len() != n || m.iter().any(|r| r.len() != n) {
        return Err(Error::Malformed(format!("{what} must be a {n}×{n} matrix")));
    }
    let mut r = BinRel::empty(n);
    for (x, row) in m.iter().enumerate() {
        for (y, &v) in row.iter().enumerate() {
            match v {
                0 => {}
                1 => r.insert(x, y),
                _ => return Err(Error::Malformed(format!("{what} entries must be 0 or 1"))),
            }
        }
    }
    Ok(r)
}

fn rel_to_matrix(r: &BinRel) -> Vec<Vec<u8>> {
    let n = r.size();
    (0..n).map(|x| (0..n).map(|y| u8::from(r.contains(x, y))).collect()).collect()
}

/// Validate a JSON context record.
pub fn validate_context(record: &ContextRecord) -> Result<RepContext> {
    let n = record.points;
    let leq = matrix_to_rel(n, &record.leq, "leq")?;
    let equiv = matrix_to_rel(n, &record.equiv, "equiv")?;
    RepContext::new(leq, equiv, record.alpha.clone(), record.beta.clone())
}

fn invalid(law: ContextLaw, witness: Vec<usize>) -> Error {
    Error::InvalidContext { law, witness }
}

fn check_permutation(f: &[usize], n: usize, law: ContextLaw) -> Result<()> {
    if f.len() != n {
        return Err(invalid(law, vec![]));
    }
    let mut seen = vec![false; n];
    for (x, &y) in f.iter().enumerate() {
        if y >= n || std::mem::replace(&mut seen[y], true) {
            return Err(invalid(law, vec![x]));
        }
    }
    Ok(())
}

impl RepContext {
    pub fn new(leq: BinRel, equiv: BinRel, alpha: Vec<usize>, beta: Vec<usize>) -> Result<Self> {
        let n = leq.size();
        if equiv.size() != n {
            return Err(Error::DimensionMismatch { left: n, right: equiv.size() });
        }
        let points = PointSet::new(leq).map_err(|e| match e {
            Error::NotAPoset { witness, .. } => invalid(ContextLaw::OrderNotPartial, witness),
            other => other,
        })?;
        let leq = points.leq();
        for x in 0..n {
            if !equiv.contains(x, x) {
                return Err(invalid(ContextLaw::ENotEquivalence, vec![x]));
            }
        }
        for (x, y) in equiv.pairs() {
            if !equiv.contains(y, x) {
                return Err(invalid(ContextLaw::ENotEquivalence, vec![x, y]));
            }
            for z in 0..n {
                if equiv.contains(y, z) && !equiv.contains(x, z) {
                    return Err(invalid(ContextLaw::ENotEquivalence, vec![x, y, z]));
                }
            }
        }
        if let Some((x, y)) = leq.pairs().into_iter().find(|&(x, y)| !equiv.contains(x, y)) {
            return Err(invalid(ContextLaw::OrderNotInE, vec![x, y]));
        }
        check_permutation(&alpha, n, ContextLaw::AlphaNotBijection)?;
        check_permutation(&beta, n, ContextLaw::BetaNotBijection)?;
        for x in 0..n {
            for y in 0..n {
                if leq.contains(x, y) != leq.contains(alpha[x], alpha[y]) {
                    return Err(invalid(ContextLaw::AlphaNotOrderAutomorphism, vec![x, y]));
                }
            }
        }
        if let Some(x) = (0..n).find(|&x| !equiv.contains(x, alpha[x])) {
            return Err(invalid(ContextLaw::AlphaNotInE, vec![x]));
        }
        if let Some(x) = (0..n).find(|&x| beta[beta[x]] != x) {
            return Err(invalid(ContextLaw::BetaNotInvolution, vec![x]));
        }
        for x in 0..n {
            for y in 0..n {
                if leq.contains(x, y) != leq.contains(beta[y], beta[x]) {
                    return Err(invalid(ContextLaw::BetaNotDualAutomorphism, vec![x, y]));
                }
            }
        }
        if let Some(x) = (0..n).find(|&x| !equiv.contains(x, beta[x])) {
            return Err(invalid(ContextLaw::BetaNotInE, vec![x]));
        }
        // (x, y) ∈ α;β;α iff y = α(β(α(x)))
        if let Some(x) = (0..n).find(|&x| alpha[beta[alpha[x]]] != beta[x]) {
            return Err(invalid(ContextLaw::BetaNotAlphaConjugate, vec![x]));
        }
        let alpha_rel = BinRel::graph(&alpha);
        let beta_rel = BinRel::graph(&beta);
        Ok(RepContext { points, equiv, alpha, beta, alpha_rel, beta_rel })
    }

    pub fn size(&self) -> usize {
        self.points.size()
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn leq(&self) -> &BinRel {
        self.points.leq()
    }

    pub fn equiv(&self) -> &BinRel {
        &self.equiv
    }

    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }

    pub fn beta(&self) -> &[usize] {
        &self.beta
    }

    pub fn alpha_rel(&self) -> &BinRel {
        &self.alpha_rel
    }

    pub fn beta_rel(&self) -> &BinRel {
        &self.beta_rel
    }

    /// Equivalence classes of `E`, each listed in ascending order, ordered
    /// by least element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let block: Vec<usize> = (0..n).filter(|&y| self.equiv.contains(x, y)).collect();
            for &y in &block {
                seen[y] = true;
            }
            out.push(block);
        }
        out
    }

    pub fn to_record(&self) -> ContextRecord {
        ContextRecord {
            points: self.size(),
            leq: rel_to_matrix(self.leq()),
            equiv: rel_to_matrix(&self.equiv),
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
        }
    }

    fn compl(&self, r: &BinRel) -> BinRel {
        self.equiv.difference(r).expect("same size")
    }

    fn comp(&self, r: &BinRel, s: &BinRel) -> BinRel {
        r.compose(s).expect("same size")
    }

    /// `1 = ≤`.
    pub fn one(&self) -> BinRel {
        self.leq().clone()
    }

    /// `0 = α;≤^{c⌣}`.
    pub fn zero(&self) -> BinRel {
        self.comp(&self.alpha_rel, &self.compl(self.leq()).converse())
    }

    /// `∼R = R^{c⌣};α`.
    pub fn tilde(&self, r: &BinRel) -> BinRel {
        self.comp(&self.compl(r).converse(), &self.alpha_rel)
    }

    /// `−R = α;R^{c⌣}`.
    pub fn minus(&self, r: &BinRel) -> BinRel {
        self.comp(&self.alpha_rel, &self.compl(r).converse())
    }

    /// `¬R = α;β;R^c;β`.
    pub fn neg(&self, r: &BinRel) -> BinRel {
        let ab = self.comp(&self.alpha_rel, &self.beta_rel);
        self.comp(&self.comp(&ab, &self.compl(r)), &self.beta_rel)
    }

    pub fn compose(&self, r: &BinRel, s: &BinRel) -> BinRel {
        self.comp(r, s)
    }

    /// `R\S = (R^⌣;S^c)^c`.
    pub fn under(&self, r: &BinRel, s: &BinRel) -> BinRel {
        self.compl(&self.comp(&r.converse(), &self.compl(s)))
    }

    /// `R/S = (R^c;S^⌣)^c`.
    pub fn over(&self, r: &BinRel, s: &BinRel) -> BinRel {
        self.compl(&self.comp(&self.compl(r), &s.converse()))
    }

    pub fn check_upset(&self, r: &BinRel) -> Result<()> {
        if r.size() != self.size() {
            return Err(Error::DimensionMismatch { left: r.size(), right: self.size() });
        }
        match upset_violation(&self.points, &self.equiv, r)? {
            None => Ok(()),
            Some((x, y)) => Err(Error::NotAnUpset(x, y)),
        }
    }
}

/// `(1, 0) = (≤, α;≤^{c⌣})`.
pub fn dq_constants(ctx: &RepContext) -> (BinRel, BinRel) {
    (ctx.one(), ctx.zero())
}

/// `(∼R, −R, ¬R)` for an up-set `R`.
pub fn dq_unary(ctx: &RepContext, r: &BinRel) -> Result<(BinRel, BinRel, BinRel)> {
    ctx.check_upset(r)?;
    Ok((ctx.tilde(r), ctx.minus(r), ctx.neg(r)))
}

/// `(R\S, R/S)` for up-sets `R`, `S`.
pub fn dq_residuals(ctx: &RepContext, r: &BinRel, s: &BinRel) -> Result<(BinRel, BinRel)> {
    ctx.check_upset(r)?;
    ctx.check_upset(s)?;
    Ok((ctx.under(r, s), ctx.over(r, s)))
}

/// Every up-set of `(E, ≼)`, sorted by the [`BinRel`] order.
pub fn enumerate_upsets(ctx: &RepContext) -> Result<Vec<BinRel>> {
    enumerate_upsets_capped(ctx, UPSET_CAP)
}

pub fn enumerate_upsets_capped(ctx: &RepContext, cap: usize) -> Result<Vec<BinRel>> {
    let n = ctx.size();
    let leq = ctx.leq();
    let pairs = ctx.equiv.pairs();
    let m = pairs.len();
    // p ≼ q iff q.0 ≤ p.0 and p.1 ≤ q.1
    let below = |p: (usize, usize), q: (usize, usize)| leq.contains(q.0, p.0) && leq.contains(p.1, q.1);
    // Process maximal pairs first: the number of pairs strictly above is a
    // strictly monotone rank.
    let above_count: Vec<usize> =
        pairs.iter().map(|&p| pairs.iter().filter(|&&q| q != p && below(p, q)).count()).collect();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| (above_count[i], i));
    let pos: Vec<usize> = {
        let mut pos = vec![0; m];
        for (k, &i) in order.iter().enumerate() {
            pos[i] = k;
        }
        pos
    };
    // Upper covers, expressed as positions in the processing order.
    let covers: Vec<Vec<usize>> = order
        .iter()
        .map(|&i| {
            let p = pairs[i];
            (0..m)
                .filter(|&j| {
                    let q = pairs[j];
                    j != i
                        && below(p, q)
                        && !(0..m).any(|k| k != i && k != j && below(p, pairs[k]) && below(pairs[k], q))
                })
                .map(|j| pos[j])
                .collect()
        })
        .collect();

    let mut out = Vec::new();
    let mut included = vec![false; m];
    let mut overflow = false;
    fn walk(
        k: usize,
        m: usize,
        covers: &[Vec<usize>],
        included: &mut Vec<bool>,
        emit: &mut dyn FnMut(&[bool]) -> bool,
    ) -> bool {
        if k == m {
            return emit(included);
        }
        if !walk(k + 1, m, covers, included, emit) {
            return false;
        }
        if covers[k].iter().all(|&c| included[c]) {
            included[k] = true;
            let ok = walk(k + 1, m, covers, included, emit);
            included[k] = false;
            return ok;
        }
        true
    }
    let mut emit = |inc: &[bool]| {
        if out.len() >= cap {
            overflow = true;
            return false;
        }
        let mut r = BinRel::empty(n);
        for (k, &on) in inc.iter().enumerate() {
            if on {
                let (x, y) = pairs[order[k]];
                r.insert(x, y);
            }
        }
        out.push(r);
        true
    };
    walk(0, m, &covers, &mut included, &mut emit);
    if overflow {
        return Err(Error::TooManyUpsets { cap });
    }
    out.sort();
    Ok(out)
}

/// Bound on the size of a generated subalgebra.
pub const SUBALGEBRA_CAP: usize = 1 << 16;

/// Least set containing the generators, `1`, `0`, and the bounds `∅`, `E`,
/// closed under `∩`, `∪`, `;`, `∼`, `−`, `¬`. Sorted by the [`BinRel`]
/// order.
pub fn generate_subalgebra(ctx: &RepContext, generators: &[BinRel]) -> Result<Vec<BinRel>> {
    for g in generators {
        ctx.check_upset(g)?;
    }
    let n = ctx.size();
    let mut seeds = generators.to_vec();
    seeds.extend([ctx.one(), ctx.zero(), BinRel::empty(n), ctx.equiv.clone()]);
    close_under_operations(ctx, seeds)
}

/// Closure of arbitrary up-sets under the `Dq(E)` operations, without
/// adding anything else.
pub fn close_under_operations(ctx: &RepContext, seeds: Vec<BinRel>) -> Result<Vec<BinRel>> {
    let mut set: BTreeSet<BinRel> = BTreeSet::new();
    let mut elems: Vec<BinRel> = Vec::new();
    let mut frontier = 0;
    let push = |r: BinRel, set: &mut BTreeSet<BinRel>, elems: &mut Vec<BinRel>| -> Result<()> {
        if set.insert(r.clone()) {
            if set.len() > SUBALGEBRA_CAP {
                return Err(Error::TooManyUpsets { cap: SUBALGEBRA_CAP });
            }
            elems.push(r);
        }
        Ok(())
    };
    for s in seeds {
        ctx.check_upset(&s)?;
        push(s, &mut set, &mut elems)?;
    }
    while frontier < elems.len() {
        let x = elems[frontier].clone();
        frontier += 1;
        push(ctx.tilde(&x), &mut set, &mut elems)?;
        push(ctx.minus(&x), &mut set, &mut elems)?;
        push(ctx.neg(&x), &mut set, &mut elems)?;
        for j in 0..frontier {
            let y = elems[j].clone();
            push(x.intersection(&y)?, &mut set, &mut elems)?;
            push(x.union(&y)?, &mut set, &mut elems)?;
            push(ctx.compose(&x, &y), &mut set, &mut elems)?;
            push(ctx.compose(&y, &x), &mut set, &mut elems)?;
        }
    }
    Ok(set.into_iter().collect())
}

/// A set of up-sets closed under the operations, viewed as a finite algebra
/// ordered by inclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DqAlgebra {
    pub elements: Vec<BinRel>,
    pub algebra: FiniteAlgebra,
}

/// Build the algebra on a closed list of up-sets (in the given order).
pub fn dq_algebra(ctx: &RepContext, elements: Vec<BinRel>) -> Result<DqAlgebra> {
    let n = elements.len();
    let index: HashMap<&BinRel, usize> = elements.iter().enumerate().map(|(i, r)| (r, i)).collect();
    if index.len() != n {
        return Err(Error::Malformed("duplicate relations in the element list".into()));
    }
    let lookup = |r: &BinRel, what: &str| {
        index.get(r).copied().ok_or_else(|| Error::Malformed(format!("element list is not closed under {what}")))
    };
    let mut leq = vec![false; n * n];
    let mut mult = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            leq[i * n + j] = elements[i].is_subset(&elements[j])?;
            mult[i * n + j] = lookup(&ctx.compose(&elements[i], &elements[j]), ";")?;
        }
    }
    let unary = |f: &dyn Fn(&BinRel) -> BinRel, what: &str| -> Result<Vec<usize>> {
        elements.iter().map(|r| lookup(&f(r), what)).collect()
    };
    let raw = RawAlgebra {
        size: n,
        leq,
        mult,
        one: lookup(&ctx.one(), "1")?,
        zero: Some(lookup(&ctx.zero(), "0")?),
        tilde: Some(unary(&|r| ctx.tilde(r), "∼")?),
        minus: Some(unary(&|r| ctx.minus(r), "−")?),
        neg: Some(unary(&|r| ctx.neg(r), "¬")?),
        names: None,
    };
    let algebra = FiniteAlgebra::new(raw)?;
    Ok(DqAlgebra { elements, algebra })
}

/// `Dq(E)` on all up-sets.
pub fn full_dq(ctx: &RepContext) -> Result<DqAlgebra> {
    dq_algebra(ctx, enumerate_upsets(ctx)?)
}

/// Per-operation verdicts for a map from an algebra into `Dq(E)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub shape: Verdict,
    pub upsets: Verdict,
    pub injective: Verdict,
    /// `a ≤ b ⇔ h(a) ⊆ h(b)`.
    pub order: Verdict,
    pub meet: Verdict,
    pub join: Verdict,
    pub mult: Verdict,
    pub tilde: Verdict,
    pub minus: Verdict,
    pub neg: Verdict,
    pub one: Verdict,
    pub zero: Verdict,
}

impl EmbeddingReport {
    pub fn passes(&self) -> bool {
        [
            &self.shape,
            &self.upsets,
            &self.injective,
            &self.order,
            &self.meet,
            &self.join,
            &self.mult,
            &self.tilde,
            &self.minus,
            &self.neg,
            &self.one,
            &self.zero,
        ]
        .iter()
        .all(|v| v.holds)
    }

    /// Name of the first failing law, if any.
    pub fn first_failure(&self) -> Option<&'static str> {
        [
            ("shape", &self.shape),
            ("upsets", &self.upsets),
            ("injective", &self.injective),
            ("order", &self.order),
            ("meet", &self.meet),
            ("join", &self.join),
            ("mult", &self.mult),
            ("tilde", &self.tilde),
            ("minus", &self.minus),
            ("neg", &self.neg),
            ("one", &self.one),
            ("zero", &self.zero),
        ]
        .into_iter()
        .find(|(_, v)| !v.holds)
        .map(|(name, _)| name)
    }
}

/// A map from a finite algebra into `Dq(E)` with its report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelEmbedding {
    pub source: FiniteAlgebra,
    pub images: Vec<BinRel>,
    pub report: EmbeddingReport,
}

impl RelEmbedding {
    pub fn passes(&self) -> bool {
        self.report.passes()
    }

    pub fn to_record(&self) -> EmbeddingRecord {
        EmbeddingRecord {
            source: Some(self.source.to_record()),
            images: self.images.iter().map(BinRel::to_record).collect(),
            report: Some(self.report.clone()),
        }
    }
}

/// JSON form of an embedding. Only `images` is read back; the source
/// algebra is supplied separately and the report is recomputed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EmbeddingRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<AlgebraRecord>,
    pub images: Vec<RelationRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none", skip_deserializing)]
    pub report: Option<EmbeddingReport>,
}

impl EmbeddingRecord {
    pub fn relations(&self) -> Result<Vec<BinRel>> {
        self.images.iter().map(RelationRecord::to_relation).collect()
    }
}

/// Check every law for `a ↦ images[a]`.
pub fn verify_embedding(alg: &FiniteAlgebra, ctx: &RepContext, images: Vec<BinRel>) -> RelEmbedding {
    let report = embedding_report(alg, ctx, &images);
    RelEmbedding { source: alg.clone(), images, report }
}

fn embedding_report(alg: &FiniteAlgebra, ctx: &RepContext, h: &[BinRel]) -> EmbeddingReport {
    let n = alg.size();
    if h.len() != n || h.iter().any(|r| r.size() != ctx.size()) {
        let bad = Verdict::unavailable("image list does not match the algebra and context");
        return EmbeddingReport {
            shape: bad.clone(),
            upsets: bad.clone(),
            injective: bad.clone(),
            order: bad.clone(),
            meet: bad.clone(),
            join: bad.clone(),
            mult: bad.clone(),
            tilde: bad.clone(),
            minus: bad.clone(),
            neg: bad.clone(),
            one: bad.clone(),
            zero: bad,
        };
    }
    let pairs = || (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)));
    let binary = |bad: &dyn Fn(usize, usize) -> bool| match pairs().find(|&(a, b)| bad(a, b)) {
        Some((a, b)) => Verdict::fails(vec![a, b]),
        None => Verdict::holds(),
    };
    let unary = |t: Option<&[usize]>, f: &dyn Fn(&BinRel) -> BinRel, name: &str| match t {
        None => Verdict::unavailable(format!("{name} is absent from the source algebra")),
        Some(t) => match (0..n).find(|&a| h[t[a]] != f(&h[a])) {
            Some(a) => Verdict::fails(vec![a]),
            None => Verdict::holds(),
        },
    };
    let upsets = match (0..n).find(|&a| ctx.check_upset(&h[a]).is_err()) {
        Some(a) => Verdict::fails(vec![a]),
        None => Verdict::holds(),
    };
    let zero = match alg.zero() {
        None => Verdict::unavailable("0 is absent from the source algebra"),
        Some(z) if h[z] == ctx.zero() => Verdict::holds(),
        Some(z) => Verdict::fails(vec![z]),
    };
    EmbeddingReport {
        shape: Verdict::holds(),
        upsets,
        injective: binary(&|a, b| a < b && h[a] == h[b]),
        order: binary(&|a, b| alg.leq(a, b) != h[a].is_subset(&h[b]).expect("same size")),
        meet: binary(&|a, b| h[alg.meet(a, b)] != h[a].intersection(&h[b]).expect("same size")),
        join: binary(&|a, b| h[alg.join(a, b)] != h[a].union(&h[b]).expect("same size")),
        mult: binary(&|a, b| h[alg.mult(a, b)] != ctx.compose(&h[a], &h[b])),
        tilde: unary(alg.tilde_table(), &|r| ctx.tilde(r), "∼"),
        minus: unary(alg.minus_table(), &|r| ctx.minus(r), "−"),
        neg: unary(alg.neg_table(), &|r| ctx.neg(r), "¬"),
        one: if h[alg.one()] == ctx.one() { Verdict::holds() } else { Verdict::fails(vec![alg.one()]) },
        zero,
    }
}

/// Where the candidate images of an embedding search came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PoolKind {
    /// Every up-set of `E`: a negative answer means no embedding exists.
    AllUpsets,
    /// A caller-supplied pool: a negative answer only means none within it.
    Supplied,
}

#[derive(Debug, Clone)]
pub struct EmbeddingSearch {
    pub embedding: Option<RelEmbedding>,
    pub pool: PoolKind,
    pub pool_size: usize,
}

/// Backtracking search for an embedding of `alg` into `Dq(E)`.
///
/// `1 ↦ ≤` and `0 ↦ α;≤^{c⌣}` are forced, join-irreducibles are assigned
/// first, and every other image follows by propagating the operations.
/// Candidates are tried in the [`BinRel`] order, so the result is the first
/// embedding in that order. Without a pool, all of `Up(E)` is used.
pub fn find_embedding(alg: &FiniteAlgebra, ctx: &RepContext, pool: Option<&[BinRel]>) -> Result<EmbeddingSearch> {
    if alg.tilde_table().is_none() || alg.minus_table().is_none() || alg.neg_table().is_none() {
        return Err(Error::MissingNegations);
    }
    let Some(zero) = alg.zero() else {
        return Err(Error::InFLRequired("the constant 0 is required"));
    };
    let (mut candidates, kind) = match pool {
        Some(p) => {
            for r in p {
                ctx.check_upset(r)?;
            }
            (p.to_vec(), PoolKind::Supplied)
        }
        None => match enumerate_upsets(ctx) {
            Ok(all) => (all, PoolKind::AllUpsets),
            Err(Error::TooManyUpsets { cap }) => {
                return Err(Error::PoolUnavailable(format!(
                    "Up(E) has more than {cap} elements; supply a generated subalgebra as the pool"
                )))
            }
            Err(e) => return Err(e),
        },
    };
    candidates.sort();
    candidates.dedup();
    let pool_size = candidates.len();

    let n = alg.size();
    let mut order = vec![alg.one(), zero, alg.bottom()];
    let join_irreducible =
        |x: usize| x != alg.bottom() && !(0..n).any(|a| (0..n).any(|b| a != x && b != x && alg.join(a, b) == x));
    order.extend((0..n).filter(|&x| join_irreducible(x)));
    order.extend(0..n);
    let mut seen = vec![false; n];
    order.retain(|&x| !std::mem::replace(&mut seen[x], true));

    let search = Search { alg, ctx, candidates: &candidates, order };
    let mut img: Vec<Option<BinRel>> = vec![None; n];
    let embedding = if search.assign(&mut img, alg.one(), ctx.one())
        && search.assign(&mut img, zero, ctx.zero())
        && search.propagate(&mut img)
    {
        search.solve_parallel(img)
    } else {
        None
    };
    Ok(EmbeddingSearch { embedding: embedding.map(|images| verify_embedding(alg, ctx, images)), pool: kind, pool_size })
}

struct Search<'a> {
    alg: &'a FiniteAlgebra,
    ctx: &'a RepContext,
    candidates: &'a [BinRel],
    order: Vec<usize>,
}

impl Search<'_> {
    /// Set `img[x] = r` if compatible with injectivity and the order.
    fn assign(&self, img: &mut [Option<BinRel>], x: usize, r: BinRel) -> bool {
        if let Some(existing) = &img[x] {
            return *existing == r;
        }
        for (y, other) in img.iter().enumerate() {
            let Some(other) = other else { continue };
            if *other == r
                || self.alg.leq(x, y) != r.is_subset(other).expect("same size")
                || self.alg.leq(y, x) != other.is_subset(&r).expect("same size")
            {
                return false;
            }
        }
        img[x] = Some(r);
        true
    }

    /// Derive images forced by the operations until nothing changes.
    fn propagate(&self, img: &mut [Option<BinRel>]) -> bool {
        let alg = self.alg;
        let n = alg.size();
        let tables = [alg.tilde_table().unwrap(), alg.minus_table().unwrap(), alg.neg_table().unwrap()];
        loop {
            let before = img.iter().filter(|r| r.is_some()).count();
            for x in 0..n {
                let Some(rx) = img[x].clone() else { continue };
                let derived = [self.ctx.tilde(&rx), self.ctx.minus(&rx), self.ctx.neg(&rx)];
                for (t, d) in tables.iter().zip(derived) {
                    if !self.assign(img, t[x], d) {
                        return false;
                    }
                }
            }
            for x in 0..n {
                for y in 0..n {
                    let (Some(rx), Some(ry)) = (img[x].clone(), img[y].clone()) else { continue };
                    if x <= y
                        && (!self.assign(img, alg.meet(x, y), rx.intersection(&ry).expect("same size"))
                            || !self.assign(img, alg.join(x, y), rx.union(&ry).expect("same size")))
                    {
                        return false;
                    }
                    if !self.assign(img, alg.mult(x, y), self.ctx.compose(&rx, &ry)) {
                        return false;
                    }
                }
            }
            if img.iter().filter(|r| r.is_some()).count() == before {
                return true;
            }
        }
    }

    fn next_free(&self, img: &[Option<BinRel>]) -> Option<usize> {
        self.order.iter().copied().find(|&x| img[x].is_none())
    }

    fn try_candidate(&self, img: &[Option<BinRel>], x: usize, r: &BinRel) -> Option<Vec<Option<BinRel>>> {
        let mut next = img.to_vec();
        if self.assign(&mut next, x, r.clone()) && self.propagate(&mut next) {
            Some(next)
        } else {
            None
        }
    }

    fn solve(&self, img: Vec<Option<BinRel>>) -> Option<Vec<BinRel>> {
        let Some(x) = self.next_free(&img) else {
            return self.finish(img);
        };
        self.candidates.iter().find_map(|r| self.try_candidate(&img, x, r).and_then(|next| self.solve(next)))
    }

    /// Fan out over the first free element; `find_map_first` keeps the
    /// answer identical to the sequential search.
    fn solve_parallel(&self, img: Vec<Option<BinRel>>) -> Option<Vec<BinRel>> {
        let Some(x) = self.next_free(&img) else {
            return self.finish(img);
        };
        self.candidates.par_iter().find_map_first(|r| self.try_candidate(&img, x, r).and_then(|next| self.solve(next)))
    }

    fn finish(&self, img: Vec<Option<BinRel>>) -> Option<Vec<BinRel>> {
        let images: Vec<BinRel> = img.into_iter().map(|r| r.expect("complete")).collect();
        embedding_report(self.alg, self.ctx, &images).passes().then_some(images)
    }
}
