//! Representations of nested sums `S₃[L]` built from a representation of
//! `L`, and their iteration to every finite Sugihara chain.
//!
//! The outer context is always the one representing `S₃`: a two-point
//! antichain `{x, y}` with `α` swapping the points and `β` the identity.
//! For every `E_L`-block `[z]` a lower copy `{x_[z], y_[z]}` is placed below
//! the block and an upper copy `{x^[z], y^[z]}` above it.

use serde::Serialize;

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::fixtures;
use crate::iso::check_isomorphism;
use crate::nested_sum::{nested_sum, NestedSum, Part};
use crate::relation::BinRel;
use crate::representation::{verify_embedding, RelEmbedding, RepContext};
use crate::sugihara::{collapse_iso, index_of, label_of, sugihara_chain};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Layer {
    Lower,
    Core,
    Upper,
}

/// Provenance of a point of the nested context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PointTag {
    /// Least point (in the old context) of the `E_L`-block.
    pub block: usize,
    pub layer: Layer,
    /// 0 for `x`, 1 for `y`; `None` for points of `X_L`.
    pub k_point: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NestedContext {
    pub ctx: RepContext,
    pub tags: Vec<PointTag>,
    /// Old point of `X_L` → new index (the identity by construction).
    pub l_point_map: Vec<usize>,
}

impl NestedContext {
    /// Indices `[x_[z], y_[z], x^[z], y^[z]]` of the copies for the block
    /// with the given id.
    pub fn copies(&self, block: usize) -> Option<[usize; 4]> {
        let find = |layer: Layer, k: usize| {
            self.tags.iter().position(|t| t.block == block && t.layer == layer && t.k_point == Some(k))
        };
        Some([find(Layer::Lower, 0)?, find(Layer::Lower, 1)?, find(Layer::Upper, 0)?, find(Layer::Upper, 1)?])
    }
}

/// Build the context for `S₃[L]` from a context for `L`.
///
/// Points of `X_L` keep their indices; the four copies of each block follow
/// in block order, lower before upper, `x` before `y`.
pub fn build_nested_context(ctx_l: &RepContext) -> Result<NestedContext> {
    let nl = ctx_l.size();
    let blocks = ctx_l.blocks();
    let n = nl + 4 * blocks.len();
    let mut tags: Vec<PointTag> = (0..nl)
        .map(|p| {
            let block = blocks.iter().find(|b| b.contains(&p)).expect("every point lies in a block")[0];
            PointTag { block, layer: Layer::Core, k_point: None }
        })
        .collect();
    let mut leq = BinRel::identity(n);
    let mut equiv = BinRel::empty(n);
    let mut alpha: Vec<usize> = (0..n).collect();
    let mut beta: Vec<usize> = (0..n).collect();
    for (x, y) in ctx_l.leq().pairs() {
        leq.insert(x, y);
    }
    alpha[..nl].copy_from_slice(ctx_l.alpha());
    beta[..nl].copy_from_slice(ctx_l.beta());
    for (b, block) in blocks.iter().enumerate() {
        let base = nl + 4 * b;
        let (lx, ly, ux, uy) = (base, base + 1, base + 2, base + 3);
        let id = block[0];
        tags.push(PointTag { block: id, layer: Layer::Lower, k_point: Some(0) });
        tags.push(PointTag { block: id, layer: Layer::Lower, k_point: Some(1) });
        tags.push(PointTag { block: id, layer: Layer::Upper, k_point: Some(0) });
        tags.push(PointTag { block: id, layer: Layer::Upper, k_point: Some(1) });
        for &z in block {
            for u in [ux, uy] {
                leq.insert(z, u);
            }
            for l in [lx, ly] {
                leq.insert(l, z);
            }
        }
        for l in [lx, ly] {
            for u in [ux, uy] {
                leq.insert(l, u);
            }
        }
        let members: Vec<usize> = block.iter().copied().chain(base..base + 4).collect();
        for &p in &members {
            for &q in &members {
                equiv.insert(p, q);
            }
        }
        // α swaps x and y inside each copy; β exchanges the two layers.
        alpha[lx] = ly;
        alpha[ly] = lx;
        alpha[ux] = uy;
        alpha[uy] = ux;
        beta[lx] = ux;
        beta[ux] = lx;
        beta[ly] = uy;
        beta[uy] = ly;
    }
    let ctx = RepContext::new(leq, equiv, alpha, beta)?;
    Ok(NestedContext { ctx, tags, l_point_map: (0..nl).collect() })
}

/// The images of `ψ` on the nested sum `S₃[L]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiMap {
    pub sum: NestedSum,
    /// `ψ(m)` for every element `m` of the nested sum.
    pub images: Vec<BinRel>,
    /// `R = ≤_{X_{K[L]}} ∖ ≤_{X_L}`.
    pub r_relation: BinRel,
    pub embedding: RelEmbedding,
}

fn lift(r: &BinRel, n: usize, map: &[usize]) -> BinRel {
    let mut out = BinRel::empty(n);
    for (x, y) in r.pairs() {
        out.insert(map[x], map[y]);
    }
    out
}

/// `ψ(a₋₁) = ∅`, `ψ(a₁) = E`, `ψ(m) = R ∪ φ_L(m)` for `m ∈ L`.
pub fn build_psi(nctx: &NestedContext, l: &FiniteAlgebra, phi_l: &RelEmbedding) -> Result<PsiMap> {
    let nl = nctx.l_point_map.len();
    if phi_l.images.len() != l.size() || phi_l.images.iter().any(|r| r.size() != nl) {
        return Err(Error::EmbeddingInvalid("φ_L does not match L and its context".into()));
    }
    if phi_l.source != *l {
        return Err(Error::EmbeddingInvalid("φ_L was built for a different algebra".into()));
    }
    if !phi_l.passes() {
        return Err(Error::EmbeddingInvalid(format!(
            "φ_L fails {}",
            phi_l.report.first_failure().unwrap_or("verification")
        )));
    }
    let s3 = sugihara_chain(3)?;
    let sum = nested_sum(s3.algebra(), l)?;
    let n = nctx.ctx.size();
    // No arcs are added between points of X_L, so ≤_L is the part of ≤
    // lying inside X_L.
    let core = &nctx.l_point_map;
    let order_l = BinRel::from_fn(n, |x, y| core.contains(&x) && core.contains(&y) && nctx.ctx.leq().contains(x, y));
    let r_relation = nctx.ctx.leq().difference(&order_l)?;
    let bottom_k = s3.index(-1).expect("a₋₁ ∈ S₃");
    let images: Vec<BinRel> = (0..sum.algebra.size())
        .map(|x| match sum.part(x) {
            Part::K(k) if k == bottom_k => BinRel::empty(n),
            Part::K(_) => nctx.ctx.equiv().clone(),
            Part::L(m) => r_relation.union(&lift(&phi_l.images[m], n, &nctx.l_point_map)).expect("same size"),
        })
        .collect();
    let embedding = verify_embedding(&sum.algebra, &nctx.ctx, images.clone());
    if !embedding.passes() {
        return Err(Error::EmbeddingInvalid(format!(
            "ψ fails {}",
            embedding.report.first_failure().unwrap_or("verification")
        )));
    }
    Ok(PsiMap { sum, images, r_relation, embedding })
}

/// A verified finite representation of `S_n`: the one-point context for
/// `n = 2`, the swap context for `n = 3`, and `S₃[S_{n−2}] ≅ S_n` above.
pub fn sugihara_representation(n: usize) -> Result<(RepContext, RelEmbedding)> {
    match n {
        0 | 1 => Err(Error::SizeTooSmall { n, min: 2 }),
        2 => Ok((fixtures::point_context(), fixtures::point_embedding())),
        3 => Ok((fixtures::swap_context(), fixtures::swap_embedding())),
        _ => {
            let (ctx_inner, phi) = sugihara_representation(n - 2)?;
            let inner = sugihara_chain(n - 2)?;
            let nctx = build_nested_context(&ctx_inner)?;
            let psi = build_psi(&nctx, inner.algebra(), &phi)?;
            let iso = collapse_iso(3, n - 2)?;
            if !iso.is_isomorphism() {
                return Err(Error::EmbeddingInvalid(format!("S₃[S_{}] does not collapse onto S_{n}", n - 2)));
            }
            let mut images = vec![BinRel::empty(nctx.ctx.size()); n];
            for (x, img) in psi.images.into_iter().enumerate() {
                images[iso.map[x]] = img;
            }
            let target = sugihara_chain(n)?;
            let emb = verify_embedding(target.algebra(), &nctx.ctx, images);
            if !emb.passes() {
                return Err(Error::EmbeddingInvalid(format!(
                    "representation of S_{n} fails {}",
                    emb.report.first_failure().unwrap_or("verification")
                )));
            }
            Ok((nctx.ctx, emb))
        }
    }
}

/// A verified representation of `S_n[L]` for odd `n`, through
/// `S_n[L] ≅ S₃[S_{n−2}[L]]`.
pub fn sn_nested_representation(
    n: usize,
    l: &FiniteAlgebra,
    ctx_l: &RepContext,
    phi_l: &RelEmbedding,
) -> Result<(RepContext, RelEmbedding)> {
    if n % 2 == 0 {
        return Err(Error::EvenOuterChain(n));
    }
    if n < 3 {
        return Err(Error::SizeTooSmall { n, min: 3 });
    }
    if n == 3 {
        let nctx = build_nested_context(ctx_l)?;
        let psi = build_psi(&nctx, l, phi_l)?;
        return Ok((nctx.ctx, psi.embedding));
    }
    let (ctx_m, phi_m) = sn_nested_representation(n - 2, l, ctx_l, phi_l)?;
    let inner = nested_sum(sugihara_chain(n - 2)?.algebra(), l)?;
    let nctx = build_nested_context(&ctx_m)?;
    let psi = build_psi(&nctx, &inner.algebra, &phi_m)?;
    let target = nested_sum(sugihara_chain(n)?.algebra(), l)?;

    // a_{±k} of S_n go to a_{±1} of the outer S₃; the remaining a_j of S_n
    // go to a_j of S_{n−2}; L is carried along.
    let k = (n / 2) as i64;
    let outer = &psi.sum;
    let mut h = vec![usize::MAX; target.algebra.size()];
    for (idx, new) in target.from_k.iter().enumerate() {
        let Some(new) = *new else { continue };
        let j = label_of(n, idx);
        h[new] = if j.abs() == k {
            let s3_idx = index_of(3, j.signum()).expect("a±1 ∈ S₃");
            outer.from_k[s3_idx].expect("a±1 ≠ a₀")
        } else {
            let inner_k = index_of(n - 2, j).expect("label inside S_{n−2}");
            outer.from_l[inner.from_k[inner_k].expect("a_j ≠ a₀")]
        };
    }
    for (m, &new) in target.from_l.iter().enumerate() {
        h[new] = outer.from_l[inner.from_l[m]];
    }
    if !check_isomorphism(&target.algebra, &outer.algebra, &h).all_hold() {
        return Err(Error::EmbeddingInvalid(format!("S_{n}[L] does not match S₃[S_{}[L]]", n - 2)));
    }
    let images: Vec<BinRel> = h.iter().map(|&y| psi.images[y].clone()).collect();
    let emb = verify_embedding(&target.algebra, &nctx.ctx, images);
    if !emb.passes() {
        return Err(Error::EmbeddingInvalid(format!(
            "representation of S_{n}[L] fails {}",
            emb.report.first_failure().unwrap_or("verification")
        )));
    }
    Ok((nctx.ctx, emb))
}
