//! Named small algebras and representation contexts.

use crate::algebra::{FiniteAlgebra, RawAlgebra};
use crate::nested_rep::{build_nested_context, build_psi, sugihara_representation};
use crate::nested_sum::nested_sum;
use crate::relation::{BinRel, PointSet};
use crate::representation::{verify_embedding, RelEmbedding, RepContext};
use crate::sugihara::sugihara_chain;

fn build(
    names: &[&str],
    leq_pairs: &[(usize, usize)],
    mult: &[[usize; 5]],
    one: usize,
    zero: usize,
    negation: &[usize],
) -> FiniteAlgebra {
    let n = names.len();
    let mut leq = vec![false; n * n];
    for a in 0..n {
        leq[a * n + a] = true;
    }
    for &(a, b) in leq_pairs {
        leq[a * n + b] = true;
    }
    FiniteAlgebra::new(RawAlgebra {
        size: n,
        leq,
        mult: mult.iter().flat_map(|row| row[..n].to_vec()).collect(),
        one,
        zero: Some(zero),
        tilde: Some(negation.to_vec()),
        minus: Some(negation.to_vec()),
        neg: Some(negation.to_vec()),
        names: Some(names.iter().map(|s| s.to_string()).collect()),
    })
    .expect("fixture tables are valid")
}

/// The four-element Boolean diamond `0 < a, b < 1` with `· = ∧`; every
/// negation is complementation.
pub fn l1() -> FiniteAlgebra {
    // 0 a b 1
    build(
        &["0", "a", "b", "1"],
        &[(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)],
        &[[0, 0, 0, 0, 0], [0, 1, 0, 1, 0], [0, 0, 2, 2, 0], [0, 1, 2, 3, 0]],
        3,
        0,
        &[3, 2, 1, 0],
    )
}

/// The diamond `⊥ < a, 1 < ⊤` with `1 = 0` and `a·a = ⊥`; the negations
/// swap `⊥` and `⊤` and fix `a` and `1`.
pub fn k2() -> FiniteAlgebra {
    // ⊥ a 1 ⊤
    build(
        &["⊥", "a", "1", "⊤"],
        &[(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)],
        &[[0, 0, 0, 0, 0], [0, 0, 1, 1, 0], [0, 1, 2, 3, 0], [0, 1, 3, 3, 0]],
        2,
        2,
        &[3, 1, 2, 0],
    )
}

/// The five-element qRA on the pentagon `⊥ < 0 < 1 < ⊤`, `⊥ < a < ⊤`.
/// Fixing `0·0`, `0·a`, `a·0`, `a·a` and the negations of `0` and `a`
/// forces the rest of the table (see the tests); the result is `K₂[S₂]`.
pub fn k2_l2() -> FiniteAlgebra {
    // ⊥ 0 1 a ⊤
    build(
        &["⊥", "0", "1", "a", "⊤"],
        &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 4), (2, 4), (3, 4)],
        &[[0, 0, 0, 0, 0], [0, 1, 1, 3, 4], [0, 1, 2, 3, 4], [0, 3, 3, 0, 3], [0, 4, 4, 3, 4]],
        2,
        1,
        &[4, 2, 1, 3, 0],
    )
}

/// The one-element algebra.
pub fn trivial() -> FiniteAlgebra {
    FiniteAlgebra::new(RawAlgebra {
        size: 1,
        leq: vec![true],
        mult: vec![0],
        one: 0,
        zero: Some(0),
        tilde: Some(vec![0]),
        minus: Some(vec![0]),
        neg: Some(vec![0]),
        names: Some(vec!["1".into()]),
    })
    .expect("trivial algebra is valid")
}

/// One point `u`, `E = X²`, `α = β = id`. Represents `S₂`.
pub fn point_context() -> RepContext {
    RepContext::new(BinRel::identity(1), BinRel::full(1), vec![0], vec![0]).expect("valid context")
}

/// `a₋₁ ↦ ∅`, `a₁ ↦ X²`.
pub fn point_embedding() -> RelEmbedding {
    let s2 = sugihara_chain(2).expect("S₂");
    verify_embedding(s2.algebra(), &point_context(), vec![BinRel::empty(1), BinRel::full(1)])
}

/// Two incomparable points `x, y`, `E = X²`, `α` swaps them, `β = id`.
/// Represents `S₃`.
pub fn swap_context() -> RepContext {
    RepContext::new(BinRel::identity(2), BinRel::full(2), vec![1, 0], vec![0, 1]).expect("valid context")
}

/// `a₋₁ ↦ ∅`, `a₀ ↦ ≤`, `a₁ ↦ X²`.
pub fn swap_embedding() -> RelEmbedding {
    let s3 = sugihara_chain(3).expect("S₃");
    verify_embedding(s3.algebra(), &swap_context(), vec![BinRel::empty(2), BinRel::identity(2), BinRel::full(2)])
}

/// Two incomparable points `u, v`, `E = α = β = id`. Represents `L₁`.
pub fn diamond_context() -> RepContext {
    RepContext::new(BinRel::identity(2), BinRel::identity(2), vec![0, 1], vec![0, 1]).expect("valid context")
}

/// `0 ↦ ∅`, `a ↦ {(u,u)}`, `b ↦ {(v,v)}`, `1 ↦ E`.
pub fn diamond_embedding() -> RelEmbedding {
    let one_pair = |p: usize| BinRel::from_pairs(2, [(p, p)]).expect("in range");
    verify_embedding(&l1(), &diamond_context(), vec![BinRel::empty(2), one_pair(0), one_pair(1), BinRel::identity(2)])
}

/// A named object of the fixture catalogue.
#[derive(Debug, Clone)]
pub enum Fixture {
    Algebra(FiniteAlgebra),
    Representation(Box<(RepContext, RelEmbedding)>),
    Poset(PointSet),
}

/// The standard small algebras, ladder posets and representations, by file
/// stem.
pub fn catalogue() -> Vec<(String, Fixture)> {
    let mut out: Vec<(String, Fixture)> = vec![
        ("l1".into(), Fixture::Algebra(l1())),
        ("k2".into(), Fixture::Algebra(k2())),
        ("k2l2".into(), Fixture::Algebra(k2_l2())),
    ];
    for n in 2..=7 {
        out.push((format!("s{n}"), Fixture::Algebra(sugihara_chain(n).expect("n ≥ 2").into_algebra())));
    }
    let s2 = sugihara_chain(2).expect("S₂").into_algebra();
    let s3 = sugihara_chain(3).expect("S₃").into_algebra();
    out.push(("s3l1".into(), Fixture::Algebra(nested_sum(&s3, &l1()).expect("admissible").algebra)));
    out.push(("k2s2".into(), Fixture::Algebra(nested_sum(&k2(), &s2).expect("admissible").algebra)));
    out.push(("rep_s2".into(), Fixture::Representation(Box::new((point_context(), point_embedding())))));
    out.push(("rep_s3".into(), Fixture::Representation(Box::new((swap_context(), swap_embedding())))));
    out.push(("rep_l1".into(), Fixture::Representation(Box::new((diamond_context(), diamond_embedding())))));
    let nctx = build_nested_context(&diamond_context()).expect("valid");
    out.push(("poset_s3l1".into(), Fixture::Poset(nctx.ctx.points().clone())));
    let psi = build_psi(&nctx, &l1(), &diamond_embedding()).expect("verified");
    out.push(("rep_s3l1".into(), Fixture::Representation(Box::new((nctx.ctx.clone(), psi.embedding)))));
    for n in 4..=7 {
        let (ctx, emb) = sugihara_representation(n).expect("verified");
        out.push((format!("poset_s{n}"), Fixture::Poset(ctx.points().clone())));
        out.push((format!("rep_s{n}"), Fixture::Representation(Box::new((ctx, emb)))));
    }
    out
}
