mod common;

use common::{brute_is_upset, brute_upsets, random_context};
use dqra::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_rel(rng: &mut impl Rng, n: usize, density: f64) -> BinRel {
    let bits: Vec<bool> = (0..n * n).map(|_| rng.gen_bool(density)).collect();
    BinRel::from_fn(n, |x, y| bits[x * n + y])
}

/// Composition from the definition, pair by pair.
fn brute_compose(r: &BinRel, s: &BinRel) -> BinRel {
    let n = r.size();
    BinRel::from_fn(n, |x, y| (0..n).any(|z| r.contains(x, z) && s.contains(z, y)))
}

#[test]
fn composition_matches_the_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let n = rng.gen_range(1..=70);
        let d = rng.gen_range(0.0..0.5);
        let (r, s, t) = (random_rel(&mut rng, n, d), random_rel(&mut rng, n, d), random_rel(&mut rng, n, d));
        let rs = r.compose(&s).unwrap();
        assert_eq!(rs, brute_compose(&r, &s));
        assert_eq!(rs.converse(), s.converse().compose(&r.converse()).unwrap());
        assert_eq!(rs.compose(&t).unwrap(), r.compose(&s.compose(&t).unwrap()).unwrap());
        let id = BinRel::identity(n);
        assert_eq!(id.compose(&r).unwrap(), r);
        assert_eq!(r.compose(&id).unwrap(), r);
        assert_eq!(r.converse().converse(), r);
    }
}

#[test]
fn orders_compose_to_themselves() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let ctx = random_context(&mut rng, 36);
        let le = ctx.leq();
        assert_eq!(le.compose(le).unwrap(), *le);
    }
    let chain = BinRel::from_fn(5, |x, y| x <= y);
    assert_eq!(chain.compose(&chain).unwrap(), chain);
}

#[test]
fn dimension_mismatch() {
    let r = BinRel::identity(2);
    let s = BinRel::identity(3);
    assert_eq!(r.compose(&s).unwrap_err(), Error::DimensionMismatch { left: 2, right: 3 });
}

#[test]
fn complements_inside_e() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let ctx = random_context(&mut rng, 36);
        let e = ctx.equiv();
        let r = random_rel(&mut rng, ctx.size(), 0.5).intersection(e).unwrap();
        let rc = r.complement_in(e).unwrap();
        assert_eq!(r.converse().complement_in(e).unwrap(), rc.converse());
        assert_eq!(rc.complement_in(e).unwrap(), r);
        assert!(rc.intersection(&r).unwrap().is_empty());
        assert_eq!(rc.union(&r).unwrap(), *e);
    }
    let e = BinRel::full(3);
    assert!(e.complement_in(&e).unwrap().is_empty());
    let id = BinRel::identity(2);
    assert_eq!(BinRel::full(2).complement_in(&id).unwrap_err(), Error::NotSubsetOfE(0, 1));
}

#[test]
fn upset_examples() {
    for ctx in [fixtures::point_context(), fixtures::swap_context(), fixtures::diamond_context()] {
        let (p, e) = (ctx.points(), ctx.equiv());
        assert!(is_upset(p, e, ctx.leq()).unwrap());
        assert!(is_upset(p, e, &BinRel::empty(ctx.size())).unwrap());
        assert!(is_upset(p, e, e).unwrap());
    }
    // on the 2-chain 0 < 1 with E = X², (1, 0) is the least pair under ≼
    let ctx = RepContext::new(BinRel::from_fn(2, |x, y| x <= y), BinRel::full(2), vec![0, 1], vec![1, 0]).unwrap();
    let single = BinRel::from_pairs(2, [(1, 0)]).unwrap();
    assert!(!is_upset(ctx.points(), ctx.equiv(), &single).unwrap());
    assert!(!brute_is_upset(&ctx, &single));
    let top = BinRel::from_pairs(2, [(0, 1)]).unwrap();
    assert!(is_upset(ctx.points(), ctx.equiv(), &top).unwrap());
    let outside = BinRel::from_pairs(2, [(0, 1)]).unwrap();
    let id = BinRel::identity(2);
    assert!(matches!(is_upset(ctx.points(), &id, &outside), Err(Error::NotSubsetOfE(0, 1))));
}

#[test]
fn upsets_agree_with_the_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..300 {
        let ctx = random_context(&mut rng, 36);
        let e = ctx.equiv();
        let r = random_rel(&mut rng, ctx.size(), 0.4).intersection(e).unwrap();
        assert_eq!(is_upset(ctx.points(), e, &r).unwrap(), brute_is_upset(&ctx, &r));
        let up = upward_closure(ctx.points(), e, &r).unwrap();
        assert!(brute_is_upset(&ctx, &up));
        assert!(r.is_subset(&up).unwrap());
    }
}

#[test]
fn upsets_are_closed_and_dual_to_downsets() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut checked = 0;
    while checked < 40 {
        let ctx = random_context(&mut rng, 16);
        let ups = brute_upsets(&ctx);
        if ups.len() > 200 {
            continue;
        }
        checked += 1;
        let (p, e) = (ctx.points(), ctx.equiv());
        let down = |r: &BinRel| {
            // R is a down-set iff its complement in E is an up-set
            is_upset(p, e, &r.complement_in(e).unwrap()).unwrap()
        };
        for r in &ups {
            assert!(down(&r.complement_in(e).unwrap()));
            assert!(down(&r.converse()), "converse of an up-set is a down-set");
            for s in &ups {
                for t in [r.intersection(s).unwrap(), r.union(s).unwrap(), r.compose(s).unwrap()] {
                    assert!(is_upset(p, e, &t).unwrap());
                }
            }
        }
    }
}

#[test]
fn graph_identities() {
    let swap = fixtures::swap_context();
    let verdict = graph_identities_check(swap.alpha(), swap.leq(), swap.equiv()).unwrap();
    assert!(verdict.holds);
    let id: Vec<usize> = (0..4).collect();
    assert!(graph_identities_check(&id, &BinRel::identity(4), &BinRel::full(4)).unwrap().holds);
    assert!(matches!(
        graph_identities_check(&[0, 0], &BinRel::empty(2), &BinRel::full(2)),
        Err(Error::NotABijection(_))
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..200 {
        let ctx = random_context(&mut rng, 36);
        let e = ctx.equiv();
        let r = random_rel(&mut rng, ctx.size(), 0.5).intersection(e).unwrap();
        for g in [ctx.alpha(), ctx.beta()] {
            assert!(graph_identities_check(g, &r, e).unwrap().holds);
        }
    }
}
