mod common;

use common::brute_is_upset;
use dqra::*;

fn pair(n: usize, x: usize, y: usize) -> BinRel {
    BinRel::from_pairs(n, [(x, y)]).unwrap()
}

/// Rank of every point: the length of the longest chain below it.
fn ranks(p: &PointSet) -> Vec<usize> {
    let n = p.size();
    let mut rank = vec![0; n];
    // relaxing n times settles every longest path
    for _ in 0..n {
        for (x, y) in p.covers() {
            rank[y] = rank[y].max(rank[x] + 1);
        }
    }
    rank
}

/// Level sizes of a graded poset whose covers join every point of a level
/// to every point of the next one; `None` if it is not of that shape.
fn ladder(p: &PointSet) -> Option<Vec<usize>> {
    let rank = ranks(p);
    let height = rank.iter().max().copied().unwrap_or(0);
    let levels: Vec<Vec<usize>> = (0..=height).map(|h| (0..p.size()).filter(|&x| rank[x] == h).collect()).collect();
    let mut expected: Vec<(usize, usize)> = Vec::new();
    for w in levels.windows(2) {
        for &x in &w[0] {
            for &y in &w[1] {
                expected.push((x, y));
            }
        }
    }
    let mut covers = p.covers();
    covers.sort();
    expected.sort();
    (covers == expected).then(|| levels.iter().map(Vec::len).collect())
}

#[test]
fn ten_point_poset_over_the_diamond() {
    let nctx = build_nested_context(&fixtures::diamond_context()).unwrap();
    let ctx = &nctx.ctx;
    assert_eq!(ctx.size(), 10);
    assert_eq!(nctx.l_point_map, vec![0, 1]);
    let (u, v) = (0, 1);
    let [lx, ly, ux, uy] = nctx.copies(u).unwrap();
    assert_eq!([lx, ly, ux, uy], [2, 3, 4, 5]);
    assert_eq!(nctx.copies(v).unwrap(), [6, 7, 8, 9]);
    let mut covers = ctx.points().covers();
    covers.sort();
    assert_eq!(covers, vec![(0, 4), (0, 5), (1, 8), (1, 9), (2, 0), (3, 0), (6, 1), (7, 1)]);
    assert!(ctx.leq().contains(lx, uy) && !ctx.leq().contains(u, v));
    assert_eq!(ctx.blocks(), vec![vec![0, 2, 3, 4, 5], vec![1, 6, 7, 8, 9]]);
    assert_eq!(ctx.alpha(), &[0, 1, 3, 2, 5, 4, 7, 6, 9, 8]);
    assert_eq!(ctx.beta(), &[0, 1, 4, 5, 2, 3, 8, 9, 6, 7]);
    assert_eq!(nctx.tags[3], nested_rep::PointTag { block: 0, layer: nested_rep::Layer::Lower, k_point: Some(1) });
}

#[test]
fn five_and_six_point_contexts() {
    let five = build_nested_context(&fixtures::point_context()).unwrap().ctx;
    assert_eq!(five.size(), 5);
    assert_eq!(*five.equiv(), BinRel::full(5));
    assert_eq!(five.alpha(), &[0, 2, 1, 4, 3]);
    assert_eq!(five.beta(), &[0, 3, 4, 1, 2]);
    assert_eq!(ladder(five.points()), Some(vec![2, 1, 2]));

    let six = build_nested_context(&fixtures::swap_context()).unwrap().ctx;
    assert_eq!(six.size(), 6);
    assert_eq!(*six.equiv(), BinRel::full(6));
    assert_eq!(six.alpha(), &[1, 0, 3, 2, 5, 4]);
    assert_eq!(six.beta(), &[0, 1, 4, 5, 2, 3]);
    assert_eq!(ladder(six.points()), Some(vec![2, 2, 2]));
}

#[test]
fn psi_over_the_diamond() {
    let nctx = build_nested_context(&fixtures::diamond_context()).unwrap();
    let psi = build_psi(&nctx, &fixtures::l1(), &fixtures::diamond_embedding()).unwrap();
    let ctx = &nctx.ctx;
    let le = ctx.leq();
    let n = ctx.size();
    let without = |p: usize| le.difference(&pair(n, p, p)).unwrap();
    let names: Vec<String> = (0..6).map(|x| psi.sum.algebra.name(x)).collect();
    assert_eq!(names, ["a-1", "a1", "0", "a", "b", "1"]);
    let r = le.difference(&BinRel::from_pairs(n, [(0, 0), (1, 1)]).unwrap()).unwrap();
    assert_eq!(psi.r_relation, r);
    assert_eq!(psi.images, vec![BinRel::empty(n), ctx.equiv().clone(), r, without(1), without(0), le.clone()]);
    assert_eq!(psi.images[3], psi.r_relation.union(&pair(n, 0, 0)).unwrap());
    assert_eq!(ctx.neg(&psi.images[3]), psi.images[4]);
    for img in &psi.images {
        assert!(brute_is_upset(ctx, img));
    }
    assert!(psi.embedding.passes());
    let (_, zero) = dq_constants(ctx);
    assert_eq!(zero, psi.images[2]);
}

#[test]
fn four_and_five_chains() {
    let (ctx, emb) = sugihara_representation(4).unwrap();
    let n = ctx.size();
    let le = ctx.leq();
    assert_eq!(emb.images, vec![BinRel::empty(n), le.difference(&pair(n, 0, 0)).unwrap(), le.clone(), BinRel::full(n)]);

    let (ctx, emb) = sugihara_representation(5).unwrap();
    let n = ctx.size();
    let le = ctx.leq();
    let diag = BinRel::from_pairs(n, [(0, 0), (1, 1)]).unwrap();
    let cross = BinRel::from_pairs(n, [(0, 1), (1, 0)]).unwrap();
    assert_eq!(
        emb.images,
        vec![BinRel::empty(n), le.difference(&diag).unwrap(), le.clone(), le.union(&cross).unwrap(), BinRel::full(n)]
    );
}

#[test]
fn every_chain_up_to_nine() {
    let points = [(2, 1), (3, 2), (4, 5), (5, 6), (6, 9), (7, 10), (8, 13), (9, 14)];
    for (n, count) in points {
        let (ctx, emb) = sugihara_representation(n).unwrap();
        assert!(emb.passes(), "S{n}");
        assert_eq!(ctx.size(), count, "S{n}");
        assert_eq!(emb.source, sugihara_chain(n).unwrap().into_algebra());
        assert_eq!(emb.images[emb.source.one()], *ctx.leq());
        if n >= 4 {
            // n − 2 levels of two points, with a single middle point for even n
            let mut want = vec![2; n - 2];
            if n % 2 == 0 {
                want.insert((n - 2) / 2, 1);
            }
            assert_eq!(ladder(ctx.points()), Some(want), "S{n}");
        }
    }
    assert!(matches!(sugihara_representation(1), Err(Error::SizeTooSmall { .. })));
}

#[test]
fn ladders_up_to_seven() {
    let shapes = [(4, vec![2, 1, 2]), (5, vec![2, 2, 2]), (6, vec![2, 2, 1, 2, 2]), (7, vec![2, 2, 2, 2, 2])];
    for (n, shape) in shapes {
        let (ctx, _) = sugihara_representation(n).unwrap();
        assert_eq!(ladder(ctx.points()), Some(shape));
    }
}

#[test]
fn nested_over_odd_chains() {
    let l1 = fixtures::l1();
    let (ctx, emb) =
        sn_nested_representation(3, &l1, &fixtures::diamond_context(), &fixtures::diamond_embedding()).unwrap();
    assert_eq!(ctx.size(), 10);
    assert!(emb.passes());

    let (ctx, emb) =
        sn_nested_representation(5, &l1, &fixtures::diamond_context(), &fixtures::diamond_embedding()).unwrap();
    assert_eq!(ctx.size(), 18);
    assert!(emb.passes());
    let s5l1 = nested_sum(sugihara_chain(5).unwrap().algebra(), &l1).unwrap().algebra;
    assert_eq!(emb.source, s5l1);
    assert!(check_axioms(&s5l1).dqra.holds);

    let s2 = sugihara_chain(2).unwrap().into_algebra();
    let (ctx, emb) =
        sn_nested_representation(5, &s2, &fixtures::point_context(), &fixtures::point_embedding()).unwrap();
    assert!(emb.passes());
    let f = collapse_iso(5, 2).unwrap();
    assert!(f.is_isomorphism());
    let s6 = sugihara_chain(6).unwrap();
    let mut images = vec![BinRel::empty(ctx.size()); 6];
    for (x, img) in emb.images.iter().enumerate() {
        images[f.map[x]] = img.clone();
    }
    assert!(verify_embedding(s6.algebra(), &ctx, images).passes());

    assert_eq!(
        sn_nested_representation(4, &l1, &fixtures::diamond_context(), &fixtures::diamond_embedding()).unwrap_err(),
        Error::EvenOuterChain(4)
    );
    let broken = verify_embedding(&l1, &fixtures::diamond_context(), {
        let mut v = fixtures::diamond_embedding().images;
        v.swap(1, 3);
        v
    });
    assert!(matches!(
        sn_nested_representation(3, &l1, &fixtures::diamond_context(), &broken),
        Err(Error::EmbeddingInvalid(_))
    ));
}
