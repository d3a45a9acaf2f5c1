//! Isomorphism search, preservation checks and canonical forms.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::FiniteAlgebra;
use crate::axioms::Verdict;
use crate::error::{Error, Result};

/// Per-operation verdicts for a map between two algebras.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PreservationReport {
    pub bijective: Verdict,
    /// `a ≤ b ⇔ f(a) ≤ f(b)`.
    pub order: Verdict,
    pub meet: Verdict,
    pub join: Verdict,
    pub mult: Verdict,
    pub one: Verdict,
    pub zero: Verdict,
    pub tilde: Verdict,
    pub minus: Verdict,
    pub neg: Verdict,
}

impl PreservationReport {
    pub fn all_hold(&self) -> bool {
        [
            &self.bijective,
            &self.order,
            &self.meet,
            &self.join,
            &self.mult,
            &self.one,
            &self.zero,
            &self.tilde,
            &self.minus,
            &self.neg,
        ]
        .iter()
        .all(|v| v.holds)
    }
}

/// A function between carriers together with its preservation report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgebraMap {
    pub map: Vec<usize>,
    pub report: PreservationReport,
}

impl AlgebraMap {
    pub fn is_isomorphism(&self) -> bool {
        self.report.all_hold()
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)))
}

fn binary_verdict(n: usize, bad: impl Fn(usize, usize) -> bool) -> Verdict {
    match pairs(n).find(|&(a, b)| bad(a, b)) {
        Some((a, b)) => Verdict::fails(vec![a, b]),
        None => Verdict::holds(),
    }
}

fn unary_verdict(n: usize, src: Option<&[usize]>, dst: Option<&[usize]>, f: &[usize]) -> Verdict {
    match (src, dst) {
        (None, None) => Verdict::holds(),
        (Some(s), Some(d)) => match (0..n).find(|&a| f[s[a]] != d[f[a]]) {
            Some(a) => Verdict::fails(vec![a]),
            None => Verdict::holds(),
        },
        _ => Verdict::unavailable("operation present on one side only"),
    }
}

/// Check every operation for `f: A → B` given as `f[a]`.
pub fn check_isomorphism(a: &FiniteAlgebra, b: &FiniteAlgebra, f: &[usize]) -> PreservationReport {
    let n = a.size();
    if f.len() != n || b.size() != n || f.iter().any(|&x| x >= n) {
        let bad = Verdict::unavailable("map does not have the right shape");
        return PreservationReport {
            bijective: bad.clone(),
            order: bad.clone(),
            meet: bad.clone(),
            join: bad.clone(),
            mult: bad.clone(),
            one: bad.clone(),
            zero: bad.clone(),
            tilde: bad.clone(),
            minus: bad.clone(),
            neg: bad,
        };
    }
    let mut seen = vec![usize::MAX; n];
    let mut bijective = Verdict::holds();
    for x in 0..n {
        if seen[f[x]] != usize::MAX {
            bijective = Verdict::fails(vec![seen[f[x]], x]);
            break;
        }
        seen[f[x]] = x;
    }
    let zero = match (a.zero(), b.zero()) {
        (None, None) => Verdict::holds(),
        (Some(z), Some(w)) if f[z] == w => Verdict::holds(),
        (Some(z), Some(_)) => Verdict::fails(vec![z]),
        _ => Verdict::unavailable("0 present on one side only"),
    };
    PreservationReport {
        bijective,
        order: binary_verdict(n, |x, y| a.leq(x, y) != b.leq(f[x], f[y])),
        meet: binary_verdict(n, |x, y| f[a.meet(x, y)] != b.meet(f[x], f[y])),
        join: binary_verdict(n, |x, y| f[a.join(x, y)] != b.join(f[x], f[y])),
        mult: binary_verdict(n, |x, y| f[a.mult(x, y)] != b.mult(f[x], f[y])),
        one: if f[a.one()] == b.one() { Verdict::holds() } else { Verdict::fails(vec![a.one()]) },
        zero,
        tilde: unary_verdict(n, a.tilde_table(), b.tilde_table(), f),
        minus: unary_verdict(n, a.minus_table(), b.minus_table(), f),
        neg: unary_verdict(n, a.neg_table(), b.neg_table(), f),
    }
}

/// Isomorphism-invariant colour of every element, refined until stable.
/// Colour ids are ranks of sorted signatures, so equal colours across two
/// algebras mean equal invariants.
fn refined_colours(a: &FiniteAlgebra) -> Vec<usize> {
    let n = a.size();
    let unary = |t: Option<&[usize]>, x: usize| t.map(|t| t[x]);
    let mut colour: Vec<usize> = {
        let sigs: Vec<Vec<usize>> = (0..n)
            .map(|x| {
                let down = (0..n).filter(|&y| a.leq(y, x)).count();
                let up = (0..n).filter(|&y| a.leq(x, y)).count();
                let fixed = |t: Option<&[usize]>| match unary(t, x) {
                    None => 0,
                    Some(y) if y == x => 1,
                    Some(_) => 2,
                };
                vec![
                    down,
                    up,
                    usize::from(x == a.one()),
                    usize::from(a.zero() == Some(x)),
                    usize::from(a.mult(x, x) == x),
                    fixed(a.tilde_table()),
                    fixed(a.minus_table()),
                    fixed(a.neg_table()),
                    (0..n).filter(|&y| a.mult(y, y) == x).count(),
                ]
            })
            .collect();
        rank(&sigs)
    };
    loop {
        let classes = count_distinct(&colour);
        let sigs: Vec<Vec<usize>> = (0..n)
            .map(|x| {
                let mut sig = vec![colour[x]];
                for t in [a.tilde_table(), a.minus_table(), a.neg_table()] {
                    sig.push(t.map_or(usize::MAX, |t| colour[t[x]]));
                }
                let mut row: Vec<[usize; 5]> = (0..n)
                    .map(|y| {
                        [
                            colour[y],
                            usize::from(a.leq(x, y)) * 2 + usize::from(a.leq(y, x)),
                            colour[a.mult(x, y)],
                            colour[a.mult(y, x)],
                            colour[a.meet(x, y)] * n + colour[a.join(x, y)],
                        ]
                    })
                    .collect();
                row.sort_unstable();
                sig.extend(row.into_iter().flatten());
                sig
            })
            .collect();
        colour = rank(&sigs);
        if count_distinct(&colour) == classes {
            return colour;
        }
    }
}

fn rank(sigs: &[Vec<usize>]) -> Vec<usize> {
    let mut sorted: Vec<&Vec<usize>> = sigs.iter().collect();
    sorted.sort();
    sorted.dedup();
    let ids: BTreeMap<&Vec<usize>, usize> = sorted.into_iter().enumerate().map(|(i, s)| (s, i)).collect();
    sigs.iter().map(|s| ids[s]).collect()
}

fn count_distinct(c: &[usize]) -> usize {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// Search for an isomorphism `A → B`, returned as `f[a]`.
pub fn are_isomorphic(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Option<Vec<usize>> {
    let n = a.size();
    if b.size() != n || !a.same_signature(b) {
        return None;
    }
    // Colour refinement is deterministic and invariant, so an isomorphism
    // must map each colour class of A onto the equally numbered class of B.
    // For non-isomorphic inputs the pruning may be arbitrary, which is
    // harmless: any map found is re-checked in full.
    let ca = refined_colours(a);
    let cb = refined_colours(b);
    let mut sa = ca.clone();
    let mut sb = cb.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }
    let mut f = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut order: Vec<usize> = (0..n).collect();
    // most constrained (smallest colour class) first
    let class_size = |c: usize| ca.iter().filter(|&&x| x == c).count();
    order.sort_by_key(|&x| (class_size(ca[x]), x));
    if extend(a, b, &ca, &cb, &order, 0, &mut f, &mut used) && check_isomorphism(a, b, &f).all_hold() {
        Some(f)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    ca: &[usize],
    cb: &[usize],
    order: &[usize],
    depth: usize,
    f: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let x = order[depth];
    for y in 0..b.size() {
        if used[y] || cb[y] != ca[x] {
            continue;
        }
        f[x] = y;
        used[y] = true;
        if consistent(a, b, f, &order[..=depth]) && extend(a, b, ca, cb, order, depth + 1, f, used) {
            return true;
        }
        used[y] = false;
        f[x] = usize::MAX;
    }
    false
}

fn consistent(a: &FiniteAlgebra, b: &FiniteAlgebra, f: &[usize], assigned: &[usize]) -> bool {
    let x = *assigned.last().expect("nonempty");
    if (x == a.one()) != (f[x] == b.one()) || (Some(x) == a.zero()) != (Some(f[x]) == b.zero()) {
        return false;
    }
    let un = |ta: Option<&[usize]>, tb: Option<&[usize]>| {
        let (Some(ta), Some(tb)) = (ta, tb) else { return true };
        assigned.iter().all(|&y| f[ta[y]] == usize::MAX || f[ta[y]] == tb[f[y]])
    };
    if !un(a.tilde_table(), b.tilde_table())
        || !un(a.minus_table(), b.minus_table())
        || !un(a.neg_table(), b.neg_table())
    {
        return false;
    }
    for &y in assigned {
        if a.leq(x, y) != b.leq(f[x], f[y]) || a.leq(y, x) != b.leq(f[y], f[x]) {
            return false;
        }
        for (p, q) in [(x, y), (y, x)] {
            let pq = f[a.mult(p, q)];
            if pq != usize::MAX && pq != b.mult(f[p], f[q]) {
                return false;
            }
        }
    }
    // products of earlier pairs that land on x
    for &p in assigned {
        for &q in assigned {
            if a.mult(p, q) == x && b.mult(f[p], f[q]) != f[x] {
                return false;
            }
        }
    }
    true
}

/// Upper bound on the permutations tried by [`canonical_form`].
pub const CANONICAL_BUDGET: u128 = 2_000_000;

/// Canonical byte string: the minimum serialization over all relabelings
/// compatible with the refined invariant colouring. Isomorphic algebras
/// give equal strings.
pub fn canonical_form(a: &FiniteAlgebra) -> Result<Vec<u8>> {
    let n = a.size();
    if n > 250 {
        return Err(Error::BudgetExceeded(format!("canonical form supports at most 250 elements, got {n}")));
    }
    let colour = refined_colours(a);
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (x, &c) in colour.iter().enumerate() {
        classes.entry(c).or_default().push(x);
    }
    let classes: Vec<Vec<usize>> = classes.into_values().collect();
    let mut total: u128 = 1;
    for c in &classes {
        for k in 1..=c.len() as u128 {
            total = total.saturating_mul(k);
        }
    }
    if total > CANONICAL_BUDGET {
        return Err(Error::BudgetExceeded(format!("{total} relabelings exceed the canonical-form budget")));
    }
    let mut perms: Vec<Vec<usize>> = classes.clone();
    let mut best: Option<Vec<u8>> = None;
    loop {
        let order: Vec<usize> = perms.iter().flatten().copied().collect();
        let s = serialize(a, &order);
        if best.as_ref().is_none_or(|b| s < *b) {
            best = Some(s);
        }
        // odometer over per-class permutations
        let mut i = perms.len();
        let advanced = loop {
            if i == 0 {
                break false;
            }
            i -= 1;
            if next_permutation(&mut perms[i]) {
                break true;
            }
            perms[i] = classes[i].clone();
        };
        if !advanced {
            break;
        }
    }
    Ok(best.expect("at least one relabeling"))
}

/// Serialize with new index `i` standing for old element `order[i]`.
fn serialize(a: &FiniteAlgebra, order: &[usize]) -> Vec<u8> {
    let n = a.size();
    let mut inv = vec![0; n];
    for (i, &x) in order.iter().enumerate() {
        inv[x] = i;
    }
    let b = |v: usize| v as u8;
    let mut out = Vec::with_capacity(4 + 2 * n * n + 3 * n);
    out.push(b(n));
    out.push(b(inv[a.one()]));
    out.push(a.zero().map_or(255, |z| b(inv[z])));
    for i in 0..n {
        for j in 0..n {
            out.push(u8::from(a.leq(order[i], order[j])));
        }
    }
    for i in 0..n {
        for j in 0..n {
            out.push(b(inv[a.mult(order[i], order[j])]));
        }
    }
    for t in [a.tilde_table(), a.minus_table(), a.neg_table()] {
        match t {
            None => out.push(255),
            Some(t) => {
                out.push(254);
                out.extend(order.iter().map(|&x| b(inv[t[x]])));
            }
        }
    }
    out
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Relabel `a` into the order realizing its canonical form.
pub fn canonical_algebra(a: &FiniteAlgebra) -> Result<FiniteAlgebra> {
    let n = a.size();
    let target = canonical_form(a)?;
    let colour = refined_colours(a);
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (x, &c) in colour.iter().enumerate() {
        classes.entry(c).or_default().push(x);
    }
    let classes: Vec<Vec<usize>> = classes.into_values().collect();
    let mut perms = classes.clone();
    loop {
        let order: Vec<usize> = perms.iter().flatten().copied().collect();
        if serialize(a, &order) == target {
            let mut perm = vec![0; n];
            for (i, &x) in order.iter().enumerate() {
                perm[x] = i;
            }
            return a.relabel(&perm);
        }
        let mut i = perms.len();
        loop {
            if i == 0 {
                unreachable!("the canonical relabeling is among the enumerated ones");
            }
            i -= 1;
            if next_permutation(&mut perms[i]) {
                break;
            }
            perms[i] = classes[i].clone();
        }
    }
}
