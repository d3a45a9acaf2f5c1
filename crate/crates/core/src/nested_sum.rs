//! The nested sum `K[L]`: `L` is substituted for the identity of `K`.
//!
//! Carrier indexing puts the elements of `K ∖ {1_K}` first, in their order
//! in `K`, followed by the elements of `L`.

use serde::Serialize;

use crate::algebra::{FiniteAlgebra, RawAlgebra};
use crate::axioms::{
    check_axioms, irreducibility_witness, is_totally_irreducible, residuals, Operation, SublatticeKind, Verdict,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NestedSum {
    pub algebra: FiniteAlgebra,
    /// New index of each element of `K`; `None` for `1_K`.
    pub from_k: Vec<Option<usize>>,
    /// New index of each element of `L`.
    pub from_l: Vec<usize>,
}

/// Which summand an element of `K[L]` came from, with its old index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    K(usize),
    L(usize),
}

impl NestedSum {
    pub fn part(&self, x: usize) -> Part {
        let k_count = self.from_k.len() - 1;
        if x < k_count {
            let k = self.from_k.iter().position(|&v| v == Some(x)).expect("index in K part");
            Part::K(k)
        } else {
            Part::L(x - k_count)
        }
    }
}

fn signature_flags(a: &FiniteAlgebra) -> [bool; 4] {
    [a.zero().is_some(), a.tilde_table().is_some(), a.minus_table().is_some(), a.neg_table().is_some()]
}

/// Build `K[L]`. `1_K` must be totally irreducible in `K`.
pub fn nested_sum(k: &FiniteAlgebra, l: &FiniteAlgebra) -> Result<NestedSum> {
    if !k.same_signature(l) {
        return Err(Error::SignatureMismatch(format!(
            "K carries (0, ∼, −, ¬) = {:?}, L carries {:?}",
            signature_flags(k),
            signature_flags(l)
        )));
    }
    let irr = is_totally_irreducible(k, k.one());
    if !irr.holds {
        return Err(Error::IdentityNotIrreducible {
            op: irr.op.map(|o| o.symbol().to_string()).unwrap_or_default(),
            args: irr.args.unwrap_or_default(),
        });
    }

    let one_k = k.one();
    let k_elems: Vec<usize> = (0..k.size()).filter(|&x| x != one_k).collect();
    let kc = k_elems.len();
    let n = kc + l.size();
    let mut from_k = vec![None; k.size()];
    for (i, &x) in k_elems.iter().enumerate() {
        from_k[x] = Some(i);
    }
    let from_l: Vec<usize> = (0..l.size()).map(|x| kc + x).collect();
    let part = |x: usize| if x < kc { Part::K(k_elems[x]) } else { Part::L(x - kc) };
    let kk = |x: usize| from_k[x].expect("1_K never arises from elements of K ∖ {1_K}");

    let mut leq = vec![false; n * n];
    let mut mult = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            let (le, prod) = match (part(x), part(y)) {
                (Part::K(a), Part::K(b)) => (k.leq(a, b), kk(k.mult(a, b))),
                (Part::L(a), Part::L(b)) => (l.leq(a, b), from_l[l.mult(a, b)]),
                (Part::K(a), Part::L(_)) => (k.leq(a, one_k), kk(k.mult(a, one_k))),
                (Part::L(_), Part::K(b)) => (k.leq(one_k, b), kk(k.mult(one_k, b))),
            };
            leq[x * n + y] = le;
            mult[x * n + y] = prod;
        }
    }
    let unary = |tk: Option<&[usize]>, tl: Option<&[usize]>| -> Option<Vec<usize>> {
        let (tk, tl) = (tk?, tl?);
        Some(
            (0..n)
                .map(|x| match part(x) {
                    Part::K(a) => kk(tk[a]),
                    Part::L(a) => from_l[tl[a]],
                })
                .collect(),
        )
    };
    let names = match (k.names(), l.names()) {
        (Some(kn), Some(ln)) => Some(
            (0..n)
                .map(|x| match part(x) {
                    Part::K(a) => kn[a].clone(),
                    Part::L(a) => ln[a].clone(),
                })
                .collect(),
        ),
        _ => None,
    };
    let algebra = FiniteAlgebra::new(RawAlgebra {
        size: n,
        leq,
        mult,
        one: from_l[l.one()],
        zero: l.zero().map(|z| from_l[z]),
        tilde: unary(k.tilde_table(), l.tilde_table()),
        minus: unary(k.minus_table(), l.minus_table()),
        neg: unary(k.neg_table(), l.neg_table()),
        names,
    })?;

    // The order above follows the case table for ≤; the meet and join
    // derived from it must coincide with the explicit case formulas.
    for x in 0..n {
        for y in 0..n {
            let (m, j) = match (part(x), part(y)) {
                (Part::K(a), Part::K(b)) => (kk(k.meet(a, b)), kk(k.join(a, b))),
                (Part::L(a), Part::L(b)) => (from_l[l.meet(a, b)], from_l[l.join(a, b)]),
                (Part::K(a), Part::L(_)) | (Part::L(_), Part::K(a)) => {
                    let m = if k.leq(one_k, a) {
                        if x < kc {
                            y
                        } else {
                            x
                        }
                    } else {
                        kk(k.meet(a, one_k))
                    };
                    let j = if k.leq(a, one_k) {
                        if x < kc {
                            y
                        } else {
                            x
                        }
                    } else {
                        kk(k.join(a, one_k))
                    };
                    (m, j)
                }
            };
            if algebra.meet(x, y) != m || algebra.join(x, y) != j {
                return Err(Error::Malformed(format!(
                    "nested-sum lattice operations disagree with the order at ({x}, {y})"
                )));
            }
        }
    }
    Ok(NestedSum { algebra, from_k, from_l })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OperationVerdict {
    pub op: Operation,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub args: Option<Vec<usize>>,
}

/// Irreducibility of `1_K` per operation, and separately the condition
/// `k\1 ≠ 1` and `1/k ≠ 1` for every `k ≠ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub per_operation: Vec<OperationVerdict>,
    pub totally_irreducible: bool,
    pub residual_condition: Verdict,
}

pub fn admissibility_report(k: &FiniteAlgebra) -> Result<AdmissibilityReport> {
    let res = residuals(k)?;
    let one = k.one();
    let per_operation: Vec<OperationVerdict> = Operation::ALL
        .into_iter()
        .map(|op| {
            let args = irreducibility_witness(k, Some(&res), one, op);
            OperationVerdict { op, holds: args.is_none(), args }
        })
        .collect();
    let totally_irreducible = per_operation.iter().all(|v| v.holds);
    let residual_condition =
        match (0..k.size()).find(|&x| x != one && (res.under(x, one) == one || res.over(one, x) == one)) {
            Some(x) => Verdict::fails(vec![x]),
            None => Verdict::holds(),
        };
    Ok(AdmissibilityReport { per_operation, totally_irreducible, residual_condition })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConicSumReport {
    pub sum: NestedSum,
    pub k_conic: bool,
    pub distributive: bool,
    /// `distributive ⇔ k_conic`, required whenever `|L| > 1`.
    pub consistent: bool,
    /// `{k∧1_K, k, ℓ₀, ℓ₁, k∨1_K}` for the least `k` incomparable to `1_K`
    /// and the least strictly ordered pair `ℓ₀ < ℓ₁`, as (bottom, lone side,
    /// lower long side, upper long side, top).
    pub n5_witness: Option<[usize; 5]>,
}

/// Build `K[L]` and compare its distributivity with conicity of `K`.
pub fn conic_sum_check(k: &FiniteAlgebra, l: &FiniteAlgebra) -> Result<ConicSumReport> {
    let sum = nested_sum(k, l)?;
    let one = k.one();
    let incomparable = (0..k.size()).find(|&x| !k.leq(x, one) && !k.leq(one, x));
    let k_conic = incomparable.is_none();
    let distributive = check_axioms(&sum.algebra).distributive.holds;
    let consistent = l.size() <= 1 || distributive == k_conic;
    let chain_pair =
        (0..l.size()).flat_map(|a| (0..l.size()).map(move |b| (a, b))).find(|&(a, b)| a != b && l.leq(a, b));
    let n5_witness = match (incomparable, chain_pair) {
        (Some(x), Some((l0, l1))) => {
            let kk = |v: usize| sum.from_k[v].expect("differs from 1_K");
            let w = [kk(k.meet(x, one)), kk(x), sum.from_l[l0], sum.from_l[l1], kk(k.join(x, one))];
            let found = crate::axioms::find_forbidden_sublattice_in(&sum.algebra, &w);
            found.filter(|f| f.kind == SublatticeKind::N5).map(|_| w)
        }
        _ => None,
    };
    Ok(ConicSumReport { sum, k_conic, distributive, consistent, n5_witness })
}
