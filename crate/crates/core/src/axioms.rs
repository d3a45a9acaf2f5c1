//! Residuals, the quasi relation algebra axioms, and classification
//! predicates. Every check is an exhaustive loop in index order, so a
//! reported witness is the lexicographically least counterexample.

use std::fmt;

use serde::Serialize;

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};

/// Outcome of a single law. A failing verdict always carries a witness; when
/// the law cannot even be stated (missing operations) the witness is empty
/// and `note` says why.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Verdict {
    pub fn holds() -> Self {
        Verdict { holds: true, witness: None, note: None }
    }

    pub fn fails(witness: Vec<usize>) -> Self {
        Verdict { holds: false, witness: Some(witness), note: None }
    }

    pub fn unavailable(note: impl Into<String>) -> Self {
        Verdict { holds: false, witness: Some(Vec::new()), note: Some(note.into()) }
    }

    fn from_witness(w: Option<Vec<usize>>) -> Self {
        match w {
            None => Verdict::holds(),
            Some(w) => Verdict::fails(w),
        }
    }

    fn and(&self, other: &Verdict) -> Verdict {
        if self.holds {
            other.clone()
        } else {
            self.clone()
        }
    }
}

/// The two residuals `a\c` and `c/b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualTables {
    n: usize,
    under: Vec<usize>,
    over: Vec<usize>,
}

impl ResidualTables {
    /// `a\c`, the largest `b` with `a·b ≤ c`.
    pub fn under(&self, a: usize, c: usize) -> usize {
        self.under[a * self.n + c]
    }

    /// `c/b`, the largest `a` with `a·b ≤ c`.
    pub fn over(&self, c: usize, b: usize) -> usize {
        self.over[c * self.n + b]
    }

    pub fn under_rows(&self) -> Vec<Vec<usize>> {
        self.under.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    pub fn over_rows(&self) -> Vec<Vec<usize>> {
        self.over.chunks(self.n).map(<[usize]>::to_vec).collect()
    }
}

impl Serialize for ResidualTables {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ResidualTables", 2)?;
        st.serialize_field("under", &self.under_rows())?;
        st.serialize_field("over", &self.over_rows())?;
        st.end()
    }
}

/// Greatest element of `set` if it exists.
fn maximum(a: &FiniteAlgebra, set: &[usize]) -> Option<usize> {
    set.iter().copied().find(|&m| set.iter().all(|&x| a.leq(x, m)))
}

/// Compute both residuals as maxima and re-verify the residuation law on
/// every triple.
pub fn residuals(alg: &FiniteAlgebra) -> Result<ResidualTables> {
    let n = alg.size();
    let mut under = vec![0; n * n];
    let mut over = vec![0; n * n];
    for a in 0..n {
        for c in 0..n {
            let set: Vec<usize> = (0..n).filter(|&b| alg.leq(alg.mult(a, b), c)).collect();
            under[a * n + c] = maximum(alg, &set).ok_or(Error::NotResiduated { witness: vec![a, c] })?;
        }
    }
    for c in 0..n {
        for b in 0..n {
            let set: Vec<usize> = (0..n).filter(|&a| alg.leq(alg.mult(a, b), c)).collect();
            over[c * n + b] = maximum(alg, &set).ok_or(Error::NotResiduated { witness: vec![c, b] })?;
        }
    }
    let tables = ResidualTables { n, under, over };
    if let Some(w) = residuation_counterexample(alg, &tables) {
        return Err(Error::NotResiduated { witness: w });
    }
    Ok(tables)
}

/// First triple violating `a·b ≤ c ⇔ a ≤ c/b ⇔ b ≤ a\c`.
pub fn residuation_counterexample(alg: &FiniteAlgebra, r: &ResidualTables) -> Option<Vec<usize>> {
    let n = alg.size();
    for a in 0..n {
        for b in 0..n {
            let ab = alg.mult(a, b);
            for c in 0..n {
                let p = alg.leq(ab, c);
                if p != alg.leq(a, r.over(c, b)) || p != alg.leq(b, r.under(a, c)) {
                    return Some(vec![a, b, c]);
                }
            }
        }
    }
    None
}

/// Residuals through the linear negations: `c/b = −(b·∼c)` and
/// `a\c = ∼(−c·a)`.
pub fn residuals_from_negations(alg: &FiniteAlgebra) -> Result<ResidualTables> {
    let (Some(tilde), Some(minus)) = (alg.tilde_table(), alg.minus_table()) else {
        return Err(Error::InFLRequired("∼ and − must both be present"));
    };
    let n = alg.size();
    let mut under = vec![0; n * n];
    let mut over = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            under[x * n + y] = tilde[alg.mult(minus[y], x)];
            over[x * n + y] = minus[alg.mult(y, tilde[x])];
        }
    }
    Ok(ResidualTables { n, under, over })
}

/// The dual of `·`: `a + b = −(∼b·∼a)`, which on InFL-algebras equals
/// `∼(−b·−a)`.
///
/// The argument order matters once `·` is not commutative. The variant
/// `∼(−a·−b)` reverses it, and (Dp) then fails on `Dq(E)` for the
/// two-point antichain with `α` swapping the points.
pub fn dual_sum(alg: &FiniteAlgebra, a: usize, b: usize) -> Result<usize> {
    let (Some(tilde), Some(minus)) = (alg.tilde_table(), alg.minus_table()) else {
        return Err(Error::MissingNegations);
    };
    Ok(minus[alg.mult(tilde[b], tilde[a])])
}

/// The non-nullary basic operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Operation {
    #[serde(rename = "∧")]
    Meet,
    #[serde(rename = "∨")]
    Join,
    #[serde(rename = "·")]
    Mult,
    #[serde(rename = "\\")]
    Under,
    #[serde(rename = "/")]
    Over,
    #[serde(rename = "∼")]
    Tilde,
    #[serde(rename = "−")]
    Minus,
    #[serde(rename = "¬")]
    Neg,
}

impl Operation {
    pub const ALL: [Operation; 8] = [
        Operation::Meet,
        Operation::Join,
        Operation::Mult,
        Operation::Under,
        Operation::Over,
        Operation::Tilde,
        Operation::Minus,
        Operation::Neg,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Operation::Meet => "∧",
            Operation::Join => "∨",
            Operation::Mult => "·",
            Operation::Under => "\\",
            Operation::Over => "/",
            Operation::Tilde => "∼",
            Operation::Minus => "−",
            Operation::Neg => "¬",
        }
    }
}

impl fmt::Display for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Arguments of `op` producing `b` without `b` among them, or `None` when
/// `b` is irreducible for `op`. `None` is also returned for operations
/// the algebra does not carry; `residuals` must be supplied for `\` and `/`.
pub fn irreducibility_witness(
    alg: &FiniteAlgebra,
    residuals: Option<&ResidualTables>,
    b: usize,
    op: Operation,
) -> Option<Vec<usize>> {
    let n = alg.size();
    let binary = |f: &dyn Fn(usize, usize) -> usize| {
        for x in 0..n {
            for y in 0..n {
                if x != b && y != b && f(x, y) == b {
                    return Some(vec![x, y]);
                }
            }
        }
        None
    };
    let unary = |t: Option<&[usize]>| {
        let t = t?;
        (0..n).find(|&x| x != b && t[x] == b).map(|x| vec![x])
    };
    match op {
        Operation::Meet => binary(&|x, y| alg.meet(x, y)),
        Operation::Join => binary(&|x, y| alg.join(x, y)),
        Operation::Mult => binary(&|x, y| alg.mult(x, y)),
        Operation::Under => residuals.and_then(|r| binary(&|x, y| r.under(x, y))),
        Operation::Over => residuals.and_then(|r| binary(&|x, y| r.over(x, y))),
        Operation::Tilde => unary(alg.tilde_table()),
        Operation::Minus => unary(alg.minus_table()),
        Operation::Neg => unary(alg.neg_table()),
    }
}

/// Total irreducibility verdict; on failure `op` and `args` name the first
/// operation (in [`Operation::ALL`] order) and arguments producing `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Irreducibility {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub op: Option<Operation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub args: Option<Vec<usize>>,
}

/// Whether `b` is totally irreducible. The residuals take part when the
/// algebra is residuated; unary operations take part when present.
pub fn is_totally_irreducible(alg: &FiniteAlgebra, b: usize) -> Irreducibility {
    let res = residuals(alg).ok();
    for op in Operation::ALL {
        if let Some(args) = irreducibility_witness(alg, res.as_ref(), b, op) {
            return Irreducibility { holds: false, op: Some(op), args: Some(args) };
        }
    }
    Irreducibility { holds: true, op: None, args: None }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SublatticeKind {
    N5,
    M3,
}

/// A five-element non-distributive sublattice. `elements` lists the bottom,
/// the three middle elements and the top; for N₅ the middle is ordered as
/// (lone side, lower long side, upper long side).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForbiddenSublattice {
    pub kind: SublatticeKind,
    pub elements: [usize; 5],
}

/// Default size bound for the witness scan inside [`check_axioms`].
pub const WITNESS_SCAN_CAP: usize = 12;

/// Scan 5-subsets in lexicographic order for an N₅ or M₃ sublattice.
pub fn find_forbidden_sublattice(alg: &FiniteAlgebra) -> Option<ForbiddenSublattice> {
    let n = alg.size();
    if n < 5 {
        return None;
    }
    let mut idx = [0usize, 1, 2, 3, 4];
    loop {
        if let Some(found) = classify_five(alg, &idx) {
            return Some(found);
        }
        // advance to the next 5-combination
        let mut i = 5;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < n - 5 + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..5 {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Classify the five given elements if they form an N₅ or M₃ sublattice.
pub fn find_forbidden_sublattice_in(alg: &FiniteAlgebra, s: &[usize; 5]) -> Option<ForbiddenSublattice> {
    classify_five(alg, s)
}

fn classify_five(alg: &FiniteAlgebra, s: &[usize; 5]) -> Option<ForbiddenSublattice> {
    for &x in s {
        for &y in s {
            if !s.contains(&alg.meet(x, y)) || !s.contains(&alg.join(x, y)) {
                return None;
            }
        }
    }
    let bottom = *s.iter().find(|&&x| s.iter().all(|&y| alg.leq(x, y)))?;
    let top = *s.iter().find(|&&x| s.iter().all(|&y| alg.leq(y, x)))?;
    let mid: Vec<usize> = s.iter().copied().filter(|&x| x != bottom && x != top).collect();
    let comparable: Vec<(usize, usize)> = [(0, 1), (0, 2), (1, 2)]
        .into_iter()
        .filter(|&(i, j)| alg.leq(mid[i], mid[j]) || alg.leq(mid[j], mid[i]))
        .collect();
    match comparable.as_slice() {
        [] => Some(ForbiddenSublattice { kind: SublatticeKind::M3, elements: [bottom, mid[0], mid[1], mid[2], top] }),
        [(i, j)] => {
            let lone = mid[3 - i - j];
            let (lo, hi) = if alg.leq(mid[*i], mid[*j]) { (mid[*i], mid[*j]) } else { (mid[*j], mid[*i]) };
            Some(ForbiddenSublattice { kind: SublatticeKind::N5, elements: [bottom, lone, lo, hi, top] })
        }
        _ => None,
    }
}

/// Every verdict of the axiom suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub poset: Verdict,
    pub lattice: Verdict,
    pub monoid: Verdict,
    pub residuated: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residuals: Option<ResidualTables>,
    /// `∼a = a\0` and `−a = 0/a`.
    pub linear_negations: Verdict,
    #[serde(rename = "In")]
    pub involutive: Verdict,
    /// `¬¬a = a`.
    pub involution: Verdict,
    #[serde(rename = "Dm")]
    pub dm: Verdict,
    #[serde(rename = "Di")]
    pub di: Verdict,
    #[serde(rename = "Dp")]
    pub dp: Verdict,
    pub distributive: Verdict,
    pub cyclic: Verdict,
    pub odd: Verdict,
    pub commutative: Verdict,
    pub idempotent: Verdict,
    pub conic: Verdict,
    pub totally_irreducible_one: Irreducibility,
    #[serde(rename = "qRA")]
    pub qra: Verdict,
    #[serde(rename = "DqRA")]
    pub dqra: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub forbidden_sublattice: Option<ForbiddenSublattice>,
}

fn first<I: IntoIterator<Item = Vec<usize>>>(it: I) -> Option<Vec<usize>> {
    it.into_iter().next()
}

/// Decide every law by exhaustive loops.
///
/// `qRA` is residuated ∧ linear negations ∧ (In) ∧ ¬¬a = a ∧ (Dm) ∧ (Di) ∧
/// (Dp); `DqRA` adds distributivity.
pub fn check_axioms(alg: &FiniteAlgebra) -> AxiomReport {
    let n = alg.size();
    let all = || (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)));
    let triples = || (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))));

    let (residuated, res) = match residuals(alg) {
        Ok(r) => (Verdict::holds(), Some(r)),
        Err(Error::NotResiduated { witness }) => (Verdict::fails(witness), None),
        Err(e) => (Verdict::unavailable(e.to_string()), None),
    };

    let tilde = alg.tilde_table();
    let minus = alg.minus_table();
    let neg = alg.neg_table();

    let linear_negations = match (&res, alg.zero(), tilde, minus) {
        (None, ..) => Verdict::unavailable("not residuated"),
        (_, None, ..) => Verdict::unavailable("0 is absent"),
        (_, _, None, _) | (_, _, _, None) => Verdict::unavailable("∼ or − is absent"),
        (Some(r), Some(z), Some(t), Some(m)) => {
            Verdict::from_witness((0..n).find(|&a| t[a] != r.under(a, z) || m[a] != r.over(z, a)).map(|a| vec![a]))
        }
    };

    let involutive = match (tilde, minus) {
        (Some(t), Some(m)) => Verdict::from_witness((0..n).find(|&a| t[m[a]] != a || m[t[a]] != a).map(|a| vec![a])),
        _ => Verdict::unavailable("∼ or − is absent"),
    };

    let involution = match neg {
        Some(g) => Verdict::from_witness((0..n).find(|&a| g[g[a]] != a).map(|a| vec![a])),
        None => Verdict::unavailable("¬ is absent"),
    };

    let dm = match neg {
        Some(g) => Verdict::from_witness(first(
            all().filter(|&(a, b)| g[alg.join(a, b)] != alg.meet(g[a], g[b])).map(|(a, b)| vec![a, b]),
        )),
        None => Verdict::unavailable("¬ is absent"),
    };

    let di = match (tilde, minus, neg) {
        (Some(t), Some(m), Some(g)) => Verdict::from_witness((0..n).find(|&a| g[t[a]] != m[g[a]]).map(|a| vec![a])),
        _ => Verdict::unavailable("∼, − or ¬ is absent"),
    };

    let dp = match (tilde, minus, neg) {
        (Some(t), Some(m), Some(g)) => Verdict::from_witness(first(
            all().filter(|&(a, b)| g[alg.mult(a, b)] != m[alg.mult(t[g[b]], t[g[a]])]).map(|(a, b)| vec![a, b]),
        )),
        _ => Verdict::unavailable("∼, − or ¬ is absent"),
    };

    let distributive = Verdict::from_witness(first(
        triples()
            .filter(|&(a, b, c)| alg.meet(a, alg.join(b, c)) != alg.join(alg.meet(a, b), alg.meet(a, c)))
            .map(|(a, b, c)| vec![a, b, c]),
    ));

    let cyclic = match (tilde, minus) {
        (Some(t), Some(m)) => Verdict::from_witness((0..n).find(|&a| t[a] != m[a]).map(|a| vec![a])),
        _ => Verdict::unavailable("∼ or − is absent"),
    };

    let odd = match alg.zero() {
        Some(z) if z == alg.one() => Verdict::holds(),
        Some(z) => Verdict::fails(vec![alg.one(), z]),
        None => Verdict::unavailable("0 is absent"),
    };

    let commutative = Verdict::from_witness(first(
        all().filter(|&(a, b)| a < b && alg.mult(a, b) != alg.mult(b, a)).map(|(a, b)| vec![a, b]),
    ));
    let idempotent = Verdict::from_witness((0..n).find(|&a| alg.mult(a, a) != a).map(|a| vec![a]));
    let one = alg.one();
    let conic = Verdict::from_witness((0..n).find(|&a| !alg.leq(a, one) && !alg.leq(one, a)).map(|a| vec![a]));

    let mut totally_irreducible_one = Irreducibility { holds: true, op: None, args: None };
    for op in Operation::ALL {
        if let Some(args) = irreducibility_witness(alg, res.as_ref(), one, op) {
            totally_irreducible_one = Irreducibility { holds: false, op: Some(op), args: Some(args) };
            break;
        }
    }

    let qra = [&linear_negations, &involutive, &involution, &dm, &di, &dp]
        .into_iter()
        .fold(residuated.clone(), |acc, v| acc.and(v));
    let dqra = qra.and(&distributive);

    let forbidden_sublattice =
        if !distributive.holds && n <= WITNESS_SCAN_CAP { find_forbidden_sublattice(alg) } else { None };

    AxiomReport {
        poset: Verdict::holds(),
        lattice: Verdict::holds(),
        monoid: Verdict::holds(),
        residuated,
        residuals: res,
        linear_negations,
        involutive,
        involution,
        dm,
        di,
        dp,
        distributive,
        cyclic,
        odd,
        commutative,
        idempotent,
        conic,
        totally_irreducible_one,
        qra,
        dqra,
        forbidden_sublattice,
    }
}
