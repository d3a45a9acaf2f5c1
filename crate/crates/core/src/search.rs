//! Exhaustive enumeration of small residuated structures up to isomorphism.
//!
//! The search is layered. Lattices are generated from naturally labelled
//! posets and deduplicated; then the identity is chosen, then (for
//! involutive signatures) the linear negation `∼` with `− = ∼⁻¹`, then the
//! product table cell by cell, and finally `¬`. Each constraint prunes at
//! the earliest layer where it can be decided; every emitted model is
//! re-checked with [`check_axioms`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{lattice_ops, FiniteAlgebra, RawAlgebra};
use crate::axioms::{check_axioms, is_totally_irreducible, AxiomReport};
use crate::error::{Error, Result};
use crate::iso::{canonical_algebra, canonical_form};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Constraint {
    Qra,
    Dqra,
    /// Involutive FL-algebra: `0` present, `∼a = a\0`, `−a = 0/a`,
    /// `∼−a = a = −∼a`.
    Infl,
    Conic,
    Odd,
    Cyclic,
    Commutative,
    Idempotent,
    TotIrrOne,
    Chain,
}

impl Constraint {
    pub const ALL: [Constraint; 10] = [
        Constraint::Qra,
        Constraint::Dqra,
        Constraint::Infl,
        Constraint::Conic,
        Constraint::Odd,
        Constraint::Cyclic,
        Constraint::Commutative,
        Constraint::Idempotent,
        Constraint::TotIrrOne,
        Constraint::Chain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Constraint::Qra => "qra",
            Constraint::Dqra => "dqra",
            Constraint::Infl => "infl",
            Constraint::Conic => "conic",
            Constraint::Odd => "odd",
            Constraint::Cyclic => "cyclic",
            Constraint::Commutative => "commutative",
            Constraint::Idempotent => "idempotent",
            Constraint::TotIrrOne => "tot-irr-one",
            Constraint::Chain => "chain",
        }
    }

    /// Decide the constraint from a full axiom report.
    pub fn holds(self, alg: &FiniteAlgebra, report: &AxiomReport) -> bool {
        match self {
            Constraint::Qra => report.qra.holds,
            Constraint::Dqra => report.dqra.holds,
            Constraint::Infl => report.residuated.holds && report.linear_negations.holds && report.involutive.holds,
            Constraint::Conic => report.conic.holds,
            Constraint::Odd => report.odd.holds,
            Constraint::Cyclic => report.cyclic.holds,
            Constraint::Commutative => report.commutative.holds,
            Constraint::Idempotent => report.idempotent.holds,
            Constraint::TotIrrOne => is_totally_irreducible(alg, alg.one()).holds,
            Constraint::Chain => alg.is_chain(),
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Constraint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('_', "-");
        let alias = match key.as_str() {
            "totally-irreducible-one" => "tot-irr-one",
            other => other,
        };
        Constraint::ALL
            .into_iter()
            .find(|c| c.name() == alias)
            .ok_or_else(|| Error::Malformed(format!("unknown constraint {s:?}")))
    }
}

/// Default largest size searched without an explicit override.
pub const DEFAULT_MAX_SIZE: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSpec {
    pub size: usize,
    pub constraints: BTreeSet<Constraint>,
    /// Keep at most this many models (in canonical order).
    pub limit: Option<usize>,
    pub max_size: usize,
    /// Abort after this many product-table assignments.
    pub node_budget: Option<u64>,
}

impl SearchSpec {
    pub fn new(size: usize, constraints: impl IntoIterator<Item = Constraint>) -> Self {
        SearchSpec {
            size,
            constraints: constraints.into_iter().collect(),
            limit: None,
            max_size: DEFAULT_MAX_SIZE,
            node_budget: None,
        }
    }

    fn has(&self, c: Constraint) -> bool {
        self.constraints.contains(&c)
    }

    fn signature(&self) -> Signature {
        if self.has(Constraint::Qra) || self.has(Constraint::Dqra) {
            Signature::Qra
        } else if self.has(Constraint::Infl) || self.has(Constraint::Odd) || self.has(Constraint::Cyclic) {
            Signature::InFl
        } else {
            Signature::Rl
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Signature {
    Rl,
    InFl,
    Qra,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    /// The model relabelled into canonical order.
    pub algebra: FiniteAlgebra,
    pub canonical: Vec<u8>,
    /// Every constraint evaluated on the model.
    pub properties: BTreeMap<Constraint, bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelSet {
    /// Pairwise non-isomorphic, sorted by canonical form.
    pub models: Vec<Model>,
    /// True when every candidate was examined and no limit truncated the
    /// output.
    pub exhaustive: bool,
    pub budget_exceeded: bool,
    /// Non-isomorphic lattices that survived the lattice-level filters.
    pub lattices: usize,
    pub nodes: u64,
}

/// A bounded lattice order with its operation tables.
#[derive(Debug, Clone)]
struct Lattice {
    n: usize,
    leq: Vec<bool>,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
}

impl Lattice {
    fn le(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b]
    }

    fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n + b]
    }

    fn is_distributive(&self) -> bool {
        let n = self.n;
        (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| self.meet(a, self.join(b, c)) == self.join(self.meet(a, b), self.meet(a, c))))
        })
    }

    fn is_chain(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.le(a, b) || self.le(b, a)))
    }

    /// `x∧y = a` or `x∨y = a` only when `a ∈ {x, y}`.
    fn lattice_irreducible(&self, a: usize) -> bool {
        let n = self.n;
        (0..n).all(|x| (0..n).all(|y| x == a || y == a || (self.meet(x, y) != a && self.join(x, y) != a)))
    }

    /// Order-reversing bijections.
    fn dual_automorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut out = Vec::new();
        let mut f = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn go(l: &Lattice, k: usize, f: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
            let n = l.n;
            if k == n {
                out.push(f.clone());
                return;
            }
            for y in 0..n {
                if used[y] {
                    continue;
                }
                let ok = (0..k).all(|x| l.le(x, k) == l.le(y, f[x]) && l.le(k, x) == l.le(f[x], y));
                if ok {
                    f[k] = y;
                    used[y] = true;
                    go(l, k + 1, f, used, out);
                    used[y] = false;
                }
            }
        }
        go(self, 0, &mut f, &mut used, &mut out);
        out
    }
}

/// Lattices on `n` elements up to isomorphism, with `⊥ = 0` and
/// `⊤ = n − 1`. Generated from naturally labelled posets (`x < y` only if
/// `x < y` as integers).
fn enumerate_lattices(n: usize) -> Vec<Lattice> {
    if n == 1 {
        return vec![Lattice { n: 1, leq: vec![true], meet: vec![0], join: vec![0], bottom: 0 }];
    }
    let mid = n - 2;
    // below[j] = bitmask of middle elements strictly below middle element j
    let mut found: BTreeMap<Vec<u8>, Lattice> = BTreeMap::new();
    let mut below = vec![0u32; mid];
    fn go(j: usize, mid: usize, below: &mut Vec<u32>, emit: &mut dyn FnMut(&[u32])) {
        if j == mid {
            emit(below);
            return;
        }
        for mask in 0u32..(1 << j) {
            // down-closed: everything below a chosen element is chosen
            let closed = (0..j).all(|i| mask >> i & 1 == 0 || below[i] & !mask == 0);
            if closed {
                below[j] = mask;
                go(j + 1, mid, below, emit);
            }
        }
    }
    let mut emit = |below: &[u32]| {
        let mut leq = vec![false; n * n];
        for a in 0..n {
            leq[a * n + a] = true;
            leq[a] = true;
            leq[a * n + n - 1] = true;
        }
        for j in 0..mid {
            for i in 0..mid {
                if below[j] >> i & 1 == 1 {
                    leq[(i + 1) * n + (j + 1)] = true;
                }
            }
        }
        let Ok((meet, join)) = lattice_ops(n, &leq) else { return };
        let lat = Lattice { n, leq, meet, join, bottom: 0 };
        let key = lattice_key(&lat);
        found.entry(key).or_insert(lat);
    };
    go(0, mid, &mut below, &mut emit);
    found.into_values().collect()
}

/// Canonical form of the lattice alone: the algebra with `· = ∧`.
fn lattice_key(l: &Lattice) -> Vec<u8> {
    let alg = FiniteAlgebra::new(RawAlgebra {
        size: l.n,
        leq: l.leq.clone(),
        mult: l.meet.clone(),
        one: l.n - 1,
        ..Default::default()
    })
    .expect("meet is a monoid with the top as identity");
    canonical_form(&alg).expect("lattices in the search are small")
}

const UNSET: usize = usize::MAX;

/// One unit of parallel work: a lattice, an identity and (for involutive
/// signatures) a choice of `∼` with the compatible `¬` candidates.
struct Task<'a> {
    lat: &'a Lattice,
    one: usize,
    tilde: Option<Vec<usize>>,
    minus: Option<Vec<usize>>,
    negs: Vec<Vec<usize>>,
}

struct Shared<'a> {
    spec: &'a SearchSpec,
    nodes: AtomicU64,
    aborted: AtomicBool,
}

impl Shared<'_> {
    fn tick(&self) -> bool {
        let used = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.spec.node_budget.is_some_and(|b| used > b) {
            self.aborted.store(true, Ordering::Relaxed);
        }
        !self.aborted.load(Ordering::Relaxed)
    }
}

struct TableSearch<'a> {
    task: &'a Task<'a>,
    shared: &'a Shared<'a>,
    n: usize,
    cells: Vec<(usize, usize)>,
    zero: Option<usize>,
    tot_irr: bool,
    idempotent: bool,
    commutative: bool,
}

impl TableSearch<'_> {
    fn domain(&self, m: &[usize], a: usize, b: usize) -> Vec<usize> {
        let n = self.n;
        let lat = self.task.lat;
        let g = |x: usize, y: usize| m[x * n + y];
        if self.idempotent && a == b {
            return if self.value_ok(m, a, b, a) { vec![a] } else { vec![] };
        }
        if self.commutative && g(b, a) != UNSET {
            let v = g(b, a);
            return if self.value_ok(m, a, b, v) { vec![v] } else { vec![] };
        }
        // monotone bounds from assigned comparable cells
        let mut lo = lat.bottom;
        let mut hi_cands: Vec<usize> = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let v = g(x, y);
                if v == UNSET {
                    continue;
                }
                if lat.le(x, a) && lat.le(y, b) {
                    lo = lat.join(lo, v);
                }
                if lat.le(a, x) && lat.le(b, y) {
                    hi_cands.push(v);
                }
            }
        }
        (0..n)
            .filter(|&v| lat.le(lo, v) && hi_cands.iter().all(|&h| lat.le(v, h)) && self.value_ok(m, a, b, v))
            .collect()
    }

    fn value_ok(&self, _m: &[usize], a: usize, b: usize, v: usize) -> bool {
        let lat = self.task.lat;
        if self.tot_irr && v == self.task.one {
            return false;
        }
        if let (Some(z), Some(t)) = (self.zero, &self.task.tilde) {
            // a·b ≤ 0 ⇔ b ≤ ∼a
            if lat.le(v, z) != lat.le(b, t[a]) {
                return false;
            }
        }
        true
    }

    /// Join preservation and associativity on every instance that involves
    /// the freshly assigned cell `(a, b)`.
    fn consistent(&self, m: &[usize], a: usize, b: usize) -> bool {
        let n = self.n;
        let lat = self.task.lat;
        let g = |x: usize, y: usize| m[x * n + y];
        let v = g(a, b);
        for z in 0..n {
            // a·(b∨z) = a·b ∨ a·z and (a∨z)·b = a·b ∨ z·b
            let (p, q) = (g(a, lat.join(b, z)), g(a, z));
            if p != UNSET && q != UNSET && p != lat.join(v, q) {
                return false;
            }
            let (p, q) = (g(lat.join(a, z), b), g(z, b));
            if p != UNSET && q != UNSET && p != lat.join(v, q) {
                return false;
            }
            // (a·b)·z = a·(b·z)
            let bz = g(b, z);
            if bz != UNSET {
                let (l, r) = (g(v, z), g(a, bz));
                if l != UNSET && r != UNSET && l != r {
                    return false;
                }
            }
            // (z·a)·b = z·(a·b)
            let za = g(z, a);
            if za != UNSET {
                let (l, r) = (g(za, b), g(z, v));
                if l != UNSET && r != UNSET && l != r {
                    return false;
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                // a·b with b = x∨y, and a·b with a = x∨y
                if lat.join(x, y) == b {
                    let (p, q) = (g(a, x), g(a, y));
                    if p != UNSET && q != UNSET && v != lat.join(p, q) {
                        return false;
                    }
                }
                if lat.join(x, y) == a {
                    let (p, q) = (g(x, b), g(y, b));
                    if p != UNSET && q != UNSET && v != lat.join(p, q) {
                        return false;
                    }
                }
                let xy = g(x, y);
                // (x·y)·b = x·(y·b) where x·y = a
                if xy == a {
                    let yb = g(y, b);
                    if yb != UNSET {
                        let r = g(x, yb);
                        if r != UNSET && r != v {
                            return false;
                        }
                    }
                }
                // a·(x·y) = (a·x)·y where x·y = b
                if xy == b {
                    let ax = g(a, x);
                    if ax != UNSET {
                        let l = g(ax, y);
                        if l != UNSET && l != v {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn run(&self, m: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if self.shared.aborted.load(Ordering::Relaxed) {
            return;
        }
        if k == self.cells.len() {
            out.push(m.clone());
            return;
        }
        let (a, b) = self.cells[k];
        let n = self.n;
        for v in self.domain(m, a, b) {
            if !self.shared.tick() {
                return;
            }
            m[a * n + b] = v;
            if self.consistent(m, a, b) {
                self.run(m, k + 1, out);
            }
            m[a * n + b] = UNSET;
        }
    }
}

fn solve_task(task: &Task<'_>, shared: &Shared<'_>) -> Vec<FiniteAlgebra> {
    let spec = shared.spec;
    let lat = task.lat;
    let n = lat.n;
    let one = task.one;
    let mut m = vec![UNSET; n * n];
    for x in 0..n {
        m[one * n + x] = x;
        m[x * n + one] = x;
    }
    for x in 0..n {
        if x != one {
            m[lat.bottom * n + x] = lat.bottom;
            m[x * n + lat.bottom] = lat.bottom;
        }
    }
    let cells: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| m[a * n + b] == UNSET).collect();
    let zero = task.tilde.as_ref().map(|t| t[one]);
    let search = TableSearch {
        task,
        shared,
        n,
        cells,
        zero,
        tot_irr: spec.has(Constraint::TotIrrOne),
        idempotent: spec.has(Constraint::Idempotent),
        commutative: spec.has(Constraint::Commutative),
    };
    // Cells fixed up front still have to respect the negation split.
    for x in 0..n {
        for y in 0..n {
            let v = m[x * n + y];
            if v != UNSET && !fixed_cell_ok(&search, x, y, v) {
                return Vec::new();
            }
        }
    }
    let mut tables = Vec::new();
    search.run(&mut m, 0, &mut tables);

    let mut out = Vec::new();
    for mult in tables {
        let base = RawAlgebra {
            size: n,
            leq: lat.leq.clone(),
            mult: mult.clone(),
            one,
            zero,
            tilde: task.tilde.clone(),
            minus: task.minus.clone(),
            ..Default::default()
        };
        let negs: Vec<Option<Vec<usize>>> = match spec.signature() {
            Signature::Qra => task.negs.iter().cloned().map(Some).collect(),
            _ => vec![None],
        };
        for neg in negs {
            if let (Some(g), Some(t), Some(mi)) = (&neg, &task.tilde, &task.minus) {
                // ¬(a·b) = ¬a + ¬b = −(∼¬b · ∼¬a)
                let dp = (0..n).all(|a| (0..n).all(|b| g[mult[a * n + b]] == mi[mult[t[g[b]] * n + t[g[a]]]]));
                if !dp {
                    continue;
                }
            }
            let raw = RawAlgebra { neg, ..base.clone() };
            if let Ok(alg) = FiniteAlgebra::new(raw) {
                out.push(alg);
            }
        }
    }
    out
}

fn fixed_cell_ok(s: &TableSearch<'_>, a: usize, b: usize, v: usize) -> bool {
    let lat = s.task.lat;
    if let (Some(z), Some(t)) = (s.zero, &s.task.tilde) {
        if lat.le(v, z) != lat.le(b, t[a]) {
            return false;
        }
    }
    if s.idempotent && a == b && v != a {
        return false;
    }
    true
}

/// Enumerate all algebras of `spec.size` elements satisfying every
/// constraint, one per isomorphism class.
pub fn enumerate_models(spec: &SearchSpec) -> Result<ModelSet> {
    let n = spec.size;
    if n == 0 {
        return Err(Error::SizeTooSmall { n, min: 1 });
    }
    if n > spec.max_size {
        return Err(Error::BudgetExceeded(format!("size {n} exceeds the exhaustive search bound {}", spec.max_size)));
    }
    let sig = spec.signature();
    let lattices: Vec<Lattice> = enumerate_lattices(n)
        .into_iter()
        .filter(|l| !spec.has(Constraint::Dqra) || l.is_distributive())
        .filter(|l| !spec.has(Constraint::Chain) || l.is_chain())
        .collect();

    let mut tasks: Vec<Task<'_>> = Vec::new();
    for lat in &lattices {
        let duals = if sig == Signature::Rl { Vec::new() } else { lat.dual_automorphisms() };
        for one in 0..n {
            if n > 1 && one == lat.bottom {
                continue;
            }
            if spec.has(Constraint::Conic) && !(0..n).all(|x| lat.le(x, one) || lat.le(one, x)) {
                continue;
            }
            if spec.has(Constraint::TotIrrOne) && !lat.lattice_irreducible(one) {
                continue;
            }
            if sig == Signature::Rl {
                tasks.push(Task { lat, one, tilde: None, minus: None, negs: Vec::new() });
                continue;
            }
            for t in &duals {
                let zero = t[one];
                if t[zero] != one {
                    continue;
                }
                if (spec.has(Constraint::Odd) || spec.has(Constraint::TotIrrOne)) && zero != one {
                    continue;
                }
                let involutive_t = (0..n).all(|x| t[t[x]] == x);
                if spec.has(Constraint::Cyclic) && !involutive_t {
                    continue;
                }
                let mut minus = vec![0; n];
                for x in 0..n {
                    minus[t[x]] = x;
                }
                let negs: Vec<Vec<usize>> = if sig == Signature::Qra {
                    duals
                        .iter()
                        .filter(|g| (0..n).all(|x| g[g[x]] == x))
                        .filter(|g| (0..n).all(|x| g[t[x]] == minus[g[x]]))
                        .filter(|g| !spec.has(Constraint::TotIrrOne) || g[one] == one)
                        .cloned()
                        .collect()
                } else {
                    Vec::new()
                };
                if sig == Signature::Qra && negs.is_empty() {
                    continue;
                }
                tasks.push(Task { lat, one, tilde: Some(t.clone()), minus: Some(minus), negs });
            }
        }
    }

    let shared = Shared { spec, nodes: AtomicU64::new(0), aborted: AtomicBool::new(false) };
    let candidates: Vec<FiniteAlgebra> = tasks.par_iter().flat_map_iter(|t| solve_task(t, &shared)).collect();

    let accepted: Vec<(Vec<u8>, FiniteAlgebra, BTreeMap<Constraint, bool>)> = candidates
        .into_par_iter()
        .filter_map(|alg| {
            let report = check_axioms(&alg);
            if !spec.constraints.iter().all(|c| c.holds(&alg, &report)) {
                return None;
            }
            let properties = applicable(sig).into_iter().map(|c| (c, c.holds(&alg, &report))).collect();
            let key = canonical_form(&alg).ok()?;
            Some((key, alg, properties))
        })
        .collect();
    let mut unique: BTreeMap<Vec<u8>, (FiniteAlgebra, BTreeMap<Constraint, bool>)> = BTreeMap::new();
    for (key, alg, props) in accepted {
        unique.entry(key).or_insert((alg, props));
    }
    let budget_exceeded = shared.aborted.load(Ordering::Relaxed);
    let mut models = Vec::with_capacity(unique.len());
    for (canonical, (alg, properties)) in unique {
        models.push(Model { algebra: canonical_algebra(&alg)?, canonical, properties });
    }
    let mut exhaustive = !budget_exceeded;
    if let Some(limit) = spec.limit {
        if models.len() > limit {
            models.truncate(limit);
            exhaustive = false;
        }
    }
    Ok(ModelSet { models, exhaustive, budget_exceeded, lattices: lattices.len(), nodes: shared.nodes.into_inner() })
}

fn applicable(sig: Signature) -> Vec<Constraint> {
    let all = Constraint::ALL.to_vec();
    match sig {
        Signature::Qra => all,
        Signature::InFl => all.into_iter().filter(|c| !matches!(c, Constraint::Qra | Constraint::Dqra)).collect(),
        Signature::Rl => all
            .into_iter()
            .filter(|c| {
                !matches!(
                    c,
                    Constraint::Qra | Constraint::Dqra | Constraint::Infl | Constraint::Odd | Constraint::Cyclic
                )
            })
            .collect(),
    }
}
