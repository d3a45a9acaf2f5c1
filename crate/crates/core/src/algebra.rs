//! Finite algebras over the carrier `0..n`.
//!
//! A [`FiniteAlgebra`] always has a lattice order and a monoid; the constant
//! 0 and the three unary operations ∼, −, ¬ are optional so that plain
//! residuated lattices are first-class. Meet and join are derived from the
//! order and cached.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Unvalidated algebra data in flat row-major form.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RawAlgebra {
    pub size: usize,
    /// `leq[a * size + b]` is `a ≤ b`.
    pub leq: Vec<bool>,
    /// `mult[a * size + b]` is `a · b`.
    pub mult: Vec<usize>,
    pub one: usize,
    pub zero: Option<usize>,
    pub tilde: Option<Vec<usize>>,
    pub minus: Option<Vec<usize>>,
    pub neg: Option<Vec<usize>>,
    pub names: Option<Vec<String>>,
}

/// JSON interchange form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraRecord {
    pub size: usize,
    pub leq: Vec<Vec<u8>>,
    pub mult: Vec<Vec<usize>>,
    pub one: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tilde: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minus: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub neg: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    // Accepted only so that they can be rejected with a clear error.
    #[serde(default, skip_serializing)]
    pub meet: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing)]
    pub join: Option<Vec<Vec<usize>>>,
}

impl AlgebraRecord {
    pub fn to_raw(&self) -> Result<RawAlgebra> {
        if self.meet.is_some() || self.join.is_some() {
            return Err(Error::LatticeTablesSupplied);
        }
        let n = self.size;
        if self.leq.len() != n || self.leq.iter().any(|r| r.len() != n) {
            return Err(Error::Malformed(format!("leq must be a {n}×{n} matrix")));
        }
        if self.mult.len() != n || self.mult.iter().any(|r| r.len() != n) {
            return Err(Error::Malformed(format!("mult must be a {n}×{n} matrix")));
        }
        let mut leq = Vec::with_capacity(n * n);
        for row in &self.leq {
            for &v in row {
                match v {
                    0 => leq.push(false),
                    1 => leq.push(true),
                    _ => return Err(Error::Malformed("leq entries must be 0 or 1".into())),
                }
            }
        }
        Ok(RawAlgebra {
            size: n,
            leq,
            mult: self.mult.iter().flatten().copied().collect(),
            one: self.one,
            zero: self.zero,
            tilde: self.tilde.clone(),
            minus: self.minus.clone(),
            neg: self.neg.clone(),
            names: self.names.clone(),
        })
    }
}

/// Validate a JSON record: order, lattice and monoid structure. Residuation
/// is not checked here; see [`crate::axioms::residuals`].
pub fn validate_algebra(record: &AlgebraRecord) -> Result<FiniteAlgebra> {
    FiniteAlgebra::new(record.to_raw()?)
}

/// A validated finite algebra. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    n: usize,
    leq: Vec<bool>,
    meet: Vec<usize>,
    join: Vec<usize>,
    mult: Vec<usize>,
    one: usize,
    zero: Option<usize>,
    tilde: Option<Vec<usize>>,
    minus: Option<Vec<usize>>,
    neg: Option<Vec<usize>>,
    names: Option<Vec<String>>,
    bottom: usize,
    top: usize,
}

impl FiniteAlgebra {
    pub fn new(raw: RawAlgebra) -> Result<Self> {
        let n = raw.size;
        if n == 0 {
            return Err(Error::Malformed("the carrier must be nonempty".into()));
        }
        if raw.leq.len() != n * n || raw.mult.len() != n * n {
            return Err(Error::Malformed(format!("tables must have {} entries", n * n)));
        }
        let in_range = |what: &str, v: usize| {
            if v < n {
                Ok(())
            } else {
                Err(Error::Malformed(format!("{what} entry {v} is out of range 0..{n}")))
            }
        };
        for &v in &raw.mult {
            in_range("mult", v)?;
        }
        in_range("one", raw.one)?;
        if let Some(z) = raw.zero {
            in_range("zero", z)?;
        }
        for (what, table) in [("tilde", &raw.tilde), ("minus", &raw.minus), ("neg", &raw.neg)] {
            if let Some(t) = table {
                if t.len() != n {
                    return Err(Error::Malformed(format!("{what} must have {n} entries")));
                }
                for &v in t {
                    in_range(what, v)?;
                }
            }
        }
        if let Some(names) = &raw.names {
            if names.len() != n {
                return Err(Error::Malformed(format!("names must have {n} entries")));
            }
        }

        check_partial_order(n, &raw.leq)?;
        let (meet, join) = lattice_tables(n, &raw.leq).map_err(|e| match e {
            Error::NoMeet(a, b) => Error::NotALattice { op: "meet", a, b },
            Error::NoJoin(a, b) => Error::NotALattice { op: "join", a, b },
            other => other,
        })?;

        let m = |a: usize, b: usize| raw.mult[a * n + b];
        for a in 0..n {
            if m(raw.one, a) != a || m(a, raw.one) != a {
                return Err(Error::NotAMonoid { law: "identity", witness: vec![a] });
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = m(a, b);
                for c in 0..n {
                    if m(ab, c) != m(a, m(b, c)) {
                        return Err(Error::NotAMonoid { law: "associativity", witness: vec![a, b, c] });
                    }
                }
            }
        }

        if let Some(z) = raw.zero {
            let t1 = raw.tilde.as_ref().map(|t| t[raw.one]);
            let m1 = raw.minus.as_ref().map(|t| t[raw.one]);
            if t1.is_some_and(|v| v != z) || m1.is_some_and(|v| v != z) {
                return Err(Error::ZeroMismatch { zero: z, tilde_one: t1, minus_one: m1 });
            }
        }

        let bottom = (0..n).find(|&a| (0..n).all(|b| raw.leq[a * n + b])).expect("finite lattice has a bottom");
        let top = (0..n).find(|&a| (0..n).all(|b| raw.leq[b * n + a])).expect("finite lattice has a top");
        Ok(FiniteAlgebra {
            n,
            leq: raw.leq,
            meet,
            join,
            mult: raw.mult,
            one: raw.one,
            zero: raw.zero,
            tilde: raw.tilde,
            minus: raw.minus,
            neg: raw.neg,
            names: raw.names,
            bottom,
            top,
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n + b]
    }

    pub fn mult(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.n + b]
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn tilde_table(&self) -> Option<&[usize]> {
        self.tilde.as_deref()
    }

    pub fn minus_table(&self) -> Option<&[usize]> {
        self.minus.as_deref()
    }

    pub fn neg_table(&self) -> Option<&[usize]> {
        self.neg.as_deref()
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display label of an element; falls back to the index.
    pub fn name(&self, a: usize) -> String {
        match &self.names {
            Some(names) => names[a].clone(),
            None => a.to_string(),
        }
    }

    /// Index of the element carrying `name`, if names are present.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.as_ref()?.iter().position(|s| s == name)
    }

    /// True when both algebras carry the same optional operations.
    pub fn same_signature(&self, other: &FiniteAlgebra) -> bool {
        self.zero.is_some() == other.zero.is_some()
            && self.tilde.is_some() == other.tilde.is_some()
            && self.minus.is_some() == other.minus.is_some()
            && self.neg.is_some() == other.neg.is_some()
    }

    pub fn is_chain(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.leq(a, b) || self.leq(b, a)))
    }

    /// Pairs `(a, b)` with `b` covering `a`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b || !self.leq(a, b) {
                    continue;
                }
                let between = (0..n).any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b));
                if !between {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn to_raw(&self) -> RawAlgebra {
        RawAlgebra {
            size: self.n,
            leq: self.leq.clone(),
            mult: self.mult.clone(),
            one: self.one,
            zero: self.zero,
            tilde: self.tilde.clone(),
            minus: self.minus.clone(),
            neg: self.neg.clone(),
            names: self.names.clone(),
        }
    }

    pub fn to_record(&self) -> AlgebraRecord {
        let n = self.n;
        AlgebraRecord {
            size: n,
            leq: (0..n).map(|a| (0..n).map(|b| u8::from(self.leq(a, b))).collect()).collect(),
            mult: (0..n).map(|a| (0..n).map(|b| self.mult(a, b)).collect()).collect(),
            one: self.one,
            zero: self.zero,
            tilde: self.tilde.clone(),
            minus: self.minus.clone(),
            neg: self.neg.clone(),
            names: self.names.clone(),
            meet: None,
            join: None,
        }
    }

    /// Copy with element `a` renamed to `perm[a]`. `perm` must be a
    /// permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Result<FiniteAlgebra> {
        let n = self.n;
        if perm.len() != n {
            return Err(Error::DimensionMismatch { left: perm.len(), right: n });
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::NotABijection(format!("{perm:?} is not a permutation of 0..{n}")));
            }
        }
        let mut raw = RawAlgebra {
            size: n,
            leq: vec![false; n * n],
            mult: vec![0; n * n],
            one: perm[self.one],
            ..Default::default()
        };
        for a in 0..n {
            for b in 0..n {
                raw.leq[perm[a] * n + perm[b]] = self.leq(a, b);
                raw.mult[perm[a] * n + perm[b]] = perm[self.mult(a, b)];
            }
        }
        raw.zero = self.zero.map(|z| perm[z]);
        let map_table = |t: &Option<Vec<usize>>| {
            t.as_ref().map(|t| {
                let mut out = vec![0; n];
                for a in 0..n {
                    out[perm[a]] = perm[t[a]];
                }
                out
            })
        };
        raw.tilde = map_table(&self.tilde);
        raw.minus = map_table(&self.minus);
        raw.neg = map_table(&self.neg);
        raw.names = self.names.as_ref().map(|names| {
            let mut out = vec![String::new(); n];
            for a in 0..n {
                out[perm[a]] = names[a].clone();
            }
            out
        });
        FiniteAlgebra::new(raw)
    }
}

fn check_partial_order(n: usize, leq: &[bool]) -> Result<()> {
    let l = |a: usize, b: usize| leq[a * n + b];
    for a in 0..n {
        if !l(a, a) {
            return Err(Error::NotAPoset { law: "reflexivity", witness: vec![a] });
        }
    }
    for a in 0..n {
        for b in 0..n {
            if a != b && l(a, b) && l(b, a) {
                return Err(Error::NotAPoset { law: "antisymmetry", witness: vec![a, b] });
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if !l(a, b) {
                continue;
            }
            for c in 0..n {
                if l(b, c) && !l(a, c) {
                    return Err(Error::NotAPoset { law: "transitivity", witness: vec![a, b, c] });
                }
            }
        }
    }
    Ok(())
}

fn lattice_tables(n: usize, leq: &[bool]) -> Result<(Vec<usize>, Vec<usize>)> {
    let l = |a: usize, b: usize| leq[a * n + b];
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            let lower: Vec<usize> = (0..n).filter(|&c| l(c, a) && l(c, b)).collect();
            meet[a * n + b] = *lower.iter().find(|&&c| lower.iter().all(|&d| l(d, c))).ok_or(Error::NoMeet(a, b))?;
            let upper: Vec<usize> = (0..n).filter(|&c| l(a, c) && l(b, c)).collect();
            join[a * n + b] = *upper.iter().find(|&&c| upper.iter().all(|&d| l(c, d))).ok_or(Error::NoJoin(a, b))?;
        }
    }
    Ok((meet, join))
}

/// Meet and join tables (row-major) of a partial order given as a flat
/// boolean matrix.
pub fn lattice_ops(n: usize, leq: &[bool]) -> Result<(Vec<usize>, Vec<usize>)> {
    if leq.len() != n * n {
        return Err(Error::DimensionMismatch { left: leq.len(), right: n * n });
    }
    check_partial_order(n, leq)?;
    lattice_tables(n, leq)
}
