mod common;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use common::{
    brute_infl, brute_key, brute_qra, brute_residuated_lattices, brute_totally_irreducible, dedupe, is_conic,
    is_distributive,
};
use dqra::*;

/// Oracle lists up to isomorphism for sizes 1..=5, built once per binary.
struct Oracle {
    rl: Vec<Vec<FiniteAlgebra>>,
    infl: Vec<Vec<FiniteAlgebra>>,
    qra: Vec<Vec<FiniteAlgebra>>,
}

fn oracle() -> &'static Oracle {
    static CELL: OnceLock<Oracle> = OnceLock::new();
    CELL.get_or_init(|| Oracle {
        rl: (0..=5).map(|n| if n == 0 { vec![] } else { dedupe(brute_residuated_lattices(n)) }).collect(),
        infl: (0..=5).map(|n| if n == 0 { vec![] } else { dedupe(brute_infl(n)) }).collect(),
        qra: (0..=5).map(|n| if n == 0 { vec![] } else { dedupe(brute_qra(n)) }).collect(),
    })
}

fn keys(algs: &[FiniteAlgebra]) -> BTreeSet<Vec<usize>> {
    algs.iter().map(brute_key).collect()
}

fn search(size: usize, cs: &[Constraint]) -> ModelSet {
    enumerate_models(&SearchSpec::new(size, cs.iter().copied())).unwrap()
}

fn found(set: &ModelSet) -> Vec<FiniteAlgebra> {
    set.models.iter().map(|m| m.algebra.clone()).collect()
}

fn commutative(a: &FiniteAlgebra) -> bool {
    (0..a.size()).all(|x| (0..a.size()).all(|y| a.mult(x, y) == a.mult(y, x)))
}

fn idempotent(a: &FiniteAlgebra) -> bool {
    (0..a.size()).all(|x| a.mult(x, x) == x)
}

fn chain(a: &FiniteAlgebra) -> bool {
    (0..a.size()).all(|x| (0..a.size()).all(|y| a.leq(x, y) || a.leq(y, x)))
}

#[test]
fn residuated_lattices_match_the_oracle() {
    let published = [1, 1, 3, 20, 149];
    for n in 1..=5 {
        let oracle = &oracle().rl[n];
        let set = search(n, &[]);
        assert_eq!(set.models.len(), oracle.len(), "n = {n}");
        assert_eq!(set.models.len(), published[n - 1]);
        assert_eq!(keys(&found(&set)), keys(oracle));
        assert!(set.exhaustive && !set.budget_exceeded);
    }
}

#[test]
fn involutive_and_quasi_relation_algebras_match_the_oracle() {
    for n in 1..=5 {
        let infl = &oracle().infl[n];
        assert_eq!(keys(&found(&search(n, &[Constraint::Infl]))), keys(infl), "InFL n = {n}");
        let qra = &oracle().qra[n];
        assert_eq!(keys(&found(&search(n, &[Constraint::Qra]))), keys(qra), "qRA n = {n}");
        let dqra: Vec<FiniteAlgebra> = qra.iter().filter(|a| is_distributive(a)).cloned().collect();
        assert_eq!(keys(&found(&search(n, &[Constraint::Dqra]))), keys(&dqra), "DqRA n = {n}");
    }
}

#[test]
fn secondary_constraints_match_filtered_oracles() {
    type Filter = fn(&FiniteAlgebra) -> bool;
    let filters: [(Constraint, Filter); 7] = [
        (Constraint::Conic, is_conic),
        (Constraint::Odd, |a| a.zero() == Some(a.one())),
        (Constraint::Cyclic, |a| a.tilde_table() == a.minus_table()),
        (Constraint::Commutative, commutative),
        (Constraint::Idempotent, idempotent),
        (Constraint::TotIrrOne, |a| brute_totally_irreducible(a, a.one())),
        (Constraint::Chain, chain),
    ];
    for n in 1..=5 {
        let qra = &oracle().qra[n];
        for (c, keep) in filters {
            let oracle: Vec<FiniteAlgebra> = qra.iter().filter(|a| keep(a)).cloned().collect();
            let got = search(n, &[Constraint::Qra, c]);
            assert_eq!(keys(&found(&got)), keys(&oracle), "qRA + {c}, n = {n}");
        }
        let rl = &oracle().rl[n];
        for (c, keep) in [filters[0], filters[3], filters[4], filters[6]] {
            let oracle: Vec<FiniteAlgebra> = rl.iter().filter(|a| keep(a)).cloned().collect();
            assert_eq!(keys(&found(&search(n, &[c]))), keys(&oracle), "RL + {c}, n = {n}");
        }
    }
}

#[test]
fn conic_totally_irreducible_dqras_are_odd_chains() {
    let cs = [Constraint::Dqra, Constraint::Conic, Constraint::TotIrrOne];
    for n in 1..=7 {
        let set = search(n, &cs);
        if n % 2 == 0 {
            assert!(set.models.is_empty(), "n = {n}");
            continue;
        }
        assert_eq!(set.models.len(), 1, "n = {n}");
        let model = &set.models[0];
        assert!(model.properties[&Constraint::Chain]);
        if n >= 2 {
            assert!(are_isomorphic(&model.algebra, sugihara_chain(n).unwrap().algebra()).is_some());
        }
    }
    // the oracle agrees where it is feasible
    for n in 1..=5 {
        let oracle: Vec<FiniteAlgebra> = oracle().qra[n]
            .iter()
            .filter(|a| is_distributive(a) && is_conic(a) && brute_totally_irreducible(a, a.one()))
            .cloned()
            .collect();
        assert_eq!(keys(&found(&search(n, &cs))), keys(&oracle));
    }
}

#[test]
fn results_are_deterministic() {
    let spec = SearchSpec::new(5, [Constraint::Qra]);
    let first = enumerate_models(&spec).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let single = pool.install(|| enumerate_models(&spec).unwrap());
    assert_eq!(first.models, single.models);
    for _ in 0..3 {
        assert_eq!(enumerate_models(&spec).unwrap().models, first.models);
    }
    let canon: Vec<&Vec<u8>> = first.models.iter().map(|m| &m.canonical).collect();
    assert!(canon.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn every_model_satisfies_its_constraints() {
    for cs in
        [vec![Constraint::Dqra, Constraint::Cyclic], vec![Constraint::Qra, Constraint::Odd], vec![Constraint::Infl]]
    {
        let set = search(6, &cs);
        for m in &set.models {
            let r = check_axioms(&m.algebra);
            for c in &cs {
                assert!(c.holds(&m.algebra, &r) && m.properties[c]);
            }
            assert_eq!(canonical_form(&m.algebra).unwrap(), m.canonical);
        }
    }
}

#[test]
fn limits_and_budgets() {
    let mut spec = SearchSpec::new(5, [Constraint::Qra]);
    spec.limit = Some(4);
    let set = enumerate_models(&spec).unwrap();
    assert_eq!(set.models.len(), 4);
    assert!(!set.exhaustive);
    let all = search(5, &[Constraint::Qra]);
    assert_eq!(set.models[..], all.models[..4]);

    let mut spec = SearchSpec::new(6, [Constraint::Qra]);
    spec.node_budget = Some(10);
    let set = enumerate_models(&spec).unwrap();
    assert!(set.budget_exceeded && !set.exhaustive);

    assert!(matches!(enumerate_models(&SearchSpec::new(0, [])), Err(Error::SizeTooSmall { .. })));
    assert!(matches!(enumerate_models(&SearchSpec::new(9, [])), Err(Error::BudgetExceeded(_))));
}

#[test]
fn constraint_names() {
    for c in Constraint::ALL {
        assert_eq!(c.name().parse::<Constraint>().unwrap(), c);
        assert_eq!(c.to_string(), c.name());
        assert_eq!(serde_json::to_string(&c).unwrap(), format!("\"{}\"", c.name()));
    }
    assert_eq!("TOT_IRR_ONE".parse::<Constraint>().unwrap(), Constraint::TotIrrOne);
    assert_eq!("totally_irreducible_one".parse::<Constraint>().unwrap(), Constraint::TotIrrOne);
    assert!("lattice".parse::<Constraint>().is_err());
}

#[test]
fn canonical_forms() {
    let s4 = sugihara_chain(4).unwrap().into_algebra();
    let reversed = s4.relabel(&[3, 2, 1, 0]).unwrap();
    assert_eq!(canonical_form(&s4).unwrap(), canonical_form(&reversed).unwrap());
    assert_ne!(canonical_form(&fixtures::l1()).unwrap(), canonical_form(&fixtures::k2()).unwrap());
}
