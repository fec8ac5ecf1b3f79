//! Shared fixtures and generators for the integration suites.

#![allow(dead_code)]

use num_bigint::BigUint;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use pswsat::decomposition::{elements_of, from_parts, NodeId};
use pswsat::{
    linear_decomposition, parse_cnf, BranchDecomposition, ClauseSet, Element, Formula, Literal,
    VarSet,
};

/// The worked example used throughout the unit tests: five variables, four
/// clauses, and the cut holding clauses {c0, c2} and variables {x1, x2}.
///
/// c0 = {x1, x2}
/// c1 = {x1, ¬x2, x3}
/// c2 = {x1, ¬x4, x5}
/// c3 = {x2}
///
/// The induced subformulas of the cut are {{x1,¬x2},{x2}} (clauses c1, c3
/// on {x1,x2}) and {∅, {¬x4,x5}} (clauses c0, c2 on {x3,x4,x5}); their PS
/// families are {{c1},{c3},{c1,c3}} and {∅,{c2}}, so the cut's ps-value
/// is 3.
pub struct WorkedExample {
    pub formula: Formula,
    pub decomposition: BranchDecomposition,
    pub cut_node: NodeId,
}

pub fn worked_example() -> WorkedExample {
    let formula = parse_cnf("p cnf 5 4\n1 2 0\n1 -2 3 0\n1 -4 5 0\n2 0\n").unwrap();
    let order = [
        Element::Variable(1),
        Element::Clause(0),
        Element::Variable(2),
        Element::Clause(2),
        Element::Variable(3),
        Element::Clause(1),
        Element::Variable(4),
        Element::Clause(3),
        Element::Variable(5),
    ];
    let decomposition = linear_decomposition(&formula, &order).unwrap();
    let want_clauses = ClauseSet::from_ids(4, [0usize, 2]);
    let want_vars = VarSet::from_ids(6, [1u32, 2]);
    let cut_node = (0..decomposition.num_nodes())
        .find(|&id| {
            let cut = decomposition.cut_of(&formula, id);
            cut.clause_side == want_clauses && cut.var_side == want_vars
        })
        .expect("the caterpillar contains the target prefix cut");
    WorkedExample {
        formula,
        decomposition,
        cut_node,
    }
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random small formula: 1..=8 declared variables, 1..=8 clauses of length
/// 0..=4, occasional verbatim duplicate clause lines.
pub fn random_formula(rng: &mut ChaCha8Rng) -> Formula {
    let n = rng.gen_range(1..=8u32);
    let m = rng.gen_range(1..=8usize);
    let mut clause_lits: Vec<Vec<Literal>> = Vec::with_capacity(m);
    for i in 0..m {
        if i > 0 && rng.gen_bool(0.15) {
            let j = rng.gen_range(0..i);
            clause_lits.push(clause_lits[j].clone());
            continue;
        }
        let len = rng.gen_range(0..=4usize);
        let lits: Vec<Literal> = (0..len)
            .map(|_| Literal::new(rng.gen_range(1..=n), rng.gen_bool(0.5)))
            .collect();
        clause_lits.push(lits);
    }
    Formula::from_clauses(n, clause_lits)
}

/// Same formula with random clause weights below 2^64.
pub fn with_random_weights(f: &Formula, rng: &mut ChaCha8Rng) -> Formula {
    let weights: Vec<BigUint> = (0..f.num_clauses())
        .map(|_| BigUint::from(rng.gen::<u64>()))
        .collect();
    f.clone().with_weights(weights)
}

/// A uniformly shuffled linear decomposition.
pub fn random_linear(f: &Formula, rng: &mut ChaCha8Rng) -> BranchDecomposition {
    let mut order = elements_of(f);
    order.shuffle(rng);
    linear_decomposition(f, &order).unwrap()
}

/// A random binary tree decomposition built by repeatedly joining two
/// random roots of the forest.
pub fn random_tree(f: &Formula, rng: &mut ChaCha8Rng) -> BranchDecomposition {
    let elements = elements_of(f);
    let leaf_count = elements.len();
    assert!(leaf_count >= 2);
    let leaves: Vec<(NodeId, Element)> = elements.into_iter().enumerate().collect();
    let mut roots: Vec<NodeId> = (0..leaf_count).collect();
    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
    let mut next = leaf_count;
    while roots.len() > 1 {
        let a = roots.swap_remove(rng.gen_range(0..roots.len()));
        let b = roots.swap_remove(rng.gen_range(0..roots.len()));
        edges.push((next, a));
        edges.push((next, b));
        roots.push(next);
        next += 1;
    }
    from_parts(f, next, roots[0], &edges, &leaves).unwrap()
}

/// An instance drawn from a random interval model: every variable and
/// clause owns an interval on the line, a variable occurs in a clause
/// exactly when their intervals intersect (signs random), and the
/// elements sorted by right endpoint form an interval ordering.
pub struct IntervalInstance {
    pub formula: Formula,
    pub ordering: Vec<Element>,
}

pub fn random_interval_instance(
    rng: &mut ChaCha8Rng,
    max_vars: u32,
    max_clauses: usize,
) -> IntervalInstance {
    loop {
        let n = rng.gen_range(1..=max_vars);
        let m = rng.gen_range(1..=max_clauses);
        let interval = |rng: &mut ChaCha8Rng| {
            let start = rng.gen_range(0..1000u32);
            let end = start + rng.gen_range(1..=300u32);
            (start, end)
        };
        let var_spans: Vec<(u32, u32)> = (0..n).map(|_| interval(rng)).collect();
        let clause_spans: Vec<(u32, u32)> = (0..m).map(|_| interval(rng)).collect();
        let overlaps = |a: (u32, u32), b: (u32, u32)| a.0.max(b.0) <= a.1.min(b.1);

        let clauses: Vec<Vec<Literal>> = clause_spans
            .iter()
            .map(|&cs| {
                (0..n)
                    .filter(|&v| overlaps(var_spans[v as usize], cs))
                    .map(|v| Literal::new(v + 1, rng.gen_bool(0.5)))
                    .collect()
            })
            .collect();
        let formula = Formula::from_clauses(n, clauses);
        if elements_of(&formula).len() < 2 {
            continue;
        }

        // sort elements by right endpoint; any tie order keeps the
        // betweenness conditions because only the monotonicity matters
        let mut keyed: Vec<(u32, Element)> = Vec::new();
        for v in formula.occurring_vars().iter() {
            keyed.push((var_spans[v as usize - 1].1, Element::Variable(v)));
        }
        for c in formula.clauses() {
            keyed.push((clause_spans[c.id].1, Element::Clause(c.id)));
        }
        keyed.sort_by_key(|&(end, e)| (end, e));
        let ordering = keyed.into_iter().map(|(_, e)| e).collect();
        return IntervalInstance { formula, ordering };
    }
}
