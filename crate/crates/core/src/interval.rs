//! Interval orderings and induced-matching analysis.
//!
//! An interval ordering is a linear order of the clauses and occurring
//! variables where, for every variable x occurring in clause C: if x comes
//! before C then every variable between them occurs in C, and if C comes
//! before x then x occurs in every clause between them. Formulas with such
//! an ordering admit linear decompositions whose cuts all have small
//! induced matchings, hence small PS families.
//!
//! Recognition here is exhaustive search under a hard element limit;
//! callers with larger instances supply their own ordering.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::decomposition::{
    elements_of, linear_decomposition, BranchDecomposition, Cut, DecompositionError, Element,
};
use crate::formula::{ClauseId, Formula, VarId};
use crate::sets::{ClauseSet, VarSet};

/// Default cap for exhaustive ordering search.
pub const DEFAULT_SEARCH_LIMIT: usize = 10;

/// A validated permutation of the clauses and occurring variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntervalOrdering {
    sequence: Vec<Element>,
    positions: BTreeMap<Element, usize>,
}

impl IntervalOrdering {
    /// Wraps a sequence after checking it is a permutation of the formula
    /// elements. Betweenness is not checked here; see
    /// [`verify_interval_ordering`].
    pub fn new(f: &Formula, sequence: Vec<Element>) -> Result<Self, OrderingError> {
        let mut expected = elements_of(f);
        expected.sort();
        let mut sorted = sequence.clone();
        sorted.sort();
        let duplicates: Vec<Element> = sorted
            .windows(2)
            .filter(|w| w[0] == w[1])
            .map(|w| w[0])
            .collect();
        let missing: Vec<Element> = expected
            .iter()
            .copied()
            .filter(|e| sorted.binary_search(e).is_err())
            .collect();
        if !duplicates.is_empty() || !missing.is_empty() || sorted.len() != expected.len() {
            return Err(OrderingError::NotPermutation {
                missing,
                duplicates,
            });
        }
        let positions = sequence.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        Ok(IntervalOrdering {
            sequence,
            positions,
        })
    }

    pub fn sequence(&self) -> &[Element] {
        &self.sequence
    }

    pub fn position(&self, e: Element) -> Option<usize> {
        self.positions.get(&e).copied()
    }
}

/// A witnessed failure of the betweenness conditions: `witness` sits
/// between `var` and `clause` but breaks the required occurrence.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct OrderingViolation {
    pub var: VarId,
    pub clause: ClauseId,
    pub witness: Element,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrderingError {
    #[error("sequence is not a permutation of the formula elements: missing {missing:?}, duplicated {duplicates:?}")]
    NotPermutation {
        missing: Vec<Element>,
        duplicates: Vec<Element>,
    },
    #[error("{elements} elements exceed the search limit {limit}; supply an ordering instead")]
    TooManyElements { elements: usize, limit: usize },
    #[error("not an interval ordering: variable v{} against clause c{} with witness {}",
            .0.var, .0.clause, .0.witness)]
    Violation(OrderingViolation),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
}

fn clause_var_sets(f: &Formula) -> BTreeMap<ClauseId, VarSet> {
    f.clauses()
        .iter()
        .map(|c| {
            (
                c.id,
                VarSet::from_ids(f.declared_vars() as usize + 1, c.vars()),
            )
        })
        .collect()
}

/// Checks both betweenness conditions for every (variable, clause)
/// incidence. Returns the first violation under ascending (variable,
/// clause) iteration, the witness being the offending element closest to
/// the left end of the gap; `None` means the ordering is valid.
pub fn verify_interval_ordering(
    f: &Formula,
    sequence: &[Element],
) -> Result<Option<OrderingViolation>, OrderingError> {
    let ordering = IntervalOrdering::new(f, sequence.to_vec())?;
    let members = clause_var_sets(f);

    let mut incidences: Vec<(VarId, ClauseId)> = Vec::new();
    for c in f.clauses() {
        for v in c.vars() {
            incidences.push((v, c.id));
        }
    }
    incidences.sort();

    for (x, c) in incidences {
        let px = ordering.position(Element::Variable(x)).unwrap();
        let pc = ordering.position(Element::Clause(c)).unwrap();
        let (lo, hi) = (px.min(pc), px.max(pc));
        for q in lo + 1..hi {
            let witness = match ordering.sequence[q] {
                Element::Variable(y) if px < pc && !members[&c].contains(y) => Element::Variable(y),
                Element::Clause(other) if pc < px && !members[&other].contains(x) => {
                    Element::Clause(other)
                }
                _ => continue,
            };
            return Ok(Some(OrderingViolation {
                var: x,
                clause: c,
                witness,
            }));
        }
    }
    Ok(None)
}

/// Appending an element keeps every previously checked triple intact, so a
/// prefix only needs the triples ending at the new element. That makes the
/// backtracking below exact.
fn extension_ok(members: &BTreeMap<ClauseId, VarSet>, placed: &[Element], next: Element) -> bool {
    match next {
        Element::Clause(c) => {
            let vars = &members[&c];
            let Some(first) = placed
                .iter()
                .position(|e| matches!(e, Element::Variable(v) if vars.contains(*v)))
            else {
                return true;
            };
            placed[first + 1..]
                .iter()
                .all(|e| !matches!(e, Element::Variable(y) if !vars.contains(*y)))
        }
        Element::Variable(x) => {
            let Some(first) = placed
                .iter()
                .position(|e| matches!(e, Element::Clause(c) if members[c].contains(x)))
            else {
                return true;
            };
            placed[first + 1..]
                .iter()
                .all(|e| !matches!(e, Element::Clause(c) if !members[c].contains(x)))
        }
    }
}

/// Exhaustive search for an interval ordering, refusing formulas with more
/// than `limit` elements. Returns the lexicographically first valid
/// ordering under the canonical element order, or `None` when no
/// permutation satisfies the conditions.
pub fn find_interval_ordering(
    f: &Formula,
    limit: Option<usize>,
) -> Result<Option<IntervalOrdering>, OrderingError> {
    let limit = limit.unwrap_or(DEFAULT_SEARCH_LIMIT);
    let elements = elements_of(f);
    if elements.len() > limit {
        return Err(OrderingError::TooManyElements {
            elements: elements.len(),
            limit,
        });
    }
    let members = clause_var_sets(f);
    let mut sorted = elements.clone();
    sorted.sort();

    fn search(
        members: &BTreeMap<ClauseId, VarSet>,
        pool: &[Element],
        used: &mut Vec<bool>,
        placed: &mut Vec<Element>,
    ) -> bool {
        if placed.len() == pool.len() {
            return true;
        }
        for i in 0..pool.len() {
            if used[i] || !extension_ok(members, placed, pool[i]) {
                continue;
            }
            used[i] = true;
            placed.push(pool[i]);
            if search(members, pool, used, placed) {
                return true;
            }
            placed.pop();
            used[i] = false;
        }
        false
    }

    let mut used = vec![false; sorted.len()];
    let mut placed = Vec::with_capacity(sorted.len());
    if search(&members, &sorted, &mut used, &mut placed) {
        let ordering = IntervalOrdering::new(f, placed)?;
        debug_assert_eq!(verify_interval_ordering(f, ordering.sequence())?, None);
        Ok(Some(ordering))
    } else {
        Ok(None)
    }
}

/// Uses a verified interval ordering directly as the leaf order of a
/// linear decomposition. The betweenness conditions force every cut of the
/// result to have a crossing induced matching of size at most 2, which
/// bounds each cut's PS families.
pub fn order_to_decomposition(
    f: &Formula,
    sequence: &[Element],
) -> Result<BranchDecomposition, OrderingError> {
    if let Some(violation) = verify_interval_ordering(f, sequence)? {
        return Err(OrderingError::Violation(violation));
    }
    Ok(linear_decomposition(f, sequence)?)
}

/// A bipartite variable/clause graph: either the incidence graph of a
/// formula or the crossing graph of a cut.
#[derive(Clone, Debug)]
pub struct CutBigraph {
    pub left: Vec<Element>,
    pub right: Vec<Element>,
    /// Per variable, the clauses adjacent to it within this graph.
    adjacency: Vec<(VarId, ClauseSet)>,
}

impl CutBigraph {
    /// Incidence graph of a formula: variables on the left, clauses on the
    /// right, one edge per occurrence.
    pub fn incidence(f: &Formula) -> Self {
        let universe = f.clause_universe();
        let mut adjacency: Vec<(VarId, ClauseSet)> = f
            .occurring_vars()
            .iter()
            .map(|v| (v, ClauseSet::empty(universe)))
            .collect();
        for c in f.clauses() {
            for v in c.vars() {
                let slot = adjacency
                    .iter_mut()
                    .find(|(var, _)| *var == v)
                    .expect("occurring variable");
                slot.1.insert(c.id);
            }
        }
        CutBigraph {
            left: f.occurring_vars().iter().map(Element::Variable).collect(),
            right: f.clauses().iter().map(|c| Element::Clause(c.id)).collect(),
            adjacency,
        }
    }

    /// Crossing graph of a cut: the incidences with exactly one endpoint
    /// inside the cut.
    pub fn crossing(f: &Formula, cut: &Cut) -> Self {
        let universe = f.clause_universe();
        let mut adjacency: Vec<(VarId, ClauseSet)> = f
            .occurring_vars()
            .iter()
            .map(|v| (v, ClauseSet::empty(universe)))
            .collect();
        for c in f.clauses() {
            for v in c.vars() {
                if cut.var_side.contains(v) != cut.clause_side.contains(c.id) {
                    let slot = adjacency
                        .iter_mut()
                        .find(|(var, _)| *var == v)
                        .expect("occurring variable");
                    slot.1.insert(c.id);
                }
            }
        }
        let mut left = Vec::new();
        let mut right = Vec::new();
        for e in elements_of(f) {
            let inside = match e {
                Element::Variable(v) => cut.var_side.contains(v),
                Element::Clause(c) => cut.clause_side.contains(c),
            };
            if inside {
                left.push(e);
            } else {
                right.push(e);
            }
        }
        CutBigraph {
            left,
            right,
            adjacency,
        }
    }

    /// Builds a graph from explicit variable-to-clauses edges.
    pub fn from_edges<I>(clause_universe: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (VarId, ClauseId)>,
    {
        let mut adjacency: Vec<(VarId, ClauseSet)> = Vec::new();
        let mut clauses = Vec::new();
        for (v, c) in edges {
            match adjacency.iter_mut().find(|(var, _)| *var == v) {
                Some(slot) => slot.1.insert(c),
                None => {
                    let mut s = ClauseSet::empty(clause_universe);
                    s.insert(c);
                    adjacency.push((v, s));
                }
            }
            if !clauses.contains(&c) {
                clauses.push(c);
            }
        }
        adjacency.sort_by_key(|(v, _)| *v);
        clauses.sort_unstable();
        CutBigraph {
            left: adjacency
                .iter()
                .map(|(v, _)| Element::Variable(*v))
                .collect(),
            right: clauses.into_iter().map(Element::Clause).collect(),
            adjacency,
        }
    }

    pub fn num_edges(&self) -> usize {
        self.adjacency.iter().map(|(_, s)| s.len()).sum()
    }
}

/// Exact maximum induced matching by branch and bound.
///
/// An induced matching corresponds to a set S of variables such that each
/// member has a clause neighbor private to it within S; that property is
/// closed under taking subsets, so the search may grow S one variable at a
/// time and prune as soon as some member loses all private neighbors.
pub fn max_induced_matching_size(g: &CutBigraph) -> usize {
    let vars: Vec<&ClauseSet> = g
        .adjacency
        .iter()
        .filter(|(_, s)| !s.is_empty())
        .map(|(_, s)| s)
        .collect();

    fn all_private(chosen: &[&ClauseSet]) -> bool {
        chosen.iter().enumerate().all(|(j, own)| {
            let mut private = (*own).clone();
            for (k, other) in chosen.iter().enumerate() {
                if k != j {
                    private = private.difference(other);
                }
            }
            !private.is_empty()
        })
    }

    fn search<'a>(
        vars: &[&'a ClauseSet],
        from: usize,
        chosen: &mut Vec<&'a ClauseSet>,
        best: &mut usize,
    ) {
        *best = (*best).max(chosen.len());
        for i in from..vars.len() {
            if chosen.len() + (vars.len() - i) <= *best {
                break;
            }
            chosen.push(vars[i]);
            if all_private(chosen) {
                search(vars, i + 1, chosen, best);
            }
            chosen.pop();
        }
    }

    let mut best = 0;
    let mut chosen = Vec::new();
    search(&vars, 0, &mut chosen, &mut best);
    best
}

/// Per-node induced-matching sizes of both cut subformulas.
#[derive(Clone, Copy, Debug)]
pub struct NodeMim {
    pub node: usize,
    pub inner: usize,
    pub outer: usize,
}

#[derive(Clone, Debug)]
pub struct MimReport {
    pub per_node: Vec<NodeMim>,
    pub max: usize,
}

/// Brute-force induced-matching sizes of the incidence graphs of both
/// subformulas at every node. Exponential in the worst case; meant for
/// desk-scale validation, not the solving path.
pub fn mim_of_decomposition(f: &Formula, d: &BranchDecomposition) -> MimReport {
    let cuts = d.cuts(f);
    let per_node: Vec<NodeMim> = (0..d.num_nodes())
        .map(|node| {
            let (inner, outer) = crate::decomposition::cut_subformulas(f, &cuts[node]);
            NodeMim {
                node,
                inner: max_induced_matching_size(&CutBigraph::incidence(&inner)),
                outer: max_induced_matching_size(&CutBigraph::incidence(&outer)),
            }
        })
        .collect();
    let max = per_node
        .iter()
        .map(|n| n.inner.max(n.outer))
        .max()
        .unwrap_or(0);
    MimReport { per_node, max }
}
