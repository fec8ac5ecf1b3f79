//! The precisely-satisfiable-set engine.
//!
//! For a subformula F' of the input, the family PS(F') collects every set
//! of clause ids that some full assignment of F''s variables satisfies
//! exactly. This module computes PS families for both subformulas of every
//! cut of a branch decomposition, and from them the ps-width.
//!
//! All families live in the global clause-id space of the root formula, so
//! the joins are pure bit operations: the family of a node is built from
//! the families of its children (unions trimmed to the clauses outside the
//! cut), and the complement family of a node from the sibling family and
//! the parent complement family (unions trimmed to the clauses inside the
//! cut).

use crate::decomposition::{BranchDecomposition, Cut, Element, NodeId};
use crate::formula::{Formula, VarId};
use crate::sets::{ClauseSet, VarSet};

/// A canonical family of clause-id sets: sorted strictly ascending, so
/// membership, equality and size are unambiguous.
#[derive(Clone, PartialEq, Eq)]
pub struct PsFamily {
    members: Vec<ClauseSet>,
}

impl PsFamily {
    /// Normalizes an arbitrary iterator of sets into a family.
    pub fn from_sets<I: IntoIterator<Item = ClauseSet>>(universe: usize, sets: I) -> Self {
        let mut members: Vec<ClauseSet> = sets.into_iter().collect();
        debug_assert!(members.iter().all(|s| s.universe() == universe));
        members.sort();
        members.dedup();
        PsFamily { members }
    }

    /// The family containing only the empty set.
    pub fn singleton_empty(universe: usize) -> Self {
        PsFamily {
            members: vec![ClauseSet::empty(universe)],
        }
    }

    pub fn members(&self) -> &[ClauseSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, set: &ClauseSet) -> bool {
        self.index_of(set).is_some()
    }

    /// Position of a set in the sorted member list.
    pub fn index_of(&self, set: &ClauseSet) -> Option<usize> {
        self.members.binary_search(set).ok()
    }
}

impl std::fmt::Debug for PsFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(&self.members).finish()
    }
}

/// Clauses of `f` containing the given literal polarity of `var`.
pub(crate) fn clauses_with_literal(f: &Formula, var: VarId, negated: bool) -> ClauseSet {
    let mut s = ClauseSet::empty(f.clause_universe());
    for c in f.clauses() {
        if c.contains(crate::formula::Literal::new(var, negated)) {
            s.insert(c.id);
        }
    }
    s
}

/// PS family of the subformula below a leaf. A clause leaf sees a formula
/// with no variables, so only the empty set is realizable; a variable leaf
/// sees every clause induced on that single variable, realizing the sets of
/// clauses containing the positive and the negative literal.
pub fn ps_leaf(f: &Formula, d: &BranchDecomposition, leaf: NodeId) -> PsFamily {
    match d.leaf_element(leaf).expect("leaf node") {
        Element::Clause(_) => PsFamily::singleton_empty(f.clause_universe()),
        Element::Variable(x) => {
            let negative = clauses_with_literal(f, x, true);
            let positive = clauses_with_literal(f, x, false);
            PsFamily::from_sets(f.clause_universe(), [negative, positive])
        }
    }
}

/// PS family of the complement of the root: the complement formula has no
/// variables left, so only the empty set is realizable.
pub fn ps_root_complement(f: &Formula) -> PsFamily {
    PsFamily::singleton_empty(f.clause_universe())
}

/// Joins the families of two children into the family of their parent:
/// all pairwise unions, trimmed to the clauses outside the parent cut,
/// then sorted with duplicates removed. Returns the family and the number
/// of pairs iterated.
pub fn ps_join(a: &PsFamily, b: &PsFamily, cut: &Cut) -> (PsFamily, u64) {
    let universe = cut.clause_side.universe();
    let mut pairs = 0u64;
    let mut sets = Vec::with_capacity(a.len() * b.len());
    for x in a.members() {
        for y in b.members() {
            pairs += 1;
            sets.push(x.union(y).difference(&cut.clause_side));
        }
    }
    (PsFamily::from_sets(universe, sets), pairs)
}

/// Builds the complement family of a node from its sibling's family and its
/// parent's complement family: all pairwise unions, trimmed to the clauses
/// inside the node's cut. Returns the family and the number of pairs
/// iterated.
pub fn ps_complement_join(
    sibling: &PsFamily,
    parent_complement: &PsFamily,
    cut: &Cut,
) -> (PsFamily, u64) {
    let universe = cut.clause_side.universe();
    let mut pairs = 0u64;
    let mut sets = Vec::with_capacity(sibling.len() * parent_complement.len());
    for s in sibling.members() {
        for p in parent_complement.members() {
            pairs += 1;
            sets.push(s.union(p).intersection(&cut.clause_side));
        }
    }
    (PsFamily::from_sets(universe, sets), pairs)
}

/// Per-node result of [`compute_ps_tables`]: the families of the node's
/// subformula and of its complement, with the pair counts spent building
/// each.
#[derive(Clone, Debug)]
pub struct NodeFamilies {
    pub inner: PsFamily,
    pub outer: PsFamily,
    pub inner_pairs: u64,
    pub outer_pairs: u64,
}

/// PS families for every node of the decomposition: one bottom-up pass for
/// the node families, then one top-down pass (root first) for the
/// complement families.
pub fn compute_ps_tables(f: &Formula, d: &BranchDecomposition) -> Vec<NodeFamilies> {
    let cuts = d.cuts(f);
    let placeholder = NodeFamilies {
        inner: PsFamily { members: vec![] },
        outer: PsFamily { members: vec![] },
        inner_pairs: 0,
        outer_pairs: 0,
    };
    let mut tables = vec![placeholder; d.num_nodes()];

    for id in d.post_order() {
        match d.children(id) {
            None => tables[id].inner = ps_leaf(f, d, id),
            Some((l, r)) => {
                let (fam, pairs) = ps_join(&tables[l].inner, &tables[r].inner, &cuts[id]);
                tables[id].inner = fam;
                tables[id].inner_pairs = pairs;
            }
        }
    }

    for id in d.top_down_order() {
        if id == d.root() {
            tables[id].outer = ps_root_complement(f);
            continue;
        }
        let sibling = d.sibling(id).expect("non-root node has a sibling");
        let parent = d.parent(id).expect("non-root node has a parent");
        let (fam, pairs) =
            ps_complement_join(&tables[sibling].inner, &tables[parent].outer, &cuts[id]);
        tables[id].outer = fam;
        tables[id].outer_pairs = pairs;
    }

    tables
}

/// Sizes of both families at one node.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct NodeWidths {
    pub node: NodeId,
    pub inner_size: usize,
    pub outer_size: usize,
}

impl NodeWidths {
    pub fn ps_value(&self) -> usize {
        self.inner_size.max(self.outer_size)
    }
}

/// The ps-width of the decomposition: the maximum over all nodes of the
/// larger family size, together with the per-node report.
pub fn ps_width(f: &Formula, d: &BranchDecomposition) -> (usize, Vec<NodeWidths>) {
    let tables = compute_ps_tables(f, d);
    ps_width_from_tables(&tables)
}

pub fn ps_width_from_tables(tables: &[NodeFamilies]) -> (usize, Vec<NodeWidths>) {
    let report: Vec<NodeWidths> = tables
        .iter()
        .enumerate()
        .map(|(node, t)| NodeWidths {
            node,
            inner_size: t.inner.len(),
            outer_size: t.outer.len(),
        })
        .collect();
    let width = report.iter().map(|r| r.ps_value()).max().unwrap_or(1);
    (width, report)
}

/// Greedy linear order: start from nothing and repeatedly append the element
/// whose prefix family stays smallest, ties broken by the canonical element
/// order. Heuristic only; the measured width is whatever it is.
pub fn greedy_ps_order(f: &Formula) -> Vec<Element> {
    let universe = f.clause_universe();
    let mut remaining = crate::decomposition::elements_of(f);
    let mut order: Vec<Element> = Vec::with_capacity(remaining.len());
    let mut prefix_clauses = ClauseSet::empty(universe);
    let mut prefix_vars = VarSet::for_max_var(f.declared_vars());
    let mut family = PsFamily::singleton_empty(universe);

    while !remaining.is_empty() {
        let mut best: Option<(usize, usize, PsFamily, Cut)> = None;
        for (i, &e) in remaining.iter().enumerate() {
            let mut cut = Cut {
                clause_side: prefix_clauses.clone(),
                var_side: prefix_vars.clone(),
            };
            let leaf_family = match e {
                Element::Clause(c) => {
                    cut.clause_side.insert(c);
                    PsFamily::singleton_empty(universe)
                }
                Element::Variable(x) => {
                    cut.var_side.insert(x);
                    let negative = clauses_with_literal(f, x, true);
                    let positive = clauses_with_literal(f, x, false);
                    PsFamily::from_sets(universe, [negative, positive])
                }
            };
            let (fam, _) = ps_join(&family, &leaf_family, &cut);
            if best
                .as_ref()
                .is_none_or(|(size, _, _, _)| fam.len() < *size)
            {
                best = Some((fam.len(), i, fam, cut));
            }
        }
        let (_, i, fam, cut) = best.expect("remaining is non-empty");
        order.push(remaining.remove(i));
        family = fam;
        prefix_clauses = cut.clause_side;
        prefix_vars = cut.var_side;
    }
    order
}
