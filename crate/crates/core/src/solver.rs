//! Dynamic programming over PS-indexed tables.
//!
//! Every node of the decomposition gets a table indexed by pairs from
//! PS(inner) x PS(outer). In counting mode an entry holds the number of
//! assignments of the cut variables that realize the inner index exactly
//! and satisfy every cut clause not covered by the outer index. In maxsat
//! mode an entry holds one best assignment realizing the inner index,
//! where "best" maximizes the weight of satisfied clauses outside the
//! outer index, together with that weight.
//!
//! Tables are built bottom-up. At an inner node the algorithm loops over
//! triples (child-1 index, child-2 index, outer index); the remaining
//! three indices of the six involved in an update are reconstructed from
//! the triple by set operations, which keeps the work per node cubic in
//! the width (quadratic on linear decompositions, where one child is a
//! leaf with a family of size at most 2).

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

use crate::decomposition::{
    auto_decomposition, elements_of, AutoStrategy, BranchDecomposition, Cut, DecompositionError,
    Element, NodeId,
};
use crate::formula::{Assignment, Formula};
use crate::ps::{
    clauses_with_literal, compute_ps_tables, ps_width_from_tables, NodeFamilies, NodeWidths,
};
#[cfg(debug_assertions)]
use crate::sets::ClauseSet;

/// What to compute.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Task {
    /// Exact model count over the occurring variables; with `all_vars` the
    /// result is scaled by 2^(declared - occurring).
    Count { all_vars: bool },
    /// Maximum total weight of satisfiable clauses plus one witness.
    MaxSat,
}

impl Task {
    fn mode(self) -> Mode {
        match self {
            Task::Count { .. } => Mode::Count,
            Task::MaxSat => Mode::MaxSat,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    Count,
    MaxSat,
}

/// A maxsat table entry: one assignment of the cut variables and the weight
/// of the clauses it satisfies outside the entry's outer index. The weight
/// is recomputable from the assignment, which the debug build checks.
#[derive(Clone, Debug)]
pub struct MaxEntry {
    pub assignment: Assignment,
    pub score: BigUint,
}

#[derive(Clone, Debug)]
enum TableData {
    /// Entries start unassigned and are filled by strict improvement.
    Max(Vec<Option<MaxEntry>>),
    Count(Vec<BigUint>),
}

/// The table of one node, indexed by (inner family position, outer family
/// position), row-major.
#[derive(Clone, Debug)]
pub struct DpTable {
    pub node: NodeId,
    pub rows: usize,
    pub cols: usize,
    data: TableData,
}

impl DpTable {
    fn new(node: NodeId, rows: usize, cols: usize, mode: Mode) -> Self {
        let data = match mode {
            Mode::MaxSat => TableData::Max(vec![None; rows * cols]),
            Mode::Count => TableData::Count(vec![BigUint::zero(); rows * cols]),
        };
        DpTable {
            node,
            rows,
            cols,
            data,
        }
    }

    fn idx(&self, row: usize, col: usize) -> usize {
        debug_assert!(row < self.rows && col < self.cols);
        row * self.cols + col
    }

    pub fn count(&self, row: usize, col: usize) -> Option<&BigUint> {
        match &self.data {
            TableData::Count(v) => Some(&v[self.idx(row, col)]),
            TableData::Max(_) => None,
        }
    }

    pub fn max_entry(&self, row: usize, col: usize) -> Option<&MaxEntry> {
        match &self.data {
            TableData::Max(v) => v[self.idx(row, col)].as_ref(),
            TableData::Count(_) => None,
        }
    }

    fn add_count(&mut self, row: usize, col: usize, amount: BigUint) {
        let i = self.idx(row, col);
        match &mut self.data {
            TableData::Count(v) => v[i] += amount,
            TableData::Max(_) => unreachable!("count update on a maxsat table"),
        }
    }

    /// Installs the candidate if the slot is unassigned or strictly beaten;
    /// ties keep the incumbent, which makes the iteration order decide.
    fn offer_max(
        &mut self,
        row: usize,
        col: usize,
        candidate: impl FnOnce() -> MaxEntry,
        score: &BigUint,
    ) {
        let i = self.idx(row, col);
        match &mut self.data {
            TableData::Max(v) => {
                let slot = &mut v[i];
                if slot.as_ref().is_none_or(|e| *score > e.score) {
                    *slot = Some(candidate());
                }
            }
            TableData::Count(_) => unreachable!("max update on a count table"),
        }
    }
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error("corrupted families: reconstructed index missing at node {node}")]
    InternalConsistency { node: NodeId },
}

/// The table of a leaf. The subformula below a leaf has at most one
/// variable, so a clause leaf has only the empty assignment (counting 1
/// exactly when the outer index covers the leaf clause) and a variable
/// leaf has the two assignments of its variable (value 0 preferred on
/// ties in maxsat mode).
pub fn leaf_table(
    f: &Formula,
    d: &BranchDecomposition,
    leaf: NodeId,
    families: &[NodeFamilies],
    mode: Mode,
) -> DpTable {
    let fam = &families[leaf];
    let mut table = DpTable::new(leaf, fam.inner.len(), fam.outer.len(), mode);
    match d.leaf_element(leaf).expect("leaf node") {
        Element::Clause(c) => {
            debug_assert_eq!(fam.inner.len(), 1);
            for (j, covered) in fam.outer.members().iter().enumerate() {
                match mode {
                    Mode::Count => {
                        if covered.contains(c) {
                            table.add_count(0, j, BigUint::from(1u32));
                        }
                    }
                    Mode::MaxSat => {
                        let entry = MaxEntry {
                            assignment: Assignment::empty(f.declared_vars()),
                            score: BigUint::zero(),
                        };
                        table.offer_max(0, j, || entry, &BigUint::zero());
                    }
                }
            }
        }
        Element::Variable(x) => {
            // value 0 makes the negated literals true, value 1 the positive
            for value in [false, true] {
                let satisfied = clauses_with_literal(f, x, !value);
                let row = fam
                    .inner
                    .index_of(&satisfied)
                    .expect("leaf family contains both polarities");
                for (j, covered) in fam.outer.members().iter().enumerate() {
                    match mode {
                        Mode::Count => table.add_count(row, j, BigUint::from(1u32)),
                        Mode::MaxSat => {
                            let score = f.weight_of(&satisfied.difference(covered));
                            let mut assignment = Assignment::empty(f.declared_vars());
                            assignment.assign(x, value);
                            table.offer_max(
                                row,
                                j,
                                || MaxEntry {
                                    assignment,
                                    score: score.clone(),
                                },
                                &score,
                            );
                        }
                    }
                }
            }
        }
    }
    table
}

/// Combines two child tables into their parent's. Returns the table and
/// the number of triples iterated.
#[allow(clippy::too_many_arguments)]
pub fn merge_tables(
    f: &Formula,
    v: NodeId,
    children: (NodeId, NodeId),
    cuts: &[Cut],
    families: &[NodeFamilies],
    left: &DpTable,
    right: &DpTable,
    mode: Mode,
) -> Result<(DpTable, u64), SolveError> {
    let (c1, c2) = children;
    let fam1 = &families[c1].inner;
    let fam2 = &families[c2].inner;
    let outer = &families[v].outer;
    let inner = &families[v].inner;
    let clauses1 = &cuts[c1].clause_side;
    let clauses2 = &cuts[c2].clause_side;
    let clauses_v = &cuts[v].clause_side;

    // member weights are reused across the whole triple loop
    let weigh = |fam: &crate::ps::PsFamily| -> Vec<BigUint> {
        fam.members().iter().map(|s| f.weight_of(s)).collect()
    };
    let (w1, w2, wv) = match mode {
        Mode::MaxSat => (weigh(fam1), weigh(fam2), weigh(inner)),
        Mode::Count => (Vec::new(), Vec::new(), Vec::new()),
    };

    let mut table = DpTable::new(v, inner.len(), outer.len(), mode);
    let mut triples = 0u64;
    let missing = || SolveError::InternalConsistency { node: v };

    for (i1, set1) in fam1.members().iter().enumerate() {
        for (i2, set2) in fam2.members().iter().enumerate() {
            let union12 = set1.union(set2);
            let row = inner
                .index_of(&union12.difference(clauses_v))
                .ok_or_else(missing)?;
            for (ibar, covered) in outer.members().iter().enumerate() {
                triples += 1;
                // indices of the complement families of both children
                let j1 = families[c1]
                    .outer
                    .index_of(&set2.union(covered).intersection(clauses1))
                    .ok_or_else(missing)?;
                let j2 = families[c2]
                    .outer
                    .index_of(&set1.union(covered).intersection(clauses2))
                    .ok_or_else(missing)?;
                match mode {
                    Mode::Count => {
                        let a = left.count(i1, j1).expect("count table");
                        let b = right.count(i2, j2).expect("count table");
                        if !a.is_zero() && !b.is_zero() {
                            table.add_count(row, ibar, a * b);
                        }
                    }
                    Mode::MaxSat => {
                        let e1 = left.max_entry(i1, j1).ok_or_else(missing)?;
                        let e2 = right.max_entry(i2, j2).ok_or_else(missing)?;
                        // the child scores count each child's own satisfied
                        // clauses (already index-determined) plus the free
                        // clauses on its own side; rebase to the parent's
                        // outer index
                        let mut score = (&e1.score - &w1[i1]) + (&e2.score - &w2[i2]);
                        score += &wv[row];
                        score += f.weight_of(&set2.intersection(clauses1).difference(covered));
                        score += f.weight_of(&set1.intersection(clauses2).difference(covered));
                        table.offer_max(
                            row,
                            ibar,
                            || MaxEntry {
                                assignment: e1.assignment.disjoint_union(&e2.assignment),
                                score: score.clone(),
                            },
                            &score,
                        );
                    }
                }
            }
        }
    }

    #[cfg(debug_assertions)]
    if mode == Mode::MaxSat {
        verify_max_table(f, &table, families, clauses_v);
    }
    Ok((table, triples))
}

/// Debug cross-check: every stored score must equal the weight recomputed
/// from scratch off the stored assignment, and the assignment must realize
/// the entry's inner index.
#[cfg(debug_assertions)]
fn verify_max_table(
    f: &Formula,
    table: &DpTable,
    families: &[NodeFamilies],
    cut_clauses: &ClauseSet,
) {
    let fam = &families[table.node];
    for (row, inner_set) in fam.inner.members().iter().enumerate() {
        for (col, covered) in fam.outer.members().iter().enumerate() {
            let Some(entry) = table.max_entry(row, col) else {
                panic!("unassigned maxsat entry at node {}", table.node);
            };
            let satisfied = f.satisfied_clauses(&entry.assignment);
            debug_assert_eq!(
                &satisfied.difference(cut_clauses),
                inner_set,
                "assignment does not realize its inner index"
            );
            debug_assert_eq!(
                f.weight_of(&satisfied.difference(covered)),
                entry.score,
                "stored score disagrees with recomputation"
            );
        }
    }
}

/// Per-node instrumentation of one solver run.
#[derive(Clone, Copy, Debug)]
pub struct NodeStat {
    pub node: NodeId,
    pub inner_family: usize,
    pub outer_family: usize,
    /// Pairs iterated when joining the child families into this node's.
    pub join_pairs: u64,
    /// Pairs iterated when building this node's complement family.
    pub complement_pairs: u64,
    /// Triples iterated when merging the child tables into this node's.
    pub merge_triples: u64,
}

#[derive(Clone, Debug)]
pub struct SolveStats {
    pub ps_width: usize,
    pub linear: bool,
    pub nodes: Vec<NodeStat>,
}

/// Everything one run produces; kept around so callers can audit tables.
pub struct DpRun {
    pub tables: Vec<DpTable>,
    pub families: Vec<NodeFamilies>,
    pub cuts: Vec<Cut>,
    pub widths: Vec<NodeWidths>,
    pub stats: SolveStats,
    pub root: NodeId,
}

/// Computes all PS families and all DP tables for a validated
/// decomposition.
pub fn run_tables(f: &Formula, d: &BranchDecomposition, mode: Mode) -> Result<DpRun, SolveError> {
    d.validate(f)?;
    let cuts = d.cuts(f);
    let families = compute_ps_tables(f, d);
    let (width, widths) = ps_width_from_tables(&families);

    let mut tables: Vec<Option<DpTable>> = (0..d.num_nodes()).map(|_| None).collect();
    let mut merge_triples = vec![0u64; d.num_nodes()];
    for id in d.post_order() {
        let table = match d.children(id) {
            None => leaf_table(f, d, id, &families, mode),
            Some((l, r)) => {
                let left = tables[l].as_ref().expect("post-order fills children first");
                let right = tables[r].as_ref().expect("post-order fills children first");
                let (t, triples) =
                    merge_tables(f, id, (l, r), &cuts, &families, left, right, mode)?;
                merge_triples[id] = triples;
                t
            }
        };
        tables[id] = Some(table);
    }
    let tables: Vec<DpTable> = tables.into_iter().map(|t| t.unwrap()).collect();

    let nodes = (0..d.num_nodes())
        .map(|id| NodeStat {
            node: id,
            inner_family: families[id].inner.len(),
            outer_family: families[id].outer.len(),
            join_pairs: families[id].inner_pairs,
            complement_pairs: families[id].outer_pairs,
            merge_triples: merge_triples[id],
        })
        .collect();
    Ok(DpRun {
        tables,
        families,
        cuts,
        widths,
        stats: SolveStats {
            ps_width: width,
            linear: d.is_linear(),
            nodes,
        },
        root: d.root(),
    })
}

#[derive(Clone, Debug)]
pub enum Answer {
    Count(BigUint),
    MaxSat {
        weight: BigUint,
        witness: Assignment,
    },
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub answer: Answer,
    pub stats: SolveStats,
}

fn scale_to_all_vars(f: &Formula, count: BigUint) -> BigUint {
    let unused = f.declared_vars() as usize - f.occurring_vars().len();
    count << unused
}

/// Solves the task on a given decomposition. The root table has exactly
/// one entry; it holds the answer.
pub fn solve(f: &Formula, d: &BranchDecomposition, task: Task) -> Result<Solution, SolveError> {
    let run = run_tables(f, d, task.mode())?;
    let root = &run.tables[run.root];
    debug_assert_eq!((root.rows, root.cols), (1, 1));
    let answer = match task {
        Task::Count { all_vars } => {
            let n = root.count(0, 0).expect("count table").clone();
            Answer::Count(if all_vars { scale_to_all_vars(f, n) } else { n })
        }
        Task::MaxSat => {
            let entry = root
                .max_entry(0, 0)
                .ok_or(SolveError::InternalConsistency { node: run.root })?;
            Answer::MaxSat {
                weight: entry.score.clone(),
                witness: entry.assignment.clone(),
            }
        }
    };
    Ok(Solution {
        answer,
        stats: run.stats,
    })
}

/// Answers directly when the formula has fewer than two elements, where no
/// branch decomposition exists: either there are no clauses at all, or the
/// single clause is empty.
pub fn solve_degenerate(f: &Formula, task: Task) -> Option<Solution> {
    if elements_of(f).len() >= 2 {
        return None;
    }
    let stats = SolveStats {
        ps_width: 1,
        linear: true,
        nodes: Vec::new(),
    };
    let answer = match task {
        Task::Count { all_vars } => {
            let base = if f.num_clauses() == 0 {
                BigUint::from(1u32)
            } else {
                BigUint::zero()
            };
            Answer::Count(if all_vars {
                scale_to_all_vars(f, base)
            } else {
                base
            })
        }
        Task::MaxSat => Answer::MaxSat {
            weight: BigUint::zero(),
            witness: Assignment::empty(f.declared_vars()),
        },
    };
    Some(Solution { answer, stats })
}

/// Solves with an automatically constructed linear decomposition, bypassing
/// the tree for degenerate inputs.
pub fn solve_auto(f: &Formula, strategy: AutoStrategy, task: Task) -> Result<Solution, SolveError> {
    if let Some(solution) = solve_degenerate(f, task) {
        return Ok(solution);
    }
    let d = auto_decomposition(f, strategy)?;
    solve(f, &d, task)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{linear_decomposition, parse_decomposition};
    use crate::formula::{parse_cnf, parse_wcnf};
    use crate::oracle::{brute_count, brute_maxsat};

    fn count_auto(text: &str) -> BigUint {
        let f = parse_cnf(text).unwrap();
        match solve_auto(&f, AutoStrategy::FileOrder, Task::Count { all_vars: false })
            .unwrap()
            .answer
        {
            Answer::Count(n) => n,
            _ => unreachable!(),
        }
    }

    #[test]
    fn count_contradiction_is_zero() {
        assert_eq!(count_auto("p cnf 1 2\n1 0\n-1 0\n"), BigUint::zero());
    }

    #[test]
    fn count_single_binary_clause() {
        assert_eq!(count_auto("p cnf 2 1\n1 2 0\n"), BigUint::from(3u32));
    }

    #[test]
    fn count_scales_to_declared_variables() {
        let f = parse_cnf("p cnf 4 1\n1 2 0\n").unwrap();
        let sol = solve_auto(&f, AutoStrategy::FileOrder, Task::Count { all_vars: true }).unwrap();
        match sol.answer {
            Answer::Count(n) => assert_eq!(n, BigUint::from(12u32)), // 3 * 2^2
            _ => unreachable!(),
        }
    }

    #[test]
    fn maxsat_two_unit_clauses_picks_heavier() {
        let f = parse_wcnf("p wcnf 1 2\n5 1 0\n7 -1 0\n").unwrap();
        let sol = solve_auto(&f, AutoStrategy::FileOrder, Task::MaxSat).unwrap();
        match sol.answer {
            Answer::MaxSat { weight, witness } => {
                assert_eq!(weight, BigUint::from(7u32));
                assert_eq!(witness.value(1), Some(false));
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn maxsat_unit_weights_counts_clauses() {
        let f = parse_cnf("p cnf 2 3\n1 0\n-1 0\n1 2 0\n").unwrap();
        let sol = solve_auto(&f, AutoStrategy::GreedyPs, Task::MaxSat).unwrap();
        match sol.answer {
            Answer::MaxSat { weight, witness } => {
                assert_eq!(weight, BigUint::from(2u32));
                let satisfied = f.satisfied_clauses(&witness);
                assert_eq!(f.weight_of(&satisfied), weight);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn clause_leaf_table_counts_coverage() {
        // c0={x1}, c1={¬x1}: for the c0 leaf the outer family is {{},{c0}}
        let f = parse_cnf("p cnf 1 2\n1 0\n-1 0\n").unwrap();
        let d = linear_decomposition(
            &f,
            &[Element::Clause(0), Element::Variable(1), Element::Clause(1)],
        )
        .unwrap();
        let run = run_tables(&f, &d, Mode::Count).unwrap();
        let leaf = 0;
        let fam = &run.families[leaf];
        assert_eq!(fam.inner.len(), 1);
        assert_eq!(fam.outer.len(), 2);
        let empty = ClauseSet::empty(2);
        let c0 = ClauseSet::from_ids(2, [0usize]);
        let j_empty = fam.outer.index_of(&empty).unwrap();
        let j_c0 = fam.outer.index_of(&c0).unwrap();
        let t = &run.tables[leaf];
        assert_eq!(t.count(0, j_empty), Some(&BigUint::zero()));
        assert_eq!(t.count(0, j_c0), Some(&BigUint::from(1u32)));
    }

    #[test]
    fn variable_leaf_table_counts_each_polarity_once() {
        let f = parse_cnf("p cnf 1 1\n1 0\n").unwrap();
        let d = linear_decomposition(&f, &[Element::Variable(1), Element::Clause(0)]).unwrap();
        let run = run_tables(&f, &d, Mode::Count).unwrap();
        let fam = &run.families[0];
        assert_eq!(fam.outer.len(), 1); // no clauses below a variable leaf
        let satisfied = ClauseSet::from_ids(1, [0usize]);
        let row = fam.inner.index_of(&satisfied).unwrap();
        assert_eq!(run.tables[0].count(row, 0), Some(&BigUint::from(1u32)));
        let unsatisfied = ClauseSet::empty(1);
        let row0 = fam.inner.index_of(&unsatisfied).unwrap();
        assert_eq!(run.tables[0].count(row0, 0), Some(&BigUint::from(1u32)));
    }

    #[test]
    fn variable_leaf_with_one_realizable_set_counts_two() {
        // tautological clauses: both polarities of x1 satisfy the same set,
        // so the single row collects both assignments
        let g = parse_cnf("p cnf 1 2\n1 -1 0\n1 -1 0\n").unwrap();
        let d = linear_decomposition(
            &g,
            &[Element::Variable(1), Element::Clause(0), Element::Clause(1)],
        )
        .unwrap();
        let run = run_tables(&g, &d, Mode::Count).unwrap();
        let both = ClauseSet::from_ids(2, [0usize, 1]);
        let row = run.families[0].inner.index_of(&both).unwrap();
        assert_eq!(run.families[0].inner.len(), 1);
        assert_eq!(run.tables[0].count(row, 0), Some(&BigUint::from(2u32)));
    }

    #[test]
    fn merge_of_two_clause_leaves_accumulates_once() {
        // all-empty-clause formula: every family is {{}}; the root merge
        // sees exactly one triple
        let f = parse_cnf("p cnf 0 2\n0\n0\n").unwrap();
        let d = linear_decomposition(&f, &[Element::Clause(0), Element::Clause(1)]).unwrap();
        let run = run_tables(&f, &d, Mode::Count).unwrap();
        let root = &run.tables[run.root];
        assert_eq!(run.stats.nodes[run.root].merge_triples, 1);
        // both leaf clauses are empty, the outside never satisfies them
        assert_eq!(root.count(0, 0), Some(&BigUint::zero()));
    }

    #[test]
    fn answers_are_decomposition_independent() {
        let f = parse_cnf("p cnf 3 4\n1 2 0\n-1 3 0\n-3 2 0\n-2 0\n").unwrap();
        let expected = brute_count(&f).unwrap();
        let expected_max = brute_maxsat(&f).unwrap();

        let orders: Vec<Vec<Element>> = vec![
            crate::decomposition::file_order(&f),
            crate::ps::greedy_ps_order(&f),
            {
                let mut o = crate::decomposition::file_order(&f);
                o.reverse();
                o
            },
        ];
        for order in orders {
            let d = linear_decomposition(&f, &order).unwrap();
            let sol = solve(&f, &d, Task::Count { all_vars: false }).unwrap();
            match sol.answer {
                Answer::Count(n) => assert_eq!(n, expected),
                _ => unreachable!(),
            }
            let sol = solve(&f, &d, Task::MaxSat).unwrap();
            match sol.answer {
                Answer::MaxSat { weight, witness } => {
                    assert_eq!(weight, expected_max);
                    assert_eq!(f.weight_of(&f.satisfied_clauses(&witness)), weight);
                }
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn branching_decomposition_matches_linear_answers() {
        // a genuinely non-linear tree over 2 clauses and 2 variables
        let f = parse_cnf("p cnf 2 2\n1 2 0\n-1 -2 0\n").unwrap();
        let text = "nodes 7\nroot 0\nedge 0 1\nedge 0 2\nedge 1 3\nedge 1 4\nedge 2 5\nedge 2 6\n\
                    leaf 3 v1\nleaf 4 c0\nleaf 5 v2\nleaf 6 c1\n";
        let d = parse_decomposition(text, &f).unwrap();
        assert!(!d.is_linear());
        let sol = solve(&f, &d, Task::Count { all_vars: false }).unwrap();
        match sol.answer {
            Answer::Count(n) => assert_eq!(n, brute_count(&f).unwrap()),
            _ => unreachable!(),
        }
    }

    #[test]
    fn root_table_is_single_entry() {
        let f = parse_cnf("p cnf 2 2\n1 0\n2 0\n").unwrap();
        let d = auto_decomposition(&f, AutoStrategy::FileOrder).unwrap();
        for mode in [Mode::Count, Mode::MaxSat] {
            let run = run_tables(&f, &d, mode).unwrap();
            assert_eq!(run.tables[run.root].rows, 1);
            assert_eq!(run.tables[run.root].cols, 1);
        }
    }

    #[test]
    fn degenerate_formulas_bypass_the_tree() {
        let empty = parse_cnf("p cnf 3 0\n").unwrap();
        let sol = solve_degenerate(&empty, Task::Count { all_vars: false }).unwrap();
        match sol.answer {
            Answer::Count(n) => assert_eq!(n, BigUint::from(1u32)),
            _ => unreachable!(),
        }
        let sol = solve_degenerate(&empty, Task::Count { all_vars: true }).unwrap();
        match sol.answer {
            Answer::Count(n) => assert_eq!(n, BigUint::from(8u32)),
            _ => unreachable!(),
        }
        let sol = solve_degenerate(&empty, Task::MaxSat).unwrap();
        match sol.answer {
            Answer::MaxSat { weight, .. } => assert_eq!(weight, BigUint::zero()),
            _ => unreachable!(),
        }

        let one_empty_clause = parse_cnf("p cnf 0 1\n0\n").unwrap();
        let sol = solve_degenerate(&one_empty_clause, Task::Count { all_vars: false }).unwrap();
        match sol.answer {
            Answer::Count(n) => assert_eq!(n, BigUint::zero()),
            _ => unreachable!(),
        }

        // two elements or more: no bypass
        let normal = parse_cnf("p cnf 1 1\n1 0\n").unwrap();
        assert!(solve_degenerate(&normal, Task::MaxSat).is_none());
    }

    #[test]
    fn empty_clause_forces_zero_count_through_the_tree() {
        let f = parse_cnf("p cnf 2 3\n1 2 0\n0\n-1 0\n").unwrap();
        let sol = solve_auto(&f, AutoStrategy::FileOrder, Task::Count { all_vars: false }).unwrap();
        match sol.answer {
            Answer::Count(n) => assert_eq!(n, BigUint::zero()),
            _ => unreachable!(),
        }
    }

    #[test]
    fn triple_counters_respect_linear_budget() {
        let f = parse_cnf("p cnf 3 3\n1 2 0\n-2 3 0\n-1 -3 0\n").unwrap();
        let d = auto_decomposition(&f, AutoStrategy::FileOrder).unwrap();
        let run = run_tables(&f, &d, Mode::Count).unwrap();
        let k = run.stats.ps_width as u64;
        for stat in &run.stats.nodes {
            assert!(stat.merge_triples <= k * k * k);
            assert!(stat.merge_triples <= 2 * k * k, "linear bound violated");
            assert!(stat.join_pairs <= k * k);
            assert!(stat.complement_pairs <= k * k);
        }
    }
}
