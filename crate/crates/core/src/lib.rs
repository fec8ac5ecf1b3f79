//! Exact #SAT and weighted MaxSAT on CNF formulas, driven by branch
//! decompositions of bounded ps-width.
//!
//! The pipeline: parse a DIMACS CNF/WCNF formula, obtain a branch
//! decomposition (from a file, from an interval ordering, or
//! automatically), compute the family of precisely satisfiable clause sets
//! for both subformulas of every cut, then run a dynamic program over
//! tables indexed by those families. The work per node is polynomial in
//! the largest family size (the ps-width of the decomposition), so
//! decompositions with small families solve both problems exactly in
//! polynomial time.
//!
//! Modules:
//! - [`formula`]: CNF/WCNF model, parsing, induced subformulas,
//!   satisfaction.
//! - [`decomposition`]: branch decompositions, cuts, file format,
//!   automatic construction.
//! - [`ps`]: precisely-satisfiable families and ps-width.
//! - [`solver`]: the counting and maxsat dynamic programs.
//! - [`interval`]: interval orderings and induced-matching analysis.
//! - [`oracle`]: brute-force references used by tests and validation.

pub mod decomposition;
pub mod formula;
pub mod interval;
pub mod oracle;
pub mod ps;
pub mod sets;
pub mod solver;

pub use decomposition::{
    auto_decomposition, cut_subformulas, emit_decomposition, linear_decomposition,
    parse_decomposition, AutoStrategy, BranchDecomposition, Cut, DecompositionError, Element,
};
pub use formula::{
    parse_cnf, parse_dimacs, parse_wcnf, Assignment, Clause, ClauseId, Formula, Literal,
    ParseError, VarId,
};
pub use interval::{
    find_interval_ordering, max_induced_matching_size, mim_of_decomposition,
    order_to_decomposition, verify_interval_ordering, CutBigraph, IntervalOrdering, MimReport,
    OrderingError, OrderingViolation,
};
pub use oracle::{brute_count, brute_maxsat, brute_ps, OracleError};
pub use ps::{compute_ps_tables, ps_width, NodeFamilies, PsFamily};
pub use sets::{ClauseSet, VarSet};
pub use solver::{
    solve, solve_auto, solve_degenerate, Answer, Mode, Solution, SolveError, SolveStats, Task,
};

pub use num_bigint::BigUint;
