//! CNF/WCNF data model: literals, clauses, formulas, assignments, and the
//! satisfaction primitives everything else is built on.
//!
//! A formula is a multiset of clauses: clauses are identified by position,
//! so two clauses with identical literal sets are still distinct objects.
//! Subformulas induced by a set of clauses and a set of variables keep the
//! original clause ids, and every clause-id set is expressed in the global
//! id space of the root formula (`clause_universe`).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

use crate::sets::{ClauseSet, VarSet};

/// Variables are positive integers, as in DIMACS.
pub type VarId = u32;
/// Clauses are identified by their position in the formula.
pub type ClauseId = usize;

/// A variable or its negation.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub var: VarId,
    pub negated: bool,
}

impl Literal {
    pub fn new(var: VarId, negated: bool) -> Self {
        assert!(var >= 1, "variables are numbered from 1");
        Literal { var, negated }
    }

    pub fn positive(var: VarId) -> Self {
        Literal::new(var, false)
    }

    pub fn negative(var: VarId) -> Self {
        Literal::new(var, true)
    }

    /// Signed DIMACS form: `-3` is the negation of variable 3.
    pub fn from_dimacs(lit: i64) -> Self {
        assert!(lit != 0);
        Literal::new(lit.unsigned_abs() as VarId, lit < 0)
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64;
        if self.negated {
            -v
        } else {
            v
        }
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// A set of literals with a stable id. Literals are kept sorted and
/// duplicate-free; the empty clause is allowed and is never satisfied.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Clause {
    pub id: ClauseId,
    literals: Vec<Literal>,
}

impl Clause {
    pub fn new<I: IntoIterator<Item = Literal>>(id: ClauseId, literals: I) -> Self {
        let mut literals: Vec<Literal> = literals.into_iter().collect();
        literals.sort();
        literals.dedup();
        Clause { id, literals }
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn contains(&self, lit: Literal) -> bool {
        self.literals.binary_search(&lit).is_ok()
    }

    pub fn has_var(&self, var: VarId) -> bool {
        self.literals.iter().any(|l| l.var == var)
    }

    /// Variables occurring in this clause.
    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        // literals are sorted by (var, negated); a tautological pair would
        // yield its variable twice
        let mut last = None;
        self.literals.iter().filter_map(move |l| {
            if last == Some(l.var) {
                None
            } else {
                last = Some(l.var);
                Some(l.var)
            }
        })
    }

    /// The clause induced by a variable set: keeps exactly the literals
    /// whose variable is in `vars`, preserving the id.
    pub fn induced(&self, vars: &VarSet) -> Clause {
        Clause {
            id: self.id,
            literals: self
                .literals
                .iter()
                .copied()
                .filter(|l| vars.contains(l.var))
                .collect(),
        }
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}{:?}", self.id, self.literals)
    }
}

/// An assignment of truth values to a set of variables. May be partial:
/// `domain` lists the assigned variables, `values` holds their bits.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Assignment {
    domain: VarSet,
    values: VarSet,
}

impl Assignment {
    /// Empty assignment able to hold variables `1..=max_var`.
    pub fn empty(max_var: VarId) -> Self {
        Assignment {
            domain: VarSet::for_max_var(max_var),
            values: VarSet::for_max_var(max_var),
        }
    }

    pub fn assign(&mut self, var: VarId, value: bool) {
        self.domain.insert(var);
        if value {
            self.values.insert(var);
        } else {
            self.values.remove(var);
        }
    }

    pub fn value(&self, var: VarId) -> Option<bool> {
        if self.domain.contains(var) {
            Some(self.values.contains(var))
        } else {
            None
        }
    }

    pub fn domain(&self) -> &VarSet {
        &self.domain
    }

    pub fn domain_size(&self) -> usize {
        self.domain.len()
    }

    /// True iff the literal evaluates to 1 under this assignment; a negated
    /// literal is true exactly when its variable is assigned 0.
    pub fn satisfies(&self, lit: Literal) -> bool {
        match self.value(lit.var) {
            Some(v) => v != lit.negated,
            None => false,
        }
    }

    /// Restriction of the assignment to the given variables.
    pub fn restrict(&self, vars: &VarSet) -> Assignment {
        Assignment {
            domain: self.domain.intersection(vars),
            values: self.values.intersection(vars),
        }
    }

    /// Disjoint union of two assignments. Panics in debug builds if the
    /// domains overlap.
    pub fn disjoint_union(&self, other: &Assignment) -> Assignment {
        debug_assert!(self.domain.is_disjoint_from(&other.domain));
        Assignment {
            domain: self.domain.union(&other.domain),
            values: self.values.union(&other.values),
        }
    }
}

impl fmt::Debug for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.domain.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "x{}={}", v, self.values.contains(v) as u8)?;
        }
        write!(f, "}}")
    }
}

/// A CNF formula, optionally clause-weighted.
///
/// `clause_universe` is the size of the global clause-id space; for a parsed
/// formula it equals the number of clauses, and induced subformulas inherit
/// it so that their clause-id sets stay comparable with the root's.
#[derive(Clone, PartialEq, Eq)]
pub struct Formula {
    clauses: Vec<Clause>,
    declared_vars: VarId,
    clause_universe: usize,
    weights: Option<BTreeMap<ClauseId, BigUint>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error("clause id {id} out of range (universe {universe})")]
    ClauseIdOutOfRange { id: ClauseId, universe: usize },
    #[error("variable {var} out of range (declared {declared})")]
    VarOutOfRange { var: VarId, declared: VarId },
}

impl Formula {
    /// Builds a formula from literal lists; clause ids follow positions.
    pub fn from_clauses<I, C>(declared_vars: VarId, clauses: I) -> Self
    where
        I: IntoIterator<Item = C>,
        C: IntoIterator<Item = Literal>,
    {
        let clauses: Vec<Clause> = clauses
            .into_iter()
            .enumerate()
            .map(|(id, lits)| Clause::new(id, lits))
            .collect();
        for c in &clauses {
            for l in c.literals() {
                assert!(
                    l.var <= declared_vars,
                    "literal over variable {} exceeds declared {}",
                    l.var,
                    declared_vars
                );
            }
        }
        let universe = clauses.len();
        Formula {
            clauses,
            declared_vars,
            clause_universe: universe,
            weights: None,
        }
    }

    pub fn with_weights<I: IntoIterator<Item = BigUint>>(mut self, weights: I) -> Self {
        let map: BTreeMap<ClauseId, BigUint> =
            self.clauses.iter().map(|c| c.id).zip(weights).collect();
        assert_eq!(map.len(), self.clauses.len(), "one weight per clause");
        self.weights = Some(map);
        self
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn declared_vars(&self) -> VarId {
        self.declared_vars
    }

    pub fn clause_universe(&self) -> usize {
        self.clause_universe
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn clause(&self, id: ClauseId) -> Option<&Clause> {
        // parsed formulas are dense so ids index directly; induced ones may
        // be sparse
        self.clauses
            .get(id)
            .filter(|c| c.id == id)
            .or_else(|| self.clauses.iter().find(|c| c.id == id))
    }

    /// Size measure `m + total number of literals`.
    pub fn size(&self) -> usize {
        self.num_clauses() + self.clauses.iter().map(|c| c.len()).sum::<usize>()
    }

    /// Ids of all clauses, as a set in the global id space.
    pub fn clause_ids(&self) -> ClauseSet {
        ClauseSet::from_ids(self.clause_universe, self.clauses.iter().map(|c| c.id))
    }

    /// Variables occurring in at least one clause.
    pub fn occurring_vars(&self) -> VarSet {
        let mut s = VarSet::for_max_var(self.declared_vars);
        for c in &self.clauses {
            for v in c.vars() {
                s.insert(v);
            }
        }
        s
    }

    pub fn has_weights(&self) -> bool {
        self.weights.is_some()
    }

    /// Weight of one clause; 1 when the formula carries no weights.
    pub fn weight(&self, id: ClauseId) -> BigUint {
        match &self.weights {
            Some(w) => w.get(&id).cloned().unwrap_or_else(BigUint::zero),
            None => BigUint::from(1u32),
        }
    }

    /// Total weight of a set of clauses (unit weights by default).
    pub fn weight_of(&self, set: &ClauseSet) -> BigUint {
        match &self.weights {
            None => BigUint::from(set.len()),
            Some(w) => {
                let mut total = BigUint::zero();
                for id in set.iter() {
                    if let Some(x) = w.get(&id) {
                        total += x;
                    }
                }
                total
            }
        }
    }

    /// The subformula keeping the clauses in `clause_ids`, each induced by
    /// `vars`. Clause ids (and weights, if any) are retained.
    pub fn induced(&self, clause_ids: &ClauseSet, vars: &VarSet) -> Result<Formula, FormulaError> {
        if clause_ids.universe() != self.clause_universe {
            return Err(FormulaError::ClauseIdOutOfRange {
                id: clause_ids.universe(),
                universe: self.clause_universe,
            });
        }
        if let Some(v) = vars.iter().find(|&v| v > self.declared_vars) {
            return Err(FormulaError::VarOutOfRange {
                var: v,
                declared: self.declared_vars,
            });
        }
        for id in clause_ids.iter() {
            if self.clause(id).is_none() {
                return Err(FormulaError::ClauseIdOutOfRange {
                    id,
                    universe: self.clause_universe,
                });
            }
        }
        let clauses: Vec<Clause> = self
            .clauses
            .iter()
            .filter(|c| clause_ids.contains(c.id))
            .map(|c| c.induced(vars))
            .collect();
        let weights = self.weights.as_ref().map(|w| {
            w.iter()
                .filter(|(id, _)| clause_ids.contains(**id))
                .map(|(id, x)| (*id, x.clone()))
                .collect()
        });
        Ok(Formula {
            clauses,
            declared_vars: self.declared_vars,
            clause_universe: self.clause_universe,
            weights,
        })
    }

    /// Ids of the clauses satisfied by `assignment` (which may be partial):
    /// a clause counts as satisfied iff it contains at least one literal
    /// that is true under the assignment. Empty clauses never qualify.
    pub fn satisfied_clauses(&self, assignment: &Assignment) -> ClauseSet {
        let mut sat = ClauseSet::empty(self.clause_universe);
        for c in &self.clauses {
            if c.literals().iter().any(|&l| assignment.satisfies(l)) {
                sat.insert(c.id);
            }
        }
        sat
    }

    /// True iff every clause is satisfied (an empty clause makes this false
    /// for every assignment).
    pub fn is_satisfied_by(&self, assignment: &Assignment) -> bool {
        self.clauses
            .iter()
            .all(|c| c.literals().iter().any(|&l| assignment.satisfies(l)))
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.clauses).finish()
    }
}

// ---------------------------------------------------------------------------
// DIMACS parsing
// ---------------------------------------------------------------------------

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: missing or malformed header, expected `p {expected} <vars> <clauses>`")]
    BadHeader { line: usize, expected: &'static str },
    #[error("line {line}: clause appears before the header")]
    ClauseBeforeHeader { line: usize },
    #[error("line {line}: literal {lit} over variable exceeding the declared count {declared}")]
    LiteralOutOfRange {
        line: usize,
        lit: i64,
        declared: VarId,
    },
    #[error("line {line}: clause line not terminated by 0")]
    MissingTerminator { line: usize },
    #[error("line {line}: unexpected tokens after the terminating 0")]
    TrailingTokens { line: usize },
    #[error("line {line}: cannot parse `{token}` as {what}")]
    BadToken {
        line: usize,
        token: String,
        what: &'static str,
    },
    #[error("line {line}: negative clause weight")]
    NegativeWeight { line: usize },
    #[error("header declares {declared} clauses but the file contains {found}")]
    ClauseCountMismatch { declared: usize, found: usize },
    #[error("duplicate header on line {line}")]
    DuplicateHeader { line: usize },
}

struct Header {
    vars: VarId,
    clauses: usize,
    weighted: bool,
}

fn parse_header(line_no: usize, tokens: &[&str]) -> Result<Header, ParseError> {
    let weighted = match tokens.get(1) {
        Some(&"cnf") => false,
        Some(&"wcnf") => true,
        _ => {
            return Err(ParseError::BadHeader {
                line: line_no,
                expected: "cnf|wcnf",
            })
        }
    };
    let expected = if weighted { "wcnf" } else { "cnf" };
    // `p wcnf n m [top]` — a trailing top value is accepted and ignored
    let max_tokens = if weighted { 5 } else { 4 };
    if tokens.len() < 4 || tokens.len() > max_tokens {
        return Err(ParseError::BadHeader {
            line: line_no,
            expected,
        });
    }
    let vars: VarId = tokens[2].parse().map_err(|_| ParseError::BadHeader {
        line: line_no,
        expected,
    })?;
    let clauses: usize = tokens[3].parse().map_err(|_| ParseError::BadHeader {
        line: line_no,
        expected,
    })?;
    if weighted && tokens.len() == 5 {
        tokens[4]
            .parse::<BigUint>()
            .map_err(|_| ParseError::BadHeader {
                line: line_no,
                expected,
            })?;
    }
    Ok(Header {
        vars,
        clauses,
        weighted,
    })
}

fn parse_literals(
    line_no: usize,
    tokens: &[&str],
    declared: VarId,
) -> Result<Vec<Literal>, ParseError> {
    let mut lits = Vec::new();
    let mut terminated = false;
    for (i, tok) in tokens.iter().enumerate() {
        let lit: i64 = tok.parse().map_err(|_| ParseError::BadToken {
            line: line_no,
            token: tok.to_string(),
            what: "a literal",
        })?;
        if lit == 0 {
            if i + 1 != tokens.len() {
                return Err(ParseError::TrailingTokens { line: line_no });
            }
            terminated = true;
            break;
        }
        if lit.unsigned_abs() > declared as u64 {
            return Err(ParseError::LiteralOutOfRange {
                line: line_no,
                lit,
                declared,
            });
        }
        lits.push(Literal::from_dimacs(lit));
    }
    if !terminated {
        return Err(ParseError::MissingTerminator { line: line_no });
    }
    Ok(lits)
}

fn parse_dimacs_text(input: &str, expect_weighted: Option<bool>) -> Result<Formula, ParseError> {
    let mut header: Option<Header> = None;
    let mut clauses: Vec<Vec<Literal>> = Vec::new();
    let mut weights: Vec<BigUint> = Vec::new();

    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens[0] == "p" {
            if header.is_some() {
                return Err(ParseError::DuplicateHeader { line: line_no });
            }
            let h = parse_header(line_no, &tokens)?;
            if let Some(expected) = expect_weighted {
                if h.weighted != expected {
                    return Err(ParseError::BadHeader {
                        line: line_no,
                        expected: if expected { "wcnf" } else { "cnf" },
                    });
                }
            }
            header = Some(h);
            continue;
        }
        let Some(h) = &header else {
            return Err(ParseError::ClauseBeforeHeader { line: line_no });
        };
        if h.weighted {
            let wtok = tokens[0];
            if wtok.starts_with('-') {
                return Err(ParseError::NegativeWeight { line: line_no });
            }
            let w: BigUint = wtok.parse().map_err(|_| ParseError::BadToken {
                line: line_no,
                token: wtok.to_string(),
                what: "a clause weight",
            })?;
            weights.push(w);
            clauses.push(parse_literals(line_no, &tokens[1..], h.vars)?);
        } else {
            clauses.push(parse_literals(line_no, &tokens, h.vars)?);
        }
    }

    let Some(h) = header else {
        return Err(ParseError::BadHeader {
            line: input.lines().count().max(1),
            expected: "cnf|wcnf",
        });
    };
    if clauses.len() != h.clauses {
        return Err(ParseError::ClauseCountMismatch {
            declared: h.clauses,
            found: clauses.len(),
        });
    }
    let formula = Formula::from_clauses(h.vars, clauses);
    Ok(if h.weighted {
        formula.with_weights(weights)
    } else {
        formula
    })
}

/// Parses DIMACS CNF (`p cnf n m` header, one 0-terminated clause per line).
pub fn parse_cnf(input: &str) -> Result<Formula, ParseError> {
    parse_dimacs_text(input, Some(false))
}

/// Parses DIMACS WCNF (`p wcnf n m [top]`); each clause line starts with a
/// nonnegative weight of arbitrary precision.
pub fn parse_wcnf(input: &str) -> Result<Formula, ParseError> {
    parse_dimacs_text(input, Some(true))
}

/// Parses either format, dispatching on the header.
pub fn parse_dimacs(input: &str) -> Result<Formula, ParseError> {
    parse_dimacs_text(input, None)
}
