//! Brute-force reference implementations: direct enumeration of all full
//! assignments. Deliberately free of cleverness so they can serve as the
//! ground truth for the engine and the solver.

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

use crate::formula::{Assignment, Formula, VarId};
use crate::ps::PsFamily;

/// Enumeration refuses formulas with more occurring variables than this.
pub const ENUMERATION_LIMIT: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("refusing to enumerate {vars} variables (limit {limit})")]
    TooManyVars { vars: usize, limit: usize },
}

fn occurring_sorted(f: &Formula) -> Result<Vec<VarId>, OracleError> {
    let vars: Vec<VarId> = f.occurring_vars().iter().collect();
    if vars.len() > ENUMERATION_LIMIT {
        return Err(OracleError::TooManyVars {
            vars: vars.len(),
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(vars)
}

/// All full assignments of the occurring variables of `f`.
pub fn all_assignments(f: &Formula) -> Result<Vec<Assignment>, OracleError> {
    let vars = occurring_sorted(f)?;
    let mut out = Vec::with_capacity(1 << vars.len());
    for mask in 0u32..1 << vars.len() {
        let mut tau = Assignment::empty(f.declared_vars());
        for (i, &v) in vars.iter().enumerate() {
            tau.assign(v, mask >> i & 1 == 1);
        }
        out.push(tau);
    }
    Ok(out)
}

/// The family of precisely satisfiable clause sets of `f`, by enumeration:
/// every distinct value of `satisfied_clauses` over all full assignments.
pub fn brute_ps(f: &Formula) -> Result<PsFamily, OracleError> {
    let sets = all_assignments(f)?
        .into_iter()
        .map(|tau| f.satisfied_clauses(&tau));
    Ok(PsFamily::from_sets(f.clause_universe(), sets))
}

/// Number of full assignments of the occurring variables satisfying every
/// clause of `f`.
pub fn brute_count(f: &Formula) -> Result<BigUint, OracleError> {
    let mut n = BigUint::zero();
    for tau in all_assignments(f)? {
        if f.is_satisfied_by(&tau) {
            n += 1u32;
        }
    }
    Ok(n)
}

/// Maximum total weight of simultaneously satisfiable clauses of `f`
/// (unit weights when the formula carries none).
pub fn brute_maxsat(f: &Formula) -> Result<BigUint, OracleError> {
    let mut best = BigUint::zero();
    for tau in all_assignments(f)? {
        let w = f.weight_of(&f.satisfied_clauses(&tau));
        if w > best {
            best = w;
        }
    }
    Ok(best)
}
