//! Class dispatch shared by the command-line front end and the tests.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::dh::{solve_dh, DhError};
use crate::graph::Graph;
use crate::oracle::{exact_irdf, OracleError};
use crate::p4::{solve_p4, P4Error};
use crate::split::{solve_split, SplitError};
use crate::Solution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolverClass {
    Split,
    Dh,
    P4Sparse,
    Oracle,
}

impl SolverClass {
    /// Order tried by [`solve_auto`], cheapest recognizer first.
    pub const AUTO_ORDER: [SolverClass; 4] = [
        SolverClass::Split,
        SolverClass::Dh,
        SolverClass::P4Sparse,
        SolverClass::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SolverClass::Split => "split",
            SolverClass::Dh => "dh",
            SolverClass::P4Sparse => "p4sparse",
            SolverClass::Oracle => "oracle",
        }
    }
}

impl fmt::Display for SolverClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolverClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SolverClass::AUTO_ORDER
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown class {s:?}"))
    }
}

/// The graph is outside the class a solver handles.
#[derive(Debug, Error)]
pub enum Unsupported {
    #[error(transparent)]
    Split(#[from] SplitError),
    #[error(transparent)]
    Dh(#[from] DhError),
    #[error(transparent)]
    P4(#[from] P4Error),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("graph class unsupported: not split, distance-hereditary or P4-sparse, and {n} vertices exceed the oracle cap {cap}")]
    NoSolver { n: usize, cap: usize },
}

pub fn solve_as(
    class: SolverClass,
    graph: &Graph,
    oracle_cap: usize,
) -> Result<Solution, Unsupported> {
    Ok(match class {
        SolverClass::Split => solve_split(graph)?,
        SolverClass::Dh => solve_dh(graph)?,
        SolverClass::P4Sparse => solve_p4(graph)?,
        SolverClass::Oracle => {
            let sol = exact_irdf(graph, oracle_cap)?;
            Solution {
                value: sol.value,
                certificate: sol.witness,
            }
        }
    })
}

/// First class in [`SolverClass::AUTO_ORDER`] that accepts the graph.
pub fn solve_auto(
    graph: &Graph,
    oracle_cap: usize,
) -> Result<(SolverClass, Solution), Unsupported> {
    for class in SolverClass::AUTO_ORDER {
        if let Ok(sol) = solve_as(class, graph, oracle_cap) {
            return Ok((class, sol));
        }
    }
    Err(Unsupported::NoSolver {
        n: graph.n(),
        cap: oracle_cap,
    })
}
