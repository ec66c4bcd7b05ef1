//! Bottom-up dynamic program over a decomposition tree.
//!
//! Every subtree `G` with twin set `TS` keeps four optima over IRDFs of `G`:
//!
//! * `u2`  - some twin-set vertex is labelled 2,
//! * `u1`  - some twin-set vertex is labelled 1 and none is labelled 2,
//! * `u0`  - the whole twin set is labelled 0,
//! * `u00` - the twin set is labelled 0 and may stay undominated, the
//!   parent guarantees a 2-neighbor for all of it.
//!
//! `i_R` of the subtree is `min(u0, u1, u2)`. Each internal node combines
//! its children through a fixed list of alternatives per state; the same
//! lists drive both the minimisation and the certificate walk.

use std::fmt;
use std::ops::Add;

use super::tree::{DecompTree, Node, NodeId, Op};
use crate::labeling::{Label, RomanLabeling};

/// A natural number or infinity. Addition saturates at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Finite(u64),
    Infinite,
}

impl ExtNat {
    pub fn is_finite(self) -> bool {
        matches!(self, ExtNat::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            ExtNat::Finite(v) => Some(v),
            ExtNat::Infinite => None,
        }
    }
}

impl Add for ExtNat {
    type Output = ExtNat;

    fn add(self, rhs: ExtNat) -> ExtNat {
        match (self, rhs) {
            (ExtNat::Finite(a), ExtNat::Finite(b)) => {
                a.checked_add(b).map_or(ExtNat::Infinite, ExtNat::Finite)
            }
            _ => ExtNat::Infinite,
        }
    }
}

impl From<u64> for ExtNat {
    fn from(v: u64) -> Self {
        ExtNat::Finite(v)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(v) => write!(f, "{v}"),
            ExtNat::Infinite => f.write_str("inf"),
        }
    }
}

/// One of the four table states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum State {
    U0 = 0,
    U1 = 1,
    U2 = 2,
    U00 = 3,
}

impl State {
    const ALL: [State; 4] = [State::U0, State::U1, State::U2, State::U00];
}

/// A child's contribution to a recurrence: a fixed state, or its own `i_R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Term {
    S(State),
    IR,
}

use State::{U0, U00, U1, U2};
use Term::{IR, S};

type Alternatives = &'static [(Term, Term)];

/// `(left, right)` pairs whose sums are minimised, in tie-break order.
fn alternatives(op: Op, state: State) -> Alternatives {
    match (op, state) {
        (Op::TrueTwin, U2) => &[(S(U2), S(U00)), (S(U00), S(U2))],
        (Op::TrueTwin, U1) => &[(S(U1), S(U0)), (S(U0), S(U1))],
        (Op::TrueTwin, U0) => &[(S(U0), S(U0))],
        (Op::TrueTwin, U00) => &[(S(U00), S(U00))],

        (Op::FalseTwin, U2) => &[(S(U2), IR), (IR, S(U2))],
        (Op::FalseTwin, U1) => &[(S(U1), S(U1)), (S(U1), S(U0)), (S(U0), S(U1))],
        (Op::FalseTwin, U0) => &[(S(U0), S(U0))],
        (Op::FalseTwin, U00) => &[(S(U00), S(U00))],

        (Op::Attachment, U2) => &[(S(U2), S(U00))],
        (Op::Attachment, U1) => &[(S(U1), S(U0))],
        (Op::Attachment, U0) => &[(S(U00), S(U2)), (S(U0), S(U1)), (S(U0), S(U0))],
        (Op::Attachment, U00) => &[(S(U00), IR)],
    }
}

/// DP values of one subtree, with the winning alternative of each state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeTable {
    pub u0: ExtNat,
    pub u1: ExtNat,
    pub u2: ExtNat,
    pub u00: ExtNat,
    pub ir: ExtNat,
    choice: [u8; 4],
}

impl NodeTable {
    /// A single vertex: it can take 1 or 2, can never be dominated inside
    /// itself when labelled 0, and costs nothing when domination is deferred.
    pub const LEAF: NodeTable = NodeTable {
        u0: ExtNat::Infinite,
        u1: ExtNat::Finite(1),
        u2: ExtNat::Finite(2),
        u00: ExtNat::Finite(0),
        ir: ExtNat::Finite(1),
        choice: [0; 4],
    };

    pub fn get(&self, state: State) -> ExtNat {
        match state {
            U0 => self.u0,
            U1 => self.u1,
            U2 => self.u2,
            U00 => self.u00,
        }
    }

    fn set(&mut self, state: State, value: ExtNat) {
        match state {
            U0 => self.u0 = value,
            U1 => self.u1 = value,
            U2 => self.u2 = value,
            U00 => self.u00 = value,
        }
    }

    fn term(&self, term: Term) -> ExtNat {
        match term {
            S(s) => self.get(s),
            IR => self.ir,
        }
    }

    /// The state realising `ir`, preferring `u0`, then `u1`, then `u2`.
    pub fn best_state(&self) -> State {
        [U0, U1, U2]
            .into_iter()
            .find(|&s| self.get(s) == self.ir)
            .expect("ir is the minimum of u0, u1, u2")
    }

    fn combine(op: Op, left: &NodeTable, right: &NodeTable) -> NodeTable {
        let mut table = NodeTable {
            u0: ExtNat::Infinite,
            u1: ExtNat::Infinite,
            u2: ExtNat::Infinite,
            u00: ExtNat::Infinite,
            ir: ExtNat::Infinite,
            choice: [0; 4],
        };
        for state in State::ALL {
            let (idx, value) = alternatives(op, state)
                .iter()
                .map(|&(l, r)| left.term(l) + right.term(r))
                .enumerate()
                // min_by_key keeps the first minimum
                .min_by_key(|&(_, v)| v)
                .expect("every state has an alternative");
            table.set(state, value);
            table.choice[state as usize] = idx as u8;
        }
        table.ir = table.u0.min(table.u1).min(table.u2);
        table
    }
}

/// Tables for every node of a tree, indexed by node id.
#[derive(Debug, Clone)]
pub struct TreeTables {
    tables: Vec<NodeTable>,
    root: NodeId,
}

impl TreeTables {
    pub fn root(&self) -> &NodeTable {
        &self.tables[self.root]
    }

    pub fn get(&self, id: NodeId) -> &NodeTable {
        &self.tables[id]
    }

    pub fn all(&self) -> &[NodeTable] {
        &self.tables
    }

    pub fn value(&self) -> u64 {
        self.root()
            .ir
            .finite()
            .expect("a non-empty graph always has an IRDF")
    }
}

/// Evaluates every node, children before parents.
pub fn solve_tree(tree: &DecompTree) -> TreeTables {
    solve_in_order(tree, &tree.post_order())
}

/// Evaluates nodes in `order`, which must list every node after both of
/// its children.
pub(crate) fn solve_in_order(tree: &DecompTree, order: &[NodeId]) -> TreeTables {
    debug_assert_eq!(order.len(), tree.nodes().len(), "order covers every node");
    // Leaves need no work; every internal node is overwritten after its
    // children, so the initial contents only matter for leaves.
    let mut tables = vec![NodeTable::LEAF; tree.nodes().len()];
    for &id in order {
        if let Node::Internal { op, left, right } = tree.nodes()[id] {
            tables[id] = NodeTable::combine(op, &tables[left], &tables[right]);
        }
    }
    TreeTables {
        tables,
        root: tree.root(),
    }
}

/// Walks the recorded choices from the root down and reads off an optimal
/// labeling. A child referenced through its `i_R` takes its own best state.
pub fn extract_certificate(tree: &DecompTree, tables: &TreeTables) -> RomanLabeling {
    let mut labeling = RomanLabeling::zeros(tree.n());
    let mut stack = vec![(tree.root(), tables.root().best_state())];
    while let Some((id, state)) = stack.pop() {
        let table = tables.get(id);
        assert!(
            table.get(state).is_finite(),
            "certificate walk reached an infeasible state"
        );
        match tree.nodes()[id] {
            Node::Leaf(v) => {
                let label = match state {
                    U2 => Label::Two,
                    U1 => Label::One,
                    U00 => Label::Zero,
                    U0 => unreachable!("a single vertex cannot be 0 and dominated"),
                };
                labeling.set(v, label);
            }
            Node::Internal { op, left, right } => {
                let (l, r) = alternatives(op, state)[table.choice[state as usize] as usize];
                for (child, term) in [(left, l), (right, r)] {
                    let child_state = match term {
                        S(s) => s,
                        IR => tables.get(child).best_state(),
                    };
                    stack.push((child, child_state));
                }
            }
        }
    }
    labeling
}
