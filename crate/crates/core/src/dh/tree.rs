//! Decomposition trees of distance-hereditary graphs.
//!
//! A tree is a full binary tree whose leaves are the vertices. Each
//! internal node combines the graphs of its two subtrees:
//!
//! | op           | cross edges              | twin set            |
//! |--------------|--------------------------|---------------------|
//! | `TrueTwin`   | `TS(left) x TS(right)`   | `TS(left) + TS(right)` |
//! | `FalseTwin`  | none                     | `TS(left) + TS(right)` |
//! | `Attachment` | `TS(left) x TS(right)`   | `TS(left)`          |
//!
//! The JSON form nests objects `{"op": "tt"|"ft"|"at", "l": .., "r": ..}`
//! with bare integers as leaves. Trees can be as deep as they are wide, so
//! both directions use an explicit stack.

use thiserror::Error;

use crate::graph::{Graph, Vertex};

pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    TrueTwin,
    FalseTwin,
    Attachment,
}

impl Op {
    pub fn code(self) -> &'static str {
        match self {
            Op::TrueTwin => "tt",
            Op::FalseTwin => "ft",
            Op::Attachment => "at",
        }
    }

    pub fn from_code(code: &str) -> Option<Op> {
        match code {
            "tt" => Some(Op::TrueTwin),
            "ft" => Some(Op::FalseTwin),
            "at" => Some(Op::Attachment),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Node {
    Leaf(Vertex),
    Internal { op: Op, left: NodeId, right: NodeId },
}

#[derive(Debug, Error)]
pub enum TreeError {
    #[error("tree has no nodes")]
    Empty,
    #[error("node {0} does not exist")]
    BadNode(NodeId),
    #[error("node {0} is reachable more than once")]
    SharedNode(NodeId),
    #[error("node {0} is not reachable from the root")]
    Unreachable(NodeId),
    #[error("leaves do not cover vertices 0..{n}: vertex {vertex} is missing or repeated")]
    BadLeaves { n: usize, vertex: Vertex },
    #[error("invalid tree JSON at byte {offset}: {message}")]
    Json { offset: usize, message: String },
}

/// A validated decomposition tree stored as an arena.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompTree {
    nodes: Vec<Node>,
    root: NodeId,
    /// Leaf node of each vertex.
    leaf_of: Vec<NodeId>,
}

impl DecompTree {
    /// Validates the arena: every node reachable from `root` exactly once,
    /// no dangling children, and leaves in bijection with `0..#leaves`.
    pub fn new(nodes: Vec<Node>, root: NodeId) -> Result<Self, TreeError> {
        if nodes.is_empty() {
            return Err(TreeError::Empty);
        }
        if root >= nodes.len() {
            return Err(TreeError::BadNode(root));
        }
        let mut seen = vec![false; nodes.len()];
        let mut stack = vec![root];
        let mut leaves = Vec::new();
        while let Some(id) = stack.pop() {
            if seen[id] {
                return Err(TreeError::SharedNode(id));
            }
            seen[id] = true;
            match nodes[id] {
                Node::Leaf(v) => leaves.push((v, id)),
                Node::Internal { left, right, .. } => {
                    for child in [left, right] {
                        if child >= nodes.len() {
                            return Err(TreeError::BadNode(child));
                        }
                        stack.push(child);
                    }
                }
            }
        }
        if let Some(id) = seen.iter().position(|&s| !s) {
            return Err(TreeError::Unreachable(id));
        }
        let n = leaves.len();
        let mut leaf_of = vec![usize::MAX; n];
        for (v, id) in leaves {
            if v >= n || leaf_of[v] != usize::MAX {
                return Err(TreeError::BadLeaves {
                    n,
                    vertex: v.min(n),
                });
            }
            leaf_of[v] = id;
        }
        Ok(DecompTree {
            nodes,
            root,
            leaf_of,
        })
    }

    pub fn leaf(v: Vertex) -> Self {
        assert_eq!(v, 0, "a single-leaf tree must hold vertex 0");
        DecompTree {
            nodes: vec![Node::Leaf(0)],
            root: 0,
            leaf_of: vec![0],
        }
    }

    /// Number of leaves, i.e. vertices of the represented graph.
    pub fn n(&self) -> usize {
        self.leaf_of.len()
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> Option<&Node> {
        self.nodes.get(id)
    }

    pub fn leaf_of(&self, v: Vertex) -> NodeId {
        self.leaf_of[v]
    }

    /// Children before parents.
    pub fn post_order(&self) -> Vec<NodeId> {
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            order.push(id);
            if let Node::Internal { left, right, .. } = self.nodes[id] {
                stack.push(left);
                stack.push(right);
            }
        }
        order.reverse();
        order
    }

    /// Sorted twin set of the subgraph rooted at `id`.
    pub fn twin_set(&self, id: NodeId) -> Result<Vec<Vertex>, TreeError> {
        if id >= self.nodes.len() {
            return Err(TreeError::BadNode(id));
        }
        let mut out = Vec::new();
        let mut stack = vec![id];
        while let Some(x) = stack.pop() {
            match self.nodes[x] {
                Node::Leaf(v) => out.push(v),
                Node::Internal {
                    op: Op::Attachment,
                    left,
                    ..
                } => stack.push(left),
                Node::Internal { left, right, .. } => {
                    stack.push(left);
                    stack.push(right);
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// The graph this tree represents, built bottom-up.
    pub fn to_graph(&self) -> Graph {
        let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); self.n()];
        let mut twin: Vec<Option<Vec<Vertex>>> = vec![None; self.nodes.len()];
        for id in self.post_order() {
            let ts = match self.nodes[id] {
                Node::Leaf(v) => vec![v],
                Node::Internal { op, left, right } => {
                    let mut l = twin[left].take().expect("child visited first");
                    let r = twin[right].take().expect("child visited first");
                    if op != Op::FalseTwin {
                        for &a in &l {
                            for &b in &r {
                                adj[a].push(b);
                                adj[b].push(a);
                            }
                        }
                    }
                    if op != Op::Attachment {
                        l.extend(r);
                    }
                    l
                }
            };
            twin[id] = Some(ts);
        }
        Graph::from_raw_adjacency(adj)
    }

    /// Compact JSON, written without recursion.
    pub fn to_json(&self) -> String {
        enum Item {
            Node(NodeId),
            Text(&'static str),
        }
        let mut out = String::new();
        let mut stack = vec![Item::Node(self.root)];
        while let Some(item) = stack.pop() {
            match item {
                Item::Text(t) => out.push_str(t),
                Item::Node(id) => match self.nodes[id] {
                    Node::Leaf(v) => out.push_str(&v.to_string()),
                    Node::Internal { op, left, right } => {
                        out.push_str("{\"op\":\"");
                        out.push_str(op.code());
                        out.push_str("\",\"l\":");
                        stack.push(Item::Text("}"));
                        stack.push(Item::Node(right));
                        stack.push(Item::Text(",\"r\":"));
                        stack.push(Item::Node(left));
                    }
                },
            }
        }
        out
    }

    /// Parses the JSON form. Objects may list their keys in any order;
    /// nesting depth is limited only by memory.
    pub fn from_json(text: &str) -> Result<Self, TreeError> {
        let (nodes, root) = JsonReader {
            bytes: text.as_bytes(),
            pos: 0,
        }
        .read()?;
        DecompTree::new(nodes, root)
    }
}

/// An object whose closing brace has not been read yet.
struct OpenObject {
    id: NodeId,
    op: Option<Op>,
    left: Option<NodeId>,
    right: Option<NodeId>,
    /// Child slot the next value fills: `true` for `l`, `false` for `r`.
    pending_left: bool,
}

struct JsonReader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl JsonReader<'_> {
    fn fail<T>(&self, message: impl Into<String>) -> Result<T, TreeError> {
        Err(TreeError::Json {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while matches!(self.bytes.get(self.pos), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8) -> Result<(), TreeError> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(format!("expected '{}'", byte as char))
        }
    }

    fn string(&mut self) -> Result<&str, TreeError> {
        self.expect(b'"')?;
        let start = self.pos;
        while let Some(&b) = self.bytes.get(self.pos) {
            match b {
                b'"' => {
                    self.pos += 1;
                    return std::str::from_utf8(&self.bytes[start..self.pos - 1])
                        .or_else(|_| self.fail("invalid UTF-8"));
                }
                b'\\' => return self.fail("escape sequences are not supported"),
                _ => self.pos += 1,
            }
        }
        self.fail("unterminated string")
    }

    fn number(&mut self) -> Result<Vertex, TreeError> {
        let start = self.pos;
        while matches!(self.bytes.get(self.pos), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        let digits = &self.bytes[start..self.pos];
        if digits.len() > 1 && digits[0] == b'0' {
            self.pos = start;
            return self.fail("leading zero");
        }
        if matches!(self.bytes.get(self.pos), Some(b'.' | b'e' | b'E')) {
            return self.fail("vertex ids are non-negative integers");
        }
        std::str::from_utf8(digits)
            .ok()
            .and_then(|d| d.parse().ok())
            .map_or_else(|| self.fail("vertex id out of range"), Ok)
    }

    fn read(mut self) -> Result<(Vec<Node>, NodeId), TreeError> {
        let mut nodes = Vec::new();
        let mut open: Vec<OpenObject> = Vec::new();
        loop {
            // Read one value; objects are entered and their first member
            // key is consumed before looping back for its value.
            let mut done = match self.peek() {
                Some(b'0'..=b'9') => {
                    let v = self.number()?;
                    nodes.push(Node::Leaf(v));
                    Some(nodes.len() - 1)
                }
                Some(b'{') => {
                    self.pos += 1;
                    nodes.push(Node::Leaf(usize::MAX));
                    open.push(OpenObject {
                        id: nodes.len() - 1,
                        op: None,
                        left: None,
                        right: None,
                        pending_left: true,
                    });
                    if self.peek() == Some(b'}') {
                        self.pos += 1;
                        Some(self.close(open.pop().expect("just pushed"), &mut nodes)?)
                    } else {
                        self.key(&mut open, &mut nodes)?
                    }
                }
                Some(b'-') => return self.fail("vertex ids are non-negative integers"),
                Some(_) => return self.fail("expected a vertex id or an object"),
                None => return self.fail("unexpected end of input"),
            };
            // Hand finished values to their parents, closing objects as
            // their braces arrive.
            while let Some(id) = done {
                let Some(top) = open.last_mut() else {
                    if self.peek().is_some() {
                        return self.fail("trailing characters");
                    }
                    return Ok((nodes, id));
                };
                if top.pending_left {
                    top.left = Some(id);
                } else {
                    top.right = Some(id);
                }
                done = match self.peek() {
                    Some(b',') => {
                        self.pos += 1;
                        self.key(&mut open, &mut nodes)?
                    }
                    Some(b'}') => {
                        self.pos += 1;
                        Some(self.close(open.pop().expect("checked above"), &mut nodes)?)
                    }
                    _ => return self.fail("expected ',' or '}'"),
                };
            }
        }
    }

    /// Reads member keys of the innermost object. Returns `None` once a
    /// child value must be read next, or the object's id if it closed.
    fn key(
        &mut self,
        open: &mut Vec<OpenObject>,
        nodes: &mut [Node],
    ) -> Result<Option<NodeId>, TreeError> {
        loop {
            let top = open.last_mut().expect("inside an object");
            let key = self.string()?.to_owned();
            self.expect(b':')?;
            match key.as_str() {
                "op" if top.op.is_none() => {
                    let code = self.string()?.to_owned();
                    match Op::from_code(&code) {
                        Some(op) => top.op = Some(op),
                        None => {
                            return self.fail(format!("unknown op {code:?}, expected tt, ft or at"))
                        }
                    }
                    match self.peek() {
                        Some(b',') => self.pos += 1,
                        Some(b'}') => {
                            self.pos += 1;
                            let object = open.pop().expect("inside an object");
                            return self.close(object, nodes).map(Some);
                        }
                        _ => return self.fail("expected ',' or '}'"),
                    }
                }
                "l" if top.left.is_none() => {
                    top.pending_left = true;
                    return Ok(None);
                }
                "r" if top.right.is_none() => {
                    top.pending_left = false;
                    return Ok(None);
                }
                "op" | "l" | "r" => return self.fail(format!("duplicate key {key:?}")),
                other => return self.fail(format!("unknown key {other:?}")),
            }
        }
    }

    fn close(&self, object: OpenObject, nodes: &mut [Node]) -> Result<NodeId, TreeError> {
        match object {
            OpenObject {
                id,
                op: Some(op),
                left: Some(left),
                right: Some(right),
                ..
            } => {
                nodes[id] = Node::Internal { op, left, right };
                Ok(id)
            }
            _ => self.fail("object needs keys op, l and r"),
        }
    }
}

/// Grows a tree by splitting leaves: the leaf holding `u` becomes an
/// internal node with children `Leaf(u)` and `Leaf(w)`. The new vertex
/// `w` joins exactly where `u` sits, so it becomes a true twin, false twin,
/// or pendant of `u` in the represented graph.
#[derive(Debug, Clone)]
pub(crate) struct LeafSplitter {
    nodes: Vec<Node>,
    leaf_of: Vec<NodeId>,
}

impl LeafSplitter {
    /// Starts from a single leaf holding `first`; `n` bounds the vertex ids.
    pub(crate) fn new(n: usize, first: Vertex) -> Self {
        let mut leaf_of = vec![usize::MAX; n];
        leaf_of[first] = 0;
        LeafSplitter {
            nodes: vec![Node::Leaf(first)],
            leaf_of,
        }
    }

    pub(crate) fn split(&mut self, u: Vertex, w: Vertex, op: Op) {
        let at = self.leaf_of[u];
        let left = self.nodes.len();
        self.nodes.push(Node::Leaf(u));
        self.nodes.push(Node::Leaf(w));
        self.nodes[at] = Node::Internal {
            op,
            left,
            right: left + 1,
        };
        self.leaf_of[u] = left;
        self.leaf_of[w] = left + 1;
    }

    /// The finished tree, renumbered in pre-order (parent, left subtree,
    /// right subtree) like trees read from JSON, so every subtree occupies
    /// a contiguous block of the arena.
    pub(crate) fn finish(self) -> DecompTree {
        debug_assert!(self.leaf_of.iter().all(|&id| id != usize::MAX));
        let mut new_id = vec![usize::MAX; self.nodes.len()];
        let mut visit = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![0];
        while let Some(id) = stack.pop() {
            new_id[id] = visit.len();
            visit.push(id);
            if let Node::Internal { left, right, .. } = self.nodes[id] {
                stack.push(right);
                stack.push(left);
            }
        }
        let nodes = visit
            .iter()
            .map(|&id| match self.nodes[id] {
                Node::Internal { op, left, right } => Node::Internal {
                    op,
                    left: new_id[left],
                    right: new_id[right],
                },
                leaf => leaf,
            })
            .collect();
        DecompTree {
            nodes,
            root: 0,
            leaf_of: self.leaf_of.iter().map(|&id| new_id[id]).collect(),
        }
    }
}
