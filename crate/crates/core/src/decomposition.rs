//! Branch decompositions of a formula: rooted binary trees whose leaves are
//! in bijection with the clauses and occurring variables. Each node defines
//! a cut (the elements below it), and each cut splits the formula into the
//! two induced subformulas the engine and the solver work on.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::formula::{ClauseId, Formula, FormulaError, VarId};
use crate::sets::{ClauseSet, VarSet};

/// A leaf payload: one clause or one occurring variable.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Variable(VarId),
    Clause(ClauseId),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Variable(v) => write!(f, "v{}", v),
            Element::Clause(c) => write!(f, "c{}", c),
        }
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Element {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        let (kind, rest) = s.split_at(1.min(s.len()));
        match kind {
            "v" => rest.parse::<VarId>().map(Element::Variable).map_err(|_| ()),
            "c" => rest
                .parse::<ClauseId>()
                .map(Element::Clause)
                .map_err(|_| ()),
            _ => Err(()),
        }
    }
}

/// All elements of a formula (its clauses and occurring variables), in the
/// canonical order: variables ascending, then clauses ascending.
pub fn elements_of(f: &Formula) -> Vec<Element> {
    let mut out: Vec<Element> = f.occurring_vars().iter().map(Element::Variable).collect();
    out.extend(f.clauses().iter().map(|c| Element::Clause(c.id)));
    out
}

pub type NodeId = usize;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NodeKind {
    Leaf(Element),
    /// Children are ordered, which fixes the iteration order of every pass.
    Internal(NodeId, NodeId),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Node {
    pub kind: NodeKind,
    pub parent: Option<NodeId>,
}

/// A rooted binary tree with leaves in bijection with the clauses and
/// occurring variables of a formula.
#[derive(Clone, PartialEq, Eq)]
pub struct BranchDecomposition {
    nodes: Vec<Node>,
    root: NodeId,
    linear: bool,
}

/// The elements below one node, split into the clause and variable sides.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cut {
    pub clause_side: ClauseSet,
    pub var_side: VarSet,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecompositionError {
    #[error("order is not a permutation of the formula elements: missing {missing:?}, duplicated {duplicates:?}")]
    NotPermutation {
        missing: Vec<Element>,
        duplicates: Vec<Element>,
    },
    #[error("a decomposition needs at least two elements, got {0}")]
    TooFewElements(usize),
    #[error("node {0} has {1} children, internal nodes must have exactly 2")]
    NonBinaryNode(NodeId, usize),
    #[error("node {0} carries a leaf token but has children")]
    LeafNotTerminal(NodeId),
    #[error("node {0} is unreachable from the root or part of a cycle")]
    Disconnected(NodeId),
    #[error("leaf token {0} does not name a clause or occurring variable of the formula")]
    UnknownElement(Element),
    #[error("leaf map is not a bijection: element {0} covered by more than one leaf")]
    DuplicateLeaf(Element),
    #[error("leaf map is not a bijection: element {0} has no leaf")]
    MissingLeaf(Element),
    #[error("line {line}: cannot parse decomposition line `{content}`")]
    BadLine { line: usize, content: String },
    #[error("node id {0} out of range")]
    BadNodeId(NodeId),
    #[error("node {0} assigned two parents")]
    TwoParents(NodeId),
    #[error("no root declared or root has a parent")]
    BadRoot,
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

impl BranchDecomposition {
    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn is_linear(&self) -> bool {
        self.linear
    }

    pub fn is_leaf(&self, id: NodeId) -> bool {
        matches!(self.nodes[id].kind, NodeKind::Leaf(_))
    }

    pub fn leaf_element(&self, id: NodeId) -> Option<Element> {
        match self.nodes[id].kind {
            NodeKind::Leaf(e) => Some(e),
            NodeKind::Internal(..) => None,
        }
    }

    pub fn children(&self, id: NodeId) -> Option<(NodeId, NodeId)> {
        match self.nodes[id].kind {
            NodeKind::Internal(l, r) => Some((l, r)),
            NodeKind::Leaf(_) => None,
        }
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        self.nodes[id].parent
    }

    /// The other child of this node's parent.
    pub fn sibling(&self, id: NodeId) -> Option<NodeId> {
        let p = self.nodes[id].parent?;
        let (l, r) = self.children(p).expect("parent is internal");
        Some(if l == id { r } else { l })
    }

    /// Nodes ordered children-before-parent.
    pub fn post_order(&self) -> Vec<NodeId> {
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(self.root, false)];
        while let Some((id, expanded)) = stack.pop() {
            if expanded || self.is_leaf(id) {
                order.push(id);
            } else {
                let (l, r) = self.children(id).unwrap();
                stack.push((id, true));
                stack.push((r, false));
                stack.push((l, false));
            }
        }
        order
    }

    /// Nodes ordered parents-before-children, starting at the root.
    pub fn top_down_order(&self) -> Vec<NodeId> {
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut queue = std::collections::VecDeque::from([self.root]);
        while let Some(id) = queue.pop_front() {
            order.push(id);
            if let Some((l, r)) = self.children(id) {
                queue.push_back(l);
                queue.push_back(r);
            }
        }
        order
    }

    /// The cut of one node: every clause and variable mapped to a leaf in
    /// the subtree rooted there.
    pub fn cut_of(&self, f: &Formula, node: NodeId) -> Cut {
        let mut cut = Cut {
            clause_side: ClauseSet::empty(f.clause_universe()),
            var_side: VarSet::for_max_var(f.declared_vars()),
        };
        let mut stack = vec![node];
        while let Some(id) = stack.pop() {
            match self.nodes[id].kind {
                NodeKind::Leaf(Element::Clause(c)) => cut.clause_side.insert(c),
                NodeKind::Leaf(Element::Variable(v)) => cut.var_side.insert(v),
                NodeKind::Internal(l, r) => {
                    stack.push(l);
                    stack.push(r);
                }
            }
        }
        cut
    }

    /// Cuts for all nodes, computed in one bottom-up pass.
    pub fn cuts(&self, f: &Formula) -> Vec<Cut> {
        let empty = Cut {
            clause_side: ClauseSet::empty(f.clause_universe()),
            var_side: VarSet::for_max_var(f.declared_vars()),
        };
        let mut cuts = vec![empty; self.nodes.len()];
        for id in self.post_order() {
            match self.nodes[id].kind {
                NodeKind::Leaf(Element::Clause(c)) => cuts[id].clause_side.insert(c),
                NodeKind::Leaf(Element::Variable(v)) => cuts[id].var_side.insert(v),
                NodeKind::Internal(l, r) => {
                    cuts[id] = Cut {
                        clause_side: cuts[l].clause_side.union(&cuts[r].clause_side),
                        var_side: cuts[l].var_side.union(&cuts[r].var_side),
                    };
                }
            }
        }
        cuts
    }

    /// Leaf elements left to right.
    pub fn leaf_order(&self) -> Vec<Element> {
        self.post_order()
            .into_iter()
            .filter_map(|id| self.leaf_element(id))
            .collect()
    }

    /// Checks the structural invariants against a formula: binary internal
    /// nodes, a single root, all nodes reachable, and the leaf map being a
    /// bijection onto the clauses and occurring variables.
    pub fn validate(&self, f: &Formula) -> Result<(), DecompositionError> {
        if self.nodes[self.root].parent.is_some() {
            return Err(DecompositionError::BadRoot);
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            if seen[id] {
                return Err(DecompositionError::Disconnected(id));
            }
            seen[id] = true;
            if let Some((l, r)) = self.children(id) {
                if l >= self.nodes.len() || r >= self.nodes.len() {
                    return Err(DecompositionError::BadNodeId(l.max(r)));
                }
                for c in [l, r] {
                    if self.nodes[c].parent != Some(id) {
                        return Err(DecompositionError::TwoParents(c));
                    }
                }
                stack.push(l);
                stack.push(r);
            }
        }
        if let Some(id) = seen.iter().position(|s| !s) {
            return Err(DecompositionError::Disconnected(id));
        }
        check_bijection(f, &self.leaf_order())?;
        Ok(())
    }
}

impl fmt::Debug for BranchDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BranchDecomposition(root {}, {} nodes, leaves {:?})",
            self.root,
            self.nodes.len(),
            self.leaf_order()
        )
    }
}

fn check_bijection(f: &Formula, elements: &[Element]) -> Result<(), DecompositionError> {
    let expected = elements_of(f);
    for e in elements {
        if !expected.contains(e) {
            return Err(DecompositionError::UnknownElement(*e));
        }
    }
    let mut sorted: Vec<Element> = elements.to_vec();
    sorted.sort();
    let duplicates: Vec<Element> = sorted
        .windows(2)
        .filter(|w| w[0] == w[1])
        .map(|w| w[0])
        .collect();
    if let Some(&d) = duplicates.first() {
        return Err(DecompositionError::DuplicateLeaf(d));
    }
    let missing: Vec<Element> = expected
        .iter()
        .copied()
        .filter(|e| sorted.binary_search(e).is_err())
        .collect();
    if let Some(&m) = missing.first() {
        return Err(DecompositionError::MissingLeaf(m));
    }
    Ok(())
}

/// Builds the caterpillar tree whose leaves, left to right, follow `order`.
/// The cut below the i-th internal node is the length-(i+2) prefix of the
/// order, so prefix cuts of the order are exactly the internal cuts.
pub fn linear_decomposition(
    f: &Formula,
    order: &[Element],
) -> Result<BranchDecomposition, DecompositionError> {
    let expected = elements_of(f);
    let mut sorted = order.to_vec();
    sorted.sort();
    let mut duplicates: Vec<Element> = sorted
        .windows(2)
        .filter(|w| w[0] == w[1])
        .map(|w| w[0])
        .collect();
    duplicates.dedup();
    let missing: Vec<Element> = expected
        .iter()
        .copied()
        .filter(|e| sorted.binary_search(e).is_err())
        .collect();
    if !missing.is_empty() || !duplicates.is_empty() || order.len() != expected.len() {
        return Err(DecompositionError::NotPermutation {
            missing,
            duplicates,
        });
    }
    if order.len() < 2 {
        return Err(DecompositionError::TooFewElements(order.len()));
    }

    let mut nodes: Vec<Node> = Vec::with_capacity(2 * order.len() - 1);
    for &e in order {
        nodes.push(Node {
            kind: NodeKind::Leaf(e),
            parent: None,
        });
    }
    let mut spine = 0; // leaf of order[0]
    for (i, _) in order.iter().enumerate().skip(1) {
        let id = nodes.len();
        nodes.push(Node {
            kind: NodeKind::Internal(spine, i),
            parent: None,
        });
        nodes[spine].parent = Some(id);
        nodes[i].parent = Some(id);
        spine = id;
    }
    Ok(BranchDecomposition {
        nodes,
        root: spine,
        linear: true,
    })
}

fn compute_linear(nodes: &[Node], root: NodeId) -> bool {
    // linear iff every internal node has at most one internal child
    nodes.iter().all(|n| match n.kind {
        NodeKind::Leaf(_) => true,
        NodeKind::Internal(l, r) => {
            matches!(nodes[l].kind, NodeKind::Leaf(_)) || matches!(nodes[r].kind, NodeKind::Leaf(_))
        }
    }) && !matches!(nodes[root].kind, NodeKind::Leaf(_))
}

/// Assembles a decomposition from explicit parts; used by the parser and by
/// tests that build arbitrary tree shapes.
pub fn from_parts(
    f: &Formula,
    num_nodes: usize,
    root: NodeId,
    edges: &[(NodeId, NodeId)],
    leaves: &[(NodeId, Element)],
) -> Result<BranchDecomposition, DecompositionError> {
    if root >= num_nodes {
        return Err(DecompositionError::BadNodeId(root));
    }
    let mut children: Vec<Vec<NodeId>> = vec![Vec::new(); num_nodes];
    let mut parent: Vec<Option<NodeId>> = vec![None; num_nodes];
    for &(p, c) in edges {
        if p >= num_nodes || c >= num_nodes {
            return Err(DecompositionError::BadNodeId(p.max(c)));
        }
        if parent[c].is_some() {
            return Err(DecompositionError::TwoParents(c));
        }
        parent[c] = Some(p);
        children[p].push(c);
    }
    if parent[root].is_some() {
        return Err(DecompositionError::BadRoot);
    }
    let mut leaf_of: Vec<Option<Element>> = vec![None; num_nodes];
    for &(id, e) in leaves {
        if id >= num_nodes {
            return Err(DecompositionError::BadNodeId(id));
        }
        if leaf_of[id].replace(e).is_some() {
            return Err(DecompositionError::DuplicateLeaf(e));
        }
    }
    let mut nodes = Vec::with_capacity(num_nodes);
    for id in 0..num_nodes {
        let kind = match (children[id].len(), leaf_of[id]) {
            (0, Some(e)) => NodeKind::Leaf(e),
            (2, None) => NodeKind::Internal(children[id][0], children[id][1]),
            (n, Some(_)) if n > 0 => return Err(DecompositionError::LeafNotTerminal(id)),
            (n, _) => return Err(DecompositionError::NonBinaryNode(id, n)),
        };
        nodes.push(Node {
            kind,
            parent: parent[id],
        });
    }
    let linear = compute_linear(&nodes, root);
    let d = BranchDecomposition {
        nodes,
        root,
        linear,
    };
    d.validate(f)?;
    Ok(d)
}

/// Parses the line-based decomposition format:
/// `nodes N`, `root R`, one `edge P C` per tree edge, one `leaf L token`
/// per leaf, where a token is `v<i>` or `c<j>`.
pub fn parse_decomposition(
    text: &str,
    f: &Formula,
) -> Result<BranchDecomposition, DecompositionError> {
    let mut num_nodes: Option<usize> = None;
    let mut root: Option<NodeId> = None;
    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
    let mut leaves: Vec<(NodeId, Element)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let bad = || DecompositionError::BadLine {
            line: idx + 1,
            content: line.to_string(),
        };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            ["nodes", n] => {
                if num_nodes.replace(n.parse().map_err(|_| bad())?).is_some() {
                    return Err(bad());
                }
            }
            ["root", r] => {
                if root.replace(r.parse().map_err(|_| bad())?).is_some() {
                    return Err(bad());
                }
            }
            ["edge", p, c] => {
                edges.push((p.parse().map_err(|_| bad())?, c.parse().map_err(|_| bad())?))
            }
            ["leaf", l, tok] => leaves.push((
                l.parse().map_err(|_| bad())?,
                tok.parse().map_err(|_| bad())?,
            )),
            _ => return Err(bad()),
        }
    }
    let (Some(n), Some(r)) = (num_nodes, root) else {
        return Err(DecompositionError::BadRoot);
    };
    from_parts(f, n, r, &edges, &leaves)
}

/// Writes the decomposition in the format accepted by [`parse_decomposition`];
/// `parse_decomposition(emit_decomposition(d), f)` reconstructs `d` exactly.
pub fn emit_decomposition(d: &BranchDecomposition) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    writeln!(out, "nodes {}", d.num_nodes()).unwrap();
    writeln!(out, "root {}", d.root()).unwrap();
    let mut stack = vec![d.root()];
    while let Some(id) = stack.pop() {
        if let Some((l, r)) = d.children(id) {
            writeln!(out, "edge {} {}", id, l).unwrap();
            writeln!(out, "edge {} {}", id, r).unwrap();
            stack.push(r);
            stack.push(l);
        }
    }
    for id in 0..d.num_nodes() {
        if let Some(e) = d.leaf_element(id) {
            writeln!(out, "leaf {} {}", id, e).unwrap();
        }
    }
    out
}

/// The two subformulas of a cut: the clauses outside the cut induced by the
/// cut variables, and the clauses inside the cut induced by the remaining
/// occurring variables.
pub fn cut_subformulas(f: &Formula, cut: &Cut) -> (Formula, Formula) {
    let all_clauses = f.clause_ids();
    let all_vars = f.occurring_vars();
    let inner = f
        .induced(&all_clauses.difference(&cut.clause_side), &cut.var_side)
        .expect("cut drawn from this formula");
    let outer = f
        .induced(&cut.clause_side, &all_vars.difference(&cut.var_side))
        .expect("cut drawn from this formula");
    (inner, outer)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AutoStrategy {
    /// Leaf order follows the file: each clause preceded by its first-seen
    /// variables.
    FileOrder,
    /// Greedy: append the element minimizing the size of the next prefix
    /// family. Best-effort heuristic, no width guarantee.
    GreedyPs,
}

impl FromStr for AutoStrategy {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "file-order" => Ok(AutoStrategy::FileOrder),
            "greedy-ps" => Ok(AutoStrategy::GreedyPs),
            _ => Err(()),
        }
    }
}

/// Constructs a linear decomposition without user input. Deterministic for
/// a fixed strategy and formula.
pub fn auto_decomposition(
    f: &Formula,
    strategy: AutoStrategy,
) -> Result<BranchDecomposition, DecompositionError> {
    let order = match strategy {
        AutoStrategy::FileOrder => file_order(f),
        AutoStrategy::GreedyPs => crate::ps::greedy_ps_order(f),
    };
    linear_decomposition(f, &order)
}

/// Elements in the order they appear in the input: scanning clauses by id,
/// first each clause's not-yet-seen variables, then the clause itself.
pub fn file_order(f: &Formula) -> Vec<Element> {
    let mut seen = VarSet::for_max_var(f.declared_vars());
    let mut order = Vec::new();
    for c in f.clauses() {
        for v in c.vars() {
            if !seen.contains(v) {
                seen.insert(v);
                order.push(Element::Variable(v));
            }
        }
        order.push(Element::Clause(c.id));
    }
    order
}
