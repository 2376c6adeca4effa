//! Explicit Fibonacci trees: arena-backed construction plus traversal
//! measurements, the ground truth the closed forms are checked against.

use std::fmt::Write;

use crate::num::Count;
use crate::{Error, Index, Natural};

/// Default construction cap. Height 30 is about 2.2 million nodes, which
/// keeps a default build well under 100 MB.
pub const DEFAULT_HEIGHT_CAP: Index = 30;

/// Index of a node in the tree's arena.
pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Node {
    left: Option<NodeId>,
    right: Option<NodeId>,
    depth: Index,
}

/// A Fibonacci tree of height `h`: the single vertex at `h = 0`, the single
/// edge at `h = 1`, and for `h >= 2` a fresh root over a height-`h-1`
/// subtree on the left and a height-`h-2` subtree on the right.
///
/// Nodes live in a flat arena laid out in preorder, so node 0 is always the
/// root and ids are stable for DOT output and structural comparison. Trees
/// are immutable once built; every query is read-only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibTree {
    nodes: Vec<Node>,
    root: NodeId,
    height: Index,
}

/// Per-level vertex counts for one tree; `counts[k]` is the number of
/// vertices at depth `k`, with `counts.len() == height + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelProfile<T = Natural> {
    pub height: Index,
    pub counts: Vec<T>,
}

enum Slot {
    Left,
    Right,
}

struct Task {
    h: Index,
    depth: Index,
    parent: Option<(NodeId, Slot)>,
}

impl FibTree {
    /// Build the Fibonacci tree of height `h` under the default cap.
    pub fn build(h: Index) -> Result<Self, Error> {
        Self::build_with_cap(h, DEFAULT_HEIGHT_CAP)
    }

    /// Build the Fibonacci tree of height `h`, refusing heights above `cap`.
    ///
    /// The cap is a resource guard, not a math error: the tree of height `h`
    /// has `f(h+2) - 1` nodes, which grows past any memory budget fast.
    pub fn build_with_cap(h: Index, cap: Index) -> Result<Self, Error> {
        if h > cap {
            return Err(Error::HeightCapExceeded { requested: h, cap });
        }
        let mut nodes = Vec::with_capacity(expected_nodes(h));
        // Iterative preorder construction: pushing the right task first means
        // the left subtree occupies the id range directly after its root.
        let mut work = vec![Task {
            h,
            depth: 0,
            parent: None,
        }];
        while let Some(task) = work.pop() {
            let id = nodes.len();
            nodes.push(Node {
                left: None,
                right: None,
                depth: task.depth,
            });
            match task.parent {
                Some((parent, Slot::Left)) => nodes[parent].left = Some(id),
                Some((parent, Slot::Right)) => nodes[parent].right = Some(id),
                None => {}
            }
            if task.h >= 2 {
                work.push(Task {
                    h: task.h - 2,
                    depth: task.depth + 1,
                    parent: Some((id, Slot::Right)),
                });
                work.push(Task {
                    h: task.h - 1,
                    depth: task.depth + 1,
                    parent: Some((id, Slot::Left)),
                });
            } else if task.h == 1 {
                // The single edge: its one child hangs on the left.
                work.push(Task {
                    h: 0,
                    depth: task.depth + 1,
                    parent: Some((id, Slot::Left)),
                });
            }
        }
        Ok(FibTree {
            nodes,
            root: 0,
            height: h,
        })
    }

    /// Height the tree was built for.
    pub fn height(&self) -> Index {
        self.height
    }

    /// Arena id of the root.
    pub fn root(&self) -> NodeId {
        self.root
    }

    /// Left child of `id`, if any.
    pub fn left(&self, id: NodeId) -> Option<NodeId> {
        self.nodes[id].left
    }

    /// Right child of `id`, if any.
    pub fn right(&self, id: NodeId) -> Option<NodeId> {
        self.nodes[id].right
    }

    /// Depth recorded for `id`; the root is at depth 0.
    pub fn depth(&self, id: NodeId) -> Index {
        self.nodes[id].depth
    }

    /// Count the vertices by walking the tree from the root.
    ///
    /// Deliberately measured by traversal rather than read off a formula, so
    /// the result can stand as an independent check of the closed-form count.
    pub fn vertex_count<T: Count>(&self) -> T {
        let mut seen = 0u64;
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            seen += 1;
            let node = &self.nodes[id];
            if let Some(c) = node.left {
                stack.push(c);
            }
            if let Some(c) = node.right {
                stack.push(c);
            }
        }
        T::from_u64(seen).expect("count fits the scalar")
    }

    /// Count the vertices at each depth by traversal.
    ///
    /// Depth is tracked along the walk itself, independent of the per-node
    /// depth field recorded during construction.
    pub fn level_profile<T: Count>(&self) -> LevelProfile<T> {
        let mut counts = vec![0u64; self.height as usize + 1];
        let mut stack = vec![(self.root, 0u32)];
        while let Some((id, depth)) = stack.pop() {
            if depth as usize >= counts.len() {
                counts.resize(depth as usize + 1, 0);
            }
            counts[depth as usize] += 1;
            debug_assert_eq!(depth, self.nodes[id].depth);
            let node = &self.nodes[id];
            if let Some(c) = node.left {
                stack.push((c, depth + 1));
            }
            if let Some(c) = node.right {
                stack.push((c, depth + 1));
            }
        }
        LevelProfile {
            height: self.height,
            counts: counts
                .into_iter()
                .map(|c| T::from_u64(c).expect("count fits the scalar"))
                .collect(),
        }
    }

    /// Whether every vertex satisfies the defining balance rule: the heights
    /// of its two subtrees differ by exactly one, a missing child counting
    /// as height -1. Leaves are exempt, so the single vertex and the single
    /// edge both pass; a node with two equal-height subtrees does not.
    pub fn is_balanced(&self) -> bool {
        let heights = self.subtree_heights();
        self.nodes.iter().all(|node| {
            if node.left.is_none() && node.right.is_none() {
                return true;
            }
            let l = node.left.map_or(-1, |c| heights[c]);
            let r = node.right.map_or(-1, |c| heights[c]);
            (l - r).abs() == 1
        })
    }

    // Subtree height per node, computed in post order without recursion.
    fn subtree_heights(&self) -> Vec<i64> {
        let mut heights = vec![0i64; self.nodes.len()];
        let mut stack = vec![(self.root, false)];
        while let Some((id, expanded)) = stack.pop() {
            let node = &self.nodes[id];
            if expanded {
                let l = node.left.map_or(-1, |c| heights[c]);
                let r = node.right.map_or(-1, |c| heights[c]);
                heights[id] = 1 + l.max(r);
            } else {
                stack.push((id, true));
                if let Some(c) = node.left {
                    stack.push((c, false));
                }
                if let Some(c) = node.right {
                    stack.push((c, false));
                }
            }
        }
        heights
    }

    /// Render the tree as a DOT digraph: one `v<id>` declaration per node,
    /// labelled with its depth, and one edge per parent-child link.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph fibonacci_tree {\n");
        for (id, node) in self.nodes.iter().enumerate() {
            writeln!(out, "  v{id} [label=\"{}\"];", node.depth).unwrap();
        }
        for (id, node) in self.nodes.iter().enumerate() {
            for child in [node.left, node.right].into_iter().flatten() {
                writeln!(out, "  v{id} -> v{child};").unwrap();
            }
        }
        out.push_str("}\n");
        out
    }
}

// Capacity hint, exact for any height that can realistically be allocated.
fn expected_nodes(h: Index) -> usize {
    let (mut prev, mut curr) = (1u64, 1u64);
    for _ in 0..h + 2 {
        let Some(next) = prev.checked_add(curr) else {
            return 0;
        };
        prev = std::mem::replace(&mut curr, next);
    }
    usize::try_from(prev - 1).unwrap_or(0)
}
