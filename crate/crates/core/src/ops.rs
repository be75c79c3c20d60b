//! Primitive operations and compiled schedules.
//!
//! Spins are numbered from 1; spin 1 is the reset spin and spin `n` the
//! most significant bit. Schedules are stored as a tree of shared blocks so
//! that recursive algorithms with billions of steps can be counted without
//! being expanded; [`Schedule::ops`] walks the tree in execution order.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "UPPERCASE")]
pub enum PrimitiveOp {
    /// Rethermalize a reset spin to eps0.
    Reset { target: usize },
    /// Polarization transfer, implemented as a full swap of the two spins.
    Pt { source: usize, target: usize },
    /// 3B-Comp: exchange |100> and |011> on `(c, b, a)`, cooling `c`.
    Comp3 { c: usize, b: usize, a: usize },
}

impl PrimitiveOp {
    pub fn reset(target: usize) -> Self {
        PrimitiveOp::Reset { target }
    }

    pub fn pt(source: usize, target: usize) -> Self {
        PrimitiveOp::Pt { source, target }
    }

    pub fn comp3(c: usize, b: usize, a: usize) -> Self {
        PrimitiveOp::Comp3 { c, b, a }
    }

    /// 3B-Comp on `(k, k-1, k-2)`.
    pub fn compress_onto(k: usize) -> Self {
        PrimitiveOp::Comp3 { c: k, b: k - 1, a: k - 2 }
    }

    pub fn is_reset(&self) -> bool {
        matches!(self, PrimitiveOp::Reset { .. })
    }

    pub fn spins(&self) -> impl Iterator<Item = usize> {
        let (arr, len) = match *self {
            PrimitiveOp::Reset { target } => ([target, 0, 0], 1),
            PrimitiveOp::Pt { source, target } => ([source, target, 0], 2),
            PrimitiveOp::Comp3 { c, b, a } => ([c, b, a], 3),
        };
        arr.into_iter().take(len)
    }

    pub fn max_spin(&self) -> usize {
        self.spins().max().unwrap_or(0)
    }
}

impl fmt::Display for PrimitiveOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PrimitiveOp::Reset { target } => write!(f, "RESET({target})"),
            PrimitiveOp::Pt { source, target } => write!(f, "PT({source}->{target})"),
            PrimitiveOp::Comp3 { c, b, a } => write!(f, "COMP3({c},{b},{a})"),
        }
    }
}

#[derive(Debug, Clone)]
enum Node {
    Op(PrimitiveOp),
    Block { body: Arc<Schedule>, times: u64 },
}

/// An ordered sequence of primitive operations.
///
/// Sub-schedules are shared, not copied, so building `M_j` from `M_{j-1}`
/// costs O(1) per reference.
#[derive(Debug, Clone, Default)]
pub struct Schedule {
    nodes: Vec<Node>,
    resets: u64,
    len: u64,
    max_spin: usize,
}

impl Schedule {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_ops(ops: impl IntoIterator<Item = PrimitiveOp>) -> Self {
        let mut s = Self::new();
        for op in ops {
            s.push(op);
        }
        s
    }

    pub fn push(&mut self, op: PrimitiveOp) -> &mut Self {
        self.resets += op.is_reset() as u64;
        self.len += 1;
        self.max_spin = self.max_spin.max(op.max_spin());
        self.nodes.push(Node::Op(op));
        self
    }

    /// Appends `body` once.
    pub fn append(&mut self, body: &Arc<Schedule>) -> &mut Self {
        self.repeat(1, body)
    }

    /// Appends `body` executed `times` times in a row.
    pub fn repeat(&mut self, times: u64, body: &Arc<Schedule>) -> &mut Self {
        if times == 0 || body.len == 0 {
            return self;
        }
        self.resets += times * body.resets;
        self.len += times * body.len;
        self.max_spin = self.max_spin.max(body.max_spin);
        self.nodes.push(Node::Block { body: Arc::clone(body), times });
        self
    }

    pub fn shared(self) -> Arc<Schedule> {
        Arc::new(self)
    }

    /// Number of RESET operations, counted without expanding the schedule.
    pub fn reset_count(&self) -> u64 {
        self.resets
    }

    /// Total number of primitive operations.
    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Highest spin index touched; the minimal system size.
    pub fn max_spin(&self) -> usize {
        self.max_spin
    }

    /// Iterates over the operations in execution order.
    pub fn ops(&self) -> Ops<'_> {
        Ops { stack: vec![Frame { nodes: &self.nodes, pos: 0, left: 1 }] }
    }
}

struct Frame<'a> {
    nodes: &'a [Node],
    pos: usize,
    left: u64,
}

/// Depth-first expansion of a [`Schedule`].
pub struct Ops<'a> {
    stack: Vec<Frame<'a>>,
}

impl Iterator for Ops<'_> {
    type Item = PrimitiveOp;

    fn next(&mut self) -> Option<PrimitiveOp> {
        loop {
            let frame = self.stack.last_mut()?;
            if frame.pos == frame.nodes.len() {
                frame.left -= 1;
                if frame.left == 0 {
                    self.stack.pop();
                } else {
                    frame.pos = 0;
                }
                continue;
            }
            let node = &frame.nodes[frame.pos];
            frame.pos += 1;
            match node {
                Node::Op(op) => return Some(*op),
                Node::Block { body, times } => self.stack.push(Frame {
                    nodes: &body.nodes,
                    pos: 0,
                    left: *times,
                }),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_schedule() {
        let s = Schedule::new();
        assert_eq!(s.reset_count(), 0);
        assert_eq!(s.ops().count(), 0);
        assert!(s.is_empty());
    }

    #[test]
    fn nested_blocks_expand_in_order() {
        let inner = Schedule::from_ops([PrimitiveOp::reset(1), PrimitiveOp::pt(1, 2)]).shared();
        let mut outer = Schedule::new();
        outer.push(PrimitiveOp::comp3(3, 2, 1)).repeat(2, &inner).push(PrimitiveOp::reset(1));
        let ops: Vec<_> = outer.ops().collect();
        assert_eq!(
            ops,
            vec![
                PrimitiveOp::comp3(3, 2, 1),
                PrimitiveOp::reset(1),
                PrimitiveOp::pt(1, 2),
                PrimitiveOp::reset(1),
                PrimitiveOp::pt(1, 2),
                PrimitiveOp::reset(1),
            ]
        );
        assert_eq!(outer.reset_count(), 3);
        assert_eq!(outer.len(), 6);
        assert_eq!(outer.max_spin(), 3);
    }

    #[test]
    fn repeat_zero_and_empty_bodies_are_dropped() {
        let inner = Schedule::from_ops([PrimitiveOp::reset(1)]).shared();
        let mut s = Schedule::new();
        s.repeat(0, &inner).append(&Schedule::new().shared());
        assert!(s.is_empty());
        assert_eq!(s.ops().next(), None);
    }

    #[test]
    fn counted_resets_match_expansion() {
        let mut level = Schedule::from_ops([PrimitiveOp::reset(1)]).shared();
        for _ in 0..4 {
            let mut next = Schedule::new();
            next.append(&level).push(PrimitiveOp::pt(1, 2)).repeat(3, &level);
            level = next.shared();
        }
        let expanded = level.ops().filter(PrimitiveOp::is_reset).count() as u64;
        assert_eq!(expanded, level.reset_count());
        assert_eq!(level.ops().count() as u64, level.len());
    }

    #[test]
    fn display() {
        assert_eq!(PrimitiveOp::pt(1, 3).to_string(), "PT(1->3)");
        assert_eq!(PrimitiveOp::compress_onto(5).to_string(), "COMP3(5,4,3)");
    }
}
