//! Hooks for watching the algorithm from the outside. All methods default to
//! doing nothing; tests and the harness implement the ones they need.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use crate::graph::{EdgeId, PlanarGraph};
use crate::polytope::{EvenWalk, FractionalPoint};
use crate::uncross::{Direction, IntersectionParityGraph, TightOddSet};

/// A walk that kept all its edges and the tight odd set found to block it.
pub struct BlockingEvent<'a> {
    pub graph: &'a PlanarGraph,
    pub point: &'a FractionalPoint,
    pub walk: &'a EvenWalk,
    /// Direction of the rotation that is blocked.
    pub direction: Direction,
    pub count: &'a BigUint,
    pub set: &'a TightOddSet,
}

/// One finished call of the reduction step.
pub struct ReduceEvent<'a> {
    /// Graph after edges with zero mass were removed, before contraction.
    pub graph: &'a PlanarGraph,
    pub point: &'a FractionalPoint,
    pub walks_found: usize,
    pub surviving: &'a [EvenWalk],
    pub removed: &'a BTreeSet<EdgeId>,
    /// Disjoint sets that were contracted. Empty when the call ended early.
    pub sets: &'a [TightOddSet],
    pub edges_before: usize,
    pub edges_after: usize,
    /// A balanced set was found, so nothing was contracted.
    pub ended_early: bool,
}

pub trait Observer: Sync {
    fn parity_graph(&self, _h: &IntersectionParityGraph) {}
    fn blocking_set(&self, _event: &BlockingEvent<'_>) {}
    fn reduce(&self, _event: &ReduceEvent<'_>) {}
}

#[derive(Clone, Copy, Debug, Default)]
pub struct NoopObserver;

impl Observer for NoopObserver {}
