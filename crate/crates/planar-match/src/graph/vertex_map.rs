use std::collections::{BTreeMap, BTreeSet};

use super::{PlanarGraph, VertexId};

/// Surjection from the vertices of an original graph onto the vertices of a
/// contracted graph, with preimages kept explicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    forward: BTreeMap<VertexId, VertexId>,
    preimage: BTreeMap<VertexId, BTreeSet<VertexId>>,
}

impl VertexMap {
    pub fn identity(g: &PlanarGraph) -> Self {
        VertexMap {
            forward: g.vertices().map(|v| (v, v)).collect(),
            preimage: g.vertices().map(|v| (v, BTreeSet::from([v]))).collect(),
        }
    }

    /// Number of original vertices.
    pub fn original_count(&self) -> usize {
        self.forward.len()
    }

    pub fn image(&self, original: VertexId) -> VertexId {
        self.forward[&original]
    }

    pub fn preimage(&self, v: VertexId) -> &BTreeSet<VertexId> {
        &self.preimage[&v]
    }

    pub fn preimage_size(&self, v: VertexId) -> usize {
        self.preimage.get(&v).map_or(0, BTreeSet::len)
    }

    pub fn set_preimage_size(&self, s: &BTreeSet<VertexId>) -> usize {
        s.iter().map(|&v| self.preimage_size(v)).sum()
    }

    /// Preimage of a set of current vertices.
    pub fn lift(&self, s: &BTreeSet<VertexId>) -> BTreeSet<VertexId> {
        s.iter().flat_map(|v| self.preimage[v].iter().copied()).collect()
    }

    pub fn current_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.preimage.keys().copied()
    }

    pub(crate) fn contract(&self, s: &BTreeSet<VertexId>, fresh: VertexId) -> VertexMap {
        let mut out = self.clone();
        let mut merged = BTreeSet::new();
        for v in s {
            if let Some(p) = out.preimage.remove(v) {
                merged.extend(p);
            }
        }
        for o in &merged {
            out.forward.insert(*o, fresh);
        }
        out.preimage.insert(fresh, merged);
        out
    }

    /// Checks totality and preimage consistency against `g`.
    pub fn is_consistent_with(&self, g: &PlanarGraph) -> bool {
        let current: BTreeSet<_> = self.preimage.keys().copied().collect();
        if current != g.vertex_set() {
            return false;
        }
        let total: usize = self.preimage.values().map(BTreeSet::len).sum();
        total == self.forward.len() && self.forward.iter().all(|(o, c)| self.preimage[c].contains(o))
    }
}
