//! Named instances: a generator, its parameters and a seed.

use std::fmt;

use crate::generators::{generate, GenError, Instance};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub generator: &'static str,
    pub params: Vec<usize>,
    pub seed: u64,
}

impl CorpusEntry {
    pub fn new(generator: &'static str, params: &[usize], seed: u64) -> Self {
        CorpusEntry { generator, params: params.to_vec(), seed }
    }

    pub fn build(&self) -> Result<Instance, GenError> {
        generate(self.generator, &self.params, self.seed)
    }
}

impl fmt::Display for CorpusEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.generator)?;
        for p in &self.params {
            write!(f, "-{p}")?;
        }
        if self.seed != 0 {
            write!(f, "@{}", self.seed)?;
        }
        Ok(())
    }
}

/// A handful of tiny instances, fast enough for every check.
pub fn small() -> Vec<CorpusEntry> {
    vec![
        CorpusEntry::new("cycle", &[4], 0),
        CorpusEntry::new("k4", &[], 0),
        CorpusEntry::new("prism", &[], 0),
        CorpusEntry::new("grid", &[2, 3], 0),
        CorpusEntry::new("bowtie", &[], 0),
        CorpusEntry::new("blk-1", &[], 0),
    ]
}

/// The full corpus: grids up to 8x8, cylinders, triangular grids, random
/// triangulation subgraphs up to 60 vertices, stacked triangulations, the
/// small named graphs, the blocking instances and triangulated grids with
/// triangle-cut weights.
pub fn standard() -> Vec<CorpusEntry> {
    let mut out = vec![
        CorpusEntry::new("cycle", &[4], 0),
        CorpusEntry::new("cycle", &[6], 0),
        CorpusEntry::new("cycle", &[24], 0),
        CorpusEntry::new("path", &[2], 0),
        CorpusEntry::new("path", &[20], 0),
        CorpusEntry::new("k4", &[], 0),
        CorpusEntry::new("prism", &[], 0),
        CorpusEntry::new("bowtie", &[], 0),
        CorpusEntry::new("bridged-triangles", &[], 0),
        CorpusEntry::new("blk-1", &[], 0),
        CorpusEntry::new("same-block", &[], 0),
    ];
    for (r, c) in [(2, 2), (2, 3), (3, 4), (4, 4), (4, 5), (6, 6), (8, 8)] {
        out.push(CorpusEntry::new("grid", &[r, c], 0));
    }
    for (r, c) in [(2, 4), (3, 4), (2, 6), (4, 6)] {
        out.push(CorpusEntry::new("cylinder", &[r, c], 0));
    }
    for (r, c) in [(3, 4), (4, 4), (4, 6), (6, 6)] {
        out.push(CorpusEntry::new("triangular", &[r, c], 0));
    }
    for seed in 1..=4 {
        out.push(CorpusEntry::new("random-triangulated", &[3, 4, 70], seed));
        out.push(CorpusEntry::new("random-triangulated", &[4, 4, 60], seed));
    }
    for seed in 1..=2 {
        out.push(CorpusEntry::new("random-triangulated", &[4, 5, 70], seed));
        out.push(CorpusEntry::new("random-triangulated", &[5, 6, 70], seed));
        out.push(CorpusEntry::new("random-triangulated", &[6, 10, 70], seed));
    }
    for seed in 1..=6 {
        out.push(CorpusEntry::new("triangle-cuts", &[4, 4, 70, 2 + seed as usize % 3], seed));
        out.push(CorpusEntry::new("triangle-cuts", &[5, 6, 70, 2 + seed as usize % 4], seed));
    }
    // dense instances where walks survive and get blocked, some contracting
    // sets and some ending the phase early
    let blocked: [(&[usize], u64); 8] = [
        (&[5, 6, 80, 4], 300),
        (&[5, 6, 80, 4], 410),
        (&[5, 6, 90, 4], 151),
        (&[5, 6, 90, 4], 776),
        (&[6, 6, 80, 5], 1484),
        (&[6, 6, 90, 6], 80),
        (&[4, 6, 90, 4], 212),
        (&[4, 6, 90, 4], 1440),
    ];
    for (params, seed) in blocked {
        out.push(CorpusEntry::new("triangle-cuts", params, seed));
    }
    for (n, seed) in [(8, 1), (10, 2), (12, 3), (14, 4), (20, 5), (30, 6)] {
        out.push(CorpusEntry::new("stacked", &[n], seed));
    }
    out
}
