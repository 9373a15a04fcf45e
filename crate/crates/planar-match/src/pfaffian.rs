//! Pfaffian orientation and exact counting of minimum-weight perfect
//! matchings.
//!
//! Two routes compute the same numbers. The polynomial route builds the
//! Tutte matrix over `Z[y]`, evaluates its determinant at `1..=D+1` and
//! interpolates. The counting engine instead evaluates at a single integer
//! `Z` larger than the total number of perfect matchings: every coefficient
//! of the Pfaffian polynomial is then a base-`Z` digit of `|Pf(B(Z))|`, and
//! one fraction-free inverse of `B(Z)` gives every edge-deleted Pfaffian by
//! a rank-two update.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{Dart, EdgeId, EdgeWeights, PlanarGraph, VertexId};
use crate::linalg::{bareiss_determinant, bareiss_inverse, exact_sqrt, IntMatrix};
use crate::polytope::FractionalPoint;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("negative weight on edge {0}")]
    NegativeWeight(EdgeId),
    #[error("coefficient is not a perfect square")]
    NotAPerfectSquare,
    #[error("graph has no perfect matching")]
    NoPerfectMatching,
    #[error("edge {0} is not in the graph")]
    UnknownEdge(EdgeId),
}

/// Orientation of every edge as `(tail, head)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PfaffianOrientation {
    pub direction: BTreeMap<EdgeId, (VertexId, VertexId)>,
}

impl PfaffianOrientation {
    /// Darts of `face` whose edge points against the traversal.
    fn against(&self, g: &PlanarGraph, darts: &[Dart]) -> usize {
        darts.iter().filter(|&&d| self.direction[&d.edge].0 != g.dart_tail(d)).count()
    }

    /// FKT condition: in each component all faces but at most one (the
    /// unbounded one) have an odd number of edges against the boundary
    /// traversal.
    pub fn satisfies_fkt(&self, g: &PlanarGraph) -> bool {
        if g.edge_ids().any(|e| !self.direction.contains_key(&e)) {
            return false;
        }
        let comps = g.components();
        let mut comp_of = HashMap::new();
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of.insert(v, i);
            }
        }
        let mut even = vec![0usize; comps.len()];
        for f in g.faces() {
            if self.against(g, &f.darts).is_multiple_of(2) {
                even[comp_of[&g.dart_tail(f.darts[0])]] += 1;
            }
        }
        even.iter().all(|&c| c <= 1)
    }
}

/// FKT orientation of a connected embedded graph.
pub fn fkt_orient(g: &PlanarGraph) -> Result<PfaffianOrientation, CountError> {
    if !g.is_connected() {
        return Err(CountError::Disconnected);
    }
    Ok(fkt_orient_components(g))
}

/// FKT orientation applied to each component separately. Spanning-tree
/// edges point from end 0 to end 1; the remaining edges are fixed face by
/// face from the leaves of the dual spanning tree, whose root in each
/// component is the longest face.
pub fn fkt_orient_components(g: &PlanarGraph) -> PfaffianOrientation {
    let tree = g.spanning_forest();
    let mut direction = BTreeMap::new();
    for &e in &tree {
        let [u, v] = g.endpoints(e);
        direction.insert(e, (u, v));
    }
    let faces = g.faces();
    let mut face_of = HashMap::new();
    for (i, f) in faces.iter().enumerate() {
        for &d in &f.darts {
            face_of.insert(d, i);
        }
    }
    let mut root_of_comp: HashMap<VertexId, usize> = HashMap::new();
    let comps = g.components();
    let mut comp_min = HashMap::new();
    for c in &comps {
        for &v in c {
            comp_min.insert(v, c[0]);
        }
    }
    for (i, f) in faces.iter().enumerate() {
        let key = comp_min[&g.dart_tail(f.darts[0])];
        let better = match root_of_comp.get(&key) {
            None => true,
            Some(&r) => faces[r].len() < f.len(),
        };
        if better {
            root_of_comp.insert(key, i);
        }
    }
    let roots: BTreeSet<usize> = root_of_comp.values().copied().collect();
    let mut open = vec![0usize; faces.len()];
    for e in g.edge_ids().filter(|e| !tree.contains(e)) {
        open[face_of[&Dart::new(e, 0)]] += 1;
        open[face_of[&Dart::new(e, 1)]] += 1;
    }
    let mut ready: BTreeSet<usize> = (0..faces.len()).filter(|i| open[*i] == 1 && !roots.contains(i)).collect();
    while let Some(f) = ready.pop_first() {
        let darts = &faces[f].darts;
        let free = *darts.iter().find(|d| !direction.contains_key(&d.edge)).unwrap();
        let against =
            darts.iter().filter(|d| direction.get(&d.edge).is_some_and(|dir| dir.0 != g.dart_tail(**d))).count();
        let (t, h) = (g.dart_tail(free), g.dart_head(free));
        direction.insert(free.edge, if against % 2 == 0 { (h, t) } else { (t, h) });
        open[f] = 0;
        let other = face_of[&free.twin()];
        open[other] -= 1;
        if open[other] == 1 && !roots.contains(&other) {
            ready.insert(other);
        }
    }
    debug_assert_eq!(direction.len(), g.edge_count());
    PfaffianOrientation { direction }
}

/// Polynomial with arbitrary-precision integer coefficients; zero
/// coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: BTreeMap<u64, BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(coef: BigInt, degree: u64) -> Self {
        let mut p = Self::zero();
        p.add_term(degree, coef);
        p
    }

    pub fn add_term(&mut self, degree: u64, coef: BigInt) {
        let entry = self.coeffs.entry(degree).or_insert_with(BigInt::zero);
        *entry += coef;
        if entry.is_zero() {
            self.coeffs.remove(&degree);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn lowest_degree(&self) -> Option<u64> {
        self.coeffs.keys().next().copied()
    }

    pub fn coeff(&self, degree: u64) -> BigInt {
        self.coeffs.get(&degree).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.coeffs.iter().map(|(&d, c)| (d, c))
    }

    pub fn eval(&self, y: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let mut last = self.degree().unwrap_or(0);
        for (&d, c) in self.coeffs.iter().rev() {
            acc *= y.pow((last - d) as u32);
            acc += c;
            last = d;
        }
        acc * y.pow(last as u32)
    }
}

/// Dense square matrix of polynomials with vertex labels for its rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TutteMatrix {
    pub vertices: Vec<VertexId>,
    pub entries: Vec<Vec<IntPolynomial>>,
}

impl TutteMatrix {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_skew_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let a = &self.entries[i][j];
                let b = &self.entries[j][i];
                a.coeffs.len() == b.coeffs.len() && a.coeffs.iter().all(|(d, c)| b.coeffs.get(d) == Some(&-c))
            })
        })
    }

    pub fn eval(&self, y: &BigInt) -> IntMatrix {
        self.entries.iter().map(|row| row.iter().map(|p| p.eval(y)).collect()).collect()
    }

    /// Upper bound on the degree of the determinant: sum of row degrees.
    pub fn degree_bound(&self) -> u64 {
        self.entries.iter().map(|row| row.iter().filter_map(IntPolynomial::degree).max().unwrap_or(0)).sum()
    }
}

fn weight_of(w: &EdgeWeights, e: EdgeId) -> u64 {
    w.get(&e).copied().unwrap_or(0)
}

/// Signed weights are rejected here; [`EdgeWeights`] is unsigned, so this
/// form exists for callers holding possibly negative integers.
pub fn checked_weights(w: &BTreeMap<EdgeId, i64>) -> Result<EdgeWeights, CountError> {
    w.iter().map(|(&e, &x)| if x < 0 { Err(CountError::NegativeWeight(e)) } else { Ok((e, x as u64)) }).collect()
}

/// Tutte matrix with entry `(tail, head)` gaining `+y^w` and `(head, tail)`
/// gaining `-y^w` for every edge; missing weights count as 0.
pub fn build_tutte_matrix(g: &PlanarGraph, o: &PfaffianOrientation, w: &EdgeWeights) -> TutteMatrix {
    let vertices: Vec<VertexId> = g.vertices().collect();
    let index: HashMap<VertexId, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = vertices.len();
    let mut entries = vec![vec![IntPolynomial::zero(); n]; n];
    for e in g.edge_ids() {
        let (t, h) = o.direction[&e];
        let (i, j) = (index[&t], index[&h]);
        let d = weight_of(w, e);
        entries[i][j].add_term(d, BigInt::one());
        entries[j][i].add_term(d, -BigInt::one());
    }
    TutteMatrix { vertices, entries }
}

/// Determinant polynomial by evaluation at `1..=D+1` (fraction-free
/// elimination per point, points in parallel) and Newton interpolation.
pub fn poly_determinant(b: &TutteMatrix) -> IntPolynomial {
    let bound = b.degree_bound();
    let points: Vec<BigInt> = (1..=bound + 1).map(BigInt::from).collect();
    let values: Vec<BigInt> = points.par_iter().map(|y| bareiss_determinant(b.eval(y))).collect();
    interpolate(&points, &values)
}

fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> IntPolynomial {
    let n = xs.len();
    let mut coef: Vec<BigRational> = ys.iter().map(|y| BigRational::from_integer(y.clone())).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &coef[i] - &coef[i - 1];
            let den = BigRational::from_integer(&xs[i] - &xs[i - level]);
            coef[i] = num / den;
        }
    }
    // Horner expansion of the Newton form into monomial coefficients.
    let mut poly: Vec<BigRational> = vec![BigRational::zero(); n];
    for k in (0..n).rev() {
        let mut next = vec![BigRational::zero(); n];
        for d in 0..n {
            if poly[d].is_zero() {
                continue;
            }
            if d + 1 < n {
                next[d + 1] += &poly[d];
            }
            next[d] -= &poly[d] * BigRational::from_integer(xs[k].clone());
        }
        next[0] += &coef[k];
        poly = next;
    }
    let mut out = IntPolynomial::zero();
    for (d, c) in poly.into_iter().enumerate() {
        assert!(c.is_integer(), "interpolated determinant has a non-integer coefficient");
        out.add_term(d as u64, c.to_integer());
    }
    out
}

/// Counts of minimum-weight perfect matchings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingCounts {
    /// Lowest degree of `det(B)`, twice the minimum matching weight.
    pub det_degree: Option<u64>,
    /// Minimum weight of a perfect matching.
    pub min_weight: Option<u64>,
    /// Number of minimum-weight perfect matchings.
    pub total: BigUint,
    /// Number of minimum-weight perfect matchings using each edge (empty
    /// when only totals were requested).
    pub per_edge: BTreeMap<EdgeId, BigUint>,
}

impl MatchingCounts {
    fn none(g: &PlanarGraph, per_edge: bool) -> Self {
        MatchingCounts {
            det_degree: None,
            min_weight: None,
            total: BigUint::zero(),
            per_edge: if per_edge { g.edge_ids().map(|e| (e, BigUint::zero())).collect() } else { BTreeMap::new() },
        }
    }

    pub fn has_matching(&self) -> bool {
        !self.total.is_zero()
    }
}

fn to_biguint(v: BigInt) -> BigUint {
    v.to_biguint().expect("count is non-negative")
}

/// Minimum weight and count read off the lowest coefficient of the
/// interpolated determinant polynomial.
pub fn count_min_weight_by_interpolation(g: &PlanarGraph, w: &EdgeWeights) -> Result<MatchingCounts, CountError> {
    let o = fkt_orient_components(g);
    let det = poly_determinant(&build_tutte_matrix(g, &o, w));
    let Some(d) = det.lowest_degree() else {
        return Ok(MatchingCounts::none(g, false));
    };
    let m = exact_sqrt(&det.coeff(d)).ok_or(CountError::NotAPerfectSquare)?;
    Ok(MatchingCounts { det_degree: Some(d), min_weight: Some(d / 2), total: to_biguint(m), per_edge: BTreeMap::new() })
}

/// `#G^e_w` through the determinant of the matrix with `e`'s monomial
/// removed.
pub fn count_per_edge_by_interpolation(g: &PlanarGraph, w: &EdgeWeights, e: EdgeId) -> Result<BigUint, CountError> {
    let [_, _] = g.try_endpoints(e).ok_or(CountError::UnknownEdge(e))?;
    let base = count_min_weight_by_interpolation(g, w)?;
    let Some(d) = base.det_degree else {
        return Ok(BigUint::zero());
    };
    let o = fkt_orient_components(g);
    let mut b = build_tutte_matrix(g, &o, w);
    let (t, h) = o.direction[&e];
    let i = b.vertices.binary_search(&t).unwrap();
    let j = b.vertices.binary_search(&h).unwrap();
    let deg = weight_of(w, e);
    b.entries[i][j].add_term(deg, -BigInt::one());
    b.entries[j][i].add_term(deg, BigInt::one());
    let det = poly_determinant(&b);
    let rest = exact_sqrt(&det.coeff(d)).ok_or(CountError::NotAPerfectSquare)?;
    Ok(base.total - to_biguint(rest))
}

/// Weights shifted by vertex potentials and divided by their gcd. Every
/// perfect matching changes weight by the same affine map, so the set of
/// minimum-weight matchings is unchanged.
struct NormalizedWeights {
    reduced: BTreeMap<EdgeId, u64>,
    scale: u64,
    offset: u64,
}

fn normalize(g: &PlanarGraph, w: &EdgeWeights) -> NormalizedWeights {
    let mut pot = BTreeMap::new();
    for v in g.vertices() {
        let p = g.incident(v).map(|e| weight_of(w, e)).min().unwrap_or(0) / 2;
        pot.insert(v, p);
    }
    let mut reduced = BTreeMap::new();
    let mut gcd = 0u64;
    for (e, u, v) in g.edges() {
        let r = weight_of(w, e) - pot[&u] - pot[&v];
        gcd = gcd.gcd(&r);
        reduced.insert(e, r);
    }
    let scale = gcd.max(1);
    for r in reduced.values_mut() {
        *r /= scale;
    }
    NormalizedWeights { reduced, scale, offset: pot.values().sum() }
}

struct Kronecker {
    vertices: Vec<VertexId>,
    orientation: PfaffianOrientation,
    z: BigInt,
    weights: NormalizedWeights,
    matrix: IntMatrix,
}

impl Kronecker {
    /// `None` when there is no perfect matching.
    fn new(g: &PlanarGraph, w: &EdgeWeights) -> Result<Option<Self>, CountError> {
        let vertices: Vec<VertexId> = g.vertices().collect();
        let n = vertices.len();
        if n % 2 == 1 {
            return Ok(None);
        }
        let orientation = fkt_orient_components(g);
        let index: HashMap<VertexId, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let build = |power: &dyn Fn(EdgeId) -> BigInt| {
            let mut m = vec![vec![BigInt::zero(); n]; n];
            for e in g.edge_ids() {
                let (t, h) = orientation.direction[&e];
                let (i, j) = (index[&t], index[&h]);
                let p = power(e);
                m[i][j] += &p;
                m[j][i] -= &p;
            }
            m
        };
        let det1 = bareiss_determinant(build(&|_| BigInt::one()));
        if det1.is_zero() {
            return Ok(None);
        }
        let total = exact_sqrt(&det1.abs()).ok_or(CountError::NotAPerfectSquare)?;
        let z = total + 1u32;
        let weights = normalize(g, w);
        let mut powers: HashMap<u64, BigInt> = HashMap::new();
        for &r in weights.reduced.values() {
            powers.entry(r).or_insert_with(|| z.pow(r as u32));
        }
        let matrix = build(&|e| powers[&weights.reduced[&e]].clone());
        Ok(Some(Kronecker { vertices, orientation, z, weights, matrix }))
    }

    /// Splits `|Pf|` into (number of trailing zero digits, lowest nonzero
    /// digit) in base `z`.
    fn low_digit(&self, pf: &BigInt) -> (u64, BigInt) {
        let mut q = pf.clone();
        let mut k = 0;
        loop {
            let (next, r) = q.div_rem(&self.z);
            if !r.is_zero() {
                return (k, r);
            }
            q = next;
            k += 1;
        }
    }

    fn counts(&self, digits: u64, m: BigInt, per_edge: BTreeMap<EdgeId, BigUint>) -> MatchingCounts {
        let min_weight = self.weights.scale * digits + self.weights.offset;
        MatchingCounts {
            det_degree: Some(2 * min_weight),
            min_weight: Some(min_weight),
            total: to_biguint(m),
            per_edge,
        }
    }
}

/// Minimum matching weight and number of minimum-weight perfect matchings.
pub fn count_min_weight(g: &PlanarGraph, w: &EdgeWeights) -> Result<MatchingCounts, CountError> {
    if g.vertex_count() == 0 {
        return Ok(MatchingCounts {
            det_degree: Some(0),
            min_weight: Some(0),
            total: BigUint::one(),
            per_edge: BTreeMap::new(),
        });
    }
    let Some(k) = Kronecker::new(g, w)? else {
        return Ok(MatchingCounts::none(g, false));
    };
    let det = bareiss_determinant(k.matrix.clone());
    let pf = exact_sqrt(&det.abs()).ok_or(CountError::NotAPerfectSquare)?;
    let (digits, m) = k.low_digit(&pf);
    Ok(k.counts(digits, m, BTreeMap::new()))
}

/// Totals together with `#G^e_w` for every edge.
pub fn count_matchings(g: &PlanarGraph, w: &EdgeWeights) -> Result<MatchingCounts, CountError> {
    if g.vertex_count() == 0 {
        return Ok(MatchingCounts {
            det_degree: Some(0),
            min_weight: Some(0),
            total: BigUint::one(),
            per_edge: BTreeMap::new(),
        });
    }
    let Some(k) = Kronecker::new(g, w)? else {
        return Ok(MatchingCounts::none(g, true));
    };
    let (d, x) = bareiss_inverse(&k.matrix).expect("B(Z) is invertible when a perfect matching exists");
    let pf = exact_sqrt(&d.abs()).ok_or(CountError::NotAPerfectSquare)?;
    let (digits, m) = k.low_digit(&pf);
    let shift = k.z.pow(digits as u32);
    let mut per_edge = BTreeMap::new();
    for e in k.orientation.direction.keys() {
        let (t, h) = k.orientation.direction[e];
        let i = k.vertices.binary_search(&t).unwrap();
        let j = k.vertices.binary_search(&h).unwrap();
        let power = k.z.pow(k.weights.reduced[e] as u32);
        let num = (&d + power * &x[i][j]).abs();
        let (pf_e, rem) = num.div_rem(&pf);
        if !rem.is_zero() {
            return Err(CountError::NotAPerfectSquare);
        }
        let avoiding = (pf_e / &shift).mod_floor(&k.z);
        per_edge.insert(*e, to_biguint(&m - avoiding));
    }
    Ok(k.counts(digits, m, per_edge))
}

/// `#G^e_w` for a single edge.
pub fn count_per_edge(g: &PlanarGraph, w: &EdgeWeights, e: EdgeId) -> Result<BigUint, CountError> {
    if !g.has_edge(e) {
        return Err(CountError::UnknownEdge(e));
    }
    Ok(count_matchings(g, w)?.per_edge[&e].clone())
}

/// Average of the minimum-weight perfect matchings: `x_e = #G^e_w / #G_w`.
pub fn avg_point(g: &PlanarGraph, w: &EdgeWeights) -> Result<FractionalPoint, CountError> {
    avg_point_with_counts(g, w).map(|(x, _)| x)
}

pub fn avg_point_with_counts(
    g: &PlanarGraph,
    w: &EdgeWeights,
) -> Result<(FractionalPoint, MatchingCounts), CountError> {
    let counts = count_matchings(g, w)?;
    if !counts.has_matching() {
        return Err(CountError::NoPerfectMatching);
    }
    let m = BigInt::from(counts.total.clone());
    let x = counts.per_edge.iter().map(|(&e, c)| (e, BigRational::new(BigInt::from(c.clone()), m.clone()))).collect();
    Ok((FractionalPoint::from_map(x), counts))
}

pub fn has_perfect_matching(g: &PlanarGraph) -> bool {
    count_min_weight(g, &EdgeWeights::new()).map(|c| c.has_matching()).unwrap_or(false)
}

/// Number of bits of `|Pf(B(Z))|`, useful for sizing diagnostics.
pub fn kronecker_bits(g: &PlanarGraph, w: &EdgeWeights) -> Option<u64> {
    let k = Kronecker::new(g, w).ok()??;
    let max: u64 = k.weights.reduced.values().copied().sum::<u64>().max(1);
    Some(max * k.z.bits() + k.z.bits())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn orientations_satisfy_fkt() {
        for g in [cycle(4), k4(), prism(), grid(3, 4), bowtie(), path(2)] {
            let o = fkt_orient(&g).unwrap();
            assert!(o.satisfies_fkt(&g));
        }
        let two = PlanarGraph::from_drawing(&[(0.0, 0.0), (1.0, 0.0)], &[]).unwrap();
        assert_eq!(fkt_orient(&two), Err(CountError::Disconnected));
    }

    #[test]
    fn tutte_matrix_entries() {
        let g = path(2);
        let o = fkt_orient(&g).unwrap();
        let b = build_tutte_matrix(&g, &o, &EdgeWeights::new());
        assert!(b.is_skew_symmetric());
        assert_eq!(poly_determinant(&b), IntPolynomial::monomial(BigInt::one(), 0));

        // two parallel edges with weights 0 and 2, same orientation
        let g = PlanarGraph::build(
            [(EdgeId(0), VertexId(0), VertexId(1)), (EdgeId(1), VertexId(0), VertexId(1))],
            [
                (VertexId(0), vec![Dart::new(EdgeId(0), 0), Dart::new(EdgeId(1), 0)]),
                (VertexId(1), vec![Dart::new(EdgeId(1), 1), Dart::new(EdgeId(0), 1)]),
            ],
        )
        .unwrap();
        let o = PfaffianOrientation {
            direction: [(EdgeId(0), (VertexId(0), VertexId(1))), (EdgeId(1), (VertexId(0), VertexId(1)))].into(),
        };
        let b = build_tutte_matrix(&g, &o, &weights(&[(0, 0), (1, 2)]));
        let mut want = IntPolynomial::monomial(BigInt::one(), 0);
        want.add_term(2, BigInt::one());
        assert_eq!(b.entries[0][1], want);
    }

    #[test]
    fn determinants_are_squared_counts() {
        let zero = EdgeWeights::new();
        let det = |g: &PlanarGraph| poly_determinant(&build_tutte_matrix(g, &fkt_orient_components(g), &zero));
        assert_eq!(det(&cycle(4)), IntPolynomial::monomial(BigInt::from(4), 0));
        assert_eq!(det(&k4()), IntPolynomial::monomial(BigInt::from(9), 0));
        assert!(det(&path(3)).is_zero());
    }

    #[test]
    fn minimum_weight_counts() {
        let zero = EdgeWeights::new();
        let c = count_min_weight(&cycle(4), &zero).unwrap();
        assert_eq!((c.min_weight, c.total.clone()), (Some(0), big(2)));
        let c = count_min_weight(&k4(), &zero).unwrap();
        assert_eq!((c.det_degree, c.total.clone()), (Some(0), big(3)));
        let w = weights(&[(3, 1)]);
        let c = count_matchings(&cycle(4), &w).unwrap();
        assert_eq!((c.min_weight, c.total.clone()), (Some(0), big(1)));
        assert_eq!(c.per_edge[&EdgeId(3)], big(0));
        assert_eq!(count_per_edge(&cycle(4), &w, EdgeId(3)).unwrap(), big(0));
        assert_eq!(count_per_edge_by_interpolation(&cycle(4), &w, EdgeId(3)).unwrap(), big(0));
        for e in 0..4 {
            assert_eq!(count_per_edge(&cycle(4), &zero, EdgeId(e)).unwrap(), big(1));
        }
        for e in 0..6 {
            assert_eq!(count_per_edge(&k4(), &zero, EdgeId(e)).unwrap(), big(1));
        }
    }

    #[test]
    fn both_routes_agree() {
        let g = grid(3, 4);
        let w: EdgeWeights = g.edge_ids().map(|e| (e, (e.0 as u64 * 7) % 5)).collect();
        let fast = count_matchings(&g, &w).unwrap();
        let slow = count_min_weight_by_interpolation(&g, &w).unwrap();
        assert_eq!(fast.det_degree, slow.det_degree);
        assert_eq!(fast.total, slow.total);
        for e in g.edge_ids() {
            assert_eq!(fast.per_edge[&e], count_per_edge_by_interpolation(&g, &w, e).unwrap());
        }
    }

    #[test]
    fn average_points() {
        let half = BigRational::new(1.into(), 2.into());
        let x = avg_point(&cycle(4), &EdgeWeights::new()).unwrap();
        assert!((0..4).all(|e| x.get(EdgeId(e)) == half));
        let x = avg_point(&k4(), &EdgeWeights::new()).unwrap();
        assert!((0..6).all(|e| x.get(EdgeId(e)) == BigRational::new(1.into(), 3.into())));
        let (x, c) = avg_point_with_counts(&prism(), &EdgeWeights::new()).unwrap();
        assert_eq!(c.total, big(4));
        for e in 0..6 {
            assert_eq!(x.get(EdgeId(e)), BigRational::new(1.into(), 4.into()));
        }
        for e in 6..9 {
            assert_eq!(x.get(EdgeId(e)), half);
        }
        assert_eq!(avg_point(&path(3), &EdgeWeights::new()), Err(CountError::NoPerfectMatching));
    }

    #[test]
    fn decision() {
        assert!(has_perfect_matching(&path(2)));
        assert!(has_perfect_matching(&grid(3, 4)));
        let two = PlanarGraph::from_drawing(&[(0.0, 0.0), (1.0, 0.0)], &[]).unwrap();
        assert!(!has_perfect_matching(&two));
    }

    #[test]
    fn weights_shift_and_scale() {
        // every weight even and offset: the normalisation must undo both
        let g = cycle(6);
        let w = weights(&[(0, 10), (1, 14), (2, 10), (3, 14), (4, 10), (5, 14)]);
        let c = count_matchings(&g, &w).unwrap();
        assert_eq!((c.min_weight, c.total.clone()), (Some(30), big(1)));
        assert_eq!(c.per_edge[&EdgeId(0)], big(1));
        assert_eq!(c.per_edge[&EdgeId(1)], big(0));
        assert_eq!(checked_weights(&[(EdgeId(0), -1)].into()), Err(CountError::NegativeWeight(EdgeId(0))));
    }
}
