//! Seeds, mutations, automorphisms, and their action on torus points.
//!
//! A seed is a pair (I, ε): a finite ordered label set I and a skew-symmetric
//! integer exchange matrix ε indexed by it.  Arrows of the underlying quiver
//! point j → i exactly when ε_{ij} > 0.  Mutations μ_k rewrite ε locally and
//! act on A-, X-, and D-torus coordinates by the standard birational exchange
//! relations; automorphisms relabel vertices and conjugate ε.
//!
//! Quantum counterparts of the coordinates (q-commuting X/B variables and
//! their logarithmic symbols) are never represented as operators here; the
//! monomial-part bookkeeping that replaces them lives in [`crate::kernel`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

/// A vertex name drawn from the wiring-diagram vocabulary.
///
/// Chambers are named by subsets of wire names, crossings by the unordered
/// pair of wires that meet, and segments by (wire, running position along the
/// wire, starting at 1).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum VertexLabel {
    Chamber(BTreeSet<u8>),
    Crossing(u8, u8),
    Segment(u8, u32),
}

impl VertexLabel {
    /// Chamber label from any iterator of wire names.
    pub fn chamber<I: IntoIterator<Item = u8>>(wires: I) -> Self {
        VertexLabel::Chamber(wires.into_iter().collect())
    }

    /// Crossing label; the pair is stored sorted.
    pub fn crossing(a: u8, b: u8) -> Self {
        VertexLabel::Crossing(a.min(b), a.max(b))
    }

    /// Segment label for wire `w`, position `p` (1-based).
    pub fn segment(w: u8, p: u32) -> Self {
        VertexLabel::Segment(w, p)
    }

    /// Canonical sort key: chambers by (size, lexicographic subset), then
    /// crossings lexicographic, then segments by (wire, position).
    fn sort_key(&self) -> (u8, usize, Vec<u8>, u32) {
        match self {
            VertexLabel::Chamber(s) => (0, s.len(), s.iter().copied().collect(), 0),
            VertexLabel::Crossing(a, b) => (1, 0, vec![*a, *b], 0),
            VertexLabel::Segment(w, p) => (2, 0, vec![*w], *p),
        }
    }
}

impl PartialOrd for VertexLabel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for VertexLabel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Chamber(s) => {
                let inner: Vec<String> = s.iter().map(|w| w.to_string()).collect();
                write!(f, "C:{{{}}}", inner.join(","))
            }
            VertexLabel::Crossing(a, b) => write!(f, "X:{}{}", a, b),
            VertexLabel::Segment(w, p) => write!(f, "S:{}_{}", w, p),
        }
    }
}

impl std::str::FromStr for VertexLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadLabel(s.to_string());
        if let Some(body) = s.strip_prefix("C:") {
            let body = body.strip_prefix('{').ok_or_else(bad)?;
            let body = body.strip_suffix('}').ok_or_else(bad)?;
            let mut wires = BTreeSet::new();
            if !body.is_empty() {
                for part in body.split(',') {
                    wires.insert(part.trim().parse::<u8>().map_err(|_| bad())?);
                }
            }
            Ok(VertexLabel::Chamber(wires))
        } else if let Some(body) = s.strip_prefix("X:") {
            let digits: Vec<u8> = body
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(bad))
                .collect::<Result<_>>()?;
            if digits.len() != 2 || digits[0] >= digits[1] {
                return Err(bad());
            }
            Ok(VertexLabel::Crossing(digits[0], digits[1]))
        } else if let Some(body) = s.strip_prefix("S:") {
            let (w, p) = body.split_once('_').ok_or_else(bad)?;
            Ok(VertexLabel::Segment(
                w.parse().map_err(|_| bad())?,
                p.parse().map_err(|_| bad())?,
            ))
        } else {
            Err(bad())
        }
    }
}

/// A finite permutation of vertex labels, stored sparsely: labels absent from
/// the map are fixed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Permutation {
    map: BTreeMap<VertexLabel, VertexLabel>,
}

impl Permutation {
    /// Identity permutation.
    pub fn identity() -> Self {
        Permutation::default()
    }

    /// Transposition of two labels.
    pub fn swap(a: VertexLabel, b: VertexLabel) -> Self {
        let mut map = BTreeMap::new();
        if a != b {
            map.insert(a.clone(), b.clone());
            map.insert(b, a);
        }
        Permutation { map }
    }

    /// Build from explicit (source, image) pairs; entries mapping a label to
    /// itself are dropped.  The moved sources and moved images must coincide
    /// as sets.
    pub fn from_pairs<I: IntoIterator<Item = (VertexLabel, VertexLabel)>>(
        pairs: I,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (src, dst) in pairs {
            if src == dst {
                continue;
            }
            if map.insert(src, dst).is_some() {
                return Err(Error::NotABijection);
            }
        }
        let sources: BTreeSet<_> = map.keys().cloned().collect();
        let images: BTreeSet<_> = map.values().cloned().collect();
        if sources != images {
            return Err(Error::NotABijection);
        }
        Ok(Permutation { map })
    }

    /// Image of a label.
    pub fn apply(&self, l: &VertexLabel) -> VertexLabel {
        self.map.get(l).cloned().unwrap_or_else(|| l.clone())
    }

    /// Preimage of a label.
    pub fn apply_inverse(&self, l: &VertexLabel) -> VertexLabel {
        self.map
            .iter()
            .find(|(_, v)| *v == l)
            .map(|(k, _)| k.clone())
            .unwrap_or_else(|| l.clone())
    }

    /// Inverse permutation.
    pub fn inverse(&self) -> Self {
        Permutation {
            map: self.map.iter().map(|(k, v)| (v.clone(), k.clone())).collect(),
        }
    }

    /// The permutation "`self` after `first`": first `first`, then `self`.
    pub fn after(&self, first: &Permutation) -> Self {
        let mut map = BTreeMap::new();
        let moved: BTreeSet<_> = first.map.keys().chain(self.map.keys()).cloned().collect();
        for l in moved {
            let img = self.apply(&first.apply(&l));
            if img != l {
                map.insert(l, img);
            }
        }
        Permutation { map }
    }

    /// True when no label moves.
    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    /// Labels moved by the permutation.
    pub fn moved_labels(&self) -> impl Iterator<Item = &VertexLabel> {
        self.map.keys()
    }

    /// Decompose into transpositions, applied left-to-right, choosing at each
    /// stage the smallest still-moved label `x` and emitting (x, preimage of
    /// x).  For a product of disjoint swaps this lists the swaps sorted by
    /// their smaller member.
    pub fn transpositions(&self) -> Vec<(VertexLabel, VertexLabel)> {
        let mut rest = self.clone();
        let mut out = Vec::new();
        while let Some(x) = rest.map.keys().next().cloned() {
            let pre = rest.apply_inverse(&x);
            out.push((x.clone(), pre.clone()));
            // Residual: self = residual after (x pre), so residual = self ∘ (x pre).
            rest = rest.after(&Permutation::swap(x, pre));
        }
        out
    }
}

/// One step of a cluster transformation.
#[derive(Debug, Clone, PartialEq)]
pub enum TransformationStep {
    Mutation(VertexLabel),
    Automorphism(Permutation),
}

/// A composition of mutations and automorphisms, applied left-to-right in
/// storage order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ClusterTransformation {
    pub steps: Vec<TransformationStep>,
}

impl ClusterTransformation {
    pub fn new(steps: Vec<TransformationStep>) -> Self {
        ClusterTransformation { steps }
    }

    /// Concatenate: `self` then `next`.
    pub fn then(mut self, next: &ClusterTransformation) -> Self {
        self.steps.extend(next.steps.iter().cloned());
        self
    }

    /// The inverse transformation: steps reversed, automorphisms inverted
    /// (mutations are involutions).
    pub fn inverse(&self) -> Self {
        ClusterTransformation {
            steps: self
                .steps
                .iter()
                .rev()
                .map(|s| match s {
                    TransformationStep::Mutation(k) => TransformationStep::Mutation(k.clone()),
                    TransformationStep::Automorphism(p) => {
                        TransformationStep::Automorphism(p.inverse())
                    }
                })
                .collect(),
        }
    }

    /// Mutation targets in order, ignoring automorphisms.
    pub fn mutation_targets(&self) -> Vec<&VertexLabel> {
        self.steps
            .iter()
            .filter_map(|s| match s {
                TransformationStep::Mutation(k) => Some(k),
                TransformationStep::Automorphism(_) => None,
            })
            .collect()
    }

    /// True when the transformation is mutations followed by at most one
    /// trailing automorphism.
    pub fn is_normalized(&self) -> bool {
        let n = self.steps.len();
        self.steps.iter().enumerate().all(|(i, s)| match s {
            TransformationStep::Mutation(_) => true,
            TransformationStep::Automorphism(_) => i + 1 == n,
        })
    }

    /// Trailing permutation of a normalized transformation (identity if the
    /// last step is a mutation).
    pub fn trailing_permutation(&self) -> Permutation {
        match self.steps.last() {
            Some(TransformationStep::Automorphism(p)) => p.clone(),
            _ => Permutation::identity(),
        }
    }
}

/// A labeled quiver: ordered vertex labels and the skew-symmetric integer
/// exchange matrix ε indexed by them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seed {
    labels: Vec<VertexLabel>,
    epsilon: Vec<Vec<i64>>,
}

/// Validate and build a seed.  The given label order is preserved.
pub fn make_seed(labels: Vec<VertexLabel>, epsilon: Vec<Vec<i64>>) -> Result<Seed> {
    let n = labels.len();
    let mut seen = BTreeSet::new();
    for l in &labels {
        if !seen.insert(l.clone()) {
            return Err(Error::DuplicateLabel(l.to_string()));
        }
    }
    if epsilon.len() != n || epsilon.iter().any(|row| row.len() != n) {
        return Err(Error::DimensionMismatch {
            rows: epsilon.len(),
            cols: epsilon.first().map_or(0, |r| r.len()),
            labels: n,
        });
    }
    for i in 0..n {
        for j in 0..n {
            if epsilon[i][j] != -epsilon[j][i] {
                return Err(Error::NonSkewSymmetric { row: i, col: j });
            }
        }
    }
    Ok(Seed { labels, epsilon })
}

impl Seed {
    /// Vertex labels in seed order.
    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Exchange matrix rows in label order.
    pub fn epsilon(&self) -> &[Vec<i64>] {
        &self.epsilon
    }

    /// ε entry by indices.
    pub fn eps(&self, i: usize, j: usize) -> i64 {
        self.epsilon[i][j]
    }

    /// Index of a label.
    pub fn index_of(&self, l: &VertexLabel) -> Result<usize> {
        self.labels
            .iter()
            .position(|x| x == l)
            .ok_or_else(|| Error::UnknownVertex(l.to_string()))
    }

    /// Directed arrows (source, target, multiplicity): j → i with
    /// multiplicity ε_{ij} for every positive entry.
    pub fn arrows(&self) -> Vec<(VertexLabel, VertexLabel, i64)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in 0..self.len() {
                if self.epsilon[i][j] > 0 {
                    out.push((
                        self.labels[j].clone(),
                        self.labels[i].clone(),
                        self.epsilon[i][j],
                    ));
                }
            }
        }
        out
    }

    /// Exchange-matrix mutation at vertex `k`:
    /// ε'_{ij} = −ε_{ij} if i = k or j = k, else
    /// ε'_{ij} = ε_{ij} + (|ε_{ik}| ε_{kj} + ε_{ik} |ε_{kj}|) / 2.
    pub fn mutate_epsilon(&self, k: &VertexLabel) -> Result<Seed> {
        let ki = self.index_of(k)?;
        let n = self.len();
        let mut out = self.epsilon.clone();
        for i in 0..n {
            for j in 0..n {
                if i == ki || j == ki {
                    out[i][j] = -self.epsilon[i][j];
                } else {
                    let t = self.epsilon[i][ki]
                        .checked_abs()
                        .and_then(|a| a.checked_mul(self.epsilon[ki][j]))
                        .and_then(|p| {
                            self.epsilon[ki][j]
                                .checked_abs()
                                .and_then(|b| self.epsilon[i][ki].checked_mul(b))
                                .and_then(|q| p.checked_add(q))
                        })
                        .ok_or(Error::Overflow)?;
                    out[i][j] = self.epsilon[i][j].checked_add(t / 2).ok_or(Error::Overflow)?;
                }
            }
        }
        Ok(Seed {
            labels: self.labels.clone(),
            epsilon: out,
        })
    }

    /// Automorphism action on the exchange matrix: ε'_{α(i)α(j)} = ε_{ij},
    /// keeping the stored label order.
    pub fn apply_automorphism(&self, p: &Permutation) -> Result<Seed> {
        for l in p.moved_labels() {
            self.index_of(l)?;
        }
        let n = self.len();
        let mut out = vec![vec![0i64; n]; n];
        for i in 0..n {
            let ai = self.index_of(&p.apply(&self.labels[i]))?;
            for j in 0..n {
                let aj = self.index_of(&p.apply(&self.labels[j]))?;
                out[ai][aj] = self.epsilon[i][j];
            }
        }
        Ok(Seed {
            labels: self.labels.clone(),
            epsilon: out,
        })
    }
}

/// Positive coordinates of a point on the A-, X-, and D-tori, indexed
/// parallel to a seed's label order.  The D-torus point is the (X, B) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusPoint {
    pub a: Vec<f64>,
    pub x: Vec<f64>,
    pub b: Vec<f64>,
}

impl TorusPoint {
    pub fn new(a: Vec<f64>, x: Vec<f64>, b: Vec<f64>) -> Self {
        TorusPoint { a, x, b }
    }

    /// All-ones point of the given dimension.
    pub fn ones(n: usize) -> Self {
        TorusPoint {
            a: vec![1.0; n],
            x: vec![1.0; n],
            b: vec![1.0; n],
        }
    }
}

fn positive_part(v: i64) -> i64 {
    v.max(0)
}

/// Forward action of a single step on the seed and a torus point.
///
/// For a mutation μ_k the new coordinates are
///   A'_k = A_k^{-1} (Π_{ε_{kj}>0} A_j^{ε_{kj}} + Π_{ε_{kj}<0} A_j^{-ε_{kj}}),
///   X'_k = X_k^{-1},  X'_i = X_i (1 + X_k^{-sgn ε_{ik}})^{-ε_{ik}},
///   B'_k = (X_k Π_{ε_{kj}>0} B_j^{ε_{kj}} + Π_{ε_{kj}<0} B_j^{-ε_{kj}})
///          / (B_k (1 + X_k)),
/// with all other coordinates unchanged (sgn 0 = +1).  An automorphism α
/// relabels: A'_{α(i)} = A_i and likewise for X, B.
pub fn apply_step(
    seed: &Seed,
    step: &TransformationStep,
    point: &TorusPoint,
) -> Result<(Seed, TorusPoint)> {
    match step {
        TransformationStep::Mutation(k) => {
            let ki = seed.index_of(k)?;
            let n = seed.len();
            let new_seed = seed.mutate_epsilon(k)?;
            let mut a = point.a.clone();
            let mut x = point.x.clone();
            let mut b = point.b.clone();

            let mut pos = 1.0;
            let mut neg = 1.0;
            for j in 0..n {
                let e = seed.eps(ki, j);
                if e > 0 {
                    pos *= point.a[j].powi(e as i32);
                } else if e < 0 {
                    neg *= point.a[j].powi(-e as i32);
                }
            }
            a[ki] = (pos + neg) / point.a[ki];

            let mut bpos = point.x[ki];
            let mut bneg = 1.0;
            for j in 0..n {
                let e = seed.eps(ki, j);
                if e > 0 {
                    bpos *= point.b[j].powi(e as i32);
                } else if e < 0 {
                    bneg *= point.b[j].powi(-e as i32);
                }
            }
            b[ki] = (bpos + bneg) / (point.b[ki] * (1.0 + point.x[ki]));

            for i in 0..n {
                if i == ki {
                    x[i] = 1.0 / point.x[ki];
                } else {
                    let e = seed.eps(i, ki);
                    if e != 0 {
                        let base = if e > 0 {
                            1.0 + 1.0 / point.x[ki]
                        } else {
                            1.0 + point.x[ki]
                        };
                        x[i] = point.x[i] * base.powi(-e as i32);
                    }
                }
            }
            Ok((new_seed, TorusPoint { a, x, b }))
        }
        TransformationStep::Automorphism(p) => {
            let new_seed = seed.apply_automorphism(p)?;
            let n = seed.len();
            let mut a = point.a.clone();
            let mut x = point.x.clone();
            let mut b = point.b.clone();
            for i in 0..n {
                let ai = seed.index_of(&p.apply(&seed.labels[i]))?;
                a[ai] = point.a[i];
                x[ai] = point.x[i];
                b[ai] = point.b[i];
            }
            Ok((new_seed, TorusPoint { a, x, b }))
        }
    }
}

/// Fold [`apply_step`] over the transformation's steps.
pub fn apply_transformation(
    seed: &Seed,
    t: &ClusterTransformation,
    point: &TorusPoint,
) -> Result<(Seed, TorusPoint)> {
    let mut s = seed.clone();
    let mut p = point.clone();
    for step in &t.steps {
        let (ns, np) = apply_step(&s, step, &p)?;
        s = ns;
        p = np;
    }
    Ok((s, p))
}

/// Commute all automorphisms to the end using μ_k ∘ α = α ∘ μ_{α^{-1}(k)}:
/// the result is the mutation list (with targets pulled back through the
/// automorphisms seen so far) followed by a single trailing permutation.
pub fn normalize_transform(t: &ClusterTransformation) -> ClusterTransformation {
    let mut perm = Permutation::identity();
    let mut steps = Vec::new();
    for step in &t.steps {
        match step {
            TransformationStep::Mutation(k) => {
                steps.push(TransformationStep::Mutation(perm.apply_inverse(k)));
            }
            TransformationStep::Automorphism(p) => {
                perm = p.after(&perm);
            }
        }
    }
    if !perm.is_identity() {
        steps.push(TransformationStep::Automorphism(perm));
    }
    ClusterTransformation { steps }
}

/// Deterministic RNG used for every "random point" in the crate: ChaCha8
/// seeded with a 64-bit value (default 42 in the CLI).
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Draw a torus point with all coordinates uniform in [0.5, 2.0].
pub fn random_point<R: Rng>(n: usize, rng: &mut R) -> TorusPoint {
    let mut draw = |_| rng.gen_range(0.5..2.0);
    TorusPoint {
        a: (0..n).map(&mut draw).collect(),
        x: (0..n).map(&mut draw).collect(),
        b: (0..n).map(&mut draw).collect(),
    }
}

fn relative_error(u: f64, v: f64) -> f64 {
    (u - v).abs() / u.abs().max(v.abs()).max(1.0)
}

/// Outcome of [`transforms_equal_numeric`], distinguishing exact seed
/// mismatch from numeric disagreement.
#[derive(Debug, Clone, PartialEq)]
pub enum TransformComparison {
    Equal,
    SeedMismatch,
    NumericMismatch { worst: f64 },
}

impl TransformComparison {
    pub fn is_equal(&self) -> bool {
        matches!(self, TransformComparison::Equal)
    }
}

/// Compare two transformations on a seed: final seeds must agree exactly and
/// pushed-forward (A, X, B) coordinates within `tol` relative error at
/// `samples` random positive points.
pub fn transforms_equal_numeric(
    seed: &Seed,
    t1: &ClusterTransformation,
    t2: &ClusterTransformation,
    samples: usize,
    tol: f64,
    rng_seed: u64,
) -> Result<TransformComparison> {
    let mut rng = seeded_rng(rng_seed);
    let probe = TorusPoint::ones(seed.len());
    let (s1, _) = apply_transformation(seed, t1, &probe)?;
    let (s2, _) = apply_transformation(seed, t2, &probe)?;
    if s1 != s2 {
        return Ok(TransformComparison::SeedMismatch);
    }
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let p = random_point(seed.len(), &mut rng);
        let (_, p1) = apply_transformation(seed, t1, &p)?;
        let (_, p2) = apply_transformation(seed, t2, &p)?;
        for (u, v) in p1
            .a
            .iter()
            .zip(&p2.a)
            .chain(p1.x.iter().zip(&p2.x))
            .chain(p1.b.iter().zip(&p2.b))
        {
            worst = worst.max(relative_error(*u, *v));
        }
    }
    if worst <= tol {
        Ok(TransformComparison::Equal)
    } else {
        Ok(TransformComparison::NumericMismatch { worst })
    }
}
