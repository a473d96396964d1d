//! Antichains and order ideals of the grid poset `[m] x [n]`.
//!
//! Points are 1-based pairs `(a, b)` ordered componentwise. An antichain is
//! stored with strictly increasing first coordinates (and therefore strictly
//! decreasing second coordinates). The sentinel coordinates used by the
//! cutting process are exposed through [`Antichain::x_index`] and
//! [`Antichain::y_index`] and never stored.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest number of variables on either side. Square-free monomials are
/// stored as 64-bit masks.
pub const MAX_VARIABLES: usize = 64;

/// A point of the grid, `(x-index, y-index)`, 1-based.
pub type Point = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("grid shape {m}x{n} is invalid: both sides must lie in 1..={max}", max = MAX_VARIABLES)]
    InvalidShape { m: usize, n: usize },
    #[error("point ({}, {}) lies outside the {}x{} grid", .point.0, .point.1, .shape.m(), .shape.n())]
    PointOutsideGrid { point: Point, shape: GridShape },
    #[error("points are not a strictly monotone antichain: ({}, {}) followed by ({}, {})", .first.0, .first.1, .second.0, .second.1)]
    NotAnAntichain { first: Point, second: Point },
    #[error("operation requires a non-empty antichain")]
    EmptyAntichain,
    #[error("cutting threshold is 0; use the q = 0 base cases instead of cutting")]
    UnsupportedCut,
}

/// Dimensions of the grid `[m] x [n]`.
///
/// Public construction requires `m, n >= 1`. Shapes with zero variables on
/// one side only arise as sub-grids produced by [`cut`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GridShape {
    m: usize,
    n: usize,
}

impl GridShape {
    pub fn new(m: usize, n: usize) -> Result<Self, PosetError> {
        if m == 0 || n == 0 || m > MAX_VARIABLES || n > MAX_VARIABLES {
            return Err(PosetError::InvalidShape { m, n });
        }
        Ok(GridShape { m, n })
    }

    /// Sub-grid shape; either side may be zero.
    pub(crate) fn sub_grid(m: usize, n: usize) -> Self {
        debug_assert!(m <= MAX_VARIABLES && n <= MAX_VARIABLES);
        GridShape { m, n }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// True when one side has no variables.
    pub fn is_degenerate(&self) -> bool {
        self.m == 0 || self.n == 0
    }

    pub fn contains(&self, (a, b): Point) -> bool {
        (1..=self.m).contains(&a) && (1..=self.n).contains(&b)
    }

    /// All grid points in lexicographic order.
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (1..=self.m).flat_map(move |a| (1..=self.n).map(move |b| (a, b)))
    }

    fn check(&self, point: Point) -> Result<(), PosetError> {
        if self.contains(point) {
            Ok(())
        } else {
            Err(PosetError::PointOutsideGrid { point, shape: *self })
        }
    }
}

impl fmt::Display for GridShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.m, self.n)
    }
}

impl<'de> Deserialize<'de> for GridShape {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            m: usize,
            n: usize,
        }
        let raw = Raw::deserialize(deserializer)?;
        GridShape::new(raw.m, raw.n).map_err(serde::de::Error::custom)
    }
}

/// An antichain of the grid, sorted by increasing first coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Antichain {
    shape: GridShape,
    points: Vec<Point>,
}

impl Antichain {
    /// Strict constructor: `points` must already be sorted and pairwise
    /// incomparable.
    pub fn new(shape: GridShape, points: Vec<Point>) -> Result<Self, PosetError> {
        for &p in &points {
            shape.check(p)?;
        }
        for w in points.windows(2) {
            let (first, second) = (w[0], w[1]);
            if !(first.0 < second.0 && first.1 > second.1) {
                return Err(PosetError::NotAnAntichain { first, second });
            }
        }
        Ok(Antichain { shape, points })
    }

    pub fn empty(shape: GridShape) -> Self {
        Antichain { shape, points: Vec::new() }
    }

    pub fn shape(&self) -> GridShape {
        self.shape
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Number of points `s`.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// First coordinate of the `l`-th point for `1 <= l <= s`, with the
    /// sentinels `0` at `l = 0` and `m` at `l = s + 1`.
    pub fn x_index(&self, l: usize) -> usize {
        match l {
            0 => 0,
            l if l == self.len() + 1 => self.shape.m,
            l => self.points[l - 1].0,
        }
    }

    /// Second coordinate of the `l`-th point for `1 <= l <= s`, with the
    /// sentinels `n` at `l = 0` and `0` at `l = s + 1`.
    pub fn y_index(&self, l: usize) -> usize {
        match l {
            0 => self.shape.n,
            l if l == self.len() + 1 => 0,
            l => self.points[l - 1].1,
        }
    }

    /// True when some point of the antichain dominates `p`.
    pub fn dominates(&self, p: Point) -> bool {
        self.points.iter().any(|&(a, b)| p.0 <= a && p.1 <= b)
    }

    /// Column heights of the order ideal: entry `a - 1` is the largest `b`
    /// with `(a, b)` in the ideal, or 0.
    pub fn heights(&self) -> Vec<usize> {
        let mut heights = vec![0; self.shape.m];
        let mut best = 0;
        for a in (1..=self.shape.m).rev() {
            if let Some(&(_, b)) = self.points.iter().find(|p| p.0 == a) {
                best = best.max(b);
            }
            heights[a - 1] = best;
        }
        heights
    }

    /// Inverse of [`Antichain::heights`] for a non-increasing height vector.
    pub(crate) fn from_heights(shape: GridShape, heights: &[usize]) -> Self {
        let points = (1..=shape.m)
            .filter(|&a| {
                let h = heights[a - 1];
                let next = heights.get(a).copied().unwrap_or(0);
                h > 0 && h > next
            })
            .map(|a| (a, heights[a - 1]))
            .collect();
        Antichain { shape, points }
    }
}

impl fmt::Display for Antichain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {{", self.shape)?;
        for (idx, (a, b)) in self.points.iter().enumerate() {
            if idx > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({a},{b})")?;
        }
        write!(f, "}}")
    }
}

/// The JSON form `{"m": .., "n": .., "antichain": [[a, b], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AntichainDoc {
    pub m: usize,
    pub n: usize,
    pub antichain: Vec<[usize; 2]>,
}

impl From<&Antichain> for AntichainDoc {
    fn from(a: &Antichain) -> Self {
        AntichainDoc { m: a.shape.m, n: a.shape.n, antichain: a.points.iter().map(|&(x, y)| [x, y]).collect() }
    }
}

impl TryFrom<AntichainDoc> for Antichain {
    type Error = PosetError;

    /// Parsing normalizes: unsorted, duplicated or dominated points are
    /// accepted and reduced to the maximal elements.
    fn try_from(doc: AntichainDoc) -> Result<Self, PosetError> {
        let shape = GridShape::new(doc.m, doc.n)?;
        let points: Vec<Point> = doc.antichain.iter().map(|p| (p[0], p[1])).collect();
        normalize_antichain(&points, shape)
    }
}

impl Serialize for Antichain {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        AntichainDoc::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Antichain {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let doc = AntichainDoc::deserialize(deserializer)?;
        Antichain::try_from(doc).map_err(serde::de::Error::custom)
    }
}

/// A downward-closed subset of the grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderIdeal {
    shape: GridShape,
    members: BTreeSet<Point>,
}

impl OrderIdeal {
    pub fn shape(&self) -> GridShape {
        self.shape
    }

    pub fn members(&self) -> &BTreeSet<Point> {
        &self.members
    }

    pub fn contains(&self, p: Point) -> bool {
        self.members.contains(&p)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_downward_closed(&self) -> bool {
        self.members.iter().all(|&(a, b)| (1..=a).all(|a2| (1..=b).all(|b2| self.members.contains(&(a2, b2)))))
    }

    /// Maximal elements, sorted by first coordinate.
    pub fn maximal_elements(&self) -> Antichain {
        let points = self
            .members
            .iter()
            .copied()
            .filter(|&(a, b)| !self.members.contains(&(a + 1, b)) && !self.members.contains(&(a, b + 1)))
            .collect();
        Antichain { shape: self.shape, points }
    }
}

/// Reduces arbitrary grid points to the antichain of maximal elements of the
/// order ideal they generate.
pub fn normalize_antichain(points: &[Point], shape: GridShape) -> Result<Antichain, PosetError> {
    for &p in points {
        shape.check(p)?;
    }
    let mut maximal: Vec<Point> =
        points.iter().copied().filter(|&p| !points.iter().any(|&q| q != p && p.0 <= q.0 && p.1 <= q.1)).collect();
    maximal.sort_unstable();
    maximal.dedup();
    Ok(Antichain { shape, points: maximal })
}

pub fn order_ideal(antichain: &Antichain) -> OrderIdeal {
    let members = antichain.shape.points().filter(|&p| antichain.dominates(p)).collect();
    OrderIdeal { shape: antichain.shape, members }
}

/// The cutting threshold: the smallest `q` such that every point after the
/// `q`-th sits strictly inside the grid and the tail forms a unit staircase
/// ending on the x-axis.
pub fn cutting_threshold(antichain: &Antichain) -> Result<usize, PosetError> {
    if antichain.is_empty() {
        return Err(PosetError::EmptyAntichain);
    }
    let GridShape { m, n } = antichain.shape;
    let holds = |i: usize| {
        let (a, b) = (antichain.x_index(i), antichain.y_index(i));
        a < m && b < n && a == antichain.x_index(i - 1) + 1 && b == antichain.y_index(i + 1) + 1
    };
    let mut q = antichain.len();
    while q >= 1 && holds(q) {
        q -= 1;
    }
    Ok(q)
}

/// Order-preserving injection of a re-indexed sub-grid into its parent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GridEmbedding {
    pub x_offset: usize,
    pub y_offset: usize,
}

impl GridEmbedding {
    pub fn to_parent(&self, (a, b): Point) -> Point {
        (a + self.x_offset, b + self.y_offset)
    }

    pub fn x_to_parent(&self, a: usize) -> usize {
        a + self.x_offset
    }

    pub fn y_to_parent(&self, b: usize) -> usize {
        b + self.y_offset
    }
}

/// Result of cutting an antichain at its threshold `q`.
///
/// The left sub-grid is `{1..a_q} x {b_q+1..n}` and the right sub-grid is
/// `{a_q+1..m} x {1..b_q}`, both re-indexed from 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutResult {
    pub q: usize,
    pub cut_point: Point,
    pub left_shape: GridShape,
    pub left_antichain: Antichain,
    pub left_embedding: GridEmbedding,
    pub right_shape: GridShape,
    pub right_antichain: Antichain,
    pub right_embedding: GridEmbedding,
}

pub fn cut(antichain: &Antichain) -> Result<CutResult, PosetError> {
    let q = cutting_threshold(antichain)?;
    if q == 0 {
        return Err(PosetError::UnsupportedCut);
    }
    let GridShape { m, n } = antichain.shape;
    let (aq, bq) = antichain.points[q - 1];

    let left_shape = GridShape::sub_grid(aq, n - bq);
    let left_embedding = GridEmbedding { x_offset: 0, y_offset: bq };
    let left_points = antichain.points[..q - 1].iter().map(|&(a, b)| (a, b - bq)).collect();

    let right_shape = GridShape::sub_grid(m - aq, bq);
    let right_embedding = GridEmbedding { x_offset: aq, y_offset: 0 };
    let right_points = antichain.points[q..].iter().map(|&(a, b)| (a - aq, b)).collect();

    Ok(CutResult {
        q,
        cut_point: (aq, bq),
        left_shape,
        left_antichain: Antichain { shape: left_shape, points: left_points },
        left_embedding,
        right_shape,
        right_antichain: Antichain { shape: right_shape, points: right_points },
        right_embedding,
    })
}

/// Iterator over all antichains of a grid, driven by the non-increasing
/// column-height vectors of their order ideals (monotone lattice paths).
#[derive(Debug, Clone)]
pub struct Antichains {
    shape: GridShape,
    heights: Option<Vec<usize>>,
}

impl Iterator for Antichains {
    type Item = Antichain;

    fn next(&mut self) -> Option<Antichain> {
        let heights = self.heights.as_mut()?;
        let current = Antichain::from_heights(self.shape, heights);
        let n = self.shape.n;
        let bump = (0..heights.len()).rev().find(|&p| heights[p] < if p == 0 { n } else { heights[p - 1] });
        match bump {
            Some(p) => {
                heights[p] += 1;
                heights[p + 1..].iter_mut().for_each(|h| *h = 0);
            }
            None => self.heights = None,
        }
        Some(current)
    }
}

/// Every antichain of `shape` exactly once, the empty one first.
/// The count is `binomial(m + n, m)`.
pub fn enumerate_antichains(shape: GridShape) -> Antichains {
    Antichains { shape, heights: Some(vec![0; shape.m]) }
}

/// A uniformly random antichain, drawn as a uniformly random monotone
/// lattice path with `m` horizontal and `n` vertical steps.
pub fn random_antichain<R: Rng + ?Sized>(shape: GridShape, rng: &mut R) -> Antichain {
    let mut steps: Vec<bool> = std::iter::repeat_n(true, shape.m).chain(std::iter::repeat_n(false, shape.n)).collect();
    steps.shuffle(rng);
    let mut heights = Vec::with_capacity(shape.m);
    let mut height = shape.n;
    for step in steps {
        if step {
            heights.push(height);
        } else {
            height -= 1;
        }
    }
    Antichain::from_heights(shape, &heights)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(m: usize, n: usize) -> GridShape {
        GridShape::new(m, n).unwrap()
    }

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    fn cutting_example() -> Antichain {
        Antichain::new(shape(12, 12), vec![(1, 11), (2, 10), (5, 8), (7, 6), (8, 3), (9, 2), (10, 1)]).unwrap()
    }

    #[test]
    fn normalize_keeps_example_points() {
        let a = normalize_antichain(&[(5, 1), (1, 6), (2, 4)], shape(8, 7)).unwrap();
        assert_eq!(a.points(), &[(1, 6), (2, 4), (5, 1)]);
    }

    #[test]
    fn normalize_drops_dominated_and_duplicates() {
        let a = normalize_antichain(&[(2, 3), (1, 2), (2, 3)], shape(3, 3)).unwrap();
        assert_eq!(a.points(), &[(2, 3)]);
        assert!(normalize_antichain(&[], shape(3, 3)).unwrap().is_empty());
    }

    #[test]
    fn normalize_rejects_points_outside() {
        let err = normalize_antichain(&[(4, 1)], shape(3, 3)).unwrap_err();
        assert_eq!(err, PosetError::PointOutsideGrid { point: (4, 1), shape: shape(3, 3) });
        assert!(err.to_string().contains("(4, 1)"));
        assert!(normalize_antichain(&[(0, 1)], shape(3, 3)).is_err());
    }

    #[test]
    fn strict_constructor_rejects_comparable_points() {
        assert!(Antichain::new(shape(3, 3), vec![(1, 1), (2, 2)]).is_err());
        assert!(Antichain::new(shape(3, 3), vec![(2, 1), (1, 2)]).is_err());
        assert!(GridShape::new(0, 3).is_err());
        assert!(GridShape::new(3, 65).is_err());
    }

    #[test]
    fn sentinels() {
        let a = cutting_example();
        assert_eq!((a.x_index(0), a.y_index(0)), (0, 12));
        assert_eq!((a.x_index(8), a.y_index(8)), (12, 0));
        assert_eq!((a.x_index(3), a.y_index(3)), (5, 8));
    }

    #[test]
    fn order_ideal_of_example_has_inclusion_exclusion_size() {
        let a = Antichain::new(shape(8, 7), vec![(1, 6), (2, 4), (5, 1)]).unwrap();
        // 6 + 8 + 5 - 4 - 2 - 1 + 1
        assert_eq!(order_ideal(&a).len(), 13);
        assert!(order_ideal(&Antichain::empty(shape(3, 3))).is_empty());
        let single = Antichain::new(shape(3, 3), vec![(1, 1)]).unwrap();
        assert_eq!(order_ideal(&single).members().iter().copied().collect::<Vec<_>>(), vec![(1, 1)]);
    }

    #[test]
    fn cutting_threshold_examples() {
        assert_eq!(cutting_threshold(&cutting_example()).unwrap(), 4);
        let a = Antichain::new(shape(2, 2), vec![(1, 1)]).unwrap();
        assert_eq!(cutting_threshold(&a).unwrap(), 0);
        let a = Antichain::new(shape(2, 2), vec![(2, 1)]).unwrap();
        assert_eq!(cutting_threshold(&a).unwrap(), 1);
        assert_eq!(cutting_threshold(&Antichain::empty(shape(2, 2))), Err(PosetError::EmptyAntichain));
    }

    #[test]
    fn cut_of_twelve_by_twelve_example() {
        let c = cut(&cutting_example()).unwrap();
        assert_eq!(c.q, 4);
        assert_eq!(c.cut_point, (7, 6));
        assert_eq!(c.left_shape, GridShape::sub_grid(7, 6));
        assert_eq!(c.right_shape, GridShape::sub_grid(5, 6));
        let left: Vec<Point> = c.left_antichain.points().iter().map(|&p| c.left_embedding.to_parent(p)).collect();
        let right: Vec<Point> = c.right_antichain.points().iter().map(|&p| c.right_embedding.to_parent(p)).collect();
        assert_eq!(left, vec![(1, 11), (2, 10), (5, 8)]);
        assert_eq!(right, vec![(8, 3), (9, 2), (10, 1)]);
    }

    #[test]
    fn cut_with_empty_x_side() {
        let a = Antichain::new(shape(2, 2), vec![(2, 1)]).unwrap();
        let c = cut(&a).unwrap();
        assert_eq!(c.q, 1);
        assert_eq!(c.left_shape, GridShape::sub_grid(2, 1));
        assert_eq!(c.left_embedding.y_to_parent(1), 2);
        assert!(c.left_antichain.is_empty());
        assert_eq!(c.right_shape, GridShape::sub_grid(0, 1));
        assert!(c.right_shape.is_degenerate());
        assert!(c.right_antichain.is_empty());
    }

    #[test]
    fn cut_refuses_threshold_zero() {
        let a = Antichain::new(shape(2, 2), vec![(1, 1)]).unwrap();
        assert_eq!(cut(&a), Err(PosetError::UnsupportedCut));
        assert_eq!(cut(&Antichain::empty(shape(2, 2))), Err(PosetError::EmptyAntichain));
    }

    #[test]
    fn enumeration_counts_small() {
        let all: Vec<_> = enumerate_antichains(shape(1, 1)).collect();
        assert_eq!(all.len(), 2);
        assert!(all[0].is_empty());
        assert_eq!(all[1].points(), &[(1, 1)]);
        assert_eq!(enumerate_antichains(shape(2, 2)).count(), 6);
        assert_eq!(enumerate_antichains(shape(4, 4)).count(), 70);
    }

    #[test]
    fn enumeration_matches_subset_filtering() {
        // brute force over all subsets of the 2x3 grid
        let s = shape(2, 3);
        let pts: Vec<Point> = s.points().collect();
        let mut brute = BTreeSet::new();
        for mask in 0u32..(1 << pts.len()) {
            let subset: Vec<Point> = (0..pts.len()).filter(|i| mask >> i & 1 == 1).map(|i| pts[i]).collect();
            let incomparable = subset
                .iter()
                .all(|p| subset.iter().all(|q| p == q || !((p.0 <= q.0 && p.1 <= q.1) || (q.0 <= p.0 && q.1 <= p.1))));
            if incomparable {
                brute.insert(normalize_antichain(&subset, s).unwrap());
            }
        }
        let enumerated: BTreeSet<_> = enumerate_antichains(s).collect();
        assert_eq!(enumerated, brute);
    }

    #[test]
    fn enumeration_count_is_binomial() {
        for m in 1..=6 {
            for n in 1..=6 {
                let all: BTreeSet<_> = enumerate_antichains(shape(m, n)).collect();
                assert_eq!(all.len() as u64, binomial((m + n) as u64, m as u64), "{m}x{n}");
            }
        }
    }

    #[test]
    fn order_ideal_round_trip_and_closure() {
        for m in 1..=5 {
            for n in 1..=5 {
                for a in enumerate_antichains(shape(m, n)) {
                    let o = order_ideal(&a);
                    assert!(o.is_downward_closed());
                    assert_eq!(o.maximal_elements(), a);
                    assert_eq!(Antichain::from_heights(a.shape(), &a.heights()), a);
                }
            }
        }
    }

    #[test]
    fn cut_restricts_order_ideals() {
        for m in 1..=5 {
            for n in 1..=5 {
                for a in enumerate_antichains(shape(m, n)) {
                    let Ok(c) = cut(&a) else { continue };
                    let o = order_ideal(&a);
                    assert_eq!(c.left_antichain.len(), c.q - 1);
                    assert_eq!(a.len(), c.left_antichain.len() + 1 + c.right_antichain.len());
                    for (sub, emb, sub_shape) in [
                        (&c.left_antichain, c.left_embedding, c.left_shape),
                        (&c.right_antichain, c.right_embedding, c.right_shape),
                    ] {
                        let sub_ideal = order_ideal(sub);
                        for p in sub_shape.points() {
                            assert_eq!(sub_ideal.contains(p), o.contains(emb.to_parent(p)), "{a} at {p:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn json_round_trip_normalizes() {
        let a: Antichain = serde_json::from_str(r#"{"m":8,"n":7,"antichain":[[5,1],[1,6],[2,4],[1,1]]}"#).unwrap();
        assert_eq!(a.points(), &[(1, 6), (2, 4), (5, 1)]);
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(text, r#"{"m":8,"n":7,"antichain":[[1,6],[2,4],[5,1]]}"#);
        let bad = serde_json::from_str::<Antichain>(r#"{"m":2,"n":2,"antichain":[[3,1]]}"#);
        assert!(bad.is_err());
    }

    #[test]
    fn random_antichains_are_valid() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let s = shape(6, 5);
        for _ in 0..200 {
            let a = random_antichain(s, &mut rng);
            assert!(Antichain::new(s, a.points().to_vec()).is_ok());
        }
    }
}
