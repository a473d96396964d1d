//! Dimension of the Hilbert scheme at `J_A` via the cutting recursion, plus
//! the Hilbert-function recognizer for radical Borel-fixed ideals.

use serde::Serialize;
use thiserror::Error;

use crate::grid_poset::{self, Antichain, GridShape, Point};
use crate::monomial_ideals::{hilbert_table, ideal_of_antichain, HilbertTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimensionError {
    #[error("linear part ({alpha}, {beta}) out of range for shape {shape}")]
    OffsetOutOfRange { alpha: usize, beta: usize, shape: GridShape },
    #[error("Hilbert table covers [0,{have_d1}]x[0,{have_d2}] but [0,{need_d1}]x[0,{need_d2}] is required")]
    TableTooSmall { have_d1: usize, have_d2: usize, need_d1: usize, need_d2: usize },
    #[error("distinct antichains {first} and {second} share the Hilbert function on the comparison box")]
    AmbiguousHilbertFunction { first: Antichain, second: Antichain },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `A` is empty: the Hilbert scheme is a reduced point.
    Empty,
    /// Cutting threshold `q >= 1`.
    Cut,
    /// `q = 0`, `s >= 2`: the unit staircase `a_l = l`, `b_l = s + 1 - l`.
    Staircase,
    /// `q = 0`, `s = 1`: `J_A = (x_1 y_1)` and the scheme is `P(X (x) Y)`.
    Single,
}

#[derive(Debug, Clone, Serialize)]
pub struct DimensionTrace {
    pub shape: ShapeDoc,
    pub antichain: Vec<Point>,
    pub q: Option<usize>,
    pub branch: Branch,
    pub offset: usize,
    pub subtotal: usize,
    pub children: Vec<DimensionTrace>,
}

/// Shape of a recursion node; either side may be zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ShapeDoc {
    pub m: usize,
    pub n: usize,
}

impl From<GridShape> for ShapeDoc {
    fn from(s: GridShape) -> Self {
        ShapeDoc { m: s.m(), n: s.n() }
    }
}

impl DimensionTrace {
    /// Recomputes every subtotal bottom-up and compares with the stored one.
    pub fn is_consistent(&self) -> bool {
        let children_ok = self.children.iter().all(DimensionTrace::is_consistent);
        let expected = match self.branch {
            Branch::Cut => {
                self.children.len() == 2
                    && self.subtotal == self.children.iter().map(|c| c.subtotal).sum::<usize>() + self.offset
            }
            _ => self.children.is_empty() && self.subtotal == self.offset,
        };
        children_ok && expected
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(DimensionTrace::node_count).sum::<usize>()
    }
}

/// `alpha (m - alpha) + beta (n - beta)`: the dimension of the product of
/// Grassmannians of `alpha`-planes in the x-forms and `beta`-planes in the
/// y-forms.
pub fn linear_part_offset(alpha: usize, beta: usize, shape: GridShape) -> Result<usize, DimensionError> {
    if alpha > shape.m() || beta > shape.n() {
        return Err(DimensionError::OffsetOutOfRange { alpha, beta, shape });
    }
    Ok(grassmannian_offset(alpha, beta, shape))
}

fn grassmannian_offset(alpha: usize, beta: usize, shape: GridShape) -> usize {
    alpha * (shape.m() - alpha) + beta * (shape.n() - beta)
}

/// Dimension of the Hilbert scheme at `J_A`, with the recursion tree.
pub fn hilbert_scheme_dimension(antichain: &Antichain) -> (usize, DimensionTrace) {
    let trace = dimension_node(antichain);
    (trace.subtotal, trace)
}

fn dimension_node(antichain: &Antichain) -> DimensionTrace {
    let shape = antichain.shape();
    let leaf = |q, branch, value| DimensionTrace {
        shape: shape.into(),
        antichain: antichain.points().to_vec(),
        q,
        branch,
        offset: value,
        subtotal: value,
        children: Vec::new(),
    };

    if antichain.is_empty() {
        return leaf(None, Branch::Empty, 0);
    }
    let q = grid_poset::cutting_threshold(antichain).expect("antichain is non-empty");
    let s = antichain.len();
    let (m, n) = (shape.m(), shape.n());

    if q == 0 {
        if s == 1 {
            debug_assert_eq!(antichain.points(), &[(1, 1)]);
            return leaf(Some(0), Branch::Single, m * n - 1);
        }
        assert!(
            (1..=s).all(|l| antichain.points()[l - 1] == (l, s + 1 - l)) && m > s && n > s,
            "threshold 0 with s >= 2 forces the unit staircase inside the grid, got {antichain}"
        );
        let value = (m - s - 1) * (s + 1) + (n - s - 1) * (s + 1) + (s + 1) * (s + 1) - 1;
        return leaf(Some(0), Branch::Staircase, value);
    }

    let cut = grid_poset::cut(antichain).expect("threshold is positive");
    let (aq, bq) = cut.cut_point;
    let offset = grassmannian_offset(aq, bq, shape);
    let left = dimension_node(&cut.left_antichain);
    let right = dimension_node(&cut.right_antichain);
    DimensionTrace {
        shape: shape.into(),
        antichain: antichain.points().to_vec(),
        q: Some(q),
        branch: Branch::Cut,
        offset,
        subtotal: left.subtotal + right.subtotal + offset,
        children: vec![left, right],
    }
}

/// Finds the antichain whose ideal has the given Hilbert function on
/// `[0, m] x [0, n]`.
pub fn cs_recognize(table: &HilbertTable, shape: GridShape) -> Result<Option<Antichain>, DimensionError> {
    cs_recognize_on_box(table, shape, (shape.m(), shape.n()))
}

/// As [`cs_recognize`], comparing on `[0, D1] x [0, D2]`. Two different
/// antichains agreeing on the box are reported as an error.
pub fn cs_recognize_on_box(
    table: &HilbertTable,
    shape: GridShape,
    (d1, d2): (usize, usize),
) -> Result<Option<Antichain>, DimensionError> {
    if !table.covers(d1, d2) {
        return Err(DimensionError::TableTooSmall {
            have_d1: table.d1_max,
            have_d2: table.d2_max,
            need_d1: d1,
            need_d2: d2,
        });
    }
    let target = table.restrict(d1, d2);
    let mut found: Option<Antichain> = None;
    for candidate in grid_poset::enumerate_antichains(shape) {
        if hilbert_table(&ideal_of_antichain(&candidate), d1, d2) != target {
            continue;
        }
        if let Some(first) = found {
            return Err(DimensionError::AmbiguousHilbertFunction { first, second: candidate });
        }
        found = Some(candidate);
    }
    Ok(found)
}
