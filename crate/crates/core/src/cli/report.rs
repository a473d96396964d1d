//! Single-antichain report.

use serde::Serialize;

use crate::dimensions::{hilbert_scheme_dimension, DimensionTrace};
use crate::grid_poset::{self, Antichain, AntichainDoc, GridEmbedding, Point};
use crate::monomial_ideals::{hilbert_table, ideal_of_antichain, HilbertTable, SquareFreeIdeal};
use crate::tangent_combinatorics::{tangent_dimension_formula, TangentReport};
use crate::tangent_oracle::{tangent_hom_space, weight_decomposition};

#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub antichain: AntichainDoc,
    pub order_ideal_size: usize,
    pub ideal: SquareFreeIdeal,
    pub hilbert_table: HilbertTable,
    pub cutting_threshold: Option<usize>,
    pub cut: Option<CutDoc>,
    pub tangent: TangentReport,
    pub oracle_dimension: usize,
    pub weight_decomposition: Vec<WeightSpace>,
    pub dimension: usize,
    pub trace: DimensionTrace,
    pub consistent: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CutDoc {
    pub q: usize,
    pub cut_point: Point,
    /// `a_q (m - a_q) + b_q (n - b_q)`
    pub offset: usize,
    pub left: SideDoc,
    pub right: SideDoc,
}

/// One half of a cut. Ranges are inclusive and in the coordinates of the
/// full grid; `None` when the half has no variables of that kind.
#[derive(Debug, Clone, Serialize)]
pub struct SideDoc {
    pub x_range: Option<[usize; 2]>,
    pub y_range: Option<[usize; 2]>,
    pub points: Vec<Point>,
    pub local: LocalAntichain,
}

/// The half as an antichain of its own grid, indices starting at 1.
#[derive(Debug, Clone, Serialize)]
pub struct LocalAntichain {
    pub m: usize,
    pub n: usize,
    pub antichain: Vec<Point>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightSpace {
    pub weight: String,
    pub dimension: usize,
}

fn side(antichain: &Antichain, embedding: GridEmbedding) -> SideDoc {
    let shape = antichain.shape();
    let range = |len: usize, offset: usize| (len > 0).then(|| [offset + 1, offset + len]);
    SideDoc {
        x_range: range(shape.m(), embedding.x_offset),
        y_range: range(shape.n(), embedding.y_offset),
        points: antichain.points().iter().map(|&p| embedding.to_parent(p)).collect(),
        local: LocalAntichain { m: shape.m(), n: shape.n(), antichain: antichain.points().to_vec() },
    }
}

/// Everything computed for one antichain, with the Hilbert table on
/// `[0, D1] x [0, D2]`.
pub fn build_report(antichain: &Antichain, (d1, d2): (usize, usize)) -> ReportDocument {
    let ideal = ideal_of_antichain(antichain);
    let cut = grid_poset::cut(antichain).ok().map(|c| {
        let (aq, bq) = c.cut_point;
        let shape = antichain.shape();
        CutDoc {
            q: c.q,
            cut_point: c.cut_point,
            offset: aq * (shape.m() - aq) + bq * (shape.n() - bq),
            left: side(&c.left_antichain, c.left_embedding),
            right: side(&c.right_antichain, c.right_embedding),
        }
    });
    let tangent = tangent_dimension_formula(antichain);
    let basis = tangent_hom_space(antichain);
    let weights = weight_decomposition(&basis).expect("kernel basis is assembled per weight");
    let (dimension, trace) = hilbert_scheme_dimension(antichain);
    let oracle_dimension = basis.dimension();
    ReportDocument {
        antichain: AntichainDoc::from(antichain),
        order_ideal_size: grid_poset::order_ideal(antichain).len(),
        hilbert_table: hilbert_table(&ideal, d1, d2),
        ideal,
        cutting_threshold: grid_poset::cutting_threshold(antichain).ok(),
        cut,
        consistent: tangent.total == oracle_dimension && oracle_dimension == dimension,
        tangent,
        oracle_dimension,
        weight_decomposition: weights
            .into_iter()
            .map(|(w, dimension)| WeightSpace { weight: w.to_string(), dimension })
            .collect(),
        dimension,
        trace,
    }
}
