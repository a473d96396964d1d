//! Closed-form weight decomposition of the tangent space at `J_A`.
//!
//! The torus of diagonal matrices acts on `S` with `x_i` of weight `e_i` and
//! `y_j` of weight `f_j`. Each nonzero weight space of the tangent space is
//! one-dimensional, and its weight is one of
//!
//! * `e_j - e_i` for `i < j` with `i <= a_l < j` for some point `l`,
//! * `f_h - f_k` for `k < h` with `k <= b_l < h` for some point `l`,
//! * `e_j - e_{a_l} + f_h - f_{b_l}` when the `l`-th point sits at a unit
//!   step of the staircase on both sides and `(j, h)` lies in the rectangle
//!   `[a_l + 1, a_{l+1}] x [b_l + 1, b_{l-1}]`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::grid_poset::Antichain;

/// A torus weight in `Z^m + Z^n`, stored sparsely with 1-based indices and
/// nonzero coefficients only.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FineWeight {
    pub x: Vec<(usize, i64)>,
    pub y: Vec<(usize, i64)>,
}

fn collect_sparse(terms: impl IntoIterator<Item = (usize, i64)>) -> Vec<(usize, i64)> {
    let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
    for (i, c) in terms {
        *acc.entry(i).or_default() += c;
    }
    acc.into_iter().filter(|&(_, c)| c != 0).collect()
}

impl FineWeight {
    pub fn new(x: impl IntoIterator<Item = (usize, i64)>, y: impl IntoIterator<Item = (usize, i64)>) -> Self {
        FineWeight { x: collect_sparse(x), y: collect_sparse(y) }
    }

    /// `e_j - e_i`
    pub fn linear_x(i: usize, j: usize) -> Self {
        Self::new([(j, 1), (i, -1)], [])
    }

    /// `f_h - f_k`
    pub fn linear_y(k: usize, h: usize) -> Self {
        Self::new([], [(h, 1), (k, -1)])
    }

    /// Weight of the map sending `x_i y_k` to `x_j y_h`, i.e.
    /// `e_j - e_i + f_h - f_k`.
    pub fn of_map(source: (usize, usize), target: (usize, usize)) -> Self {
        Self::new([(target.0, 1), (source.0, -1)], [(target.1, 1), (source.1, -1)])
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_empty() && self.y.is_empty()
    }

    /// True for `e_j - e_i`, `f_h - f_k` or their sum with `i != j`, `h != k`.
    pub fn is_tangent_shape(&self) -> bool {
        let part_ok = |p: &[(usize, i64)]| {
            p.is_empty()
                || (p.len() == 2 && p.iter().map(|t| t.1).sum::<i64>() == 0 && p.iter().all(|t| t.1.abs() == 1))
        };
        !self.is_zero() && part_ok(&self.x) && part_ok(&self.y)
    }
}

impl fmt::Display for FineWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (var, part) in [('e', &self.x), ('f', &self.y)] {
            // positive terms first so that e.g. e2-e1 reads naturally
            let mut terms = part.clone();
            terms.sort_by_key(|&(i, c)| (c < 0, i));
            for (i, c) in terms {
                let sign = if c < 0 {
                    "-"
                } else if first {
                    ""
                } else {
                    "+"
                };
                let coeff = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
                write!(f, "{sign}{coeff}{var}{i}")?;
                first = false;
            }
        }
        Ok(())
    }
}

/// An index pair `(lower, upper)` naming `e_upper - e_lower` or
/// `f_upper - f_lower`.
pub type IndexPair = (usize, usize);

/// Linear tangent weights: `(i, j)` pairs for `e_j - e_i` and `(k, h)`
/// pairs for `f_h - f_k`.
pub fn linear_tangent_weights(antichain: &Antichain) -> (Vec<IndexPair>, Vec<IndexPair>) {
    let shape = antichain.shape();
    let pairs = |size: usize, coords: Vec<usize>| {
        let mut out = Vec::new();
        for i in 1..=size {
            for j in i + 1..=size {
                if coords.iter().any(|&c| i <= c && c < j) {
                    out.push((i, j));
                }
            }
        }
        out
    };
    let xs = antichain.points().iter().map(|p| p.0).collect();
    let ys = antichain.points().iter().map(|p| p.1).collect();
    (pairs(shape.m(), xs), pairs(shape.n(), ys))
}

/// Quadratic tangent weights as `(l, j, h)` triples, standing for
/// `e_j - e_{a_l} + f_h - f_{b_l}`.
pub fn quadratic_tangent_weights(antichain: &Antichain) -> Vec<(usize, usize, usize)> {
    let x = |l| antichain.x_index(l);
    let y = |l| antichain.y_index(l);
    let mut out = Vec::new();
    for l in 1..=antichain.len() {
        if x(l - 1) + 1 != x(l) || y(l + 1) + 1 != y(l) {
            continue;
        }
        for j in x(l) + 1..=x(l + 1) {
            for h in y(l) + 1..=y(l - 1) {
                out.push((l, j, h));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangentReport {
    pub linear_x: Vec<(usize, usize)>,
    pub linear_y: Vec<(usize, usize)>,
    pub quadratic: Vec<(usize, usize, usize)>,
    /// Dimension of the tangent space.
    pub total: usize,
}

impl TangentReport {
    /// The weights listed in the report, in report order. `antichain` must be
    /// the one the report was computed from.
    pub fn weights(&self, antichain: &Antichain) -> Vec<FineWeight> {
        let linear = self
            .linear_x
            .iter()
            .map(|&(i, j)| FineWeight::linear_x(i, j))
            .chain(self.linear_y.iter().map(|&(k, h)| FineWeight::linear_y(k, h)));
        let quadratic = self
            .quadratic
            .iter()
            .map(|&(l, j, h)| FineWeight::of_map((antichain.x_index(l), antichain.y_index(l)), (j, h)));
        linear.chain(quadratic).collect()
    }
}

pub fn tangent_dimension_formula(antichain: &Antichain) -> TangentReport {
    let (linear_x, linear_y) = linear_tangent_weights(antichain);
    let quadratic = quadratic_tangent_weights(antichain);
    let total = linear_x.len() + linear_y.len() + quadratic.len();
    TangentReport { linear_x, linear_y, quadratic, total }
}
