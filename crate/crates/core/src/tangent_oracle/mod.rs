//! Tangent space at `J_A` computed directly as degree-(0,0) homomorphisms
//! `J_A -> S/J_A`, by exact linear algebra.
//!
//! A homomorphism is determined by the images of the generators `x_i y_k`,
//! `(i, k)` in `O(A)`, which are combinations of the standard monomials
//! `x_j y_h`, `(j, h)` not in `O(A)`. The unknowns are the coefficients of
//! these combinations. They must satisfy the linear syzygy relations
//!
//! * `x_j phi(x_i y_k) = x_i phi(x_j y_k)` in `[S/J_A]_(2,1)` when
//!   `(i, k), (j, k)` are in `O(A)`,
//! * `y_h phi(x_i y_k) = y_k phi(x_i y_h)` in `[S/J_A]_(1,2)` when
//!   `(i, h), (i, k)` are in `O(A)`,
//!
//! which generate all first syzygies since `J_A` has regularity 2.
//! Every relation is homogeneous for the torus weights, so the system splits
//! into one small block per weight.

pub mod linalg;

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::grid_poset::{order_ideal, Antichain, GridShape, Point};
use crate::monomial_ideals::{ideal_of_antichain, standard_monomials, Monomial};
use crate::tangent_combinatorics::FineWeight;
pub use linalg::{rational_kernel, RationalMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("kernel vector {index} mixes weights {first} and {second}")]
    MixedWeights { index: usize, first: FineWeight, second: FineWeight },
}

/// Coefficient of `x_j y_h` (`target`) in the image of `x_i y_k` (`source`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Unknown {
    pub source: Point,
    pub target: Point,
}

impl Unknown {
    pub fn weight(&self) -> FineWeight {
        FineWeight::of_map(self.source, self.target)
    }
}

/// One linear equation over the unknowns, the coefficient of a single
/// standard monomial in a single syzygy relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub monomial: Monomial,
    pub terms: Vec<(usize, i64)>,
}

impl Constraint {
    pub fn evaluate(&self, vector: &[(usize, BigRational)]) -> BigRational {
        let lookup: HashMap<usize, &BigRational> = vector.iter().map(|(i, v)| (*i, v)).collect();
        self.terms
            .iter()
            .filter_map(|&(u, c)| lookup.get(&u).map(|v| *v * BigRational::from_integer(BigInt::from(c))))
            .fold(BigRational::zero(), |acc, t| acc + t)
    }
}

/// A sparse vector over the unknowns, sorted by unknown index.
pub type SparseVector = Vec<(usize, BigRational)>;

#[derive(Debug, Clone)]
pub struct HomBasis {
    pub shape: GridShape,
    pub unknowns: Vec<Unknown>,
    pub weight_of_unknown: Vec<FineWeight>,
    pub constraint_count: usize,
    pub kernel_basis: Vec<SparseVector>,
}

impl HomBasis {
    pub fn dimension(&self) -> usize {
        self.kernel_basis.len()
    }
}

/// The unknowns of the system, in a fixed order.
pub fn unknowns(antichain: &Antichain) -> Vec<Unknown> {
    let order = order_ideal(antichain);
    let targets: Vec<Point> = antichain.shape().points().filter(|&p| !order.contains(p)).collect();
    order.members().iter().flat_map(|&source| targets.iter().map(move |&target| Unknown { source, target })).collect()
}

/// All syzygy constraints, one per (relation, standard monomial) pair with
/// at least one term.
pub fn syzygy_constraints(antichain: &Antichain, unknowns: &[Unknown]) -> Vec<Constraint> {
    let shape = antichain.shape();
    let ideal = ideal_of_antichain(antichain);
    let order = order_ideal(antichain);
    let generators: Vec<Point> = order.members().iter().copied().collect();

    let mut images: BTreeMap<Point, Vec<(usize, Point)>> = BTreeMap::new();
    for (idx, u) in unknowns.iter().enumerate() {
        images.entry(u.source).or_default().push((idx, u.target));
    }
    let image = |g: &Point| images.get(g).map(Vec::as_slice).unwrap_or(&[]);

    let basis_21: HashSet<Monomial> = standard_monomials(&ideal, 2, 1).into_iter().collect();
    let basis_12: HashSet<Monomial> = standard_monomials(&ideal, 1, 2).into_iter().collect();

    let mut constraints = Vec::new();
    let mut emit = |rows: BTreeMap<Monomial, Vec<(usize, i64)>>| {
        constraints.extend(rows.into_iter().map(|(monomial, terms)| Constraint { monomial, terms }));
    };

    for (pos, &(i, k)) in generators.iter().enumerate() {
        for &(j, h) in &generators[pos + 1..] {
            if k == h {
                // x_j phi(x_i y_k) - x_i phi(x_j y_k)
                let mut rows: BTreeMap<Monomial, Vec<(usize, i64)>> = BTreeMap::new();
                for (mult, gen, sign) in [(j, (i, k), 1), (i, (j, k), -1)] {
                    for &(idx, (p, r)) in image(&gen) {
                        let mut mono = Monomial::one(shape);
                        mono.mul_x(mult);
                        mono.mul_x(p);
                        mono.mul_y(r);
                        if basis_21.contains(&mono) {
                            rows.entry(mono).or_default().push((idx, sign));
                        }
                    }
                }
                emit(rows);
            }
            if i == j {
                // y_k phi(x_i y_h) - y_h phi(x_i y_k), with k < h
                let mut rows: BTreeMap<Monomial, Vec<(usize, i64)>> = BTreeMap::new();
                for (mult, gen, sign) in [(k, (i, h), 1), (h, (i, k), -1)] {
                    for &(idx, (p, r)) in image(&gen) {
                        let mut mono = Monomial::one(shape);
                        mono.mul_x(p);
                        mono.mul_y(r);
                        mono.mul_y(mult);
                        if basis_12.contains(&mono) {
                            rows.entry(mono).or_default().push((idx, sign));
                        }
                    }
                }
                emit(rows);
            }
        }
    }
    constraints
}

/// Splits the constraints by the common weight of their unknowns, or
/// reports the first constraint that couples two different weights.
pub fn constraint_blocks<'a>(
    constraints: &'a [Constraint],
    weights: &[FineWeight],
) -> Result<BTreeMap<FineWeight, Vec<&'a Constraint>>, (FineWeight, FineWeight)> {
    let mut blocks: BTreeMap<FineWeight, Vec<&Constraint>> = BTreeMap::new();
    for c in constraints {
        let first = &weights[c.terms[0].0];
        if let Some(&(other, _)) = c.terms.iter().find(|&&(u, _)| &weights[u] != first) {
            return Err((first.clone(), weights[other].clone()));
        }
        blocks.entry(first.clone()).or_default().push(c);
    }
    Ok(blocks)
}

/// Kernel of the syzygy system, solved one weight block at a time.
///
/// # Panics
///
/// If a constraint couples unknowns of different weights, which would mean
/// the system was assembled incorrectly.
pub fn tangent_hom_space(antichain: &Antichain) -> HomBasis {
    let unknowns = unknowns(antichain);
    let weights: Vec<FineWeight> = unknowns.iter().map(Unknown::weight).collect();
    let constraints = syzygy_constraints(antichain, &unknowns);
    let rows_by_weight = constraint_blocks(&constraints, &weights)
        .unwrap_or_else(|(a, b)| panic!("constraint couples weights {a} and {b}"));

    let mut unknowns_by_weight: BTreeMap<&FineWeight, Vec<usize>> = BTreeMap::new();
    for (idx, w) in weights.iter().enumerate() {
        unknowns_by_weight.entry(w).or_default().push(idx);
    }

    let mut kernel_basis = Vec::new();
    for (weight, block) in unknowns_by_weight {
        let local: HashMap<usize, usize> = block.iter().enumerate().map(|(l, &g)| (g, l)).collect();
        let rows = rows_by_weight.get(weight).map(Vec::as_slice).unwrap_or(&[]);
        let mut matrix = RationalMatrix::zeros(rows.len(), block.len());
        for (r, c) in rows.iter().enumerate() {
            for &(u, coeff) in &c.terms {
                let entry = matrix.get(r, local[&u]) + BigRational::from_integer(BigInt::from(coeff));
                matrix.set(r, local[&u], entry);
            }
        }
        for v in rational_kernel(&matrix) {
            let sparse: SparseVector =
                v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(l, x)| (block[l], x)).collect();
            kernel_basis.push(sparse);
        }
    }

    HomBasis {
        shape: antichain.shape(),
        unknowns,
        weight_of_unknown: weights,
        constraint_count: constraints.len(),
        kernel_basis,
    }
}

pub fn tangent_dimension_oracle(antichain: &Antichain) -> usize {
    tangent_hom_space(antichain).dimension()
}

/// Dimension of each nonzero weight space.
pub fn weight_decomposition(basis: &HomBasis) -> Result<BTreeMap<FineWeight, usize>, OracleError> {
    let mut dims = BTreeMap::new();
    for (index, v) in basis.kernel_basis.iter().enumerate() {
        let Some(&(first_idx, _)) = v.first() else { continue };
        let first = &basis.weight_of_unknown[first_idx];
        if let Some(&(other, _)) = v.iter().find(|(u, _)| &basis.weight_of_unknown[*u] != first) {
            return Err(OracleError::MixedWeights {
                index,
                first: first.clone(),
                second: basis.weight_of_unknown[other].clone(),
            });
        }
        *dims.entry(first.clone()).or_insert(0) += 1;
    }
    Ok(dims)
}
