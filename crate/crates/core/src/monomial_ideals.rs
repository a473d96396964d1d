//! Square-free monomial ideals of `S = k[x_1..x_m, y_1..y_n]` with the
//! bigrading `deg x_i = (1,0)`, `deg y_j = (0,1)`.
//!
//! Membership of a monomial in a square-free monomial ideal only depends on
//! its support, so generators are stored as pairs of 64-bit variable masks.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid_poset::{self, Antichain, GridShape, OrderIdeal, Point, PosetError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("ideals live in different rings: {left} vs {right}")]
    ShapeMismatch { left: GridShape, right: GridShape },
    #[error("variable {var}_{index} does not exist in a ring with shape {shape}")]
    VariableOutOfRange { var: char, index: usize, shape: GridShape },
    #[error("generator {0} does not have bidegree (1,1)")]
    NotConcentratedInPositiveDegrees(SquareFreeMonomial),
    #[error("ideal violates the exchange property: {0}")]
    NotBorelFixed(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bidegree {
    pub d1: usize,
    pub d2: usize,
}

/// A monomial `x^u y^v` with explicit exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub x: Vec<u32>,
    pub y: Vec<u32>,
}

impl Monomial {
    pub fn one(shape: GridShape) -> Self {
        Monomial { x: vec![0; shape.m()], y: vec![0; shape.n()] }
    }

    pub fn bidegree(&self) -> Bidegree {
        Bidegree { d1: self.x.iter().sum::<u32>() as usize, d2: self.y.iter().sum::<u32>() as usize }
    }

    /// Multiplies in place by `x_i` (1-based).
    pub fn mul_x(&mut self, i: usize) {
        self.x[i - 1] += 1;
    }

    /// Multiplies in place by `y_j` (1-based).
    pub fn mul_y(&mut self, j: usize) {
        self.y[j - 1] += 1;
    }

    pub fn support(&self) -> SquareFreeMonomial {
        let mask = |e: &[u32]| e.iter().enumerate().filter(|(_, &v)| v > 0).fold(0u64, |acc, (i, _)| acc | 1 << i);
        SquareFreeMonomial { x: mask(&self.x), y: mask(&self.y) }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (var, exps) in [('x', &self.x), ('y', &self.y)] {
            for (i, &e) in exps.iter().enumerate().filter(|(_, &e)| e > 0) {
                write!(f, "{var}{}", i + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
                wrote = true;
            }
        }
        if !wrote {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// All exponent vectors of length `vars` summing to `degree`.
fn compositions(vars: usize, degree: usize) -> Vec<Vec<u32>> {
    if vars == 0 {
        return if degree == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=degree).rev() {
        for mut rest in compositions(vars - 1, degree - first) {
            rest.insert(0, first as u32);
            out.push(rest);
        }
    }
    out
}

/// Every monomial of bidegree `(d1, d2)`.
pub fn monomials_of_bidegree(shape: GridShape, d1: usize, d2: usize) -> Vec<Monomial> {
    let xs = compositions(shape.m(), d1);
    let ys = compositions(shape.n(), d2);
    xs.iter().flat_map(|x| ys.iter().map(move |y| Monomial { x: x.clone(), y: y.clone() })).collect()
}

/// A square-free monomial, bit `i - 1` of each mask standing for variable `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareFreeMonomial {
    pub x: u64,
    pub y: u64,
}

impl SquareFreeMonomial {
    pub const ONE: SquareFreeMonomial = SquareFreeMonomial { x: 0, y: 0 };

    pub fn x_var(i: usize) -> Self {
        SquareFreeMonomial { x: 1 << (i - 1), y: 0 }
    }

    pub fn y_var(j: usize) -> Self {
        SquareFreeMonomial { x: 0, y: 1 << (j - 1) }
    }

    /// `x_i y_j`
    pub fn edge(i: usize, j: usize) -> Self {
        SquareFreeMonomial { x: 1 << (i - 1), y: 1 << (j - 1) }
    }

    pub fn from_indices(x: &[usize], y: &[usize]) -> Self {
        let mask = |idx: &[usize]| idx.iter().fold(0u64, |acc, &i| acc | 1 << (i - 1));
        SquareFreeMonomial { x: mask(x), y: mask(y) }
    }

    pub fn divides(&self, other: &SquareFreeMonomial) -> bool {
        self.x & !other.x == 0 && self.y & !other.y == 0
    }

    pub fn lcm(&self, other: &SquareFreeMonomial) -> SquareFreeMonomial {
        SquareFreeMonomial { x: self.x | other.x, y: self.y | other.y }
    }

    pub fn bidegree(&self) -> Bidegree {
        Bidegree { d1: self.x.count_ones() as usize, d2: self.y.count_ones() as usize }
    }

    pub fn x_indices(&self) -> Vec<usize> {
        bits(self.x)
    }

    pub fn y_indices(&self) -> Vec<usize> {
        bits(self.y)
    }

    fn fits(&self, shape: GridShape) -> Result<(), IdealError> {
        for (var, mask, limit) in [('x', self.x, shape.m()), ('y', self.y, shape.n())] {
            if let Some(&index) = bits(mask).iter().find(|&&i| i > limit) {
                return Err(IdealError::VariableOutOfRange { var, index, shape });
            }
        }
        Ok(())
    }
}

fn bits(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

impl fmt::Display for SquareFreeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.x == 0 && self.y == 0 {
            return write!(f, "1");
        }
        for i in self.x_indices() {
            write!(f, "x{i}")?;
        }
        for j in self.y_indices() {
            write!(f, "y{j}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorDoc {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

/// JSON form `{"m":.., "n":.., "generators":[{"x":[..],"y":[..]}, ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealDoc {
    pub m: usize,
    pub n: usize,
    pub generators: Vec<GeneratorDoc>,
}

/// A square-free monomial ideal given by its minimal generators, kept
/// sorted so that structural equality is ideal equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SquareFreeIdeal {
    shape: GridShape,
    generators: Vec<SquareFreeMonomial>,
}

impl SquareFreeIdeal {
    /// Builds the ideal generated by `generators`, discarding redundant ones.
    pub fn new(shape: GridShape, generators: impl IntoIterator<Item = SquareFreeMonomial>) -> Result<Self, IdealError> {
        let gens: Vec<_> = generators.into_iter().collect();
        for g in &gens {
            g.fits(shape)?;
        }
        Ok(Self::minimalized(shape, gens))
    }

    pub fn zero(shape: GridShape) -> Self {
        SquareFreeIdeal { shape, generators: Vec::new() }
    }

    fn minimalized(shape: GridShape, mut gens: Vec<SquareFreeMonomial>) -> Self {
        gens.sort_unstable();
        gens.dedup();
        let minimal = gens.iter().copied().filter(|g| !gens.iter().any(|h| h != g && h.divides(g))).collect();
        SquareFreeIdeal { shape, generators: minimal }
    }

    pub fn shape(&self) -> GridShape {
        self.shape
    }

    pub fn generators(&self) -> &[SquareFreeMonomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Membership of any monomial whose support is `support`.
    pub fn contains_support(&self, support: &SquareFreeMonomial) -> bool {
        self.generators.iter().any(|g| g.divides(support))
    }

    pub fn contains(&self, monomial: &Monomial) -> bool {
        self.contains_support(&monomial.support())
    }

    pub fn to_doc(&self) -> IdealDoc {
        IdealDoc {
            m: self.shape.m(),
            n: self.shape.n(),
            generators: self.generators.iter().map(|g| GeneratorDoc { x: g.x_indices(), y: g.y_indices() }).collect(),
        }
    }

    pub fn from_doc(doc: &IdealDoc) -> Result<Self, IdealError> {
        let shape = GridShape::new(doc.m, doc.n)?;
        for g in &doc.generators {
            for (var, idx, limit) in [('x', &g.x, doc.m), ('y', &g.y, doc.n)] {
                if let Some(&index) = idx.iter().find(|&&i| i == 0 || i > limit) {
                    return Err(IdealError::VariableOutOfRange { var, index, shape });
                }
            }
        }
        Self::new(shape, doc.generators.iter().map(|g| SquareFreeMonomial::from_indices(&g.x, &g.y)))
    }

    fn same_ring(&self, other: &SquareFreeIdeal) -> Result<(), IdealError> {
        if self.shape == other.shape {
            Ok(())
        } else {
            Err(IdealError::ShapeMismatch { left: self.shape, right: other.shape })
        }
    }
}

impl fmt::Display for SquareFreeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for SquareFreeIdeal {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_doc().serialize(serializer)
    }
}

/// `J_A`: generated by `x_a y_b` for `(a, b)` in the order ideal of `A`.
pub fn ideal_of_antichain(antichain: &Antichain) -> SquareFreeIdeal {
    ideal_of_order_ideal(&grid_poset::order_ideal(antichain))
}

pub fn ideal_of_order_ideal(order: &OrderIdeal) -> SquareFreeIdeal {
    let mut generators: Vec<_> = order.members().iter().map(|&(a, b)| SquareFreeMonomial::edge(a, b)).collect();
    // distinct and all of bidegree (1,1), hence already minimal
    generators.sort_unstable();
    SquareFreeIdeal { shape: order.shape(), generators }
}

/// Exchange property in both variable groups. Checking generators suffices:
/// `x_i u` in `I` means some generator divides it, and only generators
/// containing `x_i` can fail to also divide `x_h u`.
pub fn is_borel_fixed_radical(ideal: &SquareFreeIdeal) -> bool {
    exchange_violation(ideal).is_none()
}

fn exchange_violation(ideal: &SquareFreeIdeal) -> Option<String> {
    for g in ideal.generators() {
        for i in g.x_indices() {
            for h in 1..i {
                let swapped = SquareFreeMonomial { x: (g.x & !(1 << (i - 1))) | 1 << (h - 1), y: g.y };
                if !ideal.contains_support(&swapped) {
                    return Some(format!("{g} in I but x{h} replacing x{i} gives {swapped} not in I"));
                }
            }
        }
        for j in g.y_indices() {
            for h in 1..j {
                let swapped = SquareFreeMonomial { x: g.x, y: (g.y & !(1 << (j - 1))) | 1 << (h - 1) };
                if !ideal.contains_support(&swapped) {
                    return Some(format!("{g} in I but y{h} replacing y{j} gives {swapped} not in I"));
                }
            }
        }
    }
    None
}

/// The antichain `A` with `J_A = I`, for `I` radical, Borel-fixed and
/// generated in bidegree `(1,1)`.
pub fn antichain_of_ideal(ideal: &SquareFreeIdeal) -> Result<Antichain, IdealError> {
    if let Some(g) = ideal.generators().iter().find(|g| g.bidegree() != Bidegree { d1: 1, d2: 1 }) {
        return Err(IdealError::NotConcentratedInPositiveDegrees(*g));
    }
    if let Some(reason) = exchange_violation(ideal) {
        return Err(IdealError::NotBorelFixed(reason));
    }
    let shape = ideal.shape();
    let edges: Vec<Point> =
        shape.points().filter(|&(a, b)| ideal.contains_support(&SquareFreeMonomial::edge(a, b))).collect();
    Ok(grid_poset::normalize_antichain(&edges, shape)?)
}

pub fn ideal_sum(left: &SquareFreeIdeal, right: &SquareFreeIdeal) -> Result<SquareFreeIdeal, IdealError> {
    left.same_ring(right)?;
    let gens = left.generators.iter().chain(&right.generators).copied().collect();
    Ok(SquareFreeIdeal::minimalized(left.shape, gens))
}

pub fn ideal_intersection(left: &SquareFreeIdeal, right: &SquareFreeIdeal) -> Result<SquareFreeIdeal, IdealError> {
    left.same_ring(right)?;
    let gens = left.generators.iter().flat_map(|g| right.generators.iter().map(move |h| g.lcm(h))).collect();
    Ok(SquareFreeIdeal::minimalized(left.shape, gens))
}

/// The ideals `J_1`, `J_2` of `S` lifting the two halves of the cut:
///
/// `J_1 = (y_b : b <= b_q) + (x_a y_b : a <= a_q, b > b_q, (a,b) in O(A))`
/// `J_2 = (x_a : a <= a_q) + (x_a y_b : a > a_q, b <= b_q, (a,b) in O(A))`
pub fn lift_cut_ideals(antichain: &Antichain) -> Result<(SquareFreeIdeal, SquareFreeIdeal), IdealError> {
    let cut = grid_poset::cut(antichain)?;
    let (aq, bq) = cut.cut_point;
    let shape = antichain.shape();
    let order = grid_poset::order_ideal(antichain);

    let j1 = (1..=bq)
        .map(SquareFreeMonomial::y_var)
        .chain(
            order.members().iter().filter(|&&(a, b)| a <= aq && b > bq).map(|&(a, b)| SquareFreeMonomial::edge(a, b)),
        )
        .collect();
    let j2 = (1..=aq)
        .map(SquareFreeMonomial::x_var)
        .chain(
            order.members().iter().filter(|&&(a, b)| a > aq && b <= bq).map(|&(a, b)| SquareFreeMonomial::edge(a, b)),
        )
        .collect();
    Ok((SquareFreeIdeal::minimalized(shape, j1), SquareFreeIdeal::minimalized(shape, j2)))
}

/// `(x_1, .., x_alpha) + (y_1, .., y_beta)`
pub fn linear_ideal(shape: GridShape, alpha: usize, beta: usize) -> SquareFreeIdeal {
    let gens = (1..=alpha).map(SquareFreeMonomial::x_var).chain((1..=beta).map(SquareFreeMonomial::y_var)).collect();
    SquareFreeIdeal::minimalized(shape, gens)
}

/// Values of the bigraded Hilbert function of `S/I` on `[0, D1] x [0, D2]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertTable {
    #[serde(rename = "D1")]
    pub d1_max: usize,
    #[serde(rename = "D2")]
    pub d2_max: usize,
    /// Row-major by `d1`.
    pub rows: Vec<Vec<u128>>,
}

impl HilbertTable {
    pub fn value(&self, d1: usize, d2: usize) -> u128 {
        self.rows[d1][d2]
    }

    pub fn covers(&self, d1_max: usize, d2_max: usize) -> bool {
        self.d1_max >= d1_max && self.d2_max >= d2_max
    }

    /// The sub-table on `[0, d1_max] x [0, d2_max]`.
    pub fn restrict(&self, d1_max: usize, d2_max: usize) -> HilbertTable {
        HilbertTable { d1_max, d2_max, rows: self.rows[..=d1_max].iter().map(|r| r[..=d2_max].to_vec()).collect() }
    }

    fn zeros(d1_max: usize, d2_max: usize) -> Self {
        HilbertTable { d1_max, d2_max, rows: vec![vec![0; d2_max + 1]; d1_max + 1] }
    }
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Monomials of degree `d` in `exact + free` variables where each of the
/// `exact` variables occurs and the `free` ones are unrestricted.
fn count_with_support(d: usize, exact: usize, free: usize) -> u128 {
    let vars = exact + free;
    if vars == 0 {
        return u128::from(d == 0);
    }
    if d < exact {
        return 0;
    }
    binomial(d + free - 1, vars - 1)
}

fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let current = next?;
        next = if current == 0 { None } else { Some((current - 1) & mask) };
        Some(current)
    })
}

/// Partition of one variable group for support counting. Variables that are
/// generators on their own can never occur; `relevant` ones occur in some
/// other generator; the remaining `free` ones are unconstrained.
struct VariableSplit {
    relevant: u64,
    free: usize,
}

impl VariableSplit {
    fn new(vars: usize, singletons: u64, others: impl Iterator<Item = u64>) -> Self {
        let relevant = others.fold(0, |acc, m| acc | m) & !singletons;
        let free = vars - singletons.count_ones() as usize - relevant.count_ones() as usize;
        VariableSplit { relevant, free }
    }
}

/// Hilbert function of `S/I` on a box, by grouping monomials by support.
///
/// For every allowed x-support pattern on the variables that matter, the
/// admissible y-supports are counted by size; the number of monomials with a
/// given support pattern in a given degree is a binomial coefficient.
pub fn hilbert_table(ideal: &SquareFreeIdeal, d1_max: usize, d2_max: usize) -> HilbertTable {
    let shape = ideal.shape();
    let mut table = HilbertTable::zeros(d1_max, d2_max);

    let x_singletons =
        ideal.generators().iter().filter(|g| g.y == 0 && g.x.count_ones() == 1).fold(0, |acc, g| acc | g.x);
    let gens: Vec<SquareFreeMonomial> =
        ideal.generators().iter().copied().filter(|g| g.x & x_singletons == 0).collect();
    let xs = VariableSplit::new(shape.m(), x_singletons, gens.iter().map(|g| g.x));

    for support in submasks(xs.relevant) {
        let active: Vec<u64> = gens.iter().filter(|g| g.x & !support == 0).map(|g| g.y).collect();
        if active.contains(&0) {
            continue;
        }
        let y_singletons = active.iter().filter(|y| y.count_ones() == 1).fold(0, |acc, y| acc | y);
        let y_rest: Vec<u64> = active.iter().copied().filter(|y| y & y_singletons == 0).collect();
        let ys = VariableSplit::new(shape.n(), y_singletons, y_rest.iter().copied());

        let mut by_size = vec![0u128; ys.relevant.count_ones() as usize + 1];
        for y_support in submasks(ys.relevant) {
            if y_rest.iter().all(|r| r & !y_support != 0) {
                by_size[y_support.count_ones() as usize] += 1;
            }
        }

        let x_exact = support.count_ones() as usize;
        for d1 in 0..=d1_max {
            let x_count = count_with_support(d1, x_exact, xs.free);
            if x_count == 0 {
                continue;
            }
            for d2 in 0..=d2_max {
                let y_count: u128 = by_size
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c > 0)
                    .map(|(k, &c)| c * count_with_support(d2, k, ys.free))
                    .sum();
                table.rows[d1][d2] += x_count * y_count;
            }
        }
    }
    table
}

/// Standard monomials of bidegree `(d1, d2)`: those outside the ideal.
pub fn standard_monomials(ideal: &SquareFreeIdeal, d1: usize, d2: usize) -> Vec<Monomial> {
    monomials_of_bidegree(ideal.shape(), d1, d2).into_iter().filter(|mono| !ideal.contains(mono)).collect()
}
