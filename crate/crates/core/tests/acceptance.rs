//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; exits nonzero on any FAIL.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cs_hilbert::cli::render_dot;
use cs_hilbert::dimensions::hilbert_scheme_dimension;
use cs_hilbert::grid_poset::{cut, enumerate_antichains, order_ideal, Antichain, GridShape, Point};
use cs_hilbert::monomial_ideals::{
    antichain_of_ideal, hilbert_table, ideal_intersection, ideal_of_antichain, ideal_sum, is_borel_fixed_radical,
    lift_cut_ideals, SquareFreeIdeal, SquareFreeMonomial,
};
use cs_hilbert::tangent_combinatorics::{tangent_dimension_formula, FineWeight};
use cs_hilbert::tangent_oracle::{tangent_dimension_oracle, tangent_hom_space, weight_decomposition};

type Verdict = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

fn shape(m: usize, n: usize) -> GridShape {
    GridShape::new(m, n).unwrap()
}

fn within(limit: Duration, start: Instant, summary: String) -> Verdict {
    let elapsed = start.elapsed();
    if elapsed < limit {
        Ok(format!("{summary} in {elapsed:.2?}"))
    } else {
        Err(format!("{summary}, but took {elapsed:.2?} (limit {limit:?})"))
    }
}

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

/// Every antichain of every grid with `1 <= m, n <= 4`.
fn sweep() -> Vec<Antichain> {
    (1..=4).flat_map(|m| (1..=4).map(move |n| (m, n))).flat_map(|(m, n)| enumerate_antichains(shape(m, n))).collect()
}

fn c(n: usize) -> usize {
    n * (n - 1) / 2
}

fn cutting_example() -> Verdict {
    let start = Instant::now();
    let points = vec![(1, 11), (2, 10), (5, 8), (7, 6), (8, 3), (9, 2), (10, 1)];
    let a = Antichain::new(shape(12, 12), points).map_err(|e| e.to_string())?;
    let result = cut(&a).map_err(|e| e.to_string())?;
    ensure(result.q == 4, || format!("threshold {} instead of 4", result.q))?;

    let lift = |ac: &Antichain, emb: cs_hilbert::grid_poset::GridEmbedding| -> Vec<Point> {
        ac.points().iter().map(|&p| emb.to_parent(p)).collect()
    };
    let left = lift(&result.left_antichain, result.left_embedding);
    let right = lift(&result.right_antichain, result.right_embedding);
    ensure(left == vec![(1, 11), (2, 10), (5, 8)], || format!("A' = {left:?}"))?;
    ensure(right == vec![(8, 3), (9, 2), (10, 1)], || format!("A'' = {right:?}"))?;

    let range = |len: usize, offset: usize| (offset + 1, offset + len);
    let left_box = (
        range(result.left_shape.m(), result.left_embedding.x_offset),
        range(result.left_shape.n(), result.left_embedding.y_offset),
    );
    let right_box = (
        range(result.right_shape.m(), result.right_embedding.x_offset),
        range(result.right_shape.n(), result.right_embedding.y_offset),
    );
    ensure(left_box == ((1, 7), (7, 12)), || format!("A' lives on {left_box:?}"))?;
    ensure(right_box == ((8, 12), (1, 6)), || format!("A'' lives on {right_box:?}"))?;
    within(Duration::from_secs(1), start, "q=4, A' on {1..7}x{7..12}, A'' on {8..12}x{1..6}".into())
}

fn graph_example() -> Verdict {
    let start = Instant::now();
    let a = Antichain::new(shape(8, 7), vec![(1, 6), (2, 4), (5, 1)]).map_err(|e| e.to_string())?;
    let dot = render_dot(&a, false);
    let edges: Vec<&str> = dot.lines().filter(|l| l.contains(" -- ")).collect();
    let bold = edges.iter().filter(|l| l.contains("style=bold")).count();
    ensure(edges.len() == 13 && bold == 3, || format!("{} edges, {bold} bold", edges.len()))?;
    let reduced = render_dot(&a, true).lines().filter(|l| l.contains(" -- ")).count();
    ensure(reduced == 3, || format!("antichain-only picture has {reduced} edges"))?;
    within(Duration::from_secs(1), start, "13 edges, 3 bold".into())
}

fn dimension_sweep(cases: &[Antichain]) -> Verdict {
    let start = Instant::now();
    let four_by_four = cases.iter().filter(|a| a.shape() == shape(4, 4)).count();
    ensure(four_by_four == 70, || format!("{four_by_four} antichains of the 4x4 grid"))?;
    for a in cases {
        let formula = tangent_dimension_formula(a).total;
        let oracle = tangent_dimension_oracle(a);
        let (recursion, _) = hilbert_scheme_dimension(a);
        ensure(formula == oracle && oracle == recursion, || {
            format!("{a}: formula {formula}, oracle {oracle}, recursion {recursion}")
        })?;
    }
    within(Duration::from_secs(30), start, format!("{} antichains agree", cases.len()))
}

fn multiplicity_free(cases: &[Antichain]) -> Verdict {
    let mut spaces = 0;
    for a in cases {
        let dims: BTreeMap<FineWeight, usize> =
            weight_decomposition(&tangent_hom_space(a)).map_err(|e| format!("{a}: {e}"))?;
        if let Some((w, d)) = dims.iter().find(|&(_, &d)| d != 1) {
            return Err(format!("{a}: weight {w} has dimension {d}"));
        }
        let oracle: BTreeSet<FineWeight> = dims.into_keys().collect();
        let formula: BTreeSet<FineWeight> = tangent_dimension_formula(a).weights(a).into_iter().collect();
        ensure(oracle == formula, || format!("{a}: weight sets differ"))?;
        spaces += oracle.len();
    }
    Ok(format!("{spaces} weight spaces over {} antichains, all of dimension 1", cases.len()))
}

fn cutting_identities(cases: &[Antichain]) -> Verdict {
    let mut checked = 0;
    for a in cases.iter().filter(|a| cut(a).is_ok()) {
        let (m, n) = (a.shape().m(), a.shape().n());
        let (aq, bq) = cut(a).unwrap().cut_point;
        let (j1, j2) = lift_cut_ideals(a).map_err(|e| e.to_string())?;
        let ja = ideal_of_antichain(a);
        let meet = ideal_intersection(&j1, &j2).map_err(|e| e.to_string())?;
        ensure(meet == ja, || format!("{a}: J_1 meet J_2 = {meet}"))?;

        let join = ideal_sum(&j1, &j2).map_err(|e| e.to_string())?;
        let linear = SquareFreeIdeal::new(
            a.shape(),
            (1..=aq).map(SquareFreeMonomial::x_var).chain((1..=bq).map(SquareFreeMonomial::y_var)),
        )
        .map_err(|e| e.to_string())?;
        ensure(join == linear, || format!("{a}: J_1 + J_2 = {join}"))?;

        let [h, h1, h2, h12] = [&ja, &j1, &j2, &join].map(|i| hilbert_table(i, m, n));
        for d1 in 0..=m {
            for d2 in 0..=n {
                let lhs = h.value(d1, d2) + h12.value(d1, d2);
                let rhs = h1.value(d1, d2) + h2.value(d1, d2);
                ensure(lhs == rhs, || format!("{a}: exact sequence fails at ({d1},{d2})"))?;
            }
        }
        checked += 1;
    }
    Ok(format!("{checked} antichains with a positive threshold"))
}

fn closed_form_identity() -> Verdict {
    let mut checked = 0;
    for m in 3..=16 {
        for n in (3..=16).filter(|&n| m.min(n) <= 8) {
            for s in 2..m.min(n) {
                let target = (s + 1) * (m + n) - (s + 1) * (s + 1) - 1;
                let count = s * m - c(s + 1) + s * n - c(s + 1) + (n - s) + (s - 2) + (m - s);
                let image = (m - s - 1) * (s + 1) + (n - s - 1) * (s + 1) + (s + 1) * (s + 1) - 1;
                ensure(target == count && target == image, || {
                    format!("(m,n,s)=({m},{n},{s}): {target}, {count}, {image}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} triples (m, n, s)"))
}

fn single_point_base_case() -> Verdict {
    let start = Instant::now();
    for m in 2..=6 {
        for n in 2..=6 {
            let a = Antichain::new(shape(m, n), vec![(1, 1)]).map_err(|e| e.to_string())?;
            let formula = tangent_dimension_formula(&a).total;
            let oracle = tangent_dimension_oracle(&a);
            let (recursion, _) = hilbert_scheme_dimension(&a);
            ensure([formula, oracle, recursion] == [m * n - 1; 3], || {
                format!("{m}x{n}: formula {formula}, oracle {oracle}, recursion {recursion}")
            })?;
        }
    }
    within(Duration::from_secs(5), start, "dimension mn-1 for 2 <= m, n <= 6".into())
}

fn borel_correspondence() -> Verdict {
    let start = Instant::now();
    let grid = shape(3, 3);
    let edges: Vec<Point> = grid.points().collect();
    let images: BTreeSet<Vec<SquareFreeMonomial>> =
        enumerate_antichains(grid).map(|a| ideal_of_antichain(&a).generators().to_vec()).collect();
    let mut fixed = 0;
    for mask in 0u32..1 << edges.len() {
        let gens = edges
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &(a, b))| SquareFreeMonomial::edge(a, b));
        let ideal = SquareFreeIdeal::new(grid, gens).map_err(|e| e.to_string())?;
        let borel = is_borel_fixed_radical(&ideal);
        let is_image = images.contains(ideal.generators());
        ensure(borel == is_image, || format!("{ideal}: Borel-fixed {borel}, image {is_image}"))?;
        if borel {
            let back = antichain_of_ideal(&ideal).map_err(|e| e.to_string())?;
            ensure(ideal_of_antichain(&back) == ideal, || format!("{ideal}: round trip gave {back}"))?;
            ensure(order_ideal(&back).len() == ideal.generators().len(), || format!("{ideal}: size mismatch"))?;
            fixed += 1;
        }
    }
    ensure(fixed == 20, || format!("{fixed} Borel-fixed ideals instead of 20"))?;
    within(Duration::from_secs(5), start, "20 of 512 candidates are Borel-fixed, all images".into())
}

fn main() -> ExitCode {
    let cases = sweep();
    let criteria: Vec<Criterion> = vec![
        ("1 cutting example (12x12)", Box::new(cutting_example)),
        ("2 bipartite graph example (8x7)", Box::new(graph_example)),
        ("3 formula = oracle = recursion up to 4x4", Box::new(|| dimension_sweep(&cases))),
        ("4 multiplicity-free weight spaces", Box::new(|| multiplicity_free(&cases))),
        ("5 cutting identities", Box::new(|| cutting_identities(&cases))),
        ("6 closed-form identity", Box::new(closed_form_identity)),
        ("7 single-point base case", Box::new(single_point_base_case)),
        ("8 Borel correspondence on 3x3", Box::new(borel_correspondence)),
    ];
    let mut failures = 0;
    for (name, run) in &criteria {
        match run() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
