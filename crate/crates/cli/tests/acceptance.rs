//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit status if
//! any criterion fails.

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use gtc_core::distance::{self, Budget, DistanceError};
use gtc_core::exponents::{lattice_points, reduce_set, sigma_fixed_count};
use gtc_core::linalg::dot;
use gtc_core::structure::{self, duality_report, equals_dual_as_row_spaces, inner_product_basis};
use gtc_core::{CodeSpec, Codeword, ExponentSet, FieldElement, Grid, Matrix, Polytope, Torus};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

const PRINTED_ORDER: [[u32; 2]; 16] = [
    [0, 0], [0, 2], [2, 0], [2, 2], [0, 1], [0, 3], [1, 0], [3, 0],
    [1, 1], [3, 3], [1, 2], [3, 2], [1, 3], [3, 1], [2, 1], [2, 3],
];

#[rustfmt::skip]
const PRINTED_M: [[u32; 16]; 16] = [
    [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    [1, 1, 1, 1, 4, 4, 1, 1, 4, 4, 1, 1, 4, 4, 4, 4],
    [1, 1, 1, 1, 1, 1, 4, 4, 4, 4, 4, 4, 4, 4, 1, 1],
    [1, 1, 1, 1, 4, 4, 4, 4, 1, 1, 4, 4, 1, 1, 4, 4],
    [1, 4, 1, 4, 2, 3, 1, 1, 2, 3, 4, 4, 3, 2, 2, 3],
    [1, 4, 1, 4, 3, 2, 1, 1, 3, 2, 4, 4, 2, 3, 3, 2],
    [1, 1, 4, 4, 1, 1, 2, 3, 2, 3, 2, 3, 2, 3, 4, 4],
    [1, 1, 4, 4, 1, 1, 3, 2, 3, 2, 3, 2, 3, 2, 4, 4],
    [1, 4, 4, 1, 2, 3, 2, 3, 4, 4, 3, 2, 1, 1, 3, 2],
    [1, 4, 4, 1, 3, 2, 3, 2, 4, 4, 2, 3, 1, 1, 2, 3],
    [1, 1, 4, 4, 4, 4, 2, 3, 3, 2, 2, 3, 3, 2, 1, 1],
    [1, 1, 4, 4, 4, 4, 3, 2, 2, 3, 3, 2, 2, 3, 1, 1],
    [1, 4, 4, 1, 3, 2, 2, 3, 1, 1, 3, 2, 4, 4, 2, 3],
    [1, 4, 4, 1, 2, 3, 3, 2, 1, 1, 2, 3, 4, 4, 3, 2],
    [1, 4, 1, 4, 2, 3, 4, 4, 3, 2, 1, 1, 2, 3, 2, 3],
    [1, 4, 1, 4, 3, 2, 4, 4, 2, 3, 1, 1, 3, 2, 3, 2],
];

#[rustfmt::skip]
const PRINTED_I_SIGMA: [[u32; 16]; 16] = [
    [1,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0],
    [0,1,0,0,0,0,0,0,0,0,0,0,0,0,0,0],
    [0,0,1,0,0,0,0,0,0,0,0,0,0,0,0,0],
    [0,0,0,1,0,0,0,0,0,0,0,0,0,0,0,0],
    [0,0,0,0,0,1,0,0,0,0,0,0,0,0,0,0],
    [0,0,0,0,1,0,0,0,0,0,0,0,0,0,0,0],
    [0,0,0,0,0,0,0,1,0,0,0,0,0,0,0,0],
    [0,0,0,0,0,0,1,0,0,0,0,0,0,0,0,0],
    [0,0,0,0,0,0,0,0,0,1,0,0,0,0,0,0],
    [0,0,0,0,0,0,0,0,1,0,0,0,0,0,0,0],
    [0,0,0,0,0,0,0,0,0,0,0,1,0,0,0,0],
    [0,0,0,0,0,0,0,0,0,0,1,0,0,0,0,0],
    [0,0,0,0,0,0,0,0,0,0,0,0,0,1,0,0],
    [0,0,0,0,0,0,0,0,0,0,0,0,1,0,0,0],
    [0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,1],
    [0,0,0,0,0,0,0,0,0,0,0,0,0,0,1,0],
];

const EXAMPLE_U: &str = "0,0;1,0;2,0;0,1;1,1;2,1";
const EXAMPLE_D: usize = 6;

fn torus(q: u32, r: usize) -> Arc<Torus> {
    Torus::build(q, r).expect("valid (q, r)")
}

fn random_set(rng: &mut ChaCha8Rng, grid: Grid) -> ExponentSet {
    let keep: Vec<bool> = (0..grid.len()).map(|_| rng.gen_bool(0.5)).collect();
    ExponentSet::from_vectors(
        grid,
        grid.iter_lex().zip(keep).filter(|(_, b)| *b).map(|(u, _)| u),
    )
}

fn random_set_of_size(rng: &mut ChaCha8Rng, grid: Grid, k: usize) -> ExponentSet {
    let picks = rand::seq::index::sample(rng, grid.len(), k);
    ExponentSet::from_vectors(grid, picks.into_iter().map(|i| grid.lex_unrank(i)))
}

fn all_subsets(grid: Grid) -> Vec<ExponentSet> {
    let pts: Vec<_> = grid.iter_lex().collect();
    (0u64..1 << pts.len())
        .map(|mask| {
            ExponentSet::from_vectors(
                grid,
                pts.iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, u)| u.clone()),
            )
        })
        .collect()
}

fn random_message(rng: &mut ChaCha8Rng, q: u32, k: usize, full_support: bool) -> Vec<FieldElement> {
    (0..k)
        .map(|_| {
            let lo = u32::from(full_support);
            FieldElement::from_index(rng.gen_range(lo..q))
        })
        .collect()
}

fn generator_or_empty(spec: &CodeSpec) -> Matrix {
    spec.generator_matrix().unwrap_or_else(|_| Matrix::zeros(0, spec.n()))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_gtc"))
        .args(["matrix", "--q", "5", "--r", "2"])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure!(out.status.success(), "gtc matrix exited with {}", out.status);
    let doc: serde_json::Value =
        serde_json::from_slice(&out.stdout).map_err(|e| format!("bad JSON: {e}"))?;
    ensure!(doc["alpha"] == 2, "alpha = {}", doc["alpha"]);
    let m: Vec<Vec<u32>> = serde_json::from_value(doc["M"].clone()).map_err(|e| e.to_string())?;
    let i_sigma: Vec<Vec<u32>> =
        serde_json::from_value(doc["I_sigma"].clone()).map_err(|e| e.to_string())?;
    let order: Vec<String> =
        serde_json::from_value(doc["order"].clone()).map_err(|e| e.to_string())?;
    ensure!(m.len() == 16 && m.iter().all(|r| r.len() == 16), "M is not 16x16");
    ensure!(
        (0..16).all(|a| (0..16).all(|b| m[a][b] == m[b][a])),
        "M is not symmetric"
    );
    // permutation from the printed order to ours
    let perm: Vec<usize> = PRINTED_ORDER
        .iter()
        .map(|u| {
            let key = format!("{},{}", u[0], u[1]);
            order.iter().position(|o| *o == key).expect("every point listed")
        })
        .collect();
    for a in 0..16 {
        for b in 0..16 {
            ensure!(
                m[perm[a]][perm[b]] == PRINTED_M[a][b],
                "entry ({a},{b}) differs from the printed matrix"
            );
        }
    }
    let field = gtc_core::make_field(5).map_err(|e| e.to_string())?;
    let mm = Matrix::from_indices(&m);
    let gram = mm.mul(&field, &mm.transpose()).to_indices();
    for a in 0..16 {
        for b in 0..16 {
            ensure!(
                gram[perm[a]][perm[b]] == PRINTED_I_SIGMA[a][b],
                "M M^t differs from I_sigma at ({a},{b})"
            );
            ensure!(
                i_sigma[perm[a]][perm[b]] == PRINTED_I_SIGMA[a][b],
                "emitted I_sigma differs at ({a},{b})"
            );
        }
    }
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!("16x16 matrix and Gram product match exactly in {elapsed:?}"))
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut checked = 0;
    for q in [3u32, 4, 5, 7, 8, 9] {
        for r in 1..=2 {
            let t = torus(q, r);
            let field = t.field();
            for _ in 0..20 {
                let u = random_set(&mut rng, t.grid());
                let spec = CodeSpec::new(Arc::clone(&t), u.clone()).map_err(|e| e.to_string())?;
                let dual = structure::dual_code(&spec);
                let g = generator_or_empty(&spec);
                let h = generator_or_empty(&dual);
                ensure!(
                    g.mul(field, &h.transpose()).is_zero(),
                    "G_U G_perp^t != 0 for q={q} r={r} U={u}"
                );
                ensure!(u.len() + dual.k() == t.n(), "dimension law fails for U={u}");
                ensure!(
                    structure::dual_code(&dual).u() == &u,
                    "double dual differs for U={u}"
                );
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} random codes"))
}

fn criterion_3() -> Outcome {
    let mut pairs = 0;
    for (q, r) in [(5u32, 2usize), (7, 1)] {
        let t = torus(q, r);
        let pts = t.order().points();
        let words: Vec<Codeword> = pts.iter().map(|u| t.ev(u)).collect();
        for (u, eu) in pts.iter().zip(&words) {
            for (v, evv) in pts.iter().zip(&words) {
                let literal = dot(t.field(), eu.values(), evv.values());
                ensure!(
                    inner_product_basis(&t, u, v) == literal,
                    "q={q} r={r} u={u} v={v}"
                );
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (q, r) in [(5u32, 2usize), (4, 3)] {
        let t = torus(q, r);
        let field = t.field();
        let grid = t.grid();
        for trial in 0..50 {
            let k = rng.gen_range(1..=t.n());
            let u = random_set_of_size(&mut rng, grid, k);
            let spec = CodeSpec::new(Arc::clone(&t), u).map_err(|e| e.to_string())?;
            let msg = random_message(&mut rng, q, k, false);
            let c = spec.encode(&msg).map_err(|e| e.to_string())?;
            let a: Vec<i64> = (0..r).map(|_| rng.gen_range(-10..10)).collect();
            let shifted = t.shift(&c, &a).map_err(|e| e.to_string())?;
            ensure!(
                spec.is_codeword(&shifted).map_err(|e| e.to_string())?,
                "shift {a:?} left the code (q={q} r={r} trial {trial})"
            );
            let b = grid.lex_unrank(rng.gen_range(0..t.n()));
            let basis = t.ev(&b);
            let a_red = grid.reduce(&a);
            let scale = field.alpha_pow(-(grid.pairing(&b, &a_red) as i64));
            ensure!(
                t.shift(&basis, &a).map_err(|e| e.to_string())? == basis.scale(field, scale),
                "shift(ev(Y^{b}), {a:?}) is not alpha^-<u,a> ev(Y^u)"
            );
        }
    }
    Ok("100 triples".into())
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    for (q, r) in [(5u32, 2usize), (3, 3)] {
        let t = torus(q, r);
        let sign = t.field().minus_one_pow(r);
        let pts = t.order().points();
        let words: Vec<Codeword> = pts.iter().map(|u| t.ev(u)).collect();
        for (i, a) in words.iter().enumerate() {
            for (j, b) in words.iter().enumerate() {
                let prod = t.convolve(a, b).map_err(|e| e.to_string())?;
                if i == j {
                    ensure!(prod == a.scale(t.field(), sign), "u = v = {} not scaled", pts[i]);
                } else {
                    ensure!(prod.is_zero(), "u={} v={} product nonzero", pts[i], pts[j]);
                }
                pairs += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    Ok(format!("{pairs} pairs in {elapsed:?}"))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let qs = [3u32, 4, 5, 7];
    for trial in 0..100 {
        let q = qs[rng.gen_range(0..qs.len())];
        let r = rng.gen_range(1..=2);
        let t = torus(q, r);
        let k = rng.gen_range(1..=t.n());
        let u = random_set_of_size(&mut rng, t.grid(), k);
        let spec = CodeSpec::new(Arc::clone(&t), u.clone()).map_err(|e| e.to_string())?;
        let mut gens = vec![spec
            .encode(&random_message(&mut rng, q, k, true))
            .map_err(|e| e.to_string())?];
        for _ in 0..rng.gen_range(0..3) {
            gens.push(
                spec.encode(&random_message(&mut rng, q, k, false))
                    .map_err(|e| e.to_string())?,
            );
        }
        let got = structure::ideal_to_u(&t, &gens).map_err(|e| e.to_string())?;
        ensure!(got == u, "trial {trial}: q={q} r={r} expected {u}, got {got}");
    }
    Ok("100 recoveries".into())
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let budget = Budget::default();
    let check = |spec: &CodeSpec| -> Result<(), String> {
        let ex = distance::min_distance_exhaustive(spec, &budget).map_err(|e| e.to_string())?;
        let cr = distance::min_distance_column_rank(spec, &budget).map_err(|e| e.to_string())?;
        ensure!(ex.d == cr.d, "U={}: exhaustive {} vs column-rank {}", spec.u(), ex.d, cr.d);
        // the certificate is monotone in d, so its boundary decides every d
        let mut targets = vec![1, ex.d];
        if ex.d < spec.n() {
            targets.push(ex.d + 1);
        }
        for d in targets {
            let holds = distance::certify_lower_bound(spec, d, &budget).map_err(|e| e.to_string())?;
            ensure!(holds == (d <= ex.d), "U={}: certify({d}) = {holds}, d = {}", spec.u(), ex.d);
        }
        Ok(())
    };
    let t4 = torus(4, 1);
    let mut count = 0;
    for u in all_subsets(t4.grid()) {
        let spec = CodeSpec::new(Arc::clone(&t4), u).map_err(|e| e.to_string())?;
        if spec.k() == 0 {
            ensure!(
                distance::min_distance_exhaustive(&spec, &budget) == Err(DistanceError::EmptyCode)
                    && distance::min_distance_column_rank(&spec, &budget)
                        == Err(DistanceError::EmptyCode),
                "empty U must be rejected by both engines"
            );
        } else {
            check(&spec)?;
        }
        count += 1;
    }
    let t5 = torus(5, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let k = rng.gen_range(1..=4);
        let spec = CodeSpec::new(Arc::clone(&t5), random_set_of_size(&mut rng, t5.grid(), k))
            .map_err(|e| e.to_string())?;
        check(&spec)?;
        count += 1;
    }
    let example = CodeSpec::parse(Arc::clone(&t5), EXAMPLE_U).map_err(|e| e.to_string())?;
    check(&example)?;
    let d = distance::min_distance_exhaustive(&example, &budget).map_err(|e| e.to_string())?.d;
    ensure!(d == EXAMPLE_D, "reference code d = {d}, frozen value {EXAMPLE_D}");
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!("{count} codes plus reference d = {d}, {elapsed:?}"))
}

fn criterion_8() -> Outcome {
    let mut count = 0;
    for r in 1..=2 {
        let t = torus(3, r);
        for u in all_subsets(t.grid()) {
            let spec = CodeSpec::new(Arc::clone(&t), u).map_err(|e| e.to_string())?;
            let rep = duality_report(&spec);
            ensure!(!rep.self_dual, "q=3 r={r} U={} reported self-dual", spec.u());
            ensure!(
                !equals_dual_as_row_spaces(&spec),
                "q=3 r={r} U={} equals its dual as a row space",
                spec.u()
            );
            if rep.self_orthogonal {
                let bound = spec.n() / 2 - (1 << (r - 1));
                ensure!(spec.k() <= bound, "self-orthogonal U={} exceeds n/2 - 2^(r-1)", spec.u());
            }
            count += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let qs = [4u32, 5, 7];
    for _ in 0..500 {
        let q = qs[rng.gen_range(0..qs.len())];
        let r = rng.gen_range(1..=2);
        let t = torus(q, r);
        let spec = CodeSpec::new(Arc::clone(&t), random_set(&mut rng, t.grid()))
            .map_err(|e| e.to_string())?;
        ensure!(!duality_report(&spec).self_dual, "q={q} r={r} U={} self-dual", spec.u());
        count += 1;
    }
    for q in 3u32..=16 {
        if gtc_core::field::prime_power(q as u64).is_none() {
            continue;
        }
        for r in 1..=4 {
            let expected = if q % 2 == 1 { 1usize << r } else { 1 };
            let got = sigma_fixed_count(Grid::new(q, r).map_err(|e| e.to_string())?);
            ensure!(got == expected, "q={q} r={r}: {got} fixed points, expected {expected}");
        }
    }
    Ok(format!("{count} codes, fixed-point counts for q <= 16, r <= 4"))
}

fn criterion_9() -> Outcome {
    let t = torus(5, 2);
    let rect = Polytope::rectangle(&[[0, 2], [0, 1]]);
    let pts = lattice_points(&rect).map_err(|e| e.to_string())?;
    let spec = CodeSpec::new(Arc::clone(&t), reduce_set(t.grid(), &pts)).map_err(|e| e.to_string())?;
    ensure!(spec.k() == 6, "rectangle gives k = {}", spec.k());
    let example = CodeSpec::parse(Arc::clone(&t), EXAMPLE_U).map_err(|e| e.to_string())?;
    let g = spec.generator_matrix().map_err(|e| e.to_string())?;
    let ge = example.generator_matrix().map_err(|e| e.to_string())?;
    ensure!(g.same_row_space(t.field(), &ge), "rectangle code differs from the reference code");

    let t1 = torus(5, 1);
    let seg = lattice_points(&Polytope::rectangle(&[[0, 4]])).map_err(|e| e.to_string())?;
    let u = reduce_set(t1.grid(), &seg);
    ensure!(seg.len() == 5 && u.len() == 4, "segment: {} points, k = {}", seg.len(), u.len());

    // the same through the CLI
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let file = dir.path().join("rect.json");
    std::fs::write(&file, r#"{"r":2,"ineqs":[],"bounds":[[0,2],[0,1]]}"#).map_err(|e| e.to_string())?;
    let out = Command::new(env!("CARGO_BIN_EXE_gtc"))
        .args(["polytope", "--q", "5", "--file"])
        .arg(&file)
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(out.status.success(), "gtc polytope failed");
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    ensure!(doc["k"] == 6 && doc["lattice_points"] == 6, "CLI reported {doc}");
    Ok("rectangle k = 6 matches the reference code; segment collapses 5 -> 4".into())
}

fn criterion_10() -> Outcome {
    let budget = Budget::default();
    let check = |spec: &CodeSpec| -> Result<(), String> {
        let w = distance::weight_distribution(spec, &budget).map_err(|e| e.to_string())?;
        let wd = distance::weight_distribution(&spec.dual_spec(), &budget).map_err(|e| e.to_string())?;
        let predicted = distance::macwilliams_transform(&w, spec.field().q())
            .ok_or_else(|| format!("U={}: transform is not integral", spec.u()))?;
        ensure!(predicted == wd.counts(), "U={}: {predicted:?} vs {:?}", spec.u(), wd.counts());
        Ok(())
    };
    let mut count = 0;
    for r in 1..=2 {
        let t = torus(3, r);
        for u in all_subsets(t.grid()) {
            check(&CodeSpec::new(Arc::clone(&t), u).map_err(|e| e.to_string())?)?;
            count += 1;
        }
    }
    let t = torus(4, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..10 {
        check(&CodeSpec::new(Arc::clone(&t), random_set(&mut rng, t.grid())).map_err(|e| e.to_string())?)?;
        count += 1;
    }
    Ok(format!("{count} code/dual pairs"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("reference matrix reproduction", criterion_1),
        ("duality suite", criterion_2),
        ("bilinear form closed form", criterion_3),
        ("multicyclic invariance", criterion_4),
        ("convolution algebra", criterion_5),
        ("ideal recovery", criterion_6),
        ("distance-engine agreement", criterion_7),
        ("no self-dual codes", criterion_8),
        ("polytope reduction", criterion_9),
        ("MacWilliams cross-check", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match run() {
            Ok(note) => println!("PASS criterion {:>2}: {name} ({note}; {:?})", i + 1, start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
