//! The reproduction table: every construction checked against its bound and
//! every fast routine against its slow oracle.

use std::fmt::Write as _;

use neardist::constructions::{
    default_eps1, generate, known_two_distance_set, maximize_m, simplex_sum_set, ConstructionSpec,
    DEFAULT_EPS,
};
use neardist::geometry::{distance, distance_multiset, max_min_ratio};
use neardist::oracle;
use neardist::spectrum::{best_k_windows, turan_number};
use neardist::verification::{
    certify_decomposition, md_table, schuette_bound, verify_k_distance_set, verify_weak_eps_k,
};
use neardist::PointSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Outcome = Result<String, String>;
type Step<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn fail(e: impl ToString) -> String {
    e.to_string()
}

fn stacked_rows() -> Outcome {
    let mut counts = Vec::new();
    for (d, n) in [(2usize, 30usize), (3, 25), (4, 24), (5, 30)] {
        let g = generate(&ConstructionSpec::Stacked {
            d,
            n,
            scale: (n * n) as f64,
        })
        .map_err(fail)?;
        let best = best_k_windows(&g.points, 2, 1.0).map_err(fail)?.count;
        let m = md_table(d - 1)
            .map_err(fail)?
            .value
            .ok_or("m_d not tabulated")?;
        let formula = turan_number(n as u64, u64::from(m) + 1).map_err(fail)?;
        let family = g.meta.expected_family().ok_or("no windows")?;
        let brute = oracle::count_pairs_brute(&g.points, |x| family.contains(x));
        if best != formula || brute != formula {
            return Err(format!(
                "d={d} n={n}: dp {best}, brute {brute}, T = {formula}"
            ));
        }
        counts.push(format!("T({n},{})={formula}", m + 1));
    }
    Ok(counts.join(", "))
}

fn simplex_sums() -> Outcome {
    let eps1 = default_eps1(DEFAULT_EPS);
    for d in 1..=3 {
        for k in 1..=3 {
            let s = simplex_sum_set(d, k, eps1).map_err(fail)?;
            let w = verify_weak_eps_k(&s, DEFAULT_EPS)
                .map_err(fail)?
                .window_count;
            if s.len() != (d + 1).pow(k as u32) || w > k {
                return Err(format!("d={d} k={k}: {} points, {w} windows", s.len()));
            }
        }
    }
    Ok(format!("d, k <= 3 at eps = {DEFAULT_EPS}"))
}

fn clustered() -> Outcome {
    let eps1 = default_eps1(DEFAULT_EPS);
    let mut counts = Vec::new();
    for (d, k, n) in [(1usize, 1usize, 4usize), (1, 2, 8), (2, 1, 9), (2, 2, 27)] {
        let g = generate(&ConstructionSpec::ClusteredTuran { d, k, eps1, n }).map_err(fail)?;
        let family = g.meta.expected_family().ok_or("no windows")?;
        let brute = oracle::count_pairs_brute(&g.points, |x| family.contains(x));
        let s = ((d + 1) as u64).pow(k as u32) + 1;
        let formula = turan_number(n as u64, s).map_err(fail)?;
        if brute != formula {
            return Err(format!("d={d} k={k} n={n}: {brute} pairs, T = {formula}"));
        }
        counts.push(format!("T({n},{s})={formula}"));
    }
    Ok(counts.join(", "))
}

fn certificates() -> Outcome {
    let eps1 = default_eps1(DEFAULT_EPS);
    for d in 1..=3 {
        for k in 1..=3 {
            let s = simplex_sum_set(d, k, eps1).map_err(fail)?;
            let t = certify_decomposition(&s, k, DEFAULT_EPS, 10.0).map_err(fail)?;
            let ok = t.is_certified()
                && t.invariant_violations().is_empty()
                && t.root.bound == ((d + 1) as u64).pow(k as u32);
            if !ok {
                return Err(format!("d={d} k={k}: {:?}", t.failures()));
            }
        }
    }
    Ok("9 trees, D = 10".into())
}

fn mdk() -> Outcome {
    for d in 2..=8 {
        for k in 1..=6 {
            let fast = maximize_m(d, k).map_err(fail)?.value;
            let flat = oracle::m_dk_flat(d, k, false);
            if fast != flat {
                return Err(format!("m({d},{k}) = {fast}, flat scan {flat}"));
            }
        }
    }
    Ok("d <= 8, k <= 6".into())
}

fn random_separated(rng: &mut ChaCha8Rng, dim: usize, n: usize) -> PointSet {
    let side = 2.0 * (n as f64).powf(1.0 / dim as f64) + 1.0;
    let mut pts: Vec<Vec<f64>> = Vec::with_capacity(n);
    while pts.len() < n {
        let c: Vec<f64> = (0..dim).map(|_| rng.random_range(0.0..side)).collect();
        if pts
            .iter()
            .all(|q| distance(q, &c).expect("same dimension") >= 1.0)
        {
            pts.push(c);
        }
    }
    PointSet::new(dim, pts).expect("rectangular")
}

fn dp(rng: &mut ChaCha8Rng) -> Outcome {
    for trial in 0..200 {
        let dim = rng.random_range(1..=3);
        let n = rng.random_range(2..=12);
        let k = rng.random_range(1..=3);
        let length = rng.random_range(0.1..3.0);
        let p = random_separated(rng, dim, n);
        let fast = best_k_windows(&p, k, length).map_err(fail)?.count;
        let values = distance_multiset(&p).map_err(fail)?.values;
        let slow = oracle::best_windows_exhaustive(&values, k, |a| a + length);
        if fast != slow {
            return Err(format!("trial {trial}: dp {fast}, exhaustive {slow}"));
        }
    }
    Ok("200 random sets".into())
}

fn table() -> Outcome {
    for d in 1..=8 {
        let e = md_table(d).map_err(fail)?;
        let v = u64::from(e.value.ok_or("missing value")?);
        if v < e.lower || v > e.upper {
            return Err(format!("m_{d} = {v} outside [{}, {}]", e.lower, e.upper));
        }
    }
    for d in 1..=4 {
        let s = known_two_distance_set(d).map_err(fail)?;
        if !verify_k_distance_set(&s, 2, 1e-9).map_err(fail)?.ok {
            return Err(format!("d={d}: not a two-distance set"));
        }
    }
    Ok("m_1..m_8 within bounds, sets for d <= 4".into())
}

fn schuette(rng: &mut ChaCha8Rng) -> Outcome {
    for d in 2..=5 {
        let bound = schuette_bound(d).map_err(fail)?;
        for _ in 0..1000 {
            let pts = (0..d + 2)
                .map(|_| (0..d).map(|_| rng.random_range(-1.0..1.0)).collect())
                .collect();
            let p = PointSet::new(d, pts).map_err(fail)?;
            let r = max_min_ratio(&p).map_err(fail)?;
            if r < bound - 1e-9 {
                return Err(format!("d={d}: ratio {r} < {bound}"));
            }
        }
    }
    Ok("1000 sets per d = 2..5".into())
}

fn greedy(rng: &mut ChaCha8Rng) -> Outcome {
    for trial in 0..100 {
        let dim = rng.random_range(1..=3);
        let n = rng.random_range(2..=5);
        let eps = rng.random_range(0.01..1.0);
        let p = random_separated(rng, dim, n);
        let fast = verify_weak_eps_k(&p, eps).map_err(fail)?.window_count;
        let values = distance_multiset(&p).map_err(fail)?.values;
        let slow = oracle::min_multiplicative_cover_brute(&values, eps);
        if fast != slow {
            return Err(format!("trial {trial}: greedy {fast}, minimum {slow}"));
        }
    }
    Ok("100 random sets".into())
}

/// Runs every row; randomized rows draw from independent streams of `seed`.
pub fn run_table(seed: u64) -> Vec<Row> {
    let rng = |stream: u64| {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        r.set_stream(stream);
        r
    };
    let rows: [(&'static str, Step<'_>); 9] = [
        (
            "stacked columns meet the Turan count",
            Box::new(stacked_rows),
        ),
        (
            "simplex sums: (d+1)^k points in k windows",
            Box::new(simplex_sums),
        ),
        ("clustered sets meet the Turan count", Box::new(clustered)),
        ("decomposition certificates", Box::new(certificates)),
        ("m(d,k) search vs flat scan", Box::new(mdk)),
        (
            "window DP vs exhaustive placement",
            Box::new(move || dp(&mut rng(6))),
        ),
        ("two-distance table", Box::new(table)),
        (
            "max/min distance ratio bound",
            Box::new(move || schuette(&mut rng(8))),
        ),
        (
            "greedy cover vs minimal cover",
            Box::new(move || greedy(&mut rng(9))),
        ),
    ];
    rows.iter()
        .enumerate()
        .map(|(i, (name, f))| {
            let (passed, detail) = match f() {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            Row {
                id: i + 1,
                name,
                passed,
                detail,
            }
        })
        .collect()
}

pub fn markdown(seed: u64, rows: &[Row]) -> String {
    let mut s = String::new();
    let passed = rows.iter().filter(|r| r.passed).count();
    writeln!(s, "# neardist reproduction\n").unwrap();
    writeln!(s, "seed: {seed}\n").unwrap();
    writeln!(s, "| # | check | result | detail |").unwrap();
    writeln!(s, "|---|-------|--------|--------|").unwrap();
    for r in rows {
        let result = if r.passed { "pass" } else { "FAIL" };
        writeln!(
            s,
            "| {} | {} | {result} | {} |",
            r.id,
            r.name,
            r.detail.replace('|', "/")
        )
        .unwrap();
    }
    writeln!(s, "\n{passed} of {} checks passed.", rows.len()).unwrap();
    s
}
