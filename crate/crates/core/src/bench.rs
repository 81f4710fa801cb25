//! Randomised timing runs for reduction and orbit representatives over
//! SL₂(Q₅).
//!
//! Entries are drawn as `p^e · u` with `e` uniform in `[-max_val, max_val]`
//! and `u` a uniform unit modulo `p^N`; `d` is solved from `ad - bc = 1` and
//! the draw is repeated if `|v(d)| > max_val`. Each trial has its own ChaCha
//! stream derived from the master seed, so runs are reproducible.

use std::collections::HashMap;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::RandBigInt;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bttree::{BruhatTitsTree, Vertex};
use crate::error::Result;
use crate::fundamental::{to_fundamental_domain, ReducedBasis};
use crate::nielsen::reduce;
use crate::padic::{PAdic, PadicContext};
use crate::projlinear::ProjMatrix;
use crate::treeaction::{translation_length, TreeAction};

pub const BENCH_PRIME: u64 = 5;
pub const BENCH_PRECISION: u32 = 1000;
pub const MAX_VALUATION: i64 = 10;

/// Give up on finding a free basis of the requested size after this many
/// draws.
const MAX_BASIS_DRAWS: usize = 1000;

pub const BASIS_POWER: u32 = 4;

/// `p^e · u` with `e ∈ [-max_val, max_val]` and `u` a uniform unit.
pub fn random_entry<R: Rng + ?Sized>(ctx: &Arc<PadicContext>, rng: &mut R, max_val: i64) -> PAdic {
    let modulus = ctx.pow(ctx.precision());
    loop {
        let u = rng.gen_biguint_below(modulus.as_ref());
        if !(&u % ctx.prime()).is_zero() {
            let e = rng.gen_range(-max_val..=max_val);
            return PAdic::from_unit(ctx, e, &u).expect("unit");
        }
    }
}

/// A random element of SL₂(Q_p) with entry valuations in `[-max_val, max_val]`.
pub fn random_sl2<R: Rng + ?Sized>(
    ctx: &Arc<PadicContext>,
    rng: &mut R,
    max_val: i64,
) -> ProjMatrix {
    loop {
        let a = random_entry(ctx, rng, max_val);
        let b = random_entry(ctx, rng, max_val);
        let c = random_entry(ctx, rng, max_val);
        let Ok(d) = PAdic::one(ctx).add(&b.mul(&c).unwrap()).unwrap().div(&a) else {
            continue;
        };
        if d.is_zero_to_precision() || d.valuation().map_or(true, |v| v.abs() > max_val) {
            continue;
        }
        if let Ok(m) = ProjMatrix::new(a, b, c, d) {
            return m;
        }
    }
}

/// End of a non-backtracking random walk of length `d` from `v₀`.
pub fn random_vertex<R: Rng + ?Sized>(
    tree: &BruhatTitsTree,
    rng: &mut R,
    d: u64,
) -> Result<Vertex> {
    let mut prev: Option<Vertex> = None;
    let mut cur = tree.base_vertex();
    for _ in 0..d {
        let options: Vec<Vertex> = tree
            .neighbors(&cur)?
            .into_iter()
            .map(|(_, v)| v)
            .filter(|v| Some(v) != prev.as_ref())
            .collect();
        let next = options[rng.gen_range(0..options.len())].clone();
        prev = Some(std::mem::replace(&mut cur, next));
    }
    Ok(cur)
}

/// A random hyperbolic draw raised to the power `BASIS_POWER`.
fn powered_hyperbolic<R: Rng + ?Sized>(tree: &BruhatTitsTree, rng: &mut R) -> Result<ProjMatrix> {
    loop {
        let g = random_sl2(tree.context(), rng, MAX_VALUATION);
        if translation_length(tree, &g)? == 0 {
            continue;
        }
        let mut h = g.clone();
        for _ in 1..BASIS_POWER {
            h = h.compose(&g)?;
        }
        return Ok(h);
    }
}

/// A strongly reduced basis of exactly `size` elements.
///
/// Sets of five or more plain draws almost never generate a free group, so
/// each generator is a hyperbolic draw raised to the power
/// [`BASIS_POWER`], which lengthens translation relative to axis overlap.
/// Sets that still fail to reduce to a free basis of full rank are
/// redrawn; returns `None` after [`MAX_BASIS_DRAWS`] failures.
pub fn random_reduced_basis<R: Rng + ?Sized>(
    tree: &BruhatTitsTree,
    rng: &mut R,
    size: usize,
) -> Result<Option<ReducedBasis<ProjMatrix>>> {
    for _ in 0..MAX_BASIS_DRAWS {
        let gens = (0..size)
            .map(|_| powered_hyperbolic(tree, rng))
            .collect::<Result<Vec<_>>>()?;
        match reduce(tree, &gens) {
            Ok(out) if out.flag.is_free() && out.basis.len() == size => {
                return ReducedBasis::from_outcome(tree, out).map(Some);
            }
            Ok(_) => {}
            Err(e) if e.is_precision_exhausted() => {}
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

fn trial_rng(seed: u64, table: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((table << 32) | trial);
    rng
}

fn bench_tree() -> BruhatTitsTree {
    BruhatTitsTree::new(PadicContext::new(BENCH_PRIME, BENCH_PRECISION).expect("valid context"))
}

/// One row of the reduction table.
#[derive(Clone, Debug, PartialEq)]
pub struct ReduceRow {
    pub size: usize,
    pub trials: usize,
    pub mean_seconds: f64,
    pub mean_iterations: f64,
    pub mean_seconds_per_iteration: f64,
    pub elliptic: usize,
    pub aborted: usize,
}

/// Times the reduction of `trials` random sets of each size.
pub fn reduce_table(sizes: &[usize], trials: usize, seed: u64) -> Result<Vec<ReduceRow>> {
    let tree = bench_tree();
    let mut rows = Vec::new();
    if trials == 0 {
        return Ok(rows);
    }
    for &size in sizes {
        let (mut secs, mut iters, mut per_iter) = (0.0, 0.0, 0.0);
        let (mut elliptic, mut aborted, mut done) = (0, 0, 0);
        for t in 0..trials {
            let mut rng = trial_rng(seed, 1, (size as u64) << 16 | t as u64);
            let gens: Vec<ProjMatrix> = (0..size)
                .map(|_| random_sl2(tree.context(), &mut rng, MAX_VALUATION))
                .collect();
            let start = Instant::now();
            match reduce(&tree, &gens) {
                Ok(out) => {
                    let s = start.elapsed().as_secs_f64();
                    secs += s;
                    iters += out.iterations as f64;
                    per_iter += s / out.iterations.max(1) as f64;
                    done += 1;
                    if !out.flag.is_free() {
                        elliptic += 1;
                    }
                }
                Err(e) if e.is_precision_exhausted() => aborted += 1,
                Err(e) => return Err(e),
            }
        }
        let n = done.max(1) as f64;
        rows.push(ReduceRow {
            size,
            trials,
            mean_seconds: secs / n,
            mean_iterations: iters / n,
            mean_seconds_per_iteration: per_iter / n,
            elliptic,
            aborted,
        });
    }
    Ok(rows)
}

/// One row of an orbit-representative table.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitRow {
    pub size: usize,
    pub distance: u64,
    pub runs: usize,
    pub mean_seconds: f64,
}

/// Times orbit representatives over all pairings of `trials` bases and
/// `trials` vertices, for each `(size, distance)`. Bases depend only on the
/// size and vertices only on the distance, so rows are comparable.
pub fn orbit_table(configs: &[(usize, u64)], trials: usize, seed: u64) -> Result<Vec<OrbitRow>> {
    let tree = bench_tree();
    let mut rows = Vec::new();
    if trials == 0 {
        return Ok(rows);
    }
    let mut bases: HashMap<usize, Vec<ReducedBasis<ProjMatrix>>> = HashMap::new();
    for &(size, distance) in configs {
        if let std::collections::hash_map::Entry::Vacant(e) = bases.entry(size) {
            let mut drawn = Vec::with_capacity(trials);
            for t in 0..trials {
                let mut rng = trial_rng(seed, 2, (size as u64) << 16 | t as u64);
                if let Some(b) = random_reduced_basis(&tree, &mut rng, size)? {
                    drawn.push(b);
                }
            }
            e.insert(drawn);
        }
        let mut vertices = Vec::with_capacity(trials);
        for t in 0..trials {
            let mut rng = trial_rng(seed, 3, distance << 16 | t as u64);
            vertices.push(random_vertex(&tree, &mut rng, distance)?);
        }
        let mut secs = 0.0;
        let mut runs = 0;
        for b in &bases[&size] {
            for w in &vertices {
                let start = Instant::now();
                to_fundamental_domain(&tree, b, w)?;
                secs += start.elapsed().as_secs_f64();
                runs += 1;
            }
        }
        rows.push(OrbitRow {
            size,
            distance,
            runs,
            mean_seconds: secs / runs.max(1) as f64,
        });
    }
    Ok(rows)
}

/// One CSV line; fields that do not apply to a table are left empty.
#[derive(Serialize)]
struct CsvRow {
    table: &'static str,
    generators: usize,
    distance: Option<u64>,
    runs: usize,
    mean_seconds: f64,
    mean_iterations: Option<f64>,
    mean_seconds_per_iteration: Option<f64>,
    elliptic: Option<usize>,
    aborted: Option<usize>,
}

/// Both kinds of table as one CSV document. Orbit rows are tagged
/// `orbit`; rows of the reduction table are tagged `reduce`.
pub fn to_csv(reduce_rows: &[ReduceRow], orbit_rows: &[OrbitRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let rows = reduce_rows
        .iter()
        .map(|r| CsvRow {
            table: "reduce",
            generators: r.size,
            distance: None,
            runs: r.trials,
            mean_seconds: r.mean_seconds,
            mean_iterations: Some(r.mean_iterations),
            mean_seconds_per_iteration: Some(r.mean_seconds_per_iteration),
            elliptic: Some(r.elliptic),
            aborted: Some(r.aborted),
        })
        .chain(orbit_rows.iter().map(|r| CsvRow {
            table: "orbit",
            generators: r.size,
            distance: Some(r.distance),
            runs: r.runs,
            mean_seconds: r.mean_seconds,
            mean_iterations: None,
            mean_seconds_per_iteration: None,
            elliptic: None,
            aborted: None,
        }));
    let mut any = false;
    for row in rows {
        w.serialize(row).expect("in-memory write");
        any = true;
    }
    if !any {
        w.write_record(CSV_HEADER).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8")
}

const CSV_HEADER: [&str; 9] = [
    "table",
    "generators",
    "distance",
    "runs",
    "mean_seconds",
    "mean_iterations",
    "mean_seconds_per_iteration",
    "elliptic",
    "aborted",
];
