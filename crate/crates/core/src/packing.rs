//! Max-min point packing in the unit square.
//!
//! A deterministic multi-start solver used as an empirical sanity check of
//! the packing-coefficient bounds: maximize the minimum pairwise distance
//! of `k` points in `[0,1]^2`. Each restart runs a local search that
//! repeatedly relocates one endpoint of the current closest pair to the
//! best sampled position (corners, uniform samples, and a shrinking
//! neighborhood of the current position). Structured starts — grids, hex
//! rows and corner configurations — are always refined in addition to the
//! seeded random restarts, and the best packing is selected by a total
//! order on (objective, coordinates), so worker count never changes the
//! result.
//!
//! This is the only module in the crate that computes in floating point.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PackError {
    #[error("packing needs k >= 2 points, got {0}")]
    BadK(usize),
}

/// Solver configuration; identical configurations reproduce identical
/// packings bit for bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackConfig {
    pub k: usize,
    pub seed: u64,
    /// Number of seeded random restarts (structured starts always run).
    pub restarts: u32,
    /// Local-search iterations per restart.
    pub iterations: u32,
}

/// A packing of `k` points in the unit square.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Packing {
    pub k: usize,
    pub coordinates: Vec<[f64; 2]>,
    pub min_pairwise: f64,
}

/// Recomputes square membership and the objective independently of the
/// solver path.
pub fn pps_validate(p: &Packing) -> (bool, f64) {
    let in_square = p
        .coordinates
        .iter()
        .all(|c| (-1e-9..=1.0 + 1e-9).contains(&c[0]) && (-1e-9..=1.0 + 1e-9).contains(&c[1]));
    (in_square, objective(&p.coordinates))
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    (dx * dx + dy * dy).sqrt()
}

fn objective(pts: &[[f64; 2]]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d = dist(pts[i], pts[j]);
            if d < best {
                best = d;
            }
        }
    }
    best
}

fn closest_pair(pts: &[[f64; 2]]) -> (usize, usize) {
    let mut best = (0, 1);
    let mut best_d = f64::INFINITY;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d = dist(pts[i], pts[j]);
            if d < best_d {
                best_d = d;
                best = (i, j);
            }
        }
    }
    best
}

fn min_dist_to_others(pts: &[[f64; 2]], skip: usize, candidate: [f64; 2]) -> f64 {
    let mut best = f64::INFINITY;
    for (i, p) in pts.iter().enumerate() {
        if i == skip {
            continue;
        }
        let d = dist(*p, candidate);
        if d < best {
            best = d;
        }
    }
    best
}

fn clamp01(x: f64) -> f64 {
    x.clamp(0.0, 1.0)
}

const CORNERS: [[f64; 2]; 4] = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]];

/// Greedy relocation search: move one endpoint of the closest pair to the
/// best candidate position, accepting only strict improvements of that
/// point's own clearance (which never decreases the global objective).
fn refine(pts: &mut [[f64; 2]], rng: &mut ChaCha8Rng, iterations: u32) -> f64 {
    let mut radius = 0.25f64;
    for it in 0..iterations {
        let (i, j) = closest_pair(pts);
        let moving = if it % 2 == 0 { i } else { j };
        let current = pts[moving];
        let mut best = current;
        let mut best_score = min_dist_to_others(pts, moving, current);

        let mut consider = |cand: [f64; 2], best: &mut [f64; 2], best_score: &mut f64| {
            let c = [clamp01(cand[0]), clamp01(cand[1])];
            let s = min_dist_to_others(pts, moving, c);
            if s > *best_score {
                *best_score = s;
                *best = c;
            }
        };

        for c in CORNERS {
            consider(c, &mut best, &mut best_score);
        }
        for _ in 0..4 {
            consider([rng.gen(), rng.gen()], &mut best, &mut best_score);
        }
        for _ in 0..8 {
            let dx = rng.gen_range(-radius..=radius);
            let dy = rng.gen_range(-radius..=radius);
            consider(
                [current[0] + dx, current[1] + dy],
                &mut best,
                &mut best_score,
            );
        }
        // Push directly away from the nearest other point.
        let other = if moving == i { j } else { i };
        let away = [
            current[0] + (current[0] - pts[other][0]),
            current[1] + (current[1] - pts[other][1]),
        ];
        consider(away, &mut best, &mut best_score);

        pts[moving] = best;
        radius = (radius * 0.995).max(1e-6);
    }
    objective(pts)
}

/// Grid and hex-row starting configurations, plus corner configurations
/// for tiny k. Dropping points from a denser configuration never lowers
/// its objective, so truncated grids cover the in-between counts.
fn structured_inits(k: usize) -> Vec<Vec<[f64; 2]>> {
    let mut inits = Vec::new();

    if k == 2 {
        inits.push(vec![[0.0, 0.0], [1.0, 1.0]]);
    }
    if k == 3 {
        inits.push(vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]);
        inits.push(vec![[0.0, 0.0], [1.0, 1.0], [1.0, 0.0]]);
    }
    if k == 4 {
        inits.push(CORNERS.to_vec());
    }

    // Grids r x c with r*c >= k, truncated to k points.
    for rows in 1..=k.min(12) {
        let cols = k.div_ceil(rows);
        if cols > 12 {
            continue;
        }
        let coord = |idx: usize, count: usize| -> f64 {
            if count <= 1 {
                0.5
            } else {
                idx as f64 / (count - 1) as f64
            }
        };
        let mut pts = Vec::with_capacity(k);
        'grid: for r in 0..rows {
            for c in 0..cols {
                pts.push([coord(c, cols), coord(r, rows)]);
                if pts.len() == k {
                    break 'grid;
                }
            }
        }
        inits.push(pts);
    }

    // Hex rows: row height 1/(rows-1), ideal spacing 2h/sqrt(3), odd rows
    // offset by half a step; shrink the step until k points fit.
    for rows in 2..=8usize {
        let h = 1.0 / (rows - 1) as f64;
        let ideal = 2.0 * h / 3f64.sqrt();
        let mut step = ideal;
        for _ in 0..6 {
            let mut pts = Vec::new();
            'hex: for r in 0..rows {
                let offset = if r % 2 == 1 { step / 2.0 } else { 0.0 };
                let mut x = offset;
                while x <= 1.0 + 1e-12 {
                    pts.push([x.min(1.0), (r as f64 * h).min(1.0)]);
                    if pts.len() == k {
                        break 'hex;
                    }
                    x += step;
                }
            }
            if pts.len() == k {
                inits.push(pts);
                break;
            }
            step *= 0.85;
        }
    }

    inits
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

fn restart_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(seed ^ splitmix64(index)))
}

/// One restart: structured indices refine a fixed configuration, the rest
/// start from seeded uniform points.
fn run_restart(cfg: &PackConfig, structured: &[Vec<[f64; 2]>], index: u64) -> Vec<[f64; 2]> {
    let mut rng = restart_rng(cfg.seed, index);
    let mut pts = if (index as usize) < structured.len() {
        structured[index as usize].clone()
    } else {
        (0..cfg.k).map(|_| [rng.gen(), rng.gen()]).collect()
    };
    refine(&mut pts, &mut rng, cfg.iterations);
    pts
}

/// Total order on candidate packings: higher objective wins, ties broken
/// by lexicographically smaller coordinates. Associative and commutative,
/// so reduction order cannot change the winner.
fn better(a: &[[f64; 2]], b: &[[f64; 2]]) -> bool {
    let (oa, ob) = (objective(a), objective(b));
    match oa.total_cmp(&ob) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Equal => {
            for (pa, pb) in a.iter().zip(b.iter()) {
                for d in 0..2 {
                    match pa[d].total_cmp(&pb[d]) {
                        std::cmp::Ordering::Less => return true,
                        std::cmp::Ordering::Greater => return false,
                        std::cmp::Ordering::Equal => {}
                    }
                }
            }
            false
        }
    }
}

fn solve_impl(cfg: &PackConfig, parallel: bool) -> Result<Packing, PackError> {
    if cfg.k < 2 {
        return Err(PackError::BadK(cfg.k));
    }
    let structured = structured_inits(cfg.k);
    let total = structured.len() as u64 + cfg.restarts as u64;
    let indices: Vec<u64> = (0..total).collect();

    let results: Vec<Vec<[f64; 2]>> = {
        #[cfg(feature = "parallel")]
        {
            if parallel {
                use rayon::prelude::*;
                indices
                    .par_iter()
                    .map(|&i| run_restart(cfg, &structured, i))
                    .collect()
            } else {
                indices
                    .iter()
                    .map(|&i| run_restart(cfg, &structured, i))
                    .collect()
            }
        }
        #[cfg(not(feature = "parallel"))]
        {
            let _ = parallel;
            indices
                .iter()
                .map(|&i| run_restart(cfg, &structured, i))
                .collect()
        }
    };

    let mut best: Option<Vec<[f64; 2]>> = None;
    for r in results {
        match &best {
            Some(b) if !better(&r, b) => {}
            _ => best = Some(r),
        }
    }
    let coordinates = best.expect("at least one restart");
    let min_pairwise = objective(&coordinates);
    Ok(Packing {
        k: cfg.k,
        coordinates,
        min_pairwise,
    })
}

/// Best packing over all restarts; data-parallel when the `parallel`
/// feature is enabled.
pub fn pps_solve(cfg: &PackConfig) -> Result<Packing, PackError> {
    solve_impl(cfg, true)
}

/// Sequential reference path; always available and bit-identical to
/// [`pps_solve`].
pub fn pps_solve_serial(cfg: &PackConfig) -> Result<Packing, PackError> {
    solve_impl(cfg, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(k: usize) -> PackConfig {
        PackConfig {
            k,
            seed: 1,
            restarts: 32,
            iterations: 1500,
        }
    }

    #[test]
    fn rejects_k_below_two() {
        assert_eq!(pps_solve(&cfg(1)), Err(PackError::BadK(1)));
    }

    #[test]
    fn k2_reaches_the_diagonal() {
        let p = pps_solve(&cfg(2)).unwrap();
        assert!(
            (p.min_pairwise - 2f64.sqrt()).abs() < 1e-6,
            "{}",
            p.min_pairwise
        );
    }

    #[test]
    fn k3_reaches_the_known_optimum() {
        // phi_3 = sqrt(6) - sqrt(2).
        let p = pps_solve(&cfg(3)).unwrap();
        let expect = 6f64.sqrt() - 2f64.sqrt();
        assert!((p.min_pairwise - expect).abs() < 1e-3, "{}", p.min_pairwise);
    }

    #[test]
    fn k4_reaches_the_corners() {
        let p = pps_solve(&cfg(4)).unwrap();
        assert!((p.min_pairwise - 1.0).abs() < 1e-3, "{}", p.min_pairwise);
    }

    #[test]
    fn validate_matches_solver() {
        let p = pps_solve(&cfg(5)).unwrap();
        let (in_square, recomputed) = pps_validate(&p);
        assert!(in_square);
        assert!((recomputed - p.min_pairwise).abs() < 1e-12);
    }

    #[test]
    fn validate_flags_outside_points() {
        let p = Packing {
            k: 2,
            coordinates: vec![[1.1, 0.0], [0.0, 0.0]],
            min_pairwise: 1.1,
        };
        let (in_square, _) = pps_validate(&p);
        assert!(!in_square);
    }

    #[test]
    fn deterministic_bit_for_bit() {
        let a = pps_solve(&cfg(7)).unwrap();
        let b = pps_solve(&cfg(7)).unwrap();
        assert_eq!(a, b);
        let c = pps_solve_serial(&cfg(7)).unwrap();
        assert_eq!(a, c);
        // Bit-level comparison of the objective.
        assert_eq!(a.min_pairwise.to_bits(), c.min_pairwise.to_bits());
    }

    #[test]
    fn different_seeds_still_valid() {
        let a = pps_solve(&cfg(6)).unwrap();
        let mut other = cfg(6);
        other.seed = 2;
        let b = pps_solve(&other).unwrap();
        assert!(pps_validate(&a).0 && pps_validate(&b).0);
    }
}
