//! Random general-position instance supply.
//!
//! Coordinates are integers in user units, sampled uniformly in a square
//! box. Points are placed one at a time; a candidate that coincides with or
//! is collinear with already placed points is rejected and redrawn, and the
//! generator gives up once a single position takes too many rejections (the
//! box is too small for the requested count). Everything is deterministic
//! under the seed.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::{orientation, ExactPoint, COORD_SCALE, MAX_COORD};
use crate::instance::{check_feasibility, Instance};

/// Largest box size whose scaled coordinates stay within [`MAX_COORD`].
pub const MAX_BBOX: i64 = MAX_COORD / COORD_SCALE;
const _: () = assert!(MAX_BBOX * COORD_SCALE <= MAX_COORD && (MAX_BBOX + 1) * COORD_SCALE > MAX_COORD);

/// Consecutive rejections tolerated for one point before giving up.
pub const REJECTION_ROUNDS: u32 = 1000;

/// Budget assignment mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FMode {
    /// f = k everywhere.
    Uniform(u32),
    /// f uniform in [min, max] per red point.
    Random { min: u32, max: u32 },
    /// Random f adjusted so that sum(f - 2) + 2 = |B| exactly.
    Equality,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenParams {
    pub n_red: usize,
    pub n_blue: usize,
    pub f_mode: FMode,
    /// Coordinates are drawn from [0, bbox] in both axes, in user units.
    pub bbox: i64,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenError {
    TooFewBlue { n_blue: usize },
    BadBbox { bbox: i64 },
    BadUniformDegree { k: u32 },
    BadBudgetRange { min: u32, max: u32 },
    /// Zero red points can only reach equality with exactly two blues.
    EqualityNeedsReds { n_blue: usize },
    GaveUp { rounds: u32 },
}

impl fmt::Display for GenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GenError::TooFewBlue { n_blue } => {
                write!(f, "need at least 2 blue points, got {n_blue}")
            }
            GenError::BadBbox { bbox } => {
                write!(f, "bbox must be in 1..={MAX_BBOX}, got {bbox}")
            }
            GenError::BadUniformDegree { k } => {
                write!(f, "uniform degree must be at least 2, got {k}")
            }
            GenError::BadBudgetRange { min, max } => {
                write!(f, "budget range {min}..={max} is invalid; need 2 <= min <= max")
            }
            GenError::EqualityNeedsReds { n_blue } => {
                write!(f, "equality mode with no red points requires exactly 2 blues, got {n_blue}")
            }
            GenError::GaveUp { rounds } => {
                write!(f, "gave up after {rounds} rejections; box too small for the point count")
            }
        }
    }
}

impl std::error::Error for GenError {}

/// Generator output in user units, ready for serialization or scaling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedInstance {
    /// (x, y, f) per red point.
    pub red: Vec<(i64, i64, u32)>,
    /// (x, y) per blue point.
    pub blue: Vec<(i64, i64)>,
}

impl GeneratedInstance {
    /// Scales user units into internal coordinates. Generated output is in
    /// general position and in range by construction.
    pub fn to_instance(&self) -> Instance {
        let red = self
            .red
            .iter()
            .map(|&(x, y, f)| (ExactPoint::new(x * COORD_SCALE, y * COORD_SCALE), f))
            .collect();
        let blue = self
            .blue
            .iter()
            .map(|&(x, y)| ExactPoint::new(x * COORD_SCALE, y * COORD_SCALE))
            .collect();
        Instance::new(red, blue).expect("generator output is always a valid instance")
    }
}

pub fn generate(params: &GenParams) -> Result<GeneratedInstance, GenError> {
    if params.n_blue < 2 {
        return Err(GenError::TooFewBlue { n_blue: params.n_blue });
    }
    if params.bbox < 1 || params.bbox > MAX_BBOX {
        return Err(GenError::BadBbox { bbox: params.bbox });
    }
    match params.f_mode {
        FMode::Uniform(k) if k < 2 => return Err(GenError::BadUniformDegree { k }),
        FMode::Random { min, max } if min < 2 || min > max => {
            return Err(GenError::BadBudgetRange { min, max })
        }
        FMode::Equality if params.n_red == 0 && params.n_blue != 2 => {
            return Err(GenError::EqualityNeedsReds { n_blue: params.n_blue })
        }
        _ => {}
    }

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let n = params.n_red + params.n_blue;
    let mut pts: Vec<ExactPoint> = Vec::with_capacity(n);
    while pts.len() < n {
        let mut placed = false;
        for _ in 0..REJECTION_ROUNDS {
            let cand = ExactPoint::new(
                rng.random_range(0..=params.bbox),
                rng.random_range(0..=params.bbox),
            );
            if admissible(cand, &pts) {
                pts.push(cand);
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(GenError::GaveUp { rounds: REJECTION_ROUNDS });
        }
    }

    let budgets: Vec<u32> = match params.f_mode {
        FMode::Uniform(k) => vec![k; params.n_red],
        FMode::Random { min, max } => {
            (0..params.n_red).map(|_| rng.random_range(min..=max)).collect()
        }
        FMode::Equality => {
            let mut f = vec![2u32; params.n_red];
            for _ in 2..params.n_blue {
                f[rng.random_range(0..params.n_red)] += 1;
            }
            f
        }
    };

    Ok(GeneratedInstance {
        red: pts[..params.n_red].iter().zip(&budgets).map(|(p, &f)| (p.x, p.y, f)).collect(),
        blue: pts[params.n_red..].iter().map(|p| (p.x, p.y)).collect(),
    })
}

fn admissible(cand: ExactPoint, placed: &[ExactPoint]) -> bool {
    if placed.contains(&cand) {
        return false;
    }
    for (i, &p) in placed.iter().enumerate() {
        for &q in &placed[i + 1..] {
            if orientation(p, q, cand) == 0 {
                return false;
            }
        }
    }
    true
}

/// Deterministic feasible instance for test campaigns: size up to max_n,
/// budget mode varied by the seed, always passing the feasibility check.
pub fn seeded_instance(seed: u64, max_n: usize) -> Instance {
    assert!(max_n >= 2);
    let mut s = seed;
    for _ in 0..64 {
        let mut rng = ChaCha8Rng::seed_from_u64(s ^ 0x9e37_79b9_7f4a_7c15);
        let n = rng.random_range(2..=max_n);
        let n_blue = rng.random_range(2..=n);
        let n_red = n - n_blue;
        let f_mode = match rng.random_range(0..3u32) {
            0 => FMode::Equality,
            1 => FMode::Uniform(rng.random_range(2..=5)),
            _ => FMode::Random { min: 2, max: 6 },
        };
        let params = GenParams { n_red, n_blue, f_mode, bbox: 1000, seed: s };
        if let Ok(g) = generate(&params) {
            let inst = g.to_instance();
            if check_feasibility(&inst).is_feasible() {
                return inst;
            }
        }
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    }
    unreachable!("feasible instance generation failed repeatedly");
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n_red: usize, n_blue: usize, f_mode: FMode, seed: u64) -> GenParams {
        GenParams { n_red, n_blue, f_mode, bbox: 500, seed }
    }

    #[test]
    fn deterministic_under_seed() {
        let p = params(5, 4, FMode::Random { min: 2, max: 5 }, 42);
        assert_eq!(generate(&p).unwrap(), generate(&p).unwrap());
    }

    #[test]
    fn different_seeds_differ() {
        let a = generate(&params(5, 4, FMode::Equality, 1)).unwrap();
        let b = generate(&params(5, 4, FMode::Equality, 2)).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn equality_mode_hits_the_identity() {
        let g = generate(&params(3, 5, FMode::Equality, 7)).unwrap();
        let total: i64 = g.red.iter().map(|&(_, _, f)| f as i64 - 2).sum();
        assert_eq!(total + 2, 5);
    }

    #[test]
    fn rejects_single_blue() {
        assert_eq!(
            generate(&params(3, 1, FMode::Uniform(3), 0)).unwrap_err(),
            GenError::TooFewBlue { n_blue: 1 }
        );
    }

    #[test]
    fn rejects_bad_bbox() {
        let mut p = params(2, 2, FMode::Uniform(2), 0);
        p.bbox = 0;
        assert_eq!(generate(&p).unwrap_err(), GenError::BadBbox { bbox: 0 });
        p.bbox = MAX_BBOX + 1;
        assert!(matches!(generate(&p).unwrap_err(), GenError::BadBbox { .. }));
    }

    #[test]
    fn rejects_bad_budget_modes() {
        assert_eq!(
            generate(&params(2, 2, FMode::Uniform(1), 0)).unwrap_err(),
            GenError::BadUniformDegree { k: 1 }
        );
        assert_eq!(
            generate(&params(2, 2, FMode::Random { min: 4, max: 3 }, 0)).unwrap_err(),
            GenError::BadBudgetRange { min: 4, max: 3 }
        );
        assert_eq!(
            generate(&params(0, 4, FMode::Equality, 0)).unwrap_err(),
            GenError::EqualityNeedsReds { n_blue: 4 }
        );
    }

    #[test]
    fn gives_up_when_box_is_full() {
        // A 2 x 2 grid holds four points; a fifth must duplicate.
        let mut p = params(0, 5, FMode::Equality, 0);
        p.f_mode = FMode::Uniform(2);
        p.bbox = 1;
        assert_eq!(generate(&p).unwrap_err(), GenError::GaveUp { rounds: REJECTION_ROUNDS });
    }

    #[test]
    fn output_scales_into_valid_instance() {
        let g = generate(&params(4, 3, FMode::Equality, 11)).unwrap();
        let inst = g.to_instance();
        assert_eq!(inst.n_red(), 4);
        assert_eq!(inst.n_blue(), 3);
        assert!(check_feasibility(&inst).is_feasible());
    }

    #[test]
    fn seeded_instances_are_feasible() {
        for seed in 0..40 {
            let inst = seeded_instance(seed, 10);
            assert!(inst.n() <= 10);
            assert!(inst.n_blue() >= 2);
            assert!(check_feasibility(&inst).is_feasible(), "seed {seed}");
        }
    }
}
