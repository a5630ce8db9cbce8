use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::det::{det_rational, subsets};
use super::{MatrixError, SymbolicMatrix};
use crate::exactarith::BigRat;

/// Outcome of randomized PSD screening. `Pass` is evidence only; a witness is
/// a proof that the matrix is not PSD everywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PsdReport {
    Pass {
        samples: usize,
    },
    Refuted {
        point: Vec<BigRat>,
        /// 0-based index set of the negative principal minor.
        minor: Vec<usize>,
        value: BigRat,
    },
}

impl PsdReport {
    pub fn passed(&self) -> bool {
        matches!(self, PsdReport::Pass { .. })
    }
}

/// Seeded rational points with numerators in `[-10, 10]` and denominators in `[1, 10]`.
pub fn sample_points(nvars: usize, count: usize, seed: u64) -> Vec<Vec<BigRat>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..nvars)
                .map(|_| {
                    let num: i64 = rng.gen_range(-10..=10);
                    let den: i64 = rng.gen_range(1..=10);
                    BigRat::new(num.into(), den.into())
                })
                .collect()
        })
        .collect()
}

/// Evaluates `A` at `samples` seeded points and checks every principal minor
/// is nonnegative. Points where an entry's denominator vanishes are skipped.
pub fn psd_sample_check(a: &SymbolicMatrix, samples: usize, seed: u64) -> Result<PsdReport, MatrixError> {
    let n = a.dim();
    let index_sets = subsets(n);
    let points = sample_points(a.nvars(), samples, seed);
    let witness = points.par_iter().find_map_first(|point| {
        let values = a.eval(point).ok()?;
        index_sets.iter().find_map(|idx| {
            let sub: Vec<BigRat> = idx
                .iter()
                .flat_map(|&i| idx.iter().map(move |&j| (i, j)))
                .map(|(i, j)| values[i * n + j].clone())
                .collect();
            let value = det_rational(&sub, idx.len());
            value.is_negative().then(|| PsdReport::Refuted {
                point: point.clone(),
                minor: idx.clone(),
                value,
            })
        })
    });
    Ok(witness.unwrap_or(PsdReport::Pass { samples }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::VarSet;

    #[test]
    fn example1_passes() {
        let vars = VarSet::numbered(2);
        let a = SymbolicMatrix::parse_rows(
            &[&["1", "x1*x2"], &["x1*x2", "1 + x1^4*x2^2 + x1^2*x2^4"]],
            &vars,
        )
        .unwrap();
        assert_eq!(psd_sample_check(&a, 100, 0).unwrap(), PsdReport::Pass { samples: 100 });
    }

    #[test]
    fn negative_constant_refuted() {
        let a = SymbolicMatrix::parse_rows(&[&["-1"]], &VarSet::numbered(1)).unwrap();
        assert!(!psd_sample_check(&a, 1, 0).unwrap().passed());
    }

    #[test]
    fn odd_entry_refuted_at_negative_point() {
        let a = SymbolicMatrix::parse_rows(&[&["x1"]], &VarSet::numbered(1)).unwrap();
        match psd_sample_check(&a, 100, 7).unwrap() {
            PsdReport::Refuted { point, minor, value } => {
                assert!(point[0].is_negative());
                assert_eq!(minor, vec![0]);
                assert_eq!(value, point[0]);
            }
            PsdReport::Pass { .. } => panic!("x1 must be refuted"),
        }
    }

    #[test]
    fn sampling_is_reproducible() {
        assert_eq!(sample_points(3, 20, 42), sample_points(3, 20, 42));
        assert_ne!(sample_points(3, 20, 42), sample_points(3, 20, 43));
    }
}
