use num::traits::Zero;
use num::BigUint;

use crate::error::{Result, UrnError};
use crate::family::ModelFamily;
use crate::proportion::ExactProportion;
use crate::sample_space::{enumerate_compositions, Composition};
use crate::statistics::TestStatistic;
use crate::value::Value;

use super::check_alpha_open;
use super::distribution::StatDistribution;

/// The test of one grid point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaPoint {
    pub theta: Value,
    /// `T_theta` evaluated on the observed sample.
    pub t_obs: Value,
    pub p: ExactProportion,
    pub tail_count: BigUint,
    pub space_size: BigUint,
    /// `p >= alpha`.
    pub included: bool,
}

/// All grid values of theta whose model is not rejected at level alpha, with
/// the full p-value profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfidenceSet {
    pub alpha: Value,
    pub points: Vec<ThetaPoint>,
}

impl ConfidenceSet {
    pub fn members(&self) -> impl Iterator<Item = &Value> + '_ {
        self.points.iter().filter(|p| p.included).map(|p| &p.theta)
    }

    /// Membership of `theta`, or `None` when it is not on the grid.
    pub fn contains(&self, theta: &Value) -> Option<bool> {
        self.points
            .iter()
            .find(|p| &p.theta == theta)
            .map(|p| p.included)
    }

    pub fn is_empty(&self) -> bool {
        !self.points.iter().any(|p| p.included)
    }

    /// Smallest and largest member.
    pub fn bounds(&self) -> Option<(&Value, &Value)> {
        let lo = self.members().min()?;
        let hi = self.members().max()?;
        Some((lo, hi))
    }
}

/// Per-grid-point statistic and exact null distribution for one sample size.
struct Inverter {
    support: Vec<Value>,
    n: u64,
    tests: Vec<(Value, TestStatistic, StatDistribution)>,
}

impl Inverter {
    fn new<F: ModelFamily + ?Sized>(family: &F, grid: &[Value], n: u64) -> Result<Self> {
        if grid.is_empty() {
            return Err(UrnError::EmptyGrid);
        }
        let tests = grid
            .iter()
            .map(|theta| {
                let model = family.model_urn(theta)?;
                let stat = family.theta_statistic(theta, n)?;
                let dist = StatDistribution::by_counting(&model, n, &stat)?;
                Ok((theta.clone(), stat, dist))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Inverter {
            support: family.support(),
            n,
            tests,
        })
    }

    fn invert(&self, x_obs: &Composition, alpha: &Value) -> Result<ConfidenceSet> {
        if x_obs.len() != self.support.len() {
            return Err(UrnError::Misaligned {
                expected: self.support.len(),
                got: x_obs.len(),
            });
        }
        if x_obs.size() != self.n {
            return Err(UrnError::InvalidComposition {
                counts: x_obs.counts().to_vec(),
                n: self.n,
                reason: format!("holds {} balls", x_obs.size()),
            });
        }
        let alpha_p = ExactProportion::try_from(alpha)?;
        let points = self
            .tests
            .iter()
            .map(|(theta, stat, dist)| {
                let t_obs = stat.evaluate(x_obs, &self.support)?;
                let tail_count = dist.tail_count(&t_obs);
                let p = ExactProportion::from_counts(&tail_count, dist.space_size())?;
                Ok(ThetaPoint {
                    theta: theta.clone(),
                    included: p >= alpha_p,
                    t_obs,
                    p,
                    tail_count,
                    space_size: dist.space_size().clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ConfidenceSet {
            alpha: alpha.clone(),
            points,
        })
    }
}

/// Inverts the family's tests over `grid` for the observed sample `x_obs`
/// (counts aligned with the family support).
///
/// For each theta the p-value is the proportion of size-n samples of the
/// model urn whose `T_theta` is at least `T_theta(x_obs)`; theta is a member
/// when that proportion is at least `alpha`, ties included.
pub fn confidence_set<F: ModelFamily + ?Sized>(
    family: &F,
    grid: &[Value],
    x_obs: &Composition,
    alpha: &Value,
) -> Result<ConfidenceSet> {
    check_alpha_open(alpha)?;
    let n = x_obs.size();
    if n == 0 {
        return Err(UrnError::SampleSizeOutOfRange { n, total: 0 });
    }
    Inverter::new(family, grid, n)?.invert(x_obs, alpha)
}

/// One sample of the true model and the interval it produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageRow {
    /// Counts aligned with the family support.
    pub composition: Composition,
    /// Number of samples with this composition.
    pub weight: BigUint,
    pub contains_truth: bool,
    pub set: ConfidenceSet,
}

/// The urn of confidence sets generated by every size-n sample of the model
/// at `theta_star`, and the proportion of them that contain `theta_star`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageReport {
    pub theta_star: Value,
    pub alpha: Value,
    pub coverage: ExactProportion,
    /// `C(N, n)` for the true model urn.
    pub n_samples: BigUint,
    pub ledger: Vec<CoverageRow>,
}

impl CoverageReport {
    /// Rows whose set misses the true parameter.
    pub fn misses(&self) -> impl Iterator<Item = &CoverageRow> + '_ {
        self.ledger.iter().filter(|r| !r.contains_truth)
    }
}

pub fn coverage_urn<F: ModelFamily + ?Sized>(
    family: &F,
    grid: &[Value],
    theta_star: &Value,
    n: u64,
    alpha: &Value,
) -> Result<CoverageReport> {
    check_alpha_open(alpha)?;
    if !grid.contains(theta_star) {
        return Err(UrnError::ThetaNotOnGrid {
            theta: theta_star.to_string(),
        });
    }
    let population = family.model_urn(theta_star)?;
    let compositions = enumerate_compositions(&population, n)?;
    let inverter = Inverter::new(family, grid, n)?;

    let mut covered = BigUint::zero();
    let mut total = BigUint::zero();
    let mut ledger = Vec::new();
    for (composition, weight) in compositions {
        let aligned = family.align(&population, &composition)?;
        let set = inverter.invert(&aligned, alpha)?;
        let contains_truth = set.contains(theta_star).unwrap_or(false);
        if contains_truth {
            covered += &weight;
        }
        total += &weight;
        ledger.push(CoverageRow {
            composition: aligned,
            weight,
            contains_truth,
            set,
        });
    }
    Ok(CoverageReport {
        theta_star: theta_star.clone(),
        alpha: alpha.clone(),
        coverage: ExactProportion::from_counts(&covered, &total)?,
        n_samples: total,
        ledger,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::BinaryFamily;

    fn v(s: &str) -> Value {
        s.parse().unwrap()
    }

    #[test]
    fn degenerate_models() {
        let fam = BinaryFamily::new(10).unwrap();
        let grid = fam.lattice();
        let set = confidence_set(&fam, &grid, &Composition::new(vec![0, 4]), &v("0.05")).unwrap();
        let at = |theta: &str| set.points.iter().find(|p| p.theta == v(theta)).unwrap();
        assert_eq!(at("1").p, ExactProportion::one());
        assert!(at("1").included);
        assert!(at("0").p.is_zero());
        assert!(!at("0").included);
    }

    #[test]
    fn alpha_must_be_interior() {
        let fam = BinaryFamily::new(10).unwrap();
        let grid = fam.lattice();
        let x = Composition::new(vec![2, 2]);
        assert!(confidence_set(&fam, &grid, &x, &v("0")).is_err());
        assert!(confidence_set(&fam, &grid, &x, &v("1")).is_err());
        assert!(confidence_set(&fam, &[], &x, &v("0.05")).is_err());
        assert!(confidence_set(&fam, &[v("0.55")], &x, &v("0.05")).is_err());
    }

    #[test]
    fn tiny_alpha_keeps_every_positive_p() {
        let fam = BinaryFamily::new(10).unwrap();
        let grid = fam.lattice();
        let set = confidence_set(&fam, &grid, &Composition::new(vec![2, 2]), &v("1e-9")).unwrap();
        for point in &set.points {
            assert_eq!(point.included, !point.p.is_zero(), "theta={}", point.theta);
        }
    }

    #[test]
    fn coverage_requires_truth_on_grid() {
        let fam = BinaryFamily::new(10).unwrap();
        let grid = vec![v("0.1"), v("0.2")];
        assert!(matches!(
            coverage_urn(&fam, &grid, &v("0.5"), 4, &v("0.05")),
            Err(UrnError::ThetaNotOnGrid { .. })
        ));
    }

    #[test]
    fn full_sample_coverage_is_zero_or_one() {
        let fam = BinaryFamily::new(10).unwrap();
        let grid = fam.lattice();
        let report = coverage_urn(&fam, &grid, &v("0.3"), 10, &v("0.05")).unwrap();
        assert_eq!(report.n_samples, BigUint::from(1u32));
        assert!(report.coverage.is_zero() || report.coverage == ExactProportion::one());
        assert_eq!(report.ledger.len(), 1);
    }

    #[test]
    fn coverage_at_vanishing_alpha_is_one() {
        let fam = BinaryFamily::new(10).unwrap();
        let grid = fam.lattice();
        let report = coverage_urn(&fam, &grid, &v("0.5"), 4, &v("1e-9")).unwrap();
        assert_eq!(report.coverage, ExactProportion::one());
    }
}
