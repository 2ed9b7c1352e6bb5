//! End-to-end verification that the signed indicator sum is the predicted
//! constant, with sampling biased toward the non-regular points where the
//! classical arguments break down.

use num_traits::Zero;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactmath::{rat, Rat, RVector};
use crate::Error;

use super::PhiEvaluator;

/// Sampling parameters for `verify_theorem`.
#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    /// Number of uniform random points (boundary-stratum and sanity points
    /// are always added on top).
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            samples: 32,
            seed: 0,
        }
    }
}

/// A sampled point whose value disagreed with the predicted constant.
#[derive(Clone, Debug)]
pub struct Violation {
    pub point: RVector,
    pub phi: i64,
}

/// Outcome of `verify_theorem`.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub predicted: i64,
    pub samples: usize,
    pub violations: Vec<Violation>,
}

impl PhiEvaluator {
    /// Evaluates phi at face witnesses, uniform random rational points, and
    /// constructed boundary-stratum points g - v, and checks every value
    /// against the predicted constant. Returns the report on success and the
    /// first falsifying point as an error otherwise.
    pub fn verify_theorem(&self, cfg: &VerifyConfig) -> Result<VerifyReport, Error> {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut points = self.sanity_points();
        let window = self.sample_window();
        let d = self.polyhedron().ambient_dim();
        for _ in 0..cfg.samples {
            points.push(RVector::new(
                (0..d).map(|_| rand_rat(&mut rng, window)).collect(),
            ));
        }
        points.extend(self.boundary_stratum_points(&mut rng, cfg.samples.max(8)));

        let predicted = self.predicted_phi();
        let samples = points.len();
        let mut violations = Vec::new();
        for x in points {
            let report = self.phi_at(&x);
            if report.phi != predicted {
                violations.push(Violation {
                    point: x,
                    phi: report.phi,
                });
            }
        }
        if let Some(v) = violations.first() {
            return Err(Error::TheoremViolation {
                point: format!("{:?}", v.point),
                got: v.phi,
                predicted,
            });
        }
        Ok(VerifyReport {
            predicted,
            samples,
            violations,
        })
    }

    /// Deterministic probe set: the origin and every face witness, shifted
    /// along the lineality space when there is one.
    fn sanity_points(&self) -> Vec<RVector> {
        let d = self.polyhedron().ambient_dim();
        let mut points = vec![RVector::zero(d)];
        for (_, f) in self.lattice().iter() {
            points.push(f.relint_witness.clone());
            for u in self.polyhedron().lineality_basis().vectors() {
                points.push(&f.relint_witness + &u.scale(&rat(3, 2)));
            }
        }
        points
    }

    /// Boundary points g - v with g a relint witness of G and v a strictly
    /// positive combination of N(P,H)'s generators plus a lineality shift;
    /// these land on the strata by construction. At most `max_pairs` proper
    /// face pairs are sampled (the full set is quadratic in the face count).
    fn boundary_stratum_points(&self, rng: &mut ChaCha8Rng, max_pairs: usize) -> Vec<RVector> {
        let d = self.polyhedron().ambient_dim();
        let mut pairs = self.lattice().proper_pairs();
        if pairs.len() > max_pairs {
            pairs.shuffle(rng);
            pairs.truncate(max_pairs);
        }
        let mut points = Vec::new();
        for (g, h) in pairs {
            let gw = &self.face(g).relint_witness;
            let cone = self.normal_cone_of(h);
            let mut v = RVector::zero(d);
            for u in cone.generators() {
                v = &v + &u.scale(&rand_pos_rat(rng));
            }
            for w in cone.lineality().vectors() {
                v = &v + &w.scale(&rand_rat(rng, 2));
            }
            points.push(gw - &v);
            points.push(gw - &v.scale(&rat(1, 2)));
        }
        points
    }

    /// Half-width of the random sampling window: past every witness.
    fn sample_window(&self) -> i64 {
        let mut max = Rat::zero();
        for (_, f) in self.lattice().iter() {
            for c in f.relint_witness.iter() {
                let a = if c < &Rat::zero() { -c } else { c.clone() };
                if a > max {
                    max = a;
                }
            }
        }
        let ceil = max.ceil().to_integer();
        i64::try_from(ceil).unwrap_or(i64::MAX / 4).saturating_add(4)
    }
}

fn rand_rat(rng: &mut ChaCha8Rng, bound: i64) -> Rat {
    let den = rng.gen_range(1..=4i64);
    let num = rng.gen_range(-bound * den..=bound * den);
    rat(num, den)
}

fn rand_pos_rat(rng: &mut ChaCha8Rng) -> Rat {
    rat(rng.gen_range(1..=6i64), rng.gen_range(1..=3i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedron::fixtures;

    fn verify(p: crate::polyhedron::HPolyhedron) -> VerifyReport {
        PhiEvaluator::new(p)
            .verify_theorem(&VerifyConfig { samples: 16, seed: 7 })
            .unwrap()
    }

    #[test]
    fn square_verifies_to_one() {
        let r = verify(fixtures::unit_square());
        assert_eq!(r.predicted, 1);
        assert!(r.violations.is_empty());
        assert!(r.samples > 16);
    }

    #[test]
    fn quadrant_verifies_to_zero() {
        assert_eq!(verify(fixtures::quadrant()).predicted, 0);
    }

    #[test]
    fn half_plane_verifies_to_zero() {
        assert_eq!(verify(fixtures::half_plane()).predicted, 0);
    }

    #[test]
    fn line_verifies_to_minus_one() {
        assert_eq!(verify(fixtures::line_x_axis()).predicted, -1);
    }

    #[test]
    fn segment_verifies_to_one() {
        assert_eq!(verify(fixtures::segment01()).predicted, 1);
    }
}
