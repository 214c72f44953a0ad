//! The affine coadjoint action is infinitesimally a Lie algebra
//! homomorphism: the fundamental field of a bracket is the bracket of the
//! fundamental fields, for arbitrary sections u + D + γ.

use algebroid_leaves::algebroid::catalog;
use algebroid_leaves::jet_action::{homomorphism_defect, AffineJetSection};
use algebroid_leaves::lie_poisson::{DualPoint, LiePoisson};
use algebroid_leaves::sampling::{self, uniform_points};

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (name, spec) in catalog::all() {
        let lp = LiePoisson::new(&spec);
        let pts: Vec<DualPoint> = uniform_points(11, 10, lp.dim(), -1.0, 1.0)
            .iter()
            .map(|z| DualPoint::from_flat(spec.n(), z))
            .collect();
        let mut rng = sampling::rng(11);
        let mut worst: f64 = 0.0;
        for _ in 0..10 {
            let s1 = AffineJetSection::random(&spec, &mut rng);
            let s2 = AffineJetSection::random(&spec, &mut rng);
            worst = worst.max(homomorphism_defect(&lp, &s1, &s2, &pts)?);
        }
        println!("{name:<20} worst defect over 10 random pairs: {worst:.1e}");
    }

    let broken = catalog::broken();
    let lp = LiePoisson::new(&broken);
    let pts = [DualPoint::new(vec![0.5, 0.2, -0.3], vec![0.4, -0.6, 0.9])];
    let mut rng = sampling::rng(1);
    let s1 = AffineJetSection::random(&broken, &mut rng);
    let s2 = AffineJetSection::random(&broken, &mut rng);
    println!(
        "{:<20} defect on one random pair: {:.2e}",
        broken.name(),
        homomorphism_defect(&lp, &s1, &s2, &pts)?
    );
    Ok(())
}
