#![allow(dead_code)] // each test target compiles its own copy and uses a subset

//! Shared random-system generators for the property suites.

use rand::Rng;
use ratsys::{ProjectivityClass, SystemSpec};

/// Uniform draw from (0, 10].
pub fn coeff<R: Rng>(rng: &mut R) -> f64 {
    10.0 * (1.0 - rng.gen::<f64>())
}

pub fn pos_vec<R: Rng>(rng: &mut R, k: usize) -> Vec<f64> {
    (0..k).map(|_| coeff(rng)).collect()
}

pub fn pos_matrix<R: Rng>(rng: &mut R, k: usize) -> Vec<Vec<f64>> {
    (0..k).map(|_| pos_vec(rng, k)).collect()
}

/// Random system of the requested projective class with the class's
/// structural zeros and all free entries uniform in (0, 10].
pub fn random_spec<R: Rng>(rng: &mut R, class: ProjectivityClass, k: usize) -> SystemSpec {
    let zeros = vec![0.0; k];
    let spec = match class {
        ProjectivityClass::Homogeneous => SystemSpec::new(
            zeros.clone(),
            pos_matrix(rng, k),
            zeros,
            pos_matrix(rng, k),
        ),
        ProjectivityClass::LinearType => {
            let shared_const = coeff(rng);
            let shared_row = pos_vec(rng, k);
            SystemSpec::new(
                zeros,
                pos_matrix(rng, k),
                vec![shared_const; k],
                vec![shared_row; k],
            )
        }
        ProjectivityClass::HyperbolicType => {
            let shared_const = coeff(rng);
            let shared_row = pos_vec(rng, k);
            SystemSpec::new(
                vec![shared_const; k],
                vec![shared_row; k],
                zeros,
                pos_matrix(rng, k),
            )
        }
        ProjectivityClass::NonProjective => panic!("no generator for non-projective systems"),
    }
    .expect("generated shapes are consistent");
    debug_assert_eq!(spec.classify().unwrap(), class);
    spec
}

pub const PROJECTIVE_CLASSES: [ProjectivityClass; 3] = [
    ProjectivityClass::Homogeneous,
    ProjectivityClass::LinearType,
    ProjectivityClass::HyperbolicType,
];
