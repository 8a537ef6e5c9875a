//! Seeded random inputs for the law checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::morphism::{Cplx, Morphism};
use crate::space::SpaceObject;

/// Deterministic generator for one check, derived from the suite seed and a
/// label identifying the check.
pub fn task_rng(seed: u64, label: &str) -> ChaCha8Rng {
    // FNV-1a over the label, folded into the seed
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h.rotate_left(17))
}

pub fn gaussian(rng: &mut impl Rng) -> Cplx {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Cplx::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// A complex-Gaussian matrix `dom -> cod`.
pub fn matrix(rng: &mut impl Rng, dom: &SpaceObject, cod: &SpaceObject) -> Morphism {
    let data = (0..dom.dim() * cod.dim()).map(|_| gaussian(rng)).collect();
    Morphism::from_entries(dom.clone(), cod.clone(), data).expect("finite entries")
}

/// A complex-Gaussian state `I -> A`, normalised to unit length.
pub fn unit_state(rng: &mut impl Rng, a: &SpaceObject) -> Morphism {
    loop {
        let v = matrix(rng, &SpaceObject::unit(), a);
        let norm = v.norm_sqr().sqrt();
        if a.dim() == 0 {
            return v;
        }
        if norm > 1e-6 {
            return v.scale_real(1.0 / norm);
        }
    }
}

/// A state with norm drawn uniformly from `[0, max_norm]`.
pub fn state_within(rng: &mut impl Rng, a: &SpaceObject, max_norm: f64) -> Morphism {
    let r: f64 = rng.random::<f64>() * max_norm;
    unit_state(rng, a).scale_real(r)
}

/// Unit states followed by the degenerate probes: the zero vector and every
/// basis vector.
pub fn probe_states(rng: &mut impl Rng, a: &SpaceObject, samples: usize) -> Vec<Morphism> {
    let mut out: Vec<Morphism> = (0..samples).map(|_| unit_state(rng, a)).collect();
    out.push(Morphism::zero(&SpaceObject::unit(), a));
    out.extend((0..a.dim()).map(|i| Morphism::basis_state(a, i)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_generators_repeat() {
        let a = SpaceObject::base(3);
        let x = unit_state(&mut task_rng(5, "x"), &a);
        let y = unit_state(&mut task_rng(5, "x"), &a);
        let z = unit_state(&mut task_rng(5, "y"), &a);
        assert_eq!(x, y);
        assert_ne!(x, z);
        assert!((x.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn probes_include_degenerate_cases() {
        let a = SpaceObject::base(2);
        let probes = probe_states(&mut task_rng(0, "p"), &a, 3);
        assert_eq!(probes.len(), 6);
        assert_eq!(probes[3].max_abs(), 0.0);
        assert_eq!(probes[5], Morphism::basis_state(&a, 1));
    }
}
