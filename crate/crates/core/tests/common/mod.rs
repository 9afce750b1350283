#![allow(dead_code)]

use confalg::bridges::{run_pipeline, PipelineBundle};
use confalg::exactpoly::Poly;
use confalg::examples::{alpha_symbol, final_example, FinalVariant};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Parse a polynomial that may mention `alpha` and `q`.
pub fn p(s: &str) -> Poly {
    alpha_symbol();
    confalg::examples::q_symbol();
    Poly::parse(s, &["alpha", "q"]).unwrap()
}

/// The pipeline on the published or corrected data, every stage
/// recorded.
pub fn bundle(alpha: &Poly, variant: FinalVariant) -> PipelineBundle {
    let (z, d) = final_example(alpha, variant);
    run_pipeline(&z, &d, false).unwrap()
}

pub fn published() -> PipelineBundle {
    bundle(&alpha_symbol(), FinalVariant::Published)
}

pub fn corrected() -> PipelineBundle {
    bundle(&alpha_symbol(), FinalVariant::Corrected)
}

/// A seeded generator for the perturbation suites.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A nonzero rational with numerator in ±1..=5 and denominator 1..=3.
pub fn nonzero_rational(r: &mut ChaCha8Rng) -> Poly {
    let num: i64 = r.gen_range(1..=5);
    let den: i64 = r.gen_range(1..=3);
    let sign = if r.gen_bool(0.5) { 1 } else { -1 };
    Poly::rat(sign * num, den)
}
