//! Spec files generated from the builtin examples. The files shipped in
//! `specs/` are the output of `confalg spec <name>`.

use crate::spec::SpecFile;
use confalg::bridges;
use confalg::conformal::ConfAlgebra;
use confalg::deform;
use confalg::exactpoly::Poly;
use confalg::examples::{self, FinalVariant};
use confalg::tensor::Tensor;

pub const NAMES: [&str; 7] = [
    "final",
    "final-corrected",
    "final-hat",
    "polyx",
    "virasoro",
    "virasoro-deformation",
    "current-deformation",
];

pub fn spec(name: &str) -> Option<SpecFile> {
    let alpha = examples::alpha_symbol();
    let s = match name {
        "final" | "final-corrected" => {
            let v = if name == "final" {
                FinalVariant::Published
            } else {
                FinalVariant::Corrected
            };
            let mut s = SpecFile::named(
                name,
                "a three-dimensional algebra with product succ and derivation D",
            );
            s.set_fin(&examples::final_example(&alpha, v).0);
            s
        }
        "final-hat" => {
            let (z, d) = examples::final_example(&alpha, FinalVariant::Published);
            let b = bridges::run_pipeline(&z, &d, false).ok()?;
            let mut s = SpecFile::named(
                name,
                "the rank-6 semidirect product of the final example with its r-matrix and coboundary coproducts",
            );
            s.set_conf(&b.hat, Some(&b.coalgebra));
            s.set_rmatrix(&b.r);
            s
        }
        "polyx" => {
            let mut s = SpecFile::named(
                name,
                "the polynomial differential Novikov-Poisson bialgebra truncated at degree 8",
            );
            s.set_fin(&examples::polyx(&examples::q_symbol(), 8));
            s
        }
        "virasoro" => {
            let mut a = ConfAlgebra::new(1);
            a.add("bracket", 0, 0, 0, Poly::d() + &Poly::int(2) * &Poly::l());
            a.zero_op("mul");
            let mut r = Tensor::zeros(1, 2);
            *r.get_mut(&[0, 0]) = Poly::one();
            let mut s = SpecFile::named(name, "the Virasoro conformal algebra with r = b (x) b");
            s.set_conf(&a, None);
            s.set_rmatrix(&r);
            s
        }
        "virasoro-deformation" => {
            let (d, c) = deform::virasoro_deformation(3);
            let mut s = SpecFile::named(
                name,
                "zero rank-1 bialgebra with first-order product correction (d + 2l) b",
            );
            s.set_deform(&d, &c);
            s
        }
        "current-deformation" => {
            let (d, c) = deform::current_deformation(3);
            let mut s = SpecFile::named(
                name,
                "zero rank-2 bialgebra with a constant associative first-order correction",
            );
            s.set_deform(&d, &c);
            s
        }
        _ => return None,
    };
    Some(s)
}
