//! Dual-route agreement: every statement that two checks decide the same
//! question is tested on the builtin data and on seeded perturbations of
//! it, comparing verdicts identity by identity where the statement allows.

mod common;

use common::{bundle, corrected, nonzero_rational, published, rng};
use confalg::bridges::*;
use confalg::conformal::{
    check_conf_structure, dual_conf_algebra, dual_conf_coalgebra, dual_representation_unchecked,
    ConfAlgebra, ConfKind, ConfRep,
};
use confalg::exactpoly::{Poly, Var};
use confalg::examples::{polyx, FinalVariant};
use confalg::findim::{check_fin_structure, FinStructure, StructureKind};
use confalg::report::CheckReport;
use confalg::tensor::Tensor;
use confalg::ybe::{check_pcybe, is_skew, o_operator_identities, r_to_conformal_map};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Finite-dimensional identities that together say `(A, ∘, [,])` is a
/// Gel'fand-Dorfman algebra.
const GD_BLOCK: [&str; 5] = [
    "left-symmetry(circ)",
    "right-commutativity(circ)",
    "skew-symmetry(bracket)",
    "Jacobi(bracket)",
    "eqq3",
];

/// The conformal identities that say `[·_λ ·]` is a Lie conformal bracket.
const LIE_BLOCK: [&str; 2] = ["skew-symmetry(bracket)", "Jacobi(bracket)"];

/// Identities of the product `·`, finite-dimensional id against conformal id.
const MUL_PAIRS: [(&str, &str); 2] = [
    ("commutativity(dot)", "commutativity(mul)"),
    ("associativity(dot)", "associativity(mul)"),
];

fn block_passes(rep: &CheckReport, ids: &[&str]) -> bool {
    ids.iter().all(|id| {
        rep.get(id)
            .unwrap_or_else(|| panic!("missing {id}"))
            .passed()
    })
}

fn pgd_base() -> FinStructure {
    let b = bundle(&Poly::int(1), FinalVariant::Corrected);
    pgd_completion(&b.pgd)
}

/// Add a nonzero constant to one random structure constant of one product.
fn perturb_op(a: &FinStructure, ops: &[&str], r: &mut ChaCha8Rng) -> (FinStructure, String) {
    let mut out = a.clone();
    let op = *ops.choose(r).unwrap();
    let n = a.dim;
    let ix = [r.gen_range(0..n), r.gen_range(0..n), r.gen_range(0..n)];
    let c = nonzero_rational(r);
    let t = out.ops.get_mut(op).unwrap();
    t.add_at(&ix, &c);
    (out, format!("{op}{ix:?} += {c}"))
}

fn perturb_coop(a: &FinStructure, r: &mut ChaCha8Rng) -> (FinStructure, String) {
    let mut out = a.clone();
    let co = *["Delta1", "Delta2", "delta0"].choose(r).unwrap();
    let n = a.dim;
    let ix = [r.gen_range(0..n), r.gen_range(0..n), r.gen_range(0..n)];
    let c = nonzero_rational(r);
    out.coops
        .entry(co.to_string())
        .or_insert_with(|| Tensor::zeros(n, 3))
        .add_at(&ix, &c);
    (out, format!("{co}{ix:?} += {c}"))
}

fn compare_pgd_routes(a: &FinStructure, what: &str) -> bool {
    let fin = check_fin_structure(StructureKind::PGD, a).unwrap();
    let conf = check_conf_structure(
        ConfKind::PoissonConf,
        &pgd_to_conformal_unchecked(a).unwrap(),
    )
    .unwrap();
    for (f, c) in MUL_PAIRS {
        assert_eq!(
            fin.get(f).unwrap().passed(),
            conf.get(c).unwrap().passed(),
            "{what}: {f} against {c}"
        );
    }
    assert_eq!(
        block_passes(&fin, &GD_BLOCK),
        block_passes(&conf, &LIE_BLOCK),
        "{what}: Gel'fand-Dorfman block against the Lie conformal block"
    );
    assert_eq!(
        fin.passed(),
        conf.passed(),
        "{what}: overall verdict\n{fin}\n{conf}"
    );
    fin.passed()
}

#[test]
fn pgd_and_poisson_conformal_verdicts_agree_under_perturbation() {
    let base = pgd_base();
    assert!(compare_pgd_routes(&base, "base"));
    let mut r = rng(28);
    let mut broken = 0;
    for _ in 0..40 {
        let (a, what) = perturb_op(&base, &["circ", "dot", "bracket"], &mut r);
        if !compare_pgd_routes(&a, &what) {
            broken += 1;
        }
    }
    assert!(
        broken >= 20,
        "only {broken} perturbations broke the structure"
    );
}

#[test]
fn pgd_routes_agree_on_the_polynomial_example() {
    let a = polyx(&Poly::zero(), 4);
    let mut a = pgd_completion(&a);
    a.window = None;
    a.coops.clear();
    let mut r = rng(4);
    compare_pgd_routes(&a, "polyx");
    for _ in 0..10 {
        let (b, what) = perturb_op(&a, &["circ", "dot"], &mut r);
        compare_pgd_routes(&b, &what);
    }
}

fn compare_bialgebra_routes(a: &FinStructure, what: &str) -> bool {
    let fin = check_pgd_bialgebra(a).unwrap();
    let (c, co) = pgd_bialgebra_to_conf_bialgebra_unchecked(a).unwrap();
    let conf = check_poisson_conf_bialgebra(&c, &co).unwrap();
    assert_eq!(fin.passed(), conf.passed(), "{what}\n{fin}\n{conf}");
    fin.passed()
}

#[test]
fn pgd_bialgebra_and_conformal_bialgebra_verdicts_agree() {
    let base = pgd_base();
    assert!(compare_bialgebra_routes(&base, "base"));
    let mut r = rng(29);
    let mut broken = 0;
    for _ in 0..24 {
        let (a, what) = perturb_coop(&base, &mut r);
        if !compare_bialgebra_routes(&a, &what) {
            broken += 1;
        }
    }
    assert!(
        broken >= 12,
        "only {broken} perturbations broke the bialgebra"
    );
}

fn o_operator_verdict(hat: &ConfAlgebra, r: &Tensor) -> bool {
    let rep = dual_representation_unchecked(&ConfRep::adjoint(hat));
    o_operator_identities(hat, &rep, &r_to_conformal_map(r))
        .unwrap()
        .passed()
}

/// Keep `r` skew while changing `r_{ij}` by `c·∂₁^a ∂₂^b`.
fn skew_perturbation(r: &Tensor, rng: &mut ChaCha8Rng) -> Tensor {
    let n = r.rank;
    let i = rng.gen_range(0..n);
    let j = loop {
        let j = rng.gen_range(0..n);
        if j != i {
            break j;
        }
    };
    let (a, b) = (rng.gen_range(0..2u32), rng.gen_range(0..2u32));
    let c = nonzero_rational(rng);
    let mono = |x: Var, y: Var| &(&c * &Poly::var(x).pow(a)) * &Poly::var(y).pow(b);
    let mut out = r.clone();
    out.add_at(&[i, j], &mono(Var::D1, Var::D2));
    out.add_at(&[j, i], &-&mono(Var::D2, Var::D1));
    out
}

#[test]
fn pcybe_agrees_with_the_o_operator_form() {
    for b in [published(), corrected()] {
        assert!(check_pcybe(&b.hat, &b.r).unwrap().passed());
        assert!(o_operator_verdict(&b.hat, &b.r));
        let mut r = rng(313);
        let mut broken = 0;
        for t in 0..10 {
            let x = if t < 2 {
                b.r.scale(&nonzero_rational(&mut r))
            } else {
                skew_perturbation(&b.r, &mut r)
            };
            assert!(is_skew(&x));
            let y = check_pcybe(&b.hat, &x).unwrap().passed();
            assert_eq!(y, o_operator_verdict(&b.hat, &x), "perturbation {t}");
            broken += usize::from(!y);
        }
        assert!(broken >= 5, "only {broken} perturbations broke PCYBE");
    }
}

#[test]
fn conformal_duality_round_trips_on_builtin_data() {
    let mut algebras = Vec::new();
    for b in [published(), corrected()] {
        algebras.extend([b.poisson.clone(), b.hat.clone()]);
        let back = dual_conf_coalgebra(&dual_conf_algebra(&b.coalgebra));
        assert_eq!(back, b.coalgebra);
    }
    let mut vir = ConfAlgebra::new(1);
    vir.add("bracket", 0, 0, 0, common::p("d + 2*l"));
    vir.zero_op("mul");
    algebras.push(vir);
    algebras.push(pgd_to_conformal_unchecked(&polyx(&Poly::zero(), 4)).unwrap());
    for a in algebras {
        assert_eq!(dual_conf_algebra(&dual_conf_coalgebra(&a)), a);
    }
}
